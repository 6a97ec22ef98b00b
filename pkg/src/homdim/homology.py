"""Projective covers, resolutions, Ext and projective dimension.

Ext is computed without materialising Hom complexes of big modules: for a
projective ``F = sum_l A e_l`` we have ``Hom(F, N) = sum_l e_l N``, and the
dual of a differential is assembled blockwise from the action of the
coefficients of the differential on ``N``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .algebra import AlgebraError, BasicStructure, PresentedAlgebra, SCAlgebra
from .exactla import Coordinates, Matrix, extend_independent, image_basis, kernel_basis, quotient_basis, rank, span_basis
from .rep import (
    RepError,
    RepMap,
    Representation,
    SCModule,
    direct_sum,
    indec_projective,
    kernel,
    sc_submodule,
    simple,
    zero_module,
)
from .verdict import Unknown, Verdict, Yes

DEFAULT_HORIZON = 10


@dataclass
class ExtReport:
    dims: dict[int, int]
    horizon: int
    truncated: bool

    def __getitem__(self, i: int) -> int:
        return self.dims[i]

    def nonvanishing(self, start: int = 1) -> list[int]:
        return [i for i, d in sorted(self.dims.items()) if i >= start and d]

    def to_json(self) -> dict:
        return {"dims": {str(i): d for i, d in sorted(self.dims.items())}, "horizon": self.horizon,
                "truncated": self.truncated}


@dataclass
class Resolution:
    """``... -> F_1 -> F_0 -> M -> 0``.

    ``gens[i]`` lists the generator types of ``F_i`` (a vertex for path
    algebras, an idempotent index or ``None`` for a free summand over an SC
    algebra).  ``coeffs[i][k][l]`` is the coefficient of generator ``l`` of
    ``F_i`` in the image of generator ``k`` of ``F_{i+1}``: a ``{basis index:
    scalar}`` dict on the path-algebra side, an algebra vector on the SC side.
    ``syzygies[i]`` is the i-th syzygy (``syzygies[0] = M``).
    """

    module: object
    kind: str
    terms: list = field(default_factory=list)
    gens: list = field(default_factory=list)
    coeffs: list = field(default_factory=list)
    differentials: list = field(default_factory=list)
    augmentation: object = None
    syzygies: list = field(default_factory=list)
    terminated: bool = False
    capped: bool = False
    incs: list = field(default_factory=list, repr=False)

    @property
    def length(self) -> int:
        return max(len(self.terms) - 1, 0)

    def truncated_at(self, horizon: int) -> bool:
        """True when the syzygy after ``F_horizon`` is (or may be) nonzero."""
        return not (self.terminated and len(self.terms) <= horizon + 1)

    def view(self, nterms: int) -> Resolution:
        k = min(nterms, len(self.terms))
        return Resolution(self.module, self.kind, self.terms[:k], self.gens[:k], self.coeffs[:max(k - 1, 0)],
                          self.differentials[:max(k - 1, 0)], self.augmentation, self.syzygies[:k + 1],
                          self.terminated and len(self.terms) <= k, self.capped)

    def term_sizes(self) -> list:
        out = []
        for t in self.terms:
            out.append(list(t.dims) if isinstance(t, Representation) else t.dim)
        return out


# ---------------------------------------------------------------------------
# path-algebra side


def top_generators(M: Representation, minimal: bool = True) -> list[tuple[int, tuple]]:
    """Elements whose images span the top of ``M`` (all basis vectors when not minimal)."""
    A, F = M.algebra, M.field
    gens = []
    for v in range(A.num_vertices):
        d = M.dims[v]
        if d == 0:
            continue
        if minimal:
            rad = []
            for k, a in enumerate(A.quiver.arrows):
                if A.vertex(a.target) == v:
                    rad.extend(M.maps[k].columns())
            reps = quotient_basis(F, d, span_basis(F, rad, d))
        else:
            reps = [tuple(F.one if i == j else F.zero for i in range(d)) for j in range(d)]
        gens.extend((v, x) for x in reps)
    return gens


def top_dims(M: Representation) -> tuple[int, ...]:
    counts = [0] * M.algebra.num_vertices
    for v, _ in top_generators(M):
        counts[v] += 1
    return tuple(counts)


def _cover_from_generators(M: Representation, gens) -> tuple[Representation, RepMap]:
    A, F = M.algebra, M.field
    P = direct_sum(A, [indec_projective(A, v) for v, _ in gens])
    mats = []
    for w in range(A.num_vertices):
        cols = []
        for v, x in gens:
            for b in A.between[(v, w)]:
                cols.append(M.basis_matrix(b).apply(x))
        mats.append(Matrix.from_columns(F, cols, M.dims[w]))
    return P, RepMap(P, M, mats, check=False)


def projective_cover(M: Representation, minimal: bool = True) -> tuple[Representation, RepMap]:
    return _cover_from_generators(M, top_generators(M, minimal))


def _split_element(A: PresentedAlgebra, gens_prev: Sequence[int], w: int, vec: Sequence) -> list[dict]:
    """Decompose an element of ``sum_l P(v_l)`` at vertex ``w`` into path coefficients per summand."""
    out, pos = [], 0
    for v in gens_prev:
        paths = A.between[(v, w)]
        out.append({b: c for b, c in zip(paths, vec[pos:pos + len(paths)]) if c != 0})
        pos += len(paths)
    return out


class _Cache:
    def __init__(self, maxsize: int = 4096):
        self.data: dict = {}
        self.lock = threading.Lock()
        self.maxsize = maxsize

    def get(self, key):
        with self.lock:
            return self.data.get(key)

    def put(self, key, value):
        with self.lock:
            if len(self.data) >= self.maxsize:
                self.data.pop(next(iter(self.data)))
            self.data[key] = value


def _cache_for(algebra) -> _Cache:
    # per-algebra, so cached terms always live over the same algebra object
    cache = algebra.__dict__.get("_res_cache")
    if cache is None:
        cache = algebra.__dict__.setdefault("_res_cache", _Cache())
    return cache


def _resolve(M: Representation, nterms: int, minimal: bool = True) -> Resolution:
    """Resolution with at least ``nterms`` terms computed (or terminated earlier)."""
    kind = "minimal-projective" if minimal else "projective"
    key = (M.key, kind)
    res = _cache_for(M.algebra).get(key)
    if res is None:
        res = Resolution(M, kind, syzygies=[M], terminated=M.is_zero())
    A = M.algebra
    while not res.terminated and len(res.terms) < nterms:
        X = res.syzygies[-1]
        gens = top_generators(X, minimal)
        P, epi = _cover_from_generators(X, gens)
        K, inc = kernel(epi)
        i = len(res.terms)
        if i == 0:
            res.augmentation = epi
        else:
            # X sits inside F_{i-1}; express generator images there
            prev_inc = res.incs[i - 1]
            rows = []
            for w, x in gens:
                rows.append(_split_element(A, res.gens[i - 1], w, prev_inc.mats[w].apply(x)))
            res.coeffs.append(rows)
            res.differentials.append(prev_inc.compose_after(epi))
        res.terms.append(P)
        res.gens.append([v for v, _ in gens])
        res.syzygies.append(K)
        res.incs.append(inc)
        if K.is_zero():
            res.terminated = True
    _cache_for(M.algebra).put(key, res)
    return res


def minimal_resolution(M: Representation, horizon: int = DEFAULT_HORIZON) -> Resolution:
    """Minimal projective resolution with terms ``F_0 .. F_min(pd, horizon)``."""
    if horizon < 0:
        raise ValueError("horizon must be non-negative")
    res = _resolve(M, horizon + 1)
    return res.view(horizon + 1)


def syzygy(M: Representation, n: int) -> Representation:
    if n < 0:
        raise ValueError("syzygy index must be non-negative")
    res = _resolve(M, n)
    if n < len(res.syzygies):
        return res.syzygies[n]
    return zero_module(M.algebra)


def _ext_from_blocks(term_hom_sizes: list[list[int]], target_sizes: list[list[int]],
                     block: Callable[[int, int, int], Matrix], field_, horizon: int) -> dict[int, int]:
    """Cohomology dimensions of ``Hom(F_*, N)``.

    ``term_hom_sizes[n][l]`` is the dimension of the l-th summand of
    ``Hom(F_n, N)``; ``target_sizes[n][k]`` the row count of blocks landing in
    summand ``k`` (an ambient space containing it); ``block(n, k, l)`` the map
    from summand ``l`` of ``Hom(F_n, N)`` into the ambient space of summand
    ``k`` of ``Hom(F_{n+1}, N)``.
    """
    ranks = []
    nterms = len(term_hom_sizes)
    for n in range(horizon + 1):
        if n + 1 >= nterms or n >= nterms:
            ranks.append(0)
            continue
        cols = term_hom_sizes[n]
        rows = target_sizes[n + 1]
        if sum(cols) == 0 or sum(rows) == 0:
            ranks.append(0)
            continue
        big = []
        for k, rk in enumerate(rows):
            if rk == 0:
                continue
            blocks = [block(n, k, l) for l in range(len(cols))]
            for r in range(rk):
                big.append([x for bl in blocks for x in bl.rows[r]])
        ranks.append(rank(Matrix(field_, big, sum(cols))))
    dims = {}
    for n in range(horizon + 1):
        size = sum(term_hom_sizes[n]) if n < nterms else 0
        dims[n] = size - ranks[n] - (ranks[n - 1] if n else 0)
    return dims


def ext_dim(M: Representation, N: Representation, horizon: int = DEFAULT_HORIZON,
            minimal: bool = True) -> ExtReport:
    if M.algebra is not N.algebra:
        raise RepError("Ext between modules over different algebras")
    res = _resolve(M, horizon + 2, minimal)
    nterms = min(len(res.terms), horizon + 2)
    sizes = [[N.dims[v] for v in res.gens[n]] for n in range(nterms)]

    def block(n, k, l):
        w, v = res.gens[n + 1][k], res.gens[n][l]
        return N.element_matrix(v, w, res.coeffs[n][k][l])

    dims = _ext_from_blocks(sizes, sizes, block, M.field, horizon)
    return ExtReport(dims, horizon, res.truncated_at(horizon))


def pdim(M: Representation, horizon: int = DEFAULT_HORIZON) -> Verdict:
    res = minimal_resolution(M, horizon)
    if res.truncated_at(horizon):
        return Unknown(f"resolution not terminated by degree {horizon}")
    return Yes(res.length)


def euler_form_check(M: Representation, N: Representation) -> bool:
    A = M.algebra
    if A.has_relations() or A.paths_of_length(A.length_bound):
        raise ValueError("Euler form check needs a relation-free path algebra of an acyclic quiver")
    rep = ext_dim(M, N, 1)
    lhs = rep[0] - rep[1]
    rhs = sum(a * b for a, b in zip(M.dims, N.dims))
    for a in A.quiver.arrows:
        rhs -= M.dims[A.vertex(a.source)] * N.dims[A.vertex(a.target)]
    return lhs == rhs


# ---------------------------------------------------------------------------
# structure-constant side


@dataclass
class _SCSummand:
    idem: tuple  # idempotent (algebra vector); the unit for free summands
    label: object  # idempotent index or None
    basis: list  # basis of S e as algebra vectors


def _sc_summand(a: SCAlgebra, e: tuple, label) -> _SCSummand:
    cache = a.__dict__.setdefault("_summand_cache", {})
    if label in cache:
        return cache[label]
    basis = span_basis(a.field, [a.mul(a.basis_vector(m), e) for m in range(a.dimension)], a.dimension)
    s = _SCSummand(e, label, basis)
    cache[label] = s
    return s


def _sc_projective(a: SCAlgebra, summands: Sequence[_SCSummand]) -> SCModule:
    """``sum_l S e_l`` with left multiplication, in the concatenated summand bases."""
    from .rep import sc_direct_sum

    mods = []
    for s in summands:
        co = Coordinates(a.field, s.basis, a.dimension)
        action = [co.matrix([a.mul(a.basis_vector(m), y) for y in s.basis]) for m in range(a.dimension)]
        mods.append(SCModule(a, len(s.basis), action, check=False))
    return sc_direct_sum(a, mods)


def _sc_generators(X: SCModule, struct: BasicStructure | None) -> list[tuple[object, tuple]]:
    """(summand label, element) pairs: minimal top generators, or a greedy free generating set."""
    a, F = X.algebra, X.field
    n = X.dim
    if n == 0:
        return []
    units = [tuple(F.one if i == j else F.zero for i in range(n)) for j in range(n)]
    if struct is None:
        gens, span = [], []
        for x in units:
            if span and Coordinates(F, span, n).contains(x):
                continue
            gens.append((None, x))
            span = span_basis(F, span + [m.apply(x) for m in X.action], n)
            if len(span) == n:
                break
        return gens
    jx = span_basis(F, [X.act(j).apply(u) for j in struct.radical for u in units], n)
    gens = []
    for i, e in enumerate(struct.idempotents):
        E = X.act(e)
        ex = image_basis(E)
        ejx = span_basis(F, [E.apply(y) for y in jx], n)
        for k in extend_independent(F, n, ejx, ex):
            gens.append((i, ex[k]))
    return gens


def _sc_resolve(X: SCModule, nterms: int, struct: BasicStructure | None, max_total_dim: int) -> Resolution:
    a, F = X.algebra, X.field
    kind = "free" if struct is None else "sc-minimal-projective"
    key = (X.key, kind)
    res = _cache_for(a).get(key)
    if res is None:
        res = Resolution(X, kind, syzygies=[X], terminated=X.is_zero())
    while not res.terminated and not res.capped and len(res.terms) < nterms:
        Y = res.syzygies[-1]
        gens = _sc_generators(Y, struct)
        summands = [_sc_summand(a, a.unit if lab is None else struct.idempotents[lab], lab) for lab, _ in gens]
        P = _sc_projective(a, summands)
        if P.dim > max_total_dim:
            res.capped = True
            break
        cols = []
        for s, (_, x) in zip(summands, gens):
            for y in s.basis:
                cols.append(Y.act(y).apply(x))
        epi = Matrix.from_columns(F, cols, Y.dim)
        kb = kernel_basis(epi)
        K = sc_submodule(P, kb)
        i = len(res.terms)
        if i == 0:
            res.augmentation = epi
        else:
            prev_inc, prev_summands = res.incs[i - 1]
            rows = []
            for _, x in gens:
                vec = prev_inc.apply(x)
                row, pos = [], 0
                for s in prev_summands:
                    c = vec[pos:pos + len(s.basis)]
                    pos += len(s.basis)
                    elt = a.zero_vector()
                    for coef, y in zip(c, s.basis):
                        if coef:
                            elt = a.add(elt, a.scale(coef, y))
                    row.append(elt)
                rows.append(row)
            res.coeffs.append(rows)
        res.terms.append(P)
        res.gens.append([lab for lab, _ in gens])
        res.syzygies.append(K)
        res.incs.append((Matrix.from_columns(F, kb, P.dim), summands))
        if K.dim == 0:
            res.terminated = True
    _cache_for(a).put(key, res)
    return res


def sc_free_resolution(X: SCModule, horizon: int = DEFAULT_HORIZON, max_total_dim: int = 400) -> Resolution:
    """Greedy free resolution (first standard basis vector outside the current orbit span).

    Stops early, with ``capped`` set, once a term would exceed ``max_total_dim``.
    """
    return _sc_resolve(X, horizon + 1, None, max_total_dim).view(horizon + 1)


def sc_projective_resolution(X: SCModule, horizon: int = DEFAULT_HORIZON) -> Resolution:
    """Minimal projective resolution over a split basic SC algebra."""
    struct = X.algebra.structure
    if struct is None:
        raise AlgebraError("algebra is not split basic; no primitive idempotents available")
    return _sc_resolve(X, horizon + 1, struct, 10**9).view(horizon + 1)


def sc_ext_dim(X: SCModule, Y: SCModule, horizon: int = DEFAULT_HORIZON, method: str = "auto",
               max_total_dim: int = 400) -> ExtReport:
    """``Ext_S^i(X, Y)``; ``method`` is ``"projective"``, ``"free"`` or ``"auto"``."""
    if X.algebra != Y.algebra:
        raise RepError("Ext between modules over different algebras")
    a, F = X.algebra, X.field
    struct = None
    if method in ("auto", "projective"):
        struct = a.structure
        if struct is None and method == "projective":
            raise AlgebraError("algebra is not split basic")
    elif method != "free":
        raise ValueError(f"unknown method {method!r}")
    res = _sc_resolve(X, horizon + 2, struct, max_total_dim if struct is None else 10**9)
    reach = horizon
    if res.capped:
        # degree n needs F_{n+1}
        reach = min(horizon, len(res.terms) - 2)
    nterms = min(len(res.terms), reach + 2)
    bases = {}

    def hom_basis(lab):
        if lab not in bases:
            E = Y.act(a.unit if lab is None else struct.idempotents[lab])
            bases[lab] = Matrix.from_columns(F, image_basis(E), Y.dim)
        return bases[lab]

    sizes = [[hom_basis(lab).ncols for lab in res.gens[n]] for n in range(nterms)]
    amb = [[Y.dim for _ in res.gens[n]] for n in range(nterms)]

    def block(n, k, l):
        return Y.act(res.coeffs[n][k][l]) @ hom_basis(res.gens[n][l])

    if reach < 0:
        return ExtReport({}, -1, True)
    dims = _ext_from_blocks(sizes, amb, block, F, reach)
    return ExtReport(dims, reach, res.capped or res.truncated_at(reach))


# ---------------------------------------------------------------------------
# convenience


def simples(A: PresentedAlgebra) -> list[Representation]:
    return [simple(A, v) for v in range(A.num_vertices)]


def projectives(A: PresentedAlgebra) -> list[Representation]:
    return [indec_projective(A, v) for v in range(A.num_vertices)]
