"""Modules as quiver representations and as modules over structure-constant algebras."""

from __future__ import annotations

import hashlib
import random
from functools import cached_property
from typing import Sequence

from .algebra import PresentedAlgebra, SCAlgebra
from .exactla import (
    Coordinates,
    Field,
    Matrix,
    image_basis,
    is_invertible,
    kernel_basis,
    lin_comb,
    quotient_basis,
    rank,
    span_basis,
)


class RepError(ValueError):
    pass


def _digest(*parts) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(repr(p).encode())
        h.update(b"\x00")
    return h.hexdigest()


class Representation:
    """A finite-dimensional left module over a :class:`PresentedAlgebra`.

    ``maps[k]`` is the matrix of the k-th arrow, shape ``dims[target] x dims[source]``.
    """

    def __init__(self, algebra: PresentedAlgebra, dims: Sequence[int], maps: Sequence[Matrix], check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dims = tuple(int(d) for d in dims)
        self.maps = tuple(maps)
        self._path_cache: dict = {}
        if check:
            self.validate()

    def validate(self):
        A, q = self.algebra, self.algebra.quiver
        if len(self.dims) != A.num_vertices or any(d < 0 for d in self.dims):
            raise RepError("dimension vector does not match the quiver")
        if len(self.maps) != len(q.arrows):
            raise RepError("one matrix per arrow is required")
        for a, m in zip(q.arrows, self.maps):
            s, t = A.vertex(a.source), A.vertex(a.target)
            if m.shape != (self.dims[t], self.dims[s]):
                raise RepError(f"arrow {a.name} has shape {m.shape}, expected {(self.dims[t], self.dims[s])}")
            if m.field != self.field:
                raise RepError("matrix over the wrong field")
        for rel in A.relations:
            s, t = (A.vertex(x) for x in q.path_endpoints(rel.terms[0][1]))
            val = lin_comb(self.field, [c for c, _ in rel.terms], [self.path_matrix(s, p) for _, p in rel.terms],
                           self.dims[t], self.dims[s])
            if not val.is_zero():
                raise RepError("a relation does not vanish on this representation")
        for s, t, p in A.paths_of_length(A.length_bound):
            if not self.path_matrix(s, p).is_zero():
                raise RepError("a path of length >= L acts nontrivially")

    # -- actions ------------------------------------------------------------

    def path_matrix(self, s: int, path: tuple[str, ...]) -> Matrix:
        """Matrix of a path starting at vertex ``s`` (empty path = identity)."""
        key = (s, path)
        hit = self._path_cache.get(key)
        if hit is not None:
            return hit
        if not path:
            m = Matrix.identity(self.field, self.dims[s])
        else:
            q = self.algebra.quiver
            first = q.arrow(path[-1])
            m = self.path_matrix(self.algebra.vertex(first.target), path[:-1]) @ self.maps[q.arrow_index[first.name]]
        self._path_cache[key] = m
        return m

    def basis_matrix(self, i: int) -> Matrix:
        b = self.algebra.basis[i]
        return self.path_matrix(b.source, b.arrows)

    def element_matrix(self, v: int, w: int, coeffs: dict) -> Matrix:
        """Action of ``sum c_i b_i`` (paths from v to w) as a ``dims[w] x dims[v]`` matrix."""
        items = sorted(coeffs.items())
        return lin_comb(self.field, [c for _, c in items], [self.basis_matrix(i) for i, _ in items],
                        self.dims[w], self.dims[v])

    # -- bookkeeping ----------------------------------------------------------

    @property
    def total_dim(self) -> int:
        return sum(self.dims)

    @cached_property
    def offsets(self) -> tuple[int, ...]:
        out, acc = [], 0
        for d in self.dims:
            out.append(acc)
            acc += d
        return tuple(out)

    def is_zero(self) -> bool:
        return self.total_dim == 0

    @cached_property
    def key(self) -> str:
        return _digest("rep", self.field.to_spec(), self.algebra.to_json(), self.dims,
                       tuple(m.rows for m in self.maps))

    def __eq__(self, other) -> bool:
        if not isinstance(other, Representation):
            return NotImplemented
        return self.algebra is other.algebra and self.dims == other.dims and self.maps == other.maps

    def __hash__(self):
        return hash((self.dims, self.maps))

    def __repr__(self) -> str:
        return f"Representation(dims={self.dims})"

    def identity(self) -> RepMap:
        return RepMap(self, self, [Matrix.identity(self.field, d) for d in self.dims], check=False)

    def zero_map_to(self, other: Representation) -> RepMap:
        return RepMap(self, other, [Matrix.zeros(self.field, other.dims[v], self.dims[v])
                                    for v in range(len(self.dims))], check=False)

    def to_json(self) -> dict:
        A = self.algebra
        return {
            "dims": {v: d for v, d in zip(A.quiver.vertices, self.dims)},
            "maps": {a.name: m.to_lists() for a, m in zip(A.quiver.arrows, self.maps)},
        }

    @classmethod
    def from_json(cls, algebra: PresentedAlgebra, data: dict) -> Representation:
        F = algebra.field
        q = algebra.quiver
        dims_in = {str(k): int(v) for k, v in data.get("dims", {}).items()}
        for k in dims_in:
            algebra.vertex(k)
        dims = [dims_in.get(v, 0) for v in q.vertices]
        maps_in = data.get("maps", {})
        for k in maps_in:
            q.arrow(k)
        maps = []
        for a in q.arrows:
            s, t = dims[algebra.vertex(a.source)], dims[algebra.vertex(a.target)]
            rows = maps_in.get(a.name)
            if rows is None:
                maps.append(Matrix.zeros(F, t, s))
            else:
                m = Matrix(F, [[F.parse(str(x)) for x in row] for row in rows], s)
                if m.shape != (t, s):
                    raise RepError(f"arrow {a.name}: expected a {t}x{s} matrix")
                maps.append(m)
        return cls(algebra, dims, maps)


class RepMap:
    """A morphism of representations, one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, mats: Sequence[Matrix], check: bool = True):
        self.source = source
        self.target = target
        self.mats = tuple(mats)
        if check:
            self.validate()

    def validate(self):
        M, N = self.source, self.target
        if M.algebra is not N.algebra:
            raise RepError("morphism between modules over different algebras")
        if len(self.mats) != len(M.dims):
            raise RepError("one matrix per vertex is required")
        for v, m in enumerate(self.mats):
            if m.shape != (N.dims[v], M.dims[v]):
                raise RepError("vertex map has the wrong shape")
        A = M.algebra
        for k, a in enumerate(A.quiver.arrows):
            s, t = A.vertex(a.source), A.vertex(a.target)
            if self.mats[t] @ M.maps[k] != N.maps[k] @ self.mats[s]:
                raise RepError(f"square at arrow {a.name} does not commute")

    def compose_after(self, other: RepMap) -> RepMap:
        """``self o other``."""
        if other.target is not self.source and other.target != self.source:
            raise RepError("maps are not composable")
        return RepMap(other.source, self.target, [a @ b for a, b in zip(self.mats, other.mats)], check=False)

    def __add__(self, other: RepMap) -> RepMap:
        return RepMap(self.source, self.target, [a + b for a, b in zip(self.mats, other.mats)], check=False)

    def scale(self, c) -> RepMap:
        return RepMap(self.source, self.target, [a.scale(c) for a in self.mats], check=False)

    def flatten(self) -> tuple:
        return tuple(x for m in self.mats for row in m.rows for x in row)

    def ranks(self) -> tuple[int, ...]:
        return tuple(rank(m) for m in self.mats)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.mats)

    def is_injective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.source.dims))

    def is_surjective(self) -> bool:
        return all(r == d for r, d in zip(self.ranks(), self.target.dims))

    def is_iso(self) -> bool:
        return self.source.dims == self.target.dims and all(is_invertible(m) for m in self.mats)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RepMap):
            return NotImplemented
        return self.mats == other.mats

    def __hash__(self):
        return hash(self.mats)

    def __repr__(self) -> str:
        return f"RepMap({self.source.dims} -> {self.target.dims}, ranks={self.ranks()})"


class SES:
    """``0 -> A -f-> B -g-> C -> 0``."""

    def __init__(self, f: RepMap, g: RepMap, check: bool = True):
        self.f, self.g = f, g
        if check and not self.is_exact():
            raise RepError("sequence is not short exact")

    @property
    def left(self) -> Representation:
        return self.f.source

    @property
    def middle(self) -> Representation:
        return self.f.target

    @property
    def right(self) -> Representation:
        return self.g.target

    def is_exact(self) -> bool:
        f, g = self.f, self.g
        if f.target is not g.source and f.target != g.source:
            return False
        if not f.is_injective() or not g.is_surjective():
            return False
        # im f = ker g: g f = 0 and dims add up
        if not g.compose_after(f).is_zero():
            return False
        return all(a + c == b for a, b, c in zip(self.left.dims, self.middle.dims, self.right.dims))


# ---------------------------------------------------------------------------
# constructions


def zero_module(p: PresentedAlgebra) -> Representation:
    return direct_sum(p, [])


def indec_projective(p: PresentedAlgebra, v) -> Representation:
    """``P(v) = Lambda e_v``; the basis at ``w`` is the basis paths from ``v`` to ``w``."""
    v = v if isinstance(v, int) else p.vertex(v)
    if not 0 <= v < p.num_vertices:
        raise RepError(f"unknown vertex {v}")
    return _projective_cached(p, v)


def _projective_cached(p: PresentedAlgebra, v: int) -> Representation:
    cache = p.__dict__.setdefault("_proj_cache", {})
    if v in cache:
        return cache[v]
    F = p.field
    n = p.num_vertices
    local = [{b: k for k, b in enumerate(p.between[(v, w)])} for w in range(n)]
    dims = [len(p.between[(v, w)]) for w in range(n)]
    maps = []
    for a in p.quiver.arrows:
        s, t = p.vertex(a.source), p.vertex(a.target)
        cols = []
        for b in p.between[(v, s)]:
            col = [F.zero] * dims[t]
            for k, c in p.arrow_times(a.name, b).items():
                col[local[t][k]] = c
            cols.append(col)
        maps.append(Matrix.from_columns(F, cols, dims[t]))
    P = Representation(p, dims, maps, check=False)
    cache[v] = P
    return P


def simple(p: PresentedAlgebra, v) -> Representation:
    v = v if isinstance(v, int) else p.vertex(v)
    if not 0 <= v < p.num_vertices:
        raise RepError(f"unknown vertex {v}")
    dims = [1 if w == v else 0 for w in range(p.num_vertices)]
    F = p.field
    maps = [Matrix.zeros(F, dims[p.vertex(a.target)], dims[p.vertex(a.source)]) for a in p.quiver.arrows]
    return Representation(p, dims, maps, check=False)


def direct_sum(p: PresentedAlgebra, mods: Sequence[Representation]) -> Representation:
    return direct_sum_with_maps(p, mods)[0]


def direct_sum_with_maps(p: PresentedAlgebra, mods: Sequence[Representation]):
    """The direct sum together with its canonical inclusions and projections."""
    for m in mods:
        if m.algebra is not p:
            raise RepError("direct sum of modules over different algebras")
    F = p.field
    n = p.num_vertices
    dims = [sum(m.dims[v] for m in mods) for v in range(n)]
    maps = [Matrix.block_diagonal(F, [m.maps[k] for m in mods]) if mods else
            Matrix.zeros(F, 0, 0) for k in range(len(p.quiver.arrows))]
    S = Representation(p, dims, maps, check=False)
    incs, projs = [], []
    offs = [0] * n
    for m in mods:
        inc, proj = [], []
        for v in range(n):
            rows = []
            for i in range(dims[v]):
                rows.append([F.one if i == offs[v] + j else F.zero for j in range(m.dims[v])])
            inc_v = Matrix(F, rows, m.dims[v]) if dims[v] else Matrix.zeros(F, 0, m.dims[v])
            inc.append(inc_v)
            proj.append(inc_v.T)
            offs[v] += m.dims[v]
        incs.append(RepMap(m, S, inc, check=False))
        projs.append(RepMap(S, m, proj, check=False))
    return S, incs, projs


def hom_space(M: Representation, N: Representation) -> list[RepMap]:
    """Basis of ``Hom(M, N)`` from one kernel computation over all commuting squares."""
    if M.algebra is not N.algebra:
        raise RepError("Hom between modules over different algebras")
    A, F = M.algebra, M.field
    n = A.num_vertices
    offs, acc = [], 0
    for v in range(n):
        offs.append(acc)
        acc += N.dims[v] * M.dims[v]
    nvars = acc
    if nvars == 0:
        return []
    rows = []
    for k, a in enumerate(A.quiver.arrows):
        s, t = A.vertex(a.source), A.vertex(a.target)
        Na, Ma = N.maps[k], M.maps[k]
        ms, mt, ns, nt = M.dims[s], M.dims[t], N.dims[s], N.dims[t]
        # (N_a X_s - X_t M_a)[i, j] = 0
        for i in range(nt):
            for j in range(ms):
                row = [F.zero] * nvars
                for kk in range(ns):
                    c = Na.rows[i][kk]
                    if c:
                        idx = offs[s] + kk * ms + j
                        row[idx] = row[idx] + c
                for kk in range(mt):
                    c = Ma.rows[kk][j]
                    if c:
                        idx = offs[t] + i * mt + kk
                        row[idx] = row[idx] - c
                if any(row):
                    rows.append([F(x) for x in row])
    if rows:
        basis = kernel_basis(Matrix(F, rows, nvars))
    else:
        basis = [tuple(F.one if i == j else F.zero for i in range(nvars)) for j in range(nvars)]
    out = []
    for vec in basis:
        mats = []
        for v in range(n):
            r, c = N.dims[v], M.dims[v]
            chunk = vec[offs[v]:offs[v] + r * c]
            mats.append(Matrix(F, [chunk[i * c:(i + 1) * c] for i in range(r)], c) if r else Matrix.zeros(F, 0, c))
        out.append(RepMap(M, N, mats, check=False))
    return out


def hom_dim(M: Representation, N: Representation) -> int:
    return len(hom_space(M, N))


def sub_from_bases(M: Representation, bases: Sequence[Sequence[tuple]]) -> tuple[Representation, RepMap]:
    """Subrepresentation with the given per-vertex bases (which must be arrow-stable)."""
    A, F = M.algebra, M.field
    coords = [Coordinates(F, b, M.dims[v]) for v, b in enumerate(bases)]
    dims = [len(b) for b in bases]
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        s, t = A.vertex(a.source), A.vertex(a.target)
        images = [M.maps[k].apply(x) for x in bases[s]]
        try:
            maps.append(coords[t].matrix(images) if images else Matrix.zeros(F, dims[t], 0))
        except ValueError:
            raise RepError("subspace family is not stable under the arrows") from None
    sub = Representation(A, dims, maps, check=False)
    inc = RepMap(sub, M, [Matrix.from_columns(F, bases[v], M.dims[v]) for v in range(len(dims))], check=False)
    return sub, inc


def quotient_by(M: Representation, bases: Sequence[Sequence[tuple]]) -> tuple[Representation, RepMap]:
    """Quotient of ``M`` by an arrow-stable subspace family, with the projection."""
    A, F = M.algebra, M.field
    comps, projs = [], []
    for v, b in enumerate(bases):
        comp = quotient_basis(F, M.dims[v], b)
        comps.append(comp)
        co = Coordinates(F, list(b) + comp, M.dims[v])
        k = len(b)
        units = [tuple(F.one if i == j else F.zero for i in range(M.dims[v])) for j in range(M.dims[v])]
        cols = [co.coords(u, check=False)[k:] for u in units]
        projs.append(Matrix.from_columns(F, cols, len(comp)))
    dims = [len(c) for c in comps]
    maps = []
    for k, a in enumerate(A.quiver.arrows):
        s, t = A.vertex(a.source), A.vertex(a.target)
        cols = [projs[t].apply(M.maps[k].apply(x)) for x in comps[s]]
        maps.append(Matrix.from_columns(F, cols, dims[t]))
    Q = Representation(A, dims, maps, check=False)
    return Q, RepMap(M, Q, projs, check=False)


def kernel(f: RepMap) -> tuple[Representation, RepMap]:
    return sub_from_bases(f.source, [kernel_basis(m) for m in f.mats])


def image(f: RepMap) -> Representation:
    return image_with_map(f)[0]


def image_with_map(f: RepMap) -> tuple[Representation, RepMap]:
    return sub_from_bases(f.target, [image_basis(m) for m in f.mats])


def cokernel(f: RepMap) -> tuple[Representation, RepMap]:
    return quotient_by(f.target, [image_basis(m) for m in f.mats])


def pullback(g: RepMap, h: RepMap) -> tuple[Representation, RepMap, RepMap]:
    """Pullback of ``g: B -> C`` and ``h: F -> C``: the kernel of ``(g, -h): B + F -> C``."""
    if g.target is not h.target and g.target != h.target:
        raise RepError("pullback needs a common target")
    B, Fm = g.source, h.source
    A = B.algebra
    S, _, (pB, pF) = direct_sum_with_maps(A, [B, Fm])
    d = RepMap(S, g.target, [gm.hstack(hm.scale(-1)) for gm, hm in zip(g.mats, h.mats)], check=False)
    P, inc = kernel(d)
    return P, pB.compose_after(inc), pF.compose_after(inc)


def submodule_generated(M: Representation, gens: Sequence[tuple[int, Sequence]]) -> tuple[Representation, RepMap]:
    """Smallest subrepresentation containing the given (vertex, vector) elements."""
    A, F = M.algebra, M.field
    bases: list[list[tuple]] = [[] for _ in M.dims]
    out_arrows = [[(k, A.vertex(a.target)) for k, a in enumerate(A.quiver.arrows) if A.vertex(a.source) == v]
                  for v in range(A.num_vertices)]
    queue = [(v, tuple(F(x) for x in vec)) for v, vec in gens]
    while queue:
        v, x = queue.pop(0)
        if not any(x):
            continue
        if len(span_basis(F, bases[v] + [x], M.dims[v])) == len(bases[v]):
            continue
        bases[v].append(x)
        for k, t in out_arrows[v]:
            queue.append((t, M.maps[k].apply(x)))
    return sub_from_bases(M, bases)


def _random_rank_matrix(F: Field, rows: int, cols: int, rng: random.Random) -> Matrix:
    r = rng.randint(0, min(rows, cols))
    if r == 0:
        return Matrix.zeros(F, rows, cols)
    return Matrix.random(F, rows, r, rng) @ Matrix.random(F, r, cols, rng)


def random_representation(p: PresentedAlgebra, dims: Sequence[int], seed: int, budget: int = 1000) -> Representation:
    """Rejection-sample arrow matrices (with random ranks) until all relations hold."""
    rng = random.Random(seed)
    F = p.field
    for _ in range(budget):
        maps = [_random_rank_matrix(F, dims[p.vertex(a.target)], dims[p.vertex(a.source)], rng)
                for a in p.quiver.arrows]
        try:
            return Representation(p, dims, maps)
        except RepError:
            continue
    raise RepError(f"no representation with dims {tuple(dims)} found within {budget} samples")


def random_sub_ses(M: Representation, seed: int, max_gens: int = 2) -> SES:
    """``0 -> A -> M -> M/A -> 0`` with ``A`` generated by random elements."""
    rng = random.Random(seed)
    F = M.field
    support = [v for v, d in enumerate(M.dims) if d]
    gens = []
    if support:
        for _ in range(rng.randint(0, max_gens)):
            v = rng.choice(support)
            gens.append((v, tuple(F.random(rng) for _ in range(M.dims[v]))))
    return ses_from_generators(M, gens)


def ses_from_generators(M: Representation, gens) -> SES:
    sub, inc = submodule_generated(M, gens)
    _, proj = quotient_by(M, [m.columns() for m in inc.mats])
    return SES(inc, proj, check=False)


# ---------------------------------------------------------------------------
# modules over structure-constant algebras


class SCModule:
    """Left module over an :class:`SCAlgebra`; ``action[i]`` is the matrix of ``b_i``."""

    def __init__(self, algebra: SCAlgebra, dim: int, action: Sequence[Matrix], check: bool = True):
        self.algebra = algebra
        self.field = algebra.field
        self.dim = dim
        self.action = tuple(action)
        if check:
            self.validate()

    def validate(self):
        A, F = self.algebra, self.field
        if len(self.action) != A.dimension:
            raise RepError("one action matrix per basis element is required")
        for m in self.action:
            if m.shape != (self.dim, self.dim):
                raise RepError("action matrix has the wrong shape")
        for i in range(A.dimension):
            for j in range(A.dimension):
                if self.action[i] @ self.action[j] != self.act(A.table[i][j]):
                    raise RepError(f"action is not multiplicative on ({i}, {j})")
        if self.act(A.unit) != Matrix.identity(F, self.dim):
            raise RepError("unit does not act as the identity")

    def act(self, x: Sequence) -> Matrix:
        return lin_comb(self.field, x, self.action, self.dim, self.dim)

    def is_zero(self) -> bool:
        return self.dim == 0

    @cached_property
    def key(self) -> str:
        return _digest("sc", self.field.to_spec(), self.algebra.table, self.algebra.unit,
                       tuple(m.rows for m in self.action))

    def __repr__(self) -> str:
        return f"SCModule(dim={self.dim}, algebra_dim={self.algebra.dimension})"


def regular_module(a: SCAlgebra) -> SCModule:
    return SCModule(a, a.dimension, a.left_regular, check=False)


def sc_direct_sum(a: SCAlgebra, mods: Sequence[SCModule]) -> SCModule:
    dim = sum(m.dim for m in mods)
    if not mods:
        return SCModule(a, 0, [Matrix.zeros(a.field, 0, 0)] * a.dimension, check=False)
    action = [Matrix.block_diagonal(a.field, [m.action[i] for m in mods]) for i in range(a.dimension)]
    return SCModule(a, dim, action, check=False)


def sc_module_of(M: Representation, sc: SCAlgebra | None = None) -> SCModule:
    """The representation as a module over the structure-constant form of its algebra."""
    A, F = M.algebra, M.field
    sc = sc or A.sc
    n = M.total_dim
    off = M.offsets
    action = []
    for i, b in enumerate(A.basis):
        rows = [[F.zero] * n for _ in range(n)]
        bm = M.basis_matrix(i)
        for r in range(bm.nrows):
            for c in range(bm.ncols):
                rows[off[b.target] + r][off[b.source] + c] = bm.rows[r][c]
        action.append(Matrix(F, rows, n) if n else Matrix.zeros(F, 0, 0))
    return SCModule(sc, n, action, check=False)


def sc_hom(X: SCModule, Y: SCModule) -> list[Matrix]:
    """Basis of ``Hom_S(X, Y)`` as ``dim Y x dim X`` matrices."""
    if X.algebra != Y.algebra:
        raise RepError("Hom between modules over different algebras")
    F = X.field
    nx, ny = X.dim, Y.dim
    nvars = nx * ny
    if nvars == 0:
        return []
    rows = []
    for Xa, Ya in zip(X.action, Y.action):
        # (Y_a Z - Z X_a)[i, j]
        for i in range(ny):
            for j in range(nx):
                row = [F.zero] * nvars
                for k in range(ny):
                    c = Ya.rows[i][k]
                    if c:
                        row[k * nx + j] += c
                for k in range(nx):
                    c = Xa.rows[k][j]
                    if c:
                        row[i * nx + k] -= c
                if any(row):
                    rows.append([F(x) for x in row])
    if rows:
        basis = kernel_basis(Matrix(F, rows, nvars))
    else:
        basis = [tuple(F.one if i == j else F.zero for i in range(nvars)) for j in range(nvars)]
    return [Matrix(F, [vec[i * nx:(i + 1) * nx] for i in range(ny)], nx) for vec in basis]


def sc_submodule(X: SCModule, basis: Sequence[tuple]) -> SCModule:
    """Module structure on an invariant subspace (given by a basis)."""
    F = X.field
    co = Coordinates(F, basis, X.dim)
    if not basis:
        return SCModule(X.algebra, 0, [Matrix.zeros(F, 0, 0)] * X.algebra.dimension, check=False)
    action = [co.matrix([m.apply(b) for b in basis]) for m in X.action]
    return SCModule(X.algebra, len(basis), action, check=False)
