"""Quivers, path algebras with admissible relations, and structure-constant algebras.

Paths are tuples of arrow names written in composition order: ``("b", "a")``
is the path "first ``a``, then ``b``".  The trivial path at a vertex is the
empty tuple (with explicit source/target).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Sequence

from .exactla import (
    Coordinates,
    Field,
    Matrix,
    extend_independent,
    kernel_basis,
    rank,
    span_basis,
)


class AlgebraError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise AlgebraError("vertex labels must be distinct")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise AlgebraError("arrow names must be distinct")
        vs = set(self.vertices)
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise AlgebraError(f"arrow {a.name} has an undeclared endpoint")

    @classmethod
    def from_edges(cls, vertices: Sequence, arrows: Sequence[tuple]) -> Quiver:
        return cls(tuple(str(v) for v in vertices), tuple(Arrow(str(n), str(s), str(t)) for n, s, t in arrows))

    @cached_property
    def vertex_index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.arrows)}

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[self.arrow_index[name]]
        except KeyError:
            raise AlgebraError(f"unknown arrow {name!r}") from None

    def path_endpoints(self, path: Sequence[str]) -> tuple[str, str]:
        """(source, target) of a nonempty composable path; raises if not composable."""
        if not path:
            raise AlgebraError("empty path has no intrinsic endpoints")
        arrows = [self.arrow(n) for n in path]
        # applied right to left
        for first, then in zip(reversed(arrows), list(reversed(arrows))[1:]):
            if first.target != then.source:
                raise AlgebraError(f"path {'*'.join(path)} is not composable")
        return arrows[-1].source, arrows[0].target


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length at least two."""

    terms: tuple[tuple[object, tuple[str, ...]], ...]


@dataclass(frozen=True)
class BasisPath:
    source: int
    target: int
    arrows: tuple[str, ...]

    @property
    def length(self) -> int:
        return len(self.arrows)


class PresentedAlgebra:
    """``kQ / I`` where ``I`` is generated by the relations and all paths of length >= L.

    Attributes of interest: ``basis`` (residue paths), ``between[(s, t)]``
    (basis indices of paths from ``s`` to ``t``) and :meth:`product`.
    """

    def __init__(self, field_: Field, quiver: Quiver, relations: Sequence[Relation], length_bound: int):
        if length_bound < 1:
            raise AlgebraError("length bound must be at least 1")
        self.field = field_
        self.quiver = quiver
        self.length_bound = length_bound
        self.relations = tuple(self._check_relation(r) for r in relations)
        self._build()

    # -- construction -------------------------------------------------------

    def _check_relation(self, rel: Relation) -> Relation:
        q = self.quiver
        ends = set()
        terms = []
        for coef, path in rel.terms:
            path = tuple(path)
            if len(path) < 2:
                raise AlgebraError(f"relation term {path} has length < 2; the ideal would not be admissible")
            ends.add(q.path_endpoints(path))
            terms.append((self.field(coef), path))
        if len(ends) != 1:
            raise AlgebraError("relation mixes paths with different endpoints")
        if all(c == 0 for c, _ in terms):
            raise AlgebraError("relation has no nonzero coefficient")
        return Relation(tuple(terms))

    def _build(self):
        q, F, L = self.quiver, self.field, self.length_bound
        vi = q.vertex_index
        n = len(q.vertices)
        # all paths of length < L grouped by endpoints
        free: dict[tuple[int, int], list[tuple[str, ...]]] = {(s, t): [] for s in range(n) for t in range(n)}
        layer = [(v, v, ()) for v in range(n)]
        for length in range(L):
            for s, t, p in layer:
                free[(s, t)].append(p)
            if length == L - 1:
                break
            nxt = []
            for s, t, p in layer:
                for a in q.arrows:
                    if vi[a.source] == t:
                        nxt.append((s, vi[a.target], (a.name,) + p))
            layer = nxt
        for key in free:
            free[key].sort(key=lambda p: (len(p), p))
        self._free = free
        self._free_index = {key: {p: i for i, p in enumerate(paths)} for key, paths in free.items()}

        # ideal generators p * r * q, truncated at length L
        ideal: dict[tuple[int, int], list[tuple]] = {key: [] for key in free}
        for rel in self.relations:
            rs, rt = (vi[x] for x in q.path_endpoints(rel.terms[0][1]))
            for s in range(n):
                for q_path in free[(s, rs)]:
                    for t in range(n):
                        for p_path in free[(rt, t)]:
                            idx = self._free_index[(s, t)]
                            vec = [F.zero] * len(free[(s, t)])
                            nonzero = False
                            for coef, path in rel.terms:
                                full = p_path + path + q_path
                                if len(full) < L:
                                    j = idx[full]
                                    vec[j] = F(vec[j] + coef)
                                    nonzero = nonzero or vec[j] != 0
                            if nonzero:
                                ideal[(s, t)].append(tuple(vec))

        self._normal: dict[tuple[int, int], tuple] = {}
        chosen: list[BasisPath] = []
        for (s, t), paths in free.items():
            dim = len(paths)
            if dim == 0:
                continue
            ib = span_basis(F, ideal[(s, t)], dim)
            units = [tuple(F.one if i == j else F.zero for i in range(dim)) for j in range(dim)]
            keep = extend_independent(F, dim, ib, units)
            for j in keep:
                chosen.append(BasisPath(s, t, paths[j]))
            self._normal[(s, t)] = (Coordinates(F, ib + [units[j] for j in keep], dim), len(ib), keep)
        chosen.sort(key=lambda b: (b.length, b.source, b.target, b.arrows))
        self.basis: list[BasisPath] = chosen
        self.basis_index = {(b.source, b.target, b.arrows): i for i, b in enumerate(chosen)}
        self.between: dict[tuple[int, int], list[int]] = {key: [] for key in free}
        for i, b in enumerate(chosen):
            self.between[(b.source, b.target)].append(i)
        self._mult: dict[tuple[int, int], dict[int, object]] = {}
        for i, bi in enumerate(chosen):
            for j, bj in enumerate(chosen):
                if bi.source == bj.target:
                    prod = self.reduce_path(bj.source, bi.target, bi.arrows + bj.arrows)
                    if prod:
                        self._mult[(i, j)] = prod

    # -- queries --------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def num_vertices(self) -> int:
        return len(self.quiver.vertices)

    def vertex(self, label) -> int:
        try:
            return self.quiver.vertex_index[str(label)]
        except KeyError:
            raise AlgebraError(f"unknown vertex {label!r}") from None

    def idempotent(self, v: int) -> int:
        return self.basis_index[(v, v, ())]

    def has_relations(self) -> bool:
        return bool(self.relations)

    def reduce_path(self, s: int, t: int, path: tuple[str, ...]) -> dict[int, object]:
        """Express a path from ``s`` to ``t`` in the residue basis (``{basis index: coef}``)."""
        if len(path) >= self.length_bound:
            return {}
        coords, nideal, keep = self._normal[(s, t)]
        dim = len(self._free[(s, t)])
        j = self._free_index[(s, t)][path]
        e = [self.field.zero] * dim
        e[j] = self.field.one
        c = coords.coords(e, check=False)[nideal:]
        paths = self._free[(s, t)]
        out = {}
        for coef, k in zip(c, keep):
            if coef != 0:
                out[self.basis_index[(s, t, paths[k])]] = coef
        return out

    def product(self, i: int, j: int) -> dict[int, object]:
        """``b_i * b_j`` (``b_j`` applied first) in the basis."""
        return self._mult.get((i, j), {})

    def arrow_times(self, arrow: str, i: int) -> dict[int, object]:
        """Left multiplication of basis path ``i`` by an arrow."""
        a = self.quiver.arrow(arrow)
        b = self.basis[i]
        if self.vertex(a.source) != b.target:
            return {}
        return self.reduce_path(b.source, self.vertex(a.target), (arrow,) + b.arrows)

    def paths_of_length(self, length: int) -> list[tuple[int, int, tuple[str, ...]]]:
        """All (not reduced) paths of exactly ``length`` arrows."""
        q, vi = self.quiver, self.quiver.vertex_index
        layer = [(v, v, ()) for v in range(self.num_vertices)]
        for _ in range(length):
            layer = [(s, vi[a.target], (a.name,) + p) for s, t, p in layer for a in q.arrows if vi[a.source] == t]
        return layer

    def with_field(self, field_: Field) -> PresentedAlgebra:
        """The same presentation over another field (coefficients are coerced)."""
        rels = []
        for r in self.relations:
            rels.append(Relation(tuple((_lift_scalar(self.field, c), p) for c, p in r.terms)))
        return PresentedAlgebra(field_, self.quiver, rels, self.length_bound)

    def label(self, i: int) -> str:
        b = self.basis[i]
        if not b.arrows:
            return f"e{self.quiver.vertices[b.source]}"
        return "".join(b.arrows)

    @cached_property
    def sc(self) -> SCAlgebra:
        return to_sc_algebra(self)

    def __repr__(self) -> str:
        return f"PresentedAlgebra(dim={self.dimension}, vertices={list(self.quiver.vertices)}, field={self.field})"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "field": self.field.to_spec(),
            "quiver": {
                "vertices": list(self.quiver.vertices),
                "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.quiver.arrows],
            },
            "relations": [
                {"terms": [{"coef": self.field.format(c), "path": list(p)} for c, p in r.terms]} for r in self.relations
            ],
            "lengthBound": self.length_bound,
        }

    @classmethod
    def from_json(cls, data: dict, field_: Field | None = None) -> PresentedAlgebra:
        field_ = field_ or Field.from_spec(data.get("field", {"kind": "Q"}))
        qd = data["quiver"]
        quiver = Quiver.from_edges(qd["vertices"], [(a["name"], a["from"], a["to"]) for a in qd["arrows"]])
        rels = [
            Relation(tuple((Fraction(t.get("coef", "1")), tuple(t["path"])) for t in r["terms"]))
            for r in data.get("relations", [])
        ]
        return build_presented_algebra(quiver, rels, int(data["lengthBound"]), field_)


def _lift_scalar(field_: Field, c):
    """A rational preimage of a field element (the residue itself for F_p)."""
    return Fraction(c)


def build_presented_algebra(quiver: Quiver, relations: Sequence[Relation], length_bound: int,
                            field_: Field | None = None) -> PresentedAlgebra:
    return PresentedAlgebra(field_ or Field.rationals(), quiver, relations, length_bound)


def path_algebra(vertices, arrows, relations=(), length_bound=None, field_: Field | None = None) -> PresentedAlgebra:
    """Convenience builder; ``relations`` are lists of ``(coef, path)`` pairs."""
    quiver = Quiver.from_edges(vertices, arrows)
    if length_bound is None:
        length_bound = len(quiver.vertices)
    rels = [Relation(tuple((c, tuple(p)) for c, p in r)) for r in relations]
    return build_presented_algebra(quiver, rels, length_bound, field_)


# ---------------------------------------------------------------------------
# structure-constant algebras


class SCAlgebra:
    """Finite-dimensional associative unital algebra given by structure constants.

    ``table[i][j]`` is the coordinate vector of ``b_i * b_j``.
    """

    def __init__(self, field_: Field, table: Sequence[Sequence[Sequence]], unit: Sequence,
                 labels: Sequence[str] | None = None, check: bool = True):
        self.field = field_
        self.dimension = len(unit)
        self.table = tuple(tuple(tuple(field_(x) for x in v) for v in row) for row in table)
        self.unit = tuple(field_(x) for x in unit)
        self.labels = tuple(labels) if labels is not None else tuple(f"b{i}" for i in range(self.dimension))
        if check:
            self.check()

    def check(self):
        n = self.dimension
        if len(self.table) != n or any(len(r) != n for r in self.table):
            raise AlgebraError("structure table has the wrong shape")
        for i, j, k in itertools.product(range(n), repeat=3):
            lhs = self.mul(self.table[i][j], self.basis_vector(k))
            rhs = self.mul(self.basis_vector(i), self.table[j][k])
            if lhs != rhs:
                raise AlgebraError(f"associativity fails on ({i}, {j}, {k})")
        for i in range(n):
            b = self.basis_vector(i)
            if self.mul(self.unit, b) != b or self.mul(b, self.unit) != b:
                raise AlgebraError(f"unit law fails on basis element {i}")

    def basis_vector(self, i: int) -> tuple:
        z, o = self.field.zero, self.field.one
        return tuple(o if k == i else z for k in range(self.dimension))

    def zero_vector(self) -> tuple:
        return (self.field.zero,) * self.dimension

    def mul(self, x: Sequence, y: Sequence) -> tuple:
        F = self.field
        acc = [F.zero] * self.dimension
        for i, xi in enumerate(x):
            if xi == 0:
                continue
            row = self.table[i]
            for j, yj in enumerate(y):
                if yj == 0:
                    continue
                c = xi * yj
                for k, t in enumerate(row[j]):
                    if t:
                        acc[k] += c * t
        return tuple(F(a) for a in acc)

    def add(self, x, y) -> tuple:
        return tuple(self.field(a + b) for a, b in zip(x, y))

    def scale(self, c, x) -> tuple:
        return tuple(self.field(c * a) for a in x)

    def left_matrix(self, x) -> Matrix:
        """Matrix of ``y -> x y``."""
        return Matrix.from_columns(self.field, [self.mul(x, self.basis_vector(j)) for j in range(self.dimension)],
                                   self.dimension)

    def right_matrix(self, x) -> Matrix:
        """Matrix of ``y -> y x``."""
        return Matrix.from_columns(self.field, [self.mul(self.basis_vector(j), x) for j in range(self.dimension)],
                                   self.dimension)

    @cached_property
    def left_regular(self) -> tuple[Matrix, ...]:
        return tuple(self.left_matrix(self.basis_vector(i)) for i in range(self.dimension))

    def is_commutative(self) -> bool:
        n = self.dimension
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(i + 1, n))

    def opposite(self) -> SCAlgebra:
        n = self.dimension
        table = [[self.table[j][i] for j in range(n)] for i in range(n)]
        return SCAlgebra(self.field, table, self.unit, self.labels, check=False)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SCAlgebra):
            return NotImplemented
        return self.field == other.field and self.table == other.table and self.unit == other.unit

    def __hash__(self):
        return hash((self.field, self.table, self.unit))

    def __repr__(self) -> str:
        return f"SCAlgebra(dim={self.dimension}, field={self.field})"

    @cached_property
    def structure(self) -> BasicStructure | None:
        """Radical and primitive idempotents when the algebra is split basic, else ``None``."""
        try:
            return basic_structure(self)
        except AlgebraError:
            return None


def to_sc_algebra(p: PresentedAlgebra) -> SCAlgebra:
    n = p.dimension
    z = p.field.zero
    table = []
    for i in range(n):
        row = []
        for j in range(n):
            v = [z] * n
            for k, c in p.product(i, j).items():
                v[k] = c
            row.append(v)
        table.append(row)
    unit = [z] * n
    for v in range(p.num_vertices):
        unit[p.idempotent(v)] = p.field.one
    return SCAlgebra(p.field, table, unit, [p.label(i) for i in range(n)])


def opposite_algebra(a: SCAlgebra) -> SCAlgebra:
    return a.opposite()


def endomorphism_algebra(U):
    """``End(U)`` with product ``s * t = s o t``; returns the algebra and its basis of maps."""
    from .rep import hom_space

    basis = hom_space(U, U)
    F = U.field
    flat = [m.flatten() for m in basis]
    coords = Coordinates(F, flat, sum(d * d for d in U.dims))
    table = [[coords.coords(s.compose_after(t).flatten()) for t in basis] for s in basis]
    unit = coords.coords(U.identity().flatten())
    return SCAlgebra(F, table, unit, [f"s{i}" for i in range(len(basis))]), basis


# ---------------------------------------------------------------------------
# radical and idempotents of split basic algebras


@dataclass
class BasicStructure:
    radical: list[tuple]
    idempotents: list[tuple]
    characters: list[tuple]  # characters[i][m]: scalar by which b_m acts on the i-th simple

    @property
    def num_simples(self) -> int:
        return len(self.idempotents)


def radical_basis(a: SCAlgebra, extra_reps: Sequence[Sequence[Matrix]] = ()) -> list[tuple]:
    """Jacobson radical via trace forms, certified by nilpotency.

    Every radical element has vanishing trace forms in every representation, so
    the common null space contains the radical; if it is moreover a nilpotent
    ideal it *is* the radical.  Raises :class:`AlgebraError` when the candidate
    cannot be certified (possible in small characteristic).
    """
    F, n = a.field, a.dimension
    reps = [a.left_regular, tuple(a.right_matrix(a.basis_vector(i)) for i in range(n))] + [tuple(r) for r in extra_reps]
    rows = []
    for rep in reps:
        for k in range(n):
            rows.append([F(_trace_product(rep[m], rep[k])) for m in range(n)])
    cand = kernel_basis(Matrix(F, rows, n)) if rows else [a.basis_vector(i) for i in range(n)]
    if not _is_ideal(a, cand):
        raise AlgebraError("trace-form candidate is not an ideal")
    if not _is_nilpotent(a, cand):
        raise AlgebraError("trace-form candidate is not nilpotent; radical not certified")
    return cand


def _trace_product(x: Matrix, y: Matrix):
    return sum(x.rows[i][k] * y.rows[k][i] for i in range(x.nrows) for k in range(x.ncols))


def _is_ideal(a: SCAlgebra, vecs) -> bool:
    if not vecs:
        return True
    co = Coordinates(a.field, vecs, a.dimension)
    for v in vecs:
        for i in range(a.dimension):
            b = a.basis_vector(i)
            if not co.contains(a.mul(b, v)) or not co.contains(a.mul(v, b)):
                return False
    return True


def _is_nilpotent(a: SCAlgebra, vecs) -> bool:
    power = list(vecs)
    for _ in range(a.dimension + 1):
        if not power:
            return True
        prods = [a.mul(x, y) for x in vecs for y in power]
        nxt = span_basis(a.field, prods, a.dimension)
        if len(nxt) == len(power):
            return False
        power = nxt
    return not power


def basic_structure(a: SCAlgebra, extra_reps: Sequence[Sequence[Matrix]] = ()) -> BasicStructure:
    """Radical, complete primitive orthogonal idempotents and simple characters.

    Only split basic algebras (semisimple quotient a product of copies of the
    ground field) are handled; anything else raises :class:`AlgebraError`.
    """
    F, n = a.field, a.dimension
    rad = radical_basis(a, extra_reps)
    units = [a.basis_vector(i) for i in range(n)]
    keep = extend_independent(F, n, rad, units)
    comp = [units[j] for j in keep]
    k = len(comp)
    co = Coordinates(F, rad + comp, n)

    def proj(x):
        return co.coords(x)[len(rad):]

    def lift(y):
        out = a.zero_vector()
        for c, q in zip(y, comp):
            if c:
                out = a.add(out, a.scale(c, q))
        return out

    # semisimple quotient as an SC algebra
    qtable = [[proj(a.mul(comp[i], comp[j])) for j in range(k)] for i in range(k)]
    quot = SCAlgebra(F, qtable, proj(a.unit), check=False)
    if not quot.is_commutative():
        raise AlgebraError("semisimple quotient is not commutative (algebra is not basic)")
    prims = _split_commutative(quot)
    if len(prims) != k:
        raise AlgebraError("semisimple quotient does not split over the ground field")

    # lift to orthogonal idempotents of a
    idems = []
    f = a.unit
    for e_bar in prims[:-1]:
        x = lift(e_bar)
        x = a.mul(a.mul(f, x), f)
        x = _make_idempotent(a, x)
        idems.append(x)
        f = a.add(f, a.scale(-1, x))
    idems.append(f)
    if not _is_idempotent(a, f):
        raise AlgebraError("idempotent lifting failed")
    # characters: b_m e_i = chi_i(b_m) e_i mod rad
    chars = []
    for e in idems:
        e_bar = proj(e)
        piv = next(i for i, c in enumerate(e_bar) if c != 0)
        row = []
        for m in range(n):
            v = proj(a.mul(units[m], e))
            row.append(F(v[piv] * F.inv(e_bar[piv])))
        chars.append(tuple(row))
    return BasicStructure(rad, idems, chars)


def _is_idempotent(a: SCAlgebra, x) -> bool:
    return a.mul(x, x) == tuple(x)


def _make_idempotent(a: SCAlgebra, x, max_iter: int = 64):
    for _ in range(max_iter):
        x2 = a.mul(x, x)
        if x2 == tuple(x):
            return x
        x3 = a.mul(x2, x)
        x = a.add(a.scale(3, x2), a.scale(-2, x3))
    raise AlgebraError("idempotent iteration did not converge")


def _split_commutative(c: SCAlgebra) -> list[tuple]:
    """Primitive idempotents of a commutative semisimple split algebra."""
    F = c.field
    done, work = [], [c.unit]
    while work:
        f = work.pop()
        corner = span_basis(F, [c.mul(f, c.basis_vector(m)) for m in range(c.dimension)], c.dimension)
        if len(corner) <= 1:
            done.append(f)
            continue
        for m in range(c.dimension):
            x = c.mul(f, c.basis_vector(m))
            pieces = _split_by_element(c, f, x)
            if pieces is None:
                raise AlgebraError("element with non-split minimal polynomial")
            if len(pieces) > 1:
                work.extend(pieces)
                break
        else:
            raise AlgebraError("could not split a corner of the semisimple quotient")
    done.sort(key=lambda v: tuple((str(type(t)), t) for t in v))
    return done


def _split_by_element(c: SCAlgebra, f, x):
    """Split idempotent ``f`` along eigenvalues of ``x`` in ``fC``; None if not split."""
    F = c.field
    powers = [f]
    while True:
        nxt = c.mul(powers[-1], x)
        m = Matrix.from_columns(F, powers + [nxt], c.dimension)
        ker = kernel_basis(m)
        if ker:
            rel = ker[0]
            lead = rel[-1]
            poly = [F(r * F.inv(lead)) for r in rel]  # monic, low degree first
            break
        powers.append(nxt)
    roots = _roots(F, poly)
    if len(roots) != len(poly) - 1:
        return None
    if len(roots) == 1:
        return [f]
    out = []
    for lam in roots:
        e = f
        for mu in roots:
            if mu == lam:
                continue
            factor = c.add(x, c.scale(-mu, f))
            e = c.scale(F.inv(F(lam - mu)), c.mul(e, factor))
        out.append(e)
    return out


def _roots(F: Field, poly: list) -> list:
    """Distinct roots of a polynomial (coefficients low degree first)."""
    def ev(t):
        acc = F.zero
        for coef in reversed(poly):
            acc = F(acc * t + coef)
        return acc

    if F.is_prime:
        if F.characteristic > 100_000:
            raise AlgebraError("root search only implemented for small primes")
        return [t for t in range(F.characteristic) if ev(t) == 0]
    den = 1
    for coef in poly:
        den = den * Fraction(coef).denominator // gcd(den, Fraction(coef).denominator)
    ints = [int(Fraction(coef) * den) for coef in poly]
    while ints and ints[0] == 0:
        ints = ints[1:]
    roots = [F.zero] if len(ints) < len(poly) else []
    if len(ints) <= 1:
        return roots
    a0, an = abs(ints[0]), abs(ints[-1])
    cands = set()
    for p_ in _divisors(a0):
        for q_ in _divisors(an):
            cands.add(Fraction(p_, q_))
            cands.add(Fraction(-p_, q_))
    roots += sorted(t for t in cands if ev(t) == 0)
    return roots


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            out.append(n // d)
        d += 1
    return sorted(set(out))
