"""Exact scalar fields and dense linear algebra over them.

Two fields are supported: the rationals (scalars are :class:`fractions.Fraction`)
and prime fields ``F_p`` (scalars are ``int`` in ``range(p)``).  Nothing in this
package touches floating point.

Vectors are plain tuples of scalars; :class:`Matrix` is an immutable dense
matrix.  Basis-producing routines (:func:`kernel_basis`, :func:`image_basis`,
:func:`quotient_basis`) make no promise about *which* basis they return, only
about the space it spans.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

Scalar = "int | Fraction"
Vector = tuple


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


@dataclass(frozen=True)
class Field:
    """``Field("Q")`` or ``Field("Fp", p)``."""

    kind: str
    characteristic: int = 0

    def __post_init__(self):
        if self.kind == "Q":
            if self.characteristic != 0:
                raise ValueError("the rationals have characteristic 0")
        elif self.kind == "Fp":
            if not _is_prime(self.characteristic):
                raise ValueError(f"{self.characteristic} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> Field:
        return cls("Q")

    @classmethod
    def prime(cls, p: int) -> Field:
        return cls("Fp", p)

    @classmethod
    def from_spec(cls, spec) -> Field:
        """Accept ``{"kind": "Q"}``, ``{"kind": "Fp", "p": 5}``, ``"q"`` or ``"fp:5"``."""
        if isinstance(spec, Field):
            return spec
        if isinstance(spec, str):
            s = spec.strip().lower()
            if s in ("q", "qq", "rationals"):
                return cls.rationals()
            if s.startswith("fp:") or s.startswith("f"):
                return cls.prime(int(s.split(":")[-1].lstrip("fp")))
            raise ValueError(f"cannot parse field {spec!r}")
        kind = spec.get("kind")
        if kind in ("Q", "q"):
            return cls.rationals()
        if kind in ("Fp", "fp", "F"):
            return cls.prime(int(spec["p"]))
        raise ValueError(f"cannot parse field {spec!r}")

    def to_spec(self) -> dict:
        if self.is_prime:
            return {"kind": "Fp", "p": self.characteristic}
        return {"kind": "Q"}

    @property
    def is_prime(self) -> bool:
        return self.kind == "Fp"

    @property
    def zero(self):
        return 0 if self.is_prime else Fraction(0)

    @property
    def one(self):
        return 1 if self.is_prime else Fraction(1)

    def __call__(self, value):
        """Coerce an int, Fraction or string into this field."""
        if isinstance(value, str):
            return self.parse(value)
        if self.is_prime:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, self.characteristic) % self.characteristic
            return int(value) % self.characteristic
        return Fraction(value)

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.is_prime:
            return pow(a, -1, self.characteristic)
        return 1 / a

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            num, den = text.split("/")
            return self(Fraction(int(num), int(den)))
        return self(int(text))

    def format(self, a) -> str:
        if self.is_prime:
            return str(a % self.characteristic)
        a = Fraction(a)
        return f"{a.numerator}/{a.denominator}"

    def random(self, rng: random.Random, spread: int = 3):
        """A random scalar; rationals are drawn from small integers."""
        if self.is_prime:
            return rng.randrange(self.characteristic)
        return Fraction(rng.randint(-spread, spread))

    def random_nonzero(self, rng: random.Random, spread: int = 3):
        while True:
            a = self.random(rng, spread)
            if a != 0:
                return a

    def elements(self) -> list:
        if not self.is_prime:
            raise ValueError("the rationals cannot be enumerated")
        return list(range(self.characteristic))

    def __str__(self) -> str:
        return f"F{self.characteristic}" if self.is_prime else "Q"


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "rows", "nrows", "ncols", "_hash")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None, *, _trusted=False):
        self.field = field
        if _trusted:
            self.rows = rows
        else:
            self.rows = tuple(tuple(field(x) for x in row) for row in rows)
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            if any(len(r) != self.ncols for r in self.rows):
                raise ValueError("ragged matrix rows")
            if ncols is not None and ncols != self.ncols:
                raise ValueError("column count mismatch")
        else:
            self.ncols = ncols or 0
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _wrap(cls, field, rows, ncols):
        return cls(field, tuple(tuple(r) for r in rows), ncols, _trusted=True)

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> Matrix:
        z = field.zero
        return cls._wrap(field, [(z,) * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls._wrap(field, [tuple(o if i == j else z for j in range(n)) for i in range(n)], n)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], nrows: int) -> Matrix:
        if not columns:
            return cls.zeros(field, nrows, 0)
        return cls._wrap(field, list(zip(*columns)), len(columns))

    @classmethod
    def block_diagonal(cls, field: Field, blocks: Sequence[Matrix]) -> Matrix:
        nr = sum(b.nrows for b in blocks)
        nc = sum(b.ncols for b in blocks)
        z = field.zero
        out = [[z] * nc for _ in range(nr)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls._wrap(field, out, nc)

    @classmethod
    def random(cls, field: Field, nrows: int, ncols: int, rng: random.Random) -> Matrix:
        return cls._wrap(field, [[field.random(rng) for _ in range(ncols)] for _ in range(nrows)], ncols)

    # -- basic protocol -----------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.shape, self.rows))
        return self._hash

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(x) for x in row) for row in self.rows)
        return f"Matrix<{self.nrows}x{self.ncols} over {self.field}>[{body}]"

    def column(self, j: int) -> tuple:
        return tuple(row[j] for row in self.rows)

    def columns(self) -> list[tuple]:
        if not self.nrows:
            return [() for _ in range(self.ncols)]
        return [tuple(c) for c in zip(*self.rows)]

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.rows for x in row)

    def to_lists(self) -> list[list[str]]:
        return [[self.field.format(x) for x in row] for row in self.rows]

    # -- arithmetic ---------------------------------------------------------

    def _check_field(self, other: Matrix):
        if self.field != other.field:
            raise ValueError("matrices over different fields")

    def __add__(self, other: Matrix) -> Matrix:
        self._check_field(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")
        red = _reducer(self.field)
        return Matrix._wrap(self.field, [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> Matrix:
        red = _reducer(self.field)
        return Matrix._wrap(self.field, [[red(-a) for a in r] for r in self.rows], self.ncols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, c) -> Matrix:
        c = self.field(c)
        red = _reducer(self.field)
        return Matrix._wrap(self.field, [[red(c * a) for a in r] for r in self.rows], self.ncols)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            self._check_field(other)
            if self.ncols != other.nrows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            red = _reducer(self.field)
            z = self.field.zero
            cols = other.columns()
            out = []
            for r in self.rows:
                out.append([red(sum((a * b for a, b in zip(r, c) if a and b), z)) for c in cols])
            return Matrix._wrap(self.field, out, other.ncols)
        return self.apply(other)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        red = _reducer(self.field)
        z = self.field.zero
        return tuple(red(sum((a * b for a, b in zip(r, v) if a and b), z)) for r in self.rows)

    @property
    def T(self) -> Matrix:
        return Matrix._wrap(self.field, list(zip(*self.rows)) if self.nrows else [], self.nrows) \
            if self.nrows else Matrix.zeros(self.field, self.ncols, 0)

    def hstack(self, *others: Matrix) -> Matrix:
        rows = [list(r) for r in self.rows]
        nc = self.ncols
        for o in others:
            if o.nrows != self.nrows:
                raise ValueError("row count mismatch in hstack")
            for r, s in zip(rows, o.rows):
                r.extend(s)
            nc += o.ncols
        return Matrix._wrap(self.field, rows, nc)

    def vstack(self, *others: Matrix) -> Matrix:
        rows = list(self.rows)
        for o in others:
            if o.ncols != self.ncols:
                raise ValueError("column count mismatch in vstack")
            rows.extend(o.rows)
        return Matrix._wrap(self.field, rows, self.ncols)

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> Matrix:
        return Matrix._wrap(self.field, [[self.rows[i][j] for j in cols] for i in rows], len(cols))


def _reducer(field: Field):
    if field.is_prime:
        p = field.characteristic
        return lambda x: x % p
    return lambda x: x


def _rref(field: Field, rows: list[list], ncols: int) -> list[int]:
    """Reduce ``rows`` in place to reduced row echelon form; return pivot columns.

    Rows past ``len(pivots)`` are zero afterwards.
    """
    pivots: list[int] = []
    nrows = len(rows)
    r = 0
    if field.is_prime:
        p = field.characteristic
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if rows[i][c] % p), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            prow = rows[r]
            inv = pow(prow[c], -1, p)
            if inv != 1:
                prow = rows[r] = [(x * inv) % p for x in prow]
            for i in range(nrows):
                if i != r:
                    f = rows[i][c]
                    if f:
                        row = rows[i]
                        rows[i] = [(a - f * b) % p for a, b in zip(row, prow)]
            pivots.append(c)
            r += 1
    else:
        for c in range(ncols):
            if r == nrows:
                break
            piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            prow = rows[r]
            pv = prow[c]
            if pv != 1:
                prow = rows[r] = [x / pv for x in prow]
            for i in range(nrows):
                if i != r:
                    f = rows[i][c]
                    if f:
                        row = rows[i]
                        rows[i] = [a - f * b if b else a for a, b in zip(row, prow)]
            pivots.append(c)
            r += 1
    return pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    rows = [list(r) for r in m.rows]
    pivots = _rref(m.field, rows, m.ncols)
    return Matrix._wrap(m.field, rows, m.ncols), pivots


def rank(m: Matrix) -> int:
    if m.nrows == 0 or m.ncols == 0:
        return 0
    # eliminate along the shorter side
    rows = [list(r) for r in (m.rows if m.nrows <= m.ncols else m.T.rows)]
    return len(_rref(m.field, rows, len(rows[0])))


def kernel_basis(m: Matrix) -> list[tuple]:
    """Basis of ``{x : m x = 0}`` as column vectors."""
    field = m.field
    n = m.ncols
    rows = [list(r) for r in m.rows]
    pivots = _rref(field, rows, n)
    pivset = set(pivots)
    z, one = field.zero, field.one
    red = _reducer(field)
    basis = []
    for free in range(n):
        if free in pivset:
            continue
        v = [z] * n
        v[free] = one
        for i, pc in enumerate(pivots):
            v[pc] = red(-rows[i][free])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """Some ``x`` with ``m x = b``, or ``None`` when the system is inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {m.nrows}")
    field = m.field
    n = m.ncols
    rows = [list(r) + [field(x)] for r, x in zip(m.rows, b)]
    pivots = _rref(field, rows, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [field.zero] * n
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][n]
    return tuple(x)


def image_basis(m: Matrix) -> list[tuple]:
    """A basis of the column space, taken from the columns of ``m``."""
    if m.nrows == 0:
        return []
    rows = [list(r) for r in m.rows]
    pivots = _rref(m.field, rows, m.ncols)
    cols = m.columns()
    return [cols[j] for j in pivots]


def span_basis(field: Field, vectors: Sequence[Sequence], dim: int) -> list[tuple]:
    """A basis (subset of ``vectors``) of their span inside ``field^dim``."""
    if not vectors:
        return []
    return image_basis(Matrix.from_columns(field, [tuple(v) for v in vectors], dim))


def quotient_basis(field: Field, ambient_dim: int, subspace: Sequence[Sequence]) -> list[tuple]:
    """Standard basis vectors completing a basis of ``subspace`` to the ambient space."""
    z, one = field.zero, field.one
    units = []
    for j in range(ambient_dim):
        e = [z] * ambient_dim
        e[j] = one
        units.append(tuple(e))
    vecs = [tuple(v) for v in subspace]
    for v in vecs:
        if len(v) != ambient_dim:
            raise ValueError("subspace vector outside the ambient space")
    m = Matrix.from_columns(field, vecs + units, ambient_dim)
    rows = [list(r) for r in m.rows]
    pivots = _rref(field, rows, m.ncols)
    k = len(vecs)
    return [units[j - k] for j in pivots if j >= k]


def extend_independent(field: Field, dim: int, base: Sequence[Sequence], candidates: Sequence[Sequence]) -> list[int]:
    """Indices of candidates that, scanned in order, are independent modulo ``base`` and each other."""
    base = [tuple(v) for v in base]
    m = Matrix.from_columns(field, base + [tuple(c) for c in candidates], dim)
    rows = [list(r) for r in m.rows]
    pivots = _rref(field, rows, m.ncols)
    k = len(base)
    return [j - k for j in pivots if j >= k]


def is_invertible(m: Matrix) -> bool:
    return m.nrows == m.ncols and rank(m) == m.nrows


def inverse(m: Matrix) -> Matrix:
    if m.nrows != m.ncols:
        raise ValueError("only square matrices are invertible")
    n = m.nrows
    aug = m.hstack(Matrix.identity(m.field, n))
    rows = [list(r) for r in aug.rows]
    pivots = _rref(m.field, rows, n)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Matrix._wrap(m.field, [r[n:] for r in rows], n)


class Coordinates:
    """Coordinates with respect to a fixed family of independent vectors.

    ``coords(v)`` returns the unique coefficients expressing ``v`` in the basis;
    with ``check=True`` (the default) it raises ``ValueError`` when ``v`` is
    not in the span.
    """

    def __init__(self, field: Field, basis: Sequence[Sequence], dim: int):
        self.field = field
        self.dim = dim
        self.basis = [tuple(b) for b in basis]
        k = len(self.basis)
        if k == 0:
            self._rows: list[int] = []
            self._inv = Matrix.zeros(field, 0, 0)
            return
        b = Matrix.from_columns(field, self.basis, dim)
        # rows of b that carry a nonsingular k x k minor
        rows = [list(r) for r in b.T.rows]
        piv = _rref(field, rows, dim)
        if len(piv) != k:
            raise ValueError("basis vectors are dependent")
        self._rows = piv
        self._inv = inverse(b.submatrix(piv, range(k)))
        self._b = b

    def __len__(self) -> int:
        return len(self.basis)

    def coords(self, v: Sequence, check: bool = True) -> tuple:
        if not self.basis:
            if check and any(x != 0 for x in v):
                raise ValueError("vector not in the (zero) span")
            return ()
        x = self._inv.apply([v[i] for i in self._rows])
        if check and self._b.apply(x) != tuple(self.field(a) for a in v):
            raise ValueError("vector not in the span")
        return x

    def contains(self, v: Sequence) -> bool:
        try:
            self.coords(v)
        except ValueError:
            return False
        return True

    def matrix(self, vectors: Sequence[Sequence], check: bool = True) -> Matrix:
        """Coordinate matrix whose columns are the coordinates of ``vectors``."""
        return Matrix.from_columns(self.field, [self.coords(v, check) for v in vectors], len(self.basis))


def vec_add(field: Field, u: Sequence, v: Sequence) -> tuple:
    red = _reducer(field)
    return tuple(red(a + b) for a, b in zip(u, v))


def vec_scale(field: Field, c, v: Sequence) -> tuple:
    red = _reducer(field)
    return tuple(red(c * a) for a in v)


def lin_comb(field: Field, coeffs: Sequence, mats: Sequence[Matrix], nrows: int, ncols: int) -> Matrix:
    """``sum(c * M)`` over matching coefficient/matrix pairs."""
    red = _reducer(field)
    z = field.zero
    acc = [[z] * ncols for _ in range(nrows)]
    for c, m in zip(coeffs, mats):
        if c == 0:
            continue
        for i, row in enumerate(m.rows):
            ai = acc[i]
            for j, x in enumerate(row):
                if x:
                    ai[j] = ai[j] + c * x
    return Matrix._wrap(field, [[red(x) for x in row] for row in acc], ncols)
