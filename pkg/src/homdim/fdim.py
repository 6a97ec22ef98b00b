"""Class oracles and relative dimension along projective resolutions."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .algebra import PresentedAlgebra
from .exactla import Matrix, solve
from .homology import DEFAULT_HORIZON, ext_dim, syzygy
from .rep import (
    Representation,
    direct_sum,
    hom_space,
    indec_projective,
    random_representation,
    random_sub_ses,
    simple,
)
from .verdict import No, Unknown, Verdict, Yes, all_of

__all__ = [
    "Verdict", "Yes", "No", "Unknown", "ClassOracle", "FdimReport", "membership", "f_dim",
    "global_fdim_probe", "injective_dim", "parse_oracle", "projectives_oracle", "add_oracle", "perp_oracle",
]

PROJECTIVES, ADD, PERP = "projectives", "add", "perp"


def derive_seed(*parts) -> int:
    """Stable 64-bit seed from arbitrary parts (independent of Python's hash randomisation)."""
    h = hashlib.sha256(repr(parts).encode()).digest()
    return int.from_bytes(h[:8], "big")


def injective_dim(G: Representation, horizon: int = DEFAULT_HORIZON) -> Verdict:
    """``id G = max{i : Ext^i(simple, G) != 0}``; Unknown if a simple's resolution is too long."""
    best = 0
    for v in range(G.algebra.num_vertices):
        rep = ext_dim(simple(G.algebra, v), G, horizon)
        if rep.truncated:
            return Unknown(f"simple {G.algebra.quiver.vertices[v]} not resolved by degree {horizon}")
        best = max([best] + rep.nonvanishing(1))
    return Yes(best)


@dataclass
class ClassOracle:
    """A membership test for a class of modules.

    ``kind`` is ``"projectives"``, ``"add"`` (summands of finite sums of
    ``U``) or ``"perp"`` (``M`` with ``Ext^i(M, G) = 0`` for ``1 <= i <= m``,
    ``m = None`` meaning all ``i``).
    """

    kind: str
    algebra: PresentedAlgebra
    U: Representation | None = None
    G: tuple = ()
    m: int | None = None
    horizon: int = DEFAULT_HORIZON
    label: str = ""
    probe_samples: int = 6
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in (PROJECTIVES, ADD, PERP):
            raise ValueError(f"unknown oracle kind {self.kind!r}")
        if not self.label:
            self.label = self.kind

    def membership(self, M: Representation) -> Verdict:
        hit = self._cache.get(M.key)
        if hit is None:
            hit = _MEMBERSHIP[self.kind](self, M)
            self._cache[M.key] = hit
        return hit

    @cached_property
    def g_injective_dims(self) -> list[Verdict]:
        return [injective_dim(g, self.horizon) for g in self.G]

    @cached_property
    def contains_projectives(self) -> Verdict:
        return all_of(*[self.membership(indec_projective(self.algebra, v)) for v in range(self.algebra.num_vertices)])

    @cached_property
    def kernel_closed(self) -> Verdict:
        """Empirical: kernels of epimorphisms between sampled members are members."""
        A = self.algebra
        pool = [simple(A, v) for v in range(A.num_vertices)]
        pool += [indec_projective(A, v) for v in range(A.num_vertices)]
        rng = random.Random(derive_seed("kernel-closed", self.label))
        for k in range(self.probe_samples):
            dims = [rng.randint(0, 2) for _ in range(A.num_vertices)]
            try:
                pool.append(random_representation(A, dims, derive_seed("kc-mod", self.label, k)))
            except ValueError:
                continue
        members = [M for M in pool if self.membership(M).is_yes]
        # sums of members give epimorphisms with both ends in the class
        if len(members) >= 2:
            members.append(direct_sum(A, members[:2]))
        undecided = False
        for i, B in enumerate(members):
            for j in range(3):
                ses = random_sub_ses(B, derive_seed("kc-ses", self.label, i, j), max_gens=2)
                c = self.membership(ses.right)
                if not c.is_yes:
                    continue
                a = self.membership(ses.left)
                if a.is_no:
                    return No({"kernelDims": list(ses.left.dims), "middleDims": list(B.dims)})
                undecided = undecided or a.is_unknown
        return Unknown("some kernels undecided") if undecided else Yes({"probed": True})

    @cached_property
    def sum_closed(self) -> Verdict:
        """Empirical: pairwise sums of sampled members are members."""
        A = self.algebra
        pool = [simple(A, v) for v in range(A.num_vertices)]
        pool += [indec_projective(A, v) for v in range(A.num_vertices)]
        if self.U is not None:
            pool.append(self.U)
        members = [M for M in pool if self.membership(M).is_yes]
        undecided = False
        for i, L in enumerate(members):
            for M in members[i:]:
                v = self.membership(direct_sum(A, [L, M]))
                if v.is_no:
                    return No({"summandDims": [list(L.dims), list(M.dims)]})
                undecided = undecided or v.is_unknown
        return Unknown("some sums undecided") if undecided else Yes({"probed": len(members)})

    def describe(self) -> dict:
        out = {"kind": self.kind, "label": self.label}
        if self.kind == PERP:
            out["m"] = "inf" if self.m is None else self.m
        return out


def _member_projective(o: ClassOracle, M: Representation) -> Verdict:
    K = syzygy(M, 1)
    return Yes() if K.is_zero() else No({"syzygyDims": list(K.dims)})


def _member_add(o: ClassOracle, M: Representation) -> Verdict:
    """``M`` is in add(U) iff ``id_M`` factors through a finite sum of copies of ``U``.

    That happens iff ``id_M`` lies in the span of the composites ``f o g``
    with ``g: M -> U`` and ``f: U -> M``.
    """
    if M.is_zero():
        return Yes()
    to_u = hom_space(M, o.U)
    from_u = hom_space(o.U, M)
    target = M.identity().flatten()
    comps = [f.compose_after(g).flatten() for f in from_u for g in to_u]
    if not comps:
        return No({"reason": "no maps through U"})
    sol = solve(Matrix.from_columns(M.field, comps, len(target)), target)
    return Yes() if sol is not None else No({"reason": "identity does not factor through add(U)"})


def _member_perp(o: ClassOracle, M: Representation) -> Verdict:
    top = o.horizon if o.m is None else min(o.m, o.horizon)
    undecided = None
    for j, G in enumerate(o.G):
        rep = ext_dim(M, G, top)
        bad = [i for i in rep.nonvanishing(1) if i <= top]
        if bad:
            return No({"degree": bad[0], "target": j, "dim": rep.dims[bad[0]]})
        need_more = o.m is None or o.m > o.horizon
        if need_more and rep.truncated:
            idv = o.g_injective_dims[j]
            if not (idv.is_yes and idv.value <= top):
                undecided = f"Ext into target {j} vanishes through degree {top} only"
    return Unknown(undecided) if undecided else Yes()


_MEMBERSHIP = {PROJECTIVES: _member_projective, ADD: _member_add, PERP: _member_perp}


def projectives_oracle(A: PresentedAlgebra, horizon: int = DEFAULT_HORIZON) -> ClassOracle:
    return ClassOracle(PROJECTIVES, A, horizon=horizon)


def add_oracle(U: Representation, horizon: int = DEFAULT_HORIZON, label: str = "add") -> ClassOracle:
    return ClassOracle(ADD, U.algebra, U=U, horizon=horizon, label=label)


def perp_oracle(G: Sequence[Representation], m: int | None = None, horizon: int = DEFAULT_HORIZON,
                label: str = "perp") -> ClassOracle:
    G = tuple(G)
    if not G:
        raise ValueError("perp oracle needs at least one module")
    return ClassOracle(PERP, G[0].algebra, G=G, m=m, horizon=horizon, label=label)


def membership(oracle: ClassOracle, M: Representation) -> Verdict:
    return oracle.membership(M)


@dataclass
class FdimReport:
    value: Verdict
    syzygy_checked: int
    evidence: list
    heuristic: bool
    flags: dict

    def to_json(self) -> dict:
        return {
            "value": self.value.to_json(),
            "syzygyChecked": self.syzygy_checked,
            "evidence": [v.to_json() for v in self.evidence],
            "heuristic": self.heuristic,
            "flags": self.flags,
        }


def f_dim(oracle: ClassOracle, M: Representation, horizon: int = DEFAULT_HORIZON) -> FdimReport:
    """Least ``n <= horizon`` with the n-th syzygy in the class."""
    cp = oracle.contains_projectives
    flags = {"containsProjectives": cp.to_json()}
    evidence = []
    for n in range(horizon + 1):
        v = oracle.membership(syzygy(M, n))
        evidence.append(v)
        if v.is_yes:
            return FdimReport(Yes(n), n, evidence, not cp.is_yes, flags)
        if v.is_unknown:
            return FdimReport(Unknown({"undecidedSyzygy": n}), n, evidence, not cp.is_yes, flags)
    return FdimReport(Unknown(f"no syzygy up to degree {horizon} is a member"), horizon, evidence,
                      not cp.is_yes, flags)


def global_fdim_probe(oracle: ClassOracle, p: PresentedAlgebra, horizon: int = DEFAULT_HORIZON,
                      sample_budget: int = 20, seed: int = 0, max_dim: int = 2) -> dict:
    """Max of fDim over simples, indecomposable projectives and random modules.

    For ``perp`` oracles whose targets all have certified injective
    dimension at most ``n``, also counts samples with fDim above ``n``
    (there should be none).
    """
    mods = [("simple", simple(p, v)) for v in range(p.num_vertices)]
    mods += [("projective", indec_projective(p, v)) for v in range(p.num_vertices)]
    rng = random.Random(seed)
    failures = 0
    for k in range(sample_budget):
        dims = [rng.randint(0, max_dim) for _ in range(p.num_vertices)]
        try:
            mods.append(("random", random_representation(p, dims, derive_seed("probe", seed, k))))
        except ValueError:
            failures += 1
    values, unknown = [], 0
    for _, M in mods:
        r = f_dim(oracle, M, horizon).value
        if r.is_yes:
            values.append(r.value)
        else:
            unknown += 1
    out = {
        "oracle": oracle.describe(),
        "modules": len(mods),
        "generatorFailures": failures,
        "unknown": unknown,
        "value": (Yes(max(values, default=0)) if unknown == 0 else Unknown("some modules undecided")).to_json(),
        "maxObserved": max(values, default=0),
    }
    if oracle.kind == PERP:
        ids = oracle.g_injective_dims
        if all(v.is_yes for v in ids):
            n = max(v.value for v in ids)
            out["injectiveBound"] = n
            out["boundViolations"] = sum(1 for x in values if x > n)
    return out


def parse_oracle(spec: str, modules: dict, algebra: PresentedAlgebra, horizon: int = DEFAULT_HORIZON) -> ClassOracle:
    """``projectives`` | ``add:U`` | ``perp:G1,G2:m`` (``m`` a number or ``inf``).

    Raises ``KeyError`` for unknown module names and ``ValueError`` for malformed specs.
    """
    parts = spec.split(":")
    if parts[0] == PROJECTIVES and len(parts) == 1:
        return projectives_oracle(algebra, horizon)
    if parts[0] == ADD and len(parts) == 2:
        return add_oracle(modules[parts[1]], horizon, label=spec)
    if parts[0] == PERP and len(parts) in (2, 3):
        names = [n for n in parts[1].split(",") if n]
        if not names:
            raise ValueError("perp oracle needs module names")
        m_text = parts[2] if len(parts) == 3 else "inf"
        m = None if m_text == "inf" else int(m_text)
        if m is not None and m < 1:
            raise ValueError("perp degree must be at least 1")
        return perp_oracle([modules[n] for n in names], m, horizon, label=spec)
    raise ValueError(f"cannot parse oracle spec {spec!r}")
