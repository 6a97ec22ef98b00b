"""The adjoint pair ``Phi = Hom_L(-, U)``, ``Psi = Hom_S(-, U)`` with ``S = End(U)``.

``Phi(M)`` is a left ``S``-module through post-composition; ``Psi(X)`` is a
left ``L``-module through the action of ``L`` on ``U``.  ``eta_M`` sends ``m``
to evaluation at ``m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import SCAlgebra, endomorphism_algebra
from .exactla import Coordinates, Matrix, span_basis
from .homology import DEFAULT_HORIZON, ExtReport, ext_dim, pdim, sc_ext_dim, syzygy
from .rep import (
    RepError,
    RepMap,
    Representation,
    SCModule,
    hom_space,
    indec_projective,
    sc_hom,
    sc_module_of,
    simple,
)
from .verdict import No, Unknown, Verdict, Yes, all_of


@dataclass
class PhiData:
    module: SCModule
    basis: list  # RepMaps M -> U
    coords: Coordinates  # of flattened maps


@dataclass
class PsiData:
    rep: Representation
    hom: list  # S-linear maps X -> U_S (matrices)
    vertex_bases: list  # per vertex, flattened matrices spanning e_v Psi(X)
    coords: list  # per vertex Coordinates


@dataclass
class GClassReport:
    phi_acyclic: Verdict
    psi_acyclic_of_phi: Verdict
    eta_iso: bool
    member: Verdict

    def to_json(self) -> dict:
        return {
            "phiAcyclic": self.phi_acyclic.to_json(),
            "psiAcyclicOfPhi": self.psi_acyclic_of_phi.to_json(),
            "etaIso": self.eta_iso,
            "member": self.member.to_json(),
        }


def _flat(m: Matrix) -> tuple:
    return tuple(x for row in m.rows for x in row)


def _unflat(F, vec, nrows, ncols) -> Matrix:
    if nrows == 0:
        return Matrix.zeros(F, 0, ncols)
    return Matrix(F, [vec[i * ncols:(i + 1) * ncols] for i in range(nrows)], ncols)


class AdjointContext:
    """Everything derived from a fixed module ``U``."""

    def __init__(self, U: Representation, horizon: int = DEFAULT_HORIZON):
        self.lam = U.algebra
        self.U = U
        self.field = U.field
        self.horizon = horizon
        self.S, self.end_basis = endomorphism_algebra(U)
        self.U_total = sc_module_of(U)  # U over L as SC algebra, for L-actions on Psi
        n = U.total_dim
        action = [self._block(s) for s in self.end_basis]
        self.U_S = SCModule(self.S, n, action)
        self._phi_cache: dict = {}
        self._psi_cache: dict = {}

    def _block(self, f: RepMap) -> Matrix:
        return Matrix.block_diagonal(self.field, list(f.mats))

    # -- certified bounds ---------------------------------------------------

    @cached_property
    def projectives_in_g(self) -> Verdict:
        for v in range(self.lam.num_vertices):
            r = g_class(self, indec_projective(self.lam, v)).member
            if not r.is_yes:
                label = self.lam.quiver.vertices[v]
                return No({"projective": label}) if r.is_no else Unknown(f"gClass(P{label}) undecided")
        return Yes()

    @cached_property
    def cd_bound(self) -> Verdict:
        """Largest ``i`` with ``Ext^i(simple, U) != 0``: the injective dimension of ``U``."""
        best = 0
        for v in range(self.lam.num_vertices):
            rep = ext_dim(simple(self.lam, v), self.U, self.horizon)
            if rep.truncated:
                return Unknown(f"resolution of a simple not terminated by degree {self.horizon}")
            best = max([best] + rep.nonvanishing(1))
        return Yes(best)

    @cached_property
    def psi_cd_bound(self) -> Verdict:
        """Largest ``i`` with ``Ext_S^i(T, U_S) != 0`` over the simple ``S``-modules ``T``."""
        struct = self.S.structure
        if struct is None:
            return Unknown("End(U) is not split basic")
        best = 0
        for chars in struct.characters:
            T = SCModule(self.S, 1, [Matrix(self.field, [[c]], 1) for c in chars], check=False)
            rep = sc_ext_dim(T, self.U_S, self.horizon)
            if rep.truncated:
                return Unknown(f"resolution of a simple S-module not terminated by degree {self.horizon}")
            best = max([best] + rep.nonvanishing(1))
        return Yes(best)

    def summary(self) -> dict:
        return {
            "dimS": self.S.dimension,
            "dimU": list(self.U.dims),
            "projectivesInG": self.projectives_in_g.to_json(),
            "cdBound": self.cd_bound.to_json(),
            "psiCdBound": self.psi_cd_bound.to_json(),
            "horizon": self.horizon,
        }


def phi_data(ctx: AdjointContext, M: Representation) -> PhiData:
    if M.algebra is not ctx.lam:
        raise RepError("module is not over the context algebra")
    hit = ctx._phi_cache.get(M.key)
    if hit is not None:
        return hit
    F = ctx.field
    basis = hom_space(M, ctx.U)
    size = sum(a * b for a, b in zip(ctx.U.dims, M.dims))
    coords = Coordinates(F, [f.flatten() for f in basis], size)
    k = len(basis)
    action = []
    for s in ctx.end_basis:
        cols = [coords.coords(s.compose_after(f).flatten()) for f in basis]
        action.append(Matrix.from_columns(F, cols, k))
    data = PhiData(SCModule(ctx.S, k, action, check=False), basis, coords)
    ctx._phi_cache[M.key] = data
    return data


def phi(ctx: AdjointContext, M: Representation) -> SCModule:
    return phi_data(ctx, M).module


def psi_data(ctx: AdjointContext, X: SCModule) -> PsiData:
    if X.algebra != ctx.S:
        raise RepError("module is not over End(U)")
    hit = ctx._psi_cache.get(X.key)
    if hit is not None:
        return hit
    F, lam = ctx.field, ctx.lam
    hom = sc_hom(X, ctx.U_S)
    nU, nX = ctx.U.total_dim, X.dim
    act = ctx.U_total.action
    bases, coords = [], []
    for v in range(lam.num_vertices):
        ev = act[lam.idempotent(v)]
        vecs = span_basis(F, [_flat(ev @ g) for g in hom], nU * nX)
        bases.append(vecs)
        coords.append(Coordinates(F, vecs, nU * nX))
    maps = []
    for a in lam.quiver.arrows:
        s, t = lam.vertex(a.source), lam.vertex(a.target)
        am = act[lam.basis_index[(s, t, (a.name,))]] if (s, t, (a.name,)) in lam.basis_index else None
        cols = []
        for b in bases[s]:
            img = am @ _unflat(F, b, nU, nX) if am is not None else Matrix.zeros(F, nU, nX)
            cols.append(coords[t].coords(_flat(img)))
        maps.append(Matrix.from_columns(F, cols, len(bases[t])))
    rep = Representation(lam, [len(b) for b in bases], maps, check=False)
    data = PsiData(rep, hom, bases, coords)
    ctx._psi_cache[X.key] = data
    return data


def psi(ctx: AdjointContext, X: SCModule) -> Representation:
    return psi_data(ctx, X).rep


def eta(ctx: AdjointContext, M: Representation) -> RepMap:
    """``M -> Psi Phi M``, ``m -> (f -> f(m))``."""
    F = ctx.field
    pd = phi_data(ctx, M)
    qd = psi_data(ctx, pd.module)
    nU, k = ctx.U.total_dim, len(pd.basis)
    off = ctx.U.offsets
    mats = []
    for v in range(ctx.lam.num_vertices):
        cols = []
        for j in range(M.dims[v]):
            # evaluation at the j-th basis vector of M_v, as a (nU x k) matrix
            rows = [[F.zero] * k for _ in range(nU)]
            for c, f in enumerate(pd.basis):
                col = f.mats[v].column(j)
                for r, x in enumerate(col):
                    rows[off[v] + r][c] = x
            cols.append(qd.coords[v].coords(tuple(x for row in rows for x in row)))
        mats.append(Matrix.from_columns(F, cols, qd.rep.dims[v]))
    return RepMap(M, qd.rep, mats, check=False)


def phi_map(ctx: AdjointContext, u: RepMap) -> Matrix:
    """``Phi(u): Phi(M') -> Phi(M)``, ``f' -> f' o u``, in the Hom bases."""
    src, tgt = phi_data(ctx, u.source), phi_data(ctx, u.target)
    cols = [src.coords.coords(f.compose_after(u).flatten()) for f in tgt.basis]
    return Matrix.from_columns(ctx.field, cols, len(src.basis))


def psi_map(ctx: AdjointContext, X: SCModule, Xp: SCModule, h: Matrix) -> RepMap:
    """``Psi(h): Psi(X') -> Psi(X)``, ``g' -> g' o h``, for an S-linear ``h: X -> X'``."""
    F = ctx.field
    dx, dxp = psi_data(ctx, X), psi_data(ctx, Xp)
    nU = ctx.U.total_dim
    mats = []
    for v in range(ctx.lam.num_vertices):
        cols = [dx.coords[v].coords(_flat(_unflat(F, g, nU, Xp.dim) @ h)) for g in dxp.vertex_bases[v]]
        mats.append(Matrix.from_columns(F, cols, dx.rep.dims[v]))
    return RepMap(dxp.rep, dx.rep, mats, check=False)


def naturality_holds(ctx: AdjointContext, u: RepMap) -> bool:
    """``Psi Phi(u) o eta_M == eta_M' o u``."""
    M, Mp = u.source, u.target
    X, Xp = phi(ctx, M), phi(ctx, Mp)
    psiphi_u = psi_map(ctx, Xp, X, phi_map(ctx, u))
    return psiphi_u.compose_after(eta(ctx, M)) == eta(ctx, Mp).compose_after(u)


# ---------------------------------------------------------------------------
# class membership and dimension


def _acyclic(rep: ExtReport, bound: Verdict, horizon: int) -> Verdict:
    bad = rep.nonvanishing(1)
    if bad:
        return No({"degree": bad[0], "dim": rep.dims[bad[0]]})
    if not rep.truncated:
        return Yes()
    # vanishing up to the computed degree; beyond it only the injective-dimension bound helps
    if bound.is_yes and bound.value <= rep.horizon:
        return Yes()
    return Unknown(f"Ext vanishes through degree {rep.horizon}; higher degrees not certified")


def phi_acyclic(ctx: AdjointContext, M: Representation) -> Verdict:
    return _acyclic(ext_dim(M, ctx.U, ctx.horizon), ctx.cd_bound, ctx.horizon)


def g_class(ctx: AdjointContext, M: Representation) -> GClassReport:
    pa = phi_acyclic(ctx, M)
    X = phi(ctx, M)
    pb = _acyclic(sc_ext_dim(X, ctx.U_S, ctx.horizon), ctx.psi_cd_bound, ctx.horizon)
    iso = eta(ctx, M).is_iso()
    member = all_of(pa, pb, Yes() if iso else No({"eta": "not an isomorphism"}))
    return GClassReport(pa, pb, iso, member)


def ext_sup(ctx: AdjointContext, M: Representation) -> Verdict:
    """``sup{i >= 1 : Ext^i(M, U) != 0}`` (0 when all vanish)."""
    rep = ext_dim(M, ctx.U, ctx.horizon)
    nz = rep.nonvanishing(1)
    s = max(nz) if nz else 0
    if rep.truncated and not (ctx.cd_bound.is_yes and ctx.cd_bound.value <= rep.horizon):
        return Unknown(f"Ext(M, U) not certified beyond degree {rep.horizon}")
    return Yes(s)


def g_dim(ctx: AdjointContext, M: Representation) -> Verdict:
    if not ctx.projectives_in_g.is_yes:
        return Unknown("indecomposable projectives not all certified in the G-class")
    sup = ext_sup(ctx, M)
    if not sup.is_yes:
        return sup
    s = sup.value
    report = g_class(ctx, syzygy(M, s))
    if report.member.is_yes:
        return Yes(s)
    if report.member.is_no:
        return No({"syzygy": s, "gClass": report.to_json()})
    return Unknown({"syzygy": s, "gClass": report.to_json()})


@dataclass
class DReflexiveReport:
    verdict: Verdict
    branch: str
    assumed_cd_bound: Verdict
    n: int

    def to_json(self) -> dict:
        return {"verdict": self.verdict.to_json(), "branch": self.branch,
                "assumedCdBound": self.assumed_cd_bound.to_json(), "n": self.n}


def d_reflexive_report(ctx: AdjointContext, M: Representation, n: int) -> DReflexiveReport:
    """D-reflexivity through the two module-level characterisations.

    Phi-acyclic modules are D-reflexive exactly when ``Phi(M)`` is
    Psi-acyclic and ``eta_M`` is invertible.  Otherwise, when ``Phi`` has
    cohomological dimension at most ``n``, D-reflexivity is ``gDim(M) <= n``.
    """
    pa = phi_acyclic(ctx, M)
    if pa.is_yes:
        rep = g_class(ctx, M)
        v = all_of(rep.psi_acyclic_of_phi, Yes() if rep.eta_iso else No({"eta": "not an isomorphism"}))
        return DReflexiveReport(v, "phi-acyclic", ctx.cd_bound, n)
    cd = ctx.cd_bound
    if not cd.is_yes:
        return DReflexiveReport(Unknown("cohomological dimension of Phi not certified"), "gdim", cd, n)
    if cd.value > n:
        return DReflexiveReport(Unknown(f"needs n >= {cd.value}"), "gdim", cd, n)
    gd = g_dim(ctx, M)
    if gd.is_yes:
        v = Yes(gd.value) if gd.value <= n else No({"gDim": gd.value})
    else:
        v = gd
    return DReflexiveReport(v, "gdim", cd, n)


def g_dim_le_pdim(ctx: AdjointContext, M: Representation) -> Verdict:
    """Checks ``gDim(M) <= pd(M)`` when both are determinate."""
    g, p = g_dim(ctx, M), pdim(M, ctx.horizon)
    if not (g.is_yes and p.is_yes):
        return Unknown("one side undetermined")
    return Yes() if g.value <= p.value else No({"gDim": g.value, "pdim": p.value})


def g_dim_by_search(ctx: AdjointContext, M: Representation) -> Verdict:
    """Least ``n`` with the n-th syzygy in the G-class, by direct membership tests.

    Independent of the Ext-sup formula; sound as a G-dimension when the
    projectives lie in the G-class.
    """
    for n in range(ctx.horizon + 1):
        r = g_class(ctx, syzygy(M, n)).member
        if r.is_yes:
            return Yes(n)
        if r.is_unknown:
            return Unknown({"undecidedSyzygy": n})
    return Unknown(f"no syzygy up to degree {ctx.horizon} in the G-class")
