"""Seeded property checks of structural laws on generated instances.

A violation is an engine bug: every law is a theorem.  Implications are only
asserted when all antecedent verdicts are determinate.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Callable

from .exactla import Field, Matrix
from .fdim import ClassOracle, derive_seed, f_dim, parse_oracle
from .gorenstein import AdjointContext, ext_sup, g_class, g_dim, g_dim_by_search
from .homology import ext_dim, pdim, projective_cover, syzygy
from .rep import (
    SES,
    RepError,
    RepMap,
    Representation,
    cokernel,
    direct_sum,
    hom_space,
    indec_projective,
    kernel,
    pullback,
    random_representation,
    random_sub_ses,
    simple,
)
from .verdict import No, Unknown, Verdict, Yes
from .workspace import Workspace, builtin_algebra, load_workspace

DEFAULT_ORACLES = ("projectives", "perp:P1:inf", "perp:U:inf", "perp:S3:1", "perp:S2,S3:1", "add:U")
DEFAULT_ALGEBRAS = ("workspace", "a3-ba0")
LAW_NAMES = ("kernelClosure", "sesTheorem", "summandClosure", "perpHereditary", "gdimSup", "gclassResolution")
VACUOUS_SKIP_RATE = 0.9


@dataclass
class LawSuiteConfig:
    seed: int = 0
    instances: int = 200
    max_dim: int = 4
    field: Field = field(default_factory=lambda: Field.prime(5))
    horizon: int = 10
    oracles: tuple = DEFAULT_ORACLES
    algebras: tuple = DEFAULT_ALGEBRAS
    laws: tuple = LAW_NAMES
    shrink: bool = True

    def __post_init__(self):
        if self.instances < 1:
            raise ValueError("instances must be at least 1")
        if self.max_dim < 1:
            raise ValueError("maxDim must be at least 1")
        for name in self.laws:
            if name not in LAW_NAMES:
                raise ValueError(f"unknown law {name!r}")

    @classmethod
    def from_json(cls, data: dict) -> LawSuiteConfig:
        kw = {}
        if "seed" in data:
            kw["seed"] = int(data["seed"])
        if "instances" in data:
            kw["instances"] = int(data["instances"])
        if "maxDim" in data:
            kw["max_dim"] = int(data["maxDim"])
        if "field" in data:
            kw["field"] = Field.from_spec(data["field"])
        if "horizon" in data:
            kw["horizon"] = int(data["horizon"])
        for key in ("oracles", "algebras", "laws"):
            if key in data:
                kw[key] = tuple(data[key])
        if "shrink" in data:
            kw["shrink"] = bool(data["shrink"])
        return cls(**kw)

    def to_json(self) -> dict:
        return {"seed": self.seed, "instances": self.instances, "maxDim": self.max_dim,
                "field": self.field.to_spec(), "horizon": self.horizon, "oracles": list(self.oracles),
                "algebras": list(self.algebras), "laws": list(self.laws)}


@dataclass
class LawResult:
    law: str
    instances: int
    checked: int = 0
    skipped: int = 0
    generator_failures: int = 0
    nontrivial: int = 0  # checked instances whose antecedent held
    violations: list = field(default_factory=list)
    note: str = ""

    @property
    def skip_rate(self) -> float:
        return self.skipped / self.instances if self.instances else 1.0

    @property
    def vacuous(self) -> bool:
        return self.skip_rate > VACUOUS_SKIP_RATE or self.checked == 0

    @property
    def passed(self) -> bool:
        return not self.violations and not self.vacuous

    def to_json(self) -> dict:
        return {
            "law": self.law, "instances": self.instances, "checked": self.checked, "skipped": self.skipped,
            "generatorFailures": self.generator_failures, "nontrivial": self.nontrivial,
            "skipRate": round(self.skip_rate, 6), "violations": self.violations, "passed": self.passed,
            "note": self.note,
        }


class _Skip(Exception):
    pass


class _GenFail(Exception):
    pass


# ---------------------------------------------------------------------------
# environment: algebras, oracles, context


@dataclass
class _Env:
    name: str
    ws: Workspace
    oracles: list


class LawSuite:
    def __init__(self, cfg: LawSuiteConfig, workspace: Workspace | None = None):
        self.cfg = cfg
        base = (workspace or load_workspace()).with_field(cfg.field)
        self.workspace = base
        self.envs: list[_Env] = []
        for name in cfg.algebras:
            ws = base if name == "workspace" else Workspace(builtin_algebra(name, cfg.field))
            oracles = []
            for spec in cfg.oracles:
                try:
                    oracles.append(parse_oracle(spec, ws.modules, ws.algebra, cfg.horizon))
                except KeyError:
                    continue  # names not bound over this algebra
            self.envs.append(_Env(name, ws, oracles))
        self._ctx = None

    @property
    def ctx(self) -> AdjointContext:
        if self._ctx is None:
            names = list(self.workspace.context_specs)
            if not names:
                raise ValueError("workspace defines no adjoint context")
            self._ctx = self.workspace.context(names[0], self.cfg.horizon)
        return self._ctx

    # -- generation -----------------------------------------------------------

    def random_module(self, env: _Env, seed: int) -> Representation:
        rng = random.Random(seed)
        A = env.ws.algebra
        dims = [rng.randint(0, self.cfg.max_dim) for _ in range(A.num_vertices)]
        try:
            return random_representation(A, dims, derive_seed("module", seed))
        except RepError as exc:
            raise _GenFail(str(exc)) from exc

    def pick(self, k: int, predicate: Callable[[ClassOracle], bool]):
        """Deterministically cycle through (env, oracle) pairs satisfying ``predicate``."""
        pairs = [(e, o) for e in self.envs for o in e.oracles if predicate(o)]
        if not pairs:
            return None
        return pairs[k % len(pairs)]

    # -- running --------------------------------------------------------------

    def run(self) -> list[LawResult]:
        return [self.run_law(name) for name in self.cfg.laws]

    def run_law(self, name: str) -> LawResult:
        fn = _LAWS[name]
        res = LawResult(name, self.cfg.instances)
        for k in range(self.cfg.instances):
            seed = derive_seed(self.cfg.seed, name, k)
            try:
                outcome = fn(self, k, seed)
            except _Skip:
                res.skipped += 1
                continue
            except _GenFail:
                res.generator_failures += 1
                continue
            res.checked += 1
            if outcome is None:
                continue
            held, violation = outcome
            res.nontrivial += bool(held)
            if violation is not None:
                violation.update({"instance": k, "replaySeed": seed})
                res.violations.append(violation)
        if res.checked == 0 and res.generator_failures == 0 and res.skipped == 0:
            res.note = "no applicable oracle"
        return res


def _verdict_le(v: Verdict, i: int) -> Verdict:
    """Membership in the class of modules of dimension at most ``i``."""
    if v.is_yes:
        return Yes() if v.value <= i else No()
    return Unknown()


def _fdim_class(report, i: int) -> Verdict:
    if report.value.is_yes:
        return _verdict_le(report.value, i)
    ev = report.evidence
    if len(ev) > i and all(e.is_no for e in ev[: i + 1]):
        return No()
    return Unknown()


def _mods_json(**mods) -> dict:
    return {k: v.to_json() for k, v in mods.items()}


def _shrink(suite: LawSuite, M: Representation, still_fails: Callable[[Representation], bool],
            steps: int = 20) -> Representation:
    """Greedy submodule/quotient reduction keeping the failure."""
    if not suite.cfg.shrink:
        return M
    cur = M
    for step in range(steps):
        improved = False
        for j in range(6):
            ses = random_sub_ses(cur, derive_seed("shrink", step, j), max_gens=1)
            for cand in (ses.left, ses.right):
                if 0 < cand.total_dim < cur.total_dim:
                    try:
                        ok = still_fails(cand)
                    except (_Skip, _GenFail):
                        ok = False
                    if ok:
                        cur, improved = cand, True
                        break
            if improved:
                break
        if not improved:
            break
    return cur


# ---------------------------------------------------------------------------
# laws


def _resolving(o: ClassOracle) -> bool:
    return o.contains_projectives.is_yes and o.kernel_closed.is_yes


def _random_member(suite: LawSuite, env: _Env, o: ClassOracle, seed: int, tries: int = 6) -> Representation:
    """A class member: a random module or one of its syzygies."""
    rng = random.Random(seed)
    for t in range(tries):
        M = suite.random_module(env, derive_seed(seed, "member", t))
        for n in range(suite.cfg.horizon + 1):
            X = syzygy(M, n) if n else M
            v = o.membership(X)
            if v.is_yes:
                # sometimes add a projective summand to vary the shape
                if rng.random() < 0.5:
                    P, _ = projective_cover(M)
                    Y = direct_sum(env.ws.algebra, [X, P])
                    if o.membership(Y).is_yes:
                        return Y
                return X
            if v.is_unknown:
                break
    raise _Skip()


def law_kernel_closure(suite: LawSuite, k: int, seed: int):
    """``0 -> A -> F -> C -> 0`` with F a member and fdim C = i gives fdim A <= max(i - 1, 0)."""
    pick = suite.pick(k, _resolving)
    if pick is None:
        raise _Skip()
    env, o = pick
    F = _random_member(suite, env, o, seed)
    ses = random_sub_ses(F, derive_seed(seed, "ses"), max_gens=3)
    h = suite.cfg.horizon

    def check(ses_):
        c = f_dim(o, ses_.right, h).value
        a = f_dim(o, ses_.left, h).value
        if not (c.is_yes and a.is_yes):
            raise _Skip()
        bound = max(c.value - 1, 0)
        return a.value <= bound, c.value, a.value

    ok, i, j = check(ses)
    if ok:
        return (True, None)
    return (True, {"oracle": o.label, "algebra": env.name, "fdimC": i, "fdimA": j,
                   "modules": _mods_json(A=ses.left, F=F, C=ses.right)})


def _pullback_sess(ses: SES) -> list[tuple[str, SES]]:
    """Sequences from pulling projective covers of ``C`` and ``B`` back along the sequence maps.

    Pulling the cover ``F_C -> C`` back along ``B -> C`` gives
    ``0 -> K_C -> P -> B -> 0`` and ``0 -> A -> P -> F_C -> 0``; pulling the
    cover ``F_B -> B`` back along ``A -> B`` gives ``0 -> P' -> F_B -> C -> 0``
    and ``0 -> K_B -> P' -> A -> 0``.
    """
    out = []
    FC, pc = projective_cover(ses.right)
    P, toB, toF = pullback(ses.g, pc)
    out.append(("cover-C/top", SES(kernel(toB)[1], toB, check=False)))
    out.append(("cover-C/side", SES(kernel(toF)[1], toF, check=False)))
    FB, pb = projective_cover(ses.middle)
    P2, toA, toFB = pullback(ses.f, pb)
    out.append(("cover-B/top", SES(toFB, cokernel(toFB)[1], check=False)))
    out.append(("cover-B/side", SES(kernel(toA)[1], toA, check=False)))
    return out


def law_ses_theorem(suite: LawSuite, k: int, seed: int):
    """Two-out-of-three bounds for ``fdim`` on a sampled sequence and its pullback sequences.

    With ``F_i`` the modules of ``fdim <= i``: B, C in F_i gives A in F_i; A, B in
    F_i gives C in F_{i+1}; and when F holds the projectives, A, C in F_{i+1}
    gives B in F_{i+1} and B in F_i, C in F_{i+1} gives A in F_i.
    """
    pick = suite.pick(k, lambda o: _resolving(o) and o.sum_closed.is_yes)
    if pick is None:
        raise _Skip()
    env, o = pick
    B = suite.random_module(env, seed)
    base = random_sub_ses(B, derive_seed(seed, "ses"), max_gens=2)
    h = suite.cfg.horizon
    # every module is a quotient of a member when projectives are members,
    # so the epimorphic-image class is everything and closed under extensions
    extensions_ok = o.contains_projectives.is_yes
    sess = [("sampled", base)] + _pullback_sess(base)
    held_any = False
    for tag_seq, ses in sess:
        if not ses.is_exact():
            return (True, {"oracle": o.label, "algebra": env.name, "error": f"{tag_seq} sequence not exact",
                           "modules": _mods_json(A=base.left, B=base.middle, C=base.right)})
        reports = [f_dim(o, X, h) for X in (ses.left, ses.middle, ses.right)]
        if tag_seq == "sampled" and not all(r.value.is_yes for r in reports):
            raise _Skip()
        for i in range(h):
            a, b, c = (_fdim_class(r, i) for r in reports)
            a1, b1, c1 = (_fdim_class(r, i + 1) for r in reports)
            checks = [("left", [b, c], a), ("right", [a, b], c1)]
            if extensions_ok:
                checks += [("middle", [a1, c1], b1), ("left-shift", [b, c1], a)]
            for tag, ante, concl in checks:
                if not all(x.is_yes for x in ante):
                    continue
                held_any = True
                if concl.is_no:
                    return (True, {"oracle": o.label, "algebra": env.name, "conclusion": tag, "degree": i,
                                   "sequence": tag_seq, "fdims": [r.value.to_json() for r in reports],
                                   "modules": _mods_json(A=ses.left, B=ses.middle, C=ses.right)})
    return (held_any, None)


def law_summand_closure(suite: LawSuite, k: int, seed: int):
    """``L + M`` a member forces ``L`` and ``M`` to be members.

    ``M`` is drawn from the class; ``L`` is a member or an arbitrary module
    with equal odds, so both outcomes of the antecedent occur.
    """
    pick = suite.pick(k, lambda o: True)
    if pick is None:
        raise _Skip()
    env, o = pick
    if random.Random(seed).random() < 0.5:
        L = _random_member(suite, env, o, derive_seed(seed, "L"))
    else:
        L = suite.random_module(env, derive_seed(seed, "L"))
    M = _random_member(suite, env, o, derive_seed(seed, "M"))
    S = direct_sum(env.ws.algebra, [L, M])
    v = o.membership(S)
    if v.is_unknown:
        raise _Skip()
    if not v.is_yes:
        return (False, None)
    for name, X in (("L", L), ("M", M)):
        if o.membership(X).is_no:
            return (True, {"oracle": o.label, "algebra": env.name, "summand": name,
                           "modules": _mods_json(L=L, M=M)})
    return (True, None)


def law_perp_hereditary(suite: LawSuite, k: int, seed: int):
    """Members of a kernel-closed left perp in degree 1 are perpendicular in all degrees;
    and dually, right perpendicularity in degree 1 to a syzygy-closed pool forces all degrees."""
    h = suite.cfg.horizon
    if k % 2 == 0:
        pick = suite.pick(k // 2, lambda o: o.kind == "perp" and o.m == 1 and o.kernel_closed.is_yes)
        if pick is None:
            raise _Skip()
        env, o = pick
        M = suite.random_module(env, seed)
        v = o.membership(M)
        if v.is_unknown:
            raise _Skip()
        if v.is_no:
            return (False, None)
        for j, G in enumerate(o.G):
            rep = ext_dim(M, G, h)
            bad = rep.nonvanishing(2)
            if bad:
                return (True, {"oracle": o.label, "algebra": env.name, "degree": bad[0], "target": j,
                               "modules": _mods_json(M=M, G=G)})
        return (True, None)
    pick = suite.pick(k // 2, _resolving)
    if pick is None:
        raise _Skip()
    env, o = pick
    F0 = _random_member(suite, env, o, derive_seed(seed, "F"))
    pool = [X for X in (syzygy(F0, n) for n in range(h + 1)) if not X.is_zero()]
    Y = suite.random_module(env, derive_seed(seed, "Y"))
    if any(ext_dim(X, Y, 1)[1] for X in pool):
        return (False, None)
    for X in pool:
        bad = ext_dim(X, Y, h).nonvanishing(1)
        if bad:
            return (True, {"oracle": o.label, "algebra": env.name, "side": "right", "degree": bad[0],
                           "modules": _mods_json(F=X, Y=Y)})
    return (True, None)


def law_gdim_sup(suite: LawSuite, k: int, seed: int):
    """``gDim`` equals both the Ext-sup formula and the syzygy search, and is at most ``pd``."""
    ctx = suite.ctx
    if not ctx.projectives_in_g.is_yes:
        raise _Skip()
    env = _Env("workspace", suite.workspace, [])
    M = suite.random_module(env, seed)

    def violation(X):
        g = g_dim(ctx, X)
        s = g_dim_by_search(ctx, X)
        if not (g.is_yes and s.is_yes):
            raise _Skip()
        p = pdim(X, ctx.horizon)
        bad = {}
        if g.value != s.value:
            bad["search"] = s.value
        if p.is_yes and g.value > p.value:
            bad["pdim"] = p.value
        if g.value == 0 and not g_class(ctx, X).member.is_yes:
            bad["gclass"] = "dimension 0 outside the class"
        return g.value, bad

    n, bad = violation(M)
    if not bad:
        return (True, None)
    small = _shrink(suite, M, lambda X: bool(violation(X)[1]))
    return (True, {"gDim": n, **bad, "modules": _mods_json(M=small)})


def _g_members(ctx: AdjointContext) -> list[Representation]:
    A = ctx.lam
    cands = [indec_projective(A, v) for v in range(A.num_vertices)]
    cands += [simple(A, v) for v in range(A.num_vertices)]
    cands.append(ctx.U)
    out = []
    for X in cands:
        if g_class(ctx, X).member.is_yes and all(X != Y for Y in out):
            out.append(X)
    return out


def law_gclass_resolution(suite: LawSuite, k: int, seed: int):
    """For ``0 -> K -> G_{n-1} -> ... -> G_0 -> X -> 0`` with G-class terms and gDim X = n, K is in the class."""
    ctx = suite.ctx
    if not ctx.projectives_in_g.is_yes:
        raise _Skip()
    A = ctx.lam
    rng = random.Random(seed)
    env = _Env("workspace", suite.workspace, [])
    X = suite.random_module(env, seed)
    g = g_dim(ctx, X)
    if not g.is_yes:
        raise _Skip()
    n = g.value
    members = _g_members(ctx)
    cur = X
    terms = []
    for step in range(n):
        P, epi = projective_cover(cur)
        extra = [rng.choice(members) for _ in range(rng.randint(0, 2))]
        if extra:
            E = direct_sum(A, extra)
            homs = hom_space(E, cur)
            if homs:
                u = homs[0].scale(0)
                for f in homs:
                    u = u + f.scale(A.field.random(rng))
                G, epi = _sum_map(A, P, epi, E, u)
            else:
                G = P
        else:
            G = P
        terms.append(G)
        cur, _ = kernel(epi)
    rep = g_class(ctx, cur).member
    if rep.is_unknown:
        raise _Skip()
    if rep.is_yes:
        return (n > 0, None)
    return (n > 0, {"gDim": n, "termDims": [list(t.dims) for t in terms],
                    "modules": _mods_json(X=X, K=cur)})


def _sum_map(A, P, epi, E, u):
    """``(epi, u): P + E -> target``."""
    S = direct_sum(A, [P, E])
    mats = [a.hstack(b) for a, b in zip(epi.mats, u.mats)]
    return S, RepMap(S, epi.target, mats, check=False)


_LAWS = {
    "kernelClosure": law_kernel_closure,
    "sesTheorem": law_ses_theorem,
    "summandClosure": law_summand_closure,
    "perpHereditary": law_perp_hereditary,
    "gdimSup": law_gdim_sup,
    "gclassResolution": law_gclass_resolution,
}


def run_suite(cfg: LawSuiteConfig | None = None, workspace: Workspace | None = None) -> list[LawResult]:
    return LawSuite(cfg or LawSuiteConfig(), workspace).run()


def report_json(cfg: LawSuiteConfig, results: list[LawResult]) -> dict:
    return {
        "config": cfg.to_json(),
        "results": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }


def dumps_report(cfg: LawSuiteConfig, results: list[LawResult]) -> str:
    return json.dumps(report_json(cfg, results), sort_keys=True, indent=2)
