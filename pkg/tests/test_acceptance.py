"""Acceptance criteria 1-8.  Each test prints one PASS/FAIL line with its timing."""

import json
import random
import subprocess
import sys
import time

import pytest

from homdim import Field, builtin_algebra, load_workspace
from homdim.algebra import endomorphism_algebra
from homdim.fdim import derive_seed, f_dim, projectives_oracle
from homdim.gorenstein import eta, g_class, g_dim
from homdim.homology import ext_dim, minimal_resolution, pdim, syzygy
from homdim.laws import LawSuite, LawSuiteConfig
from homdim.rep import hom_dim, indec_projective, random_representation, simple
from oracles import count_paths, euler_form

F5 = Field.prime(5)


@pytest.fixture
def report(capsys):
    def emit(n, ok, elapsed, limit, detail):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\nACCEPTANCE {n}: {status} ({elapsed:.2f}s, limit {limit}s) {detail}")
        return status == "PASS"

    return emit


def _random_module(A, seed, max_dim=3):
    rng = random.Random(seed)
    return random_representation(A, [rng.randint(0, max_dim) for _ in range(A.num_vertices)], derive_seed(seed))


def test_criterion_1_worked_example(report):
    t = time.perf_counter()
    ws = load_workspace()
    ctx = ws.context("U")
    U = ws.module("U")
    ext1 = ext_dim(U, U, 1)[1]
    pd = pdim(U)
    iso = eta(ctx, U).is_iso()
    member = g_class(ctx, U).member
    gd = g_dim(ctx, U)
    elapsed = time.perf_counter() - t
    ok = ext1 == 0 and pd.is_yes and pd.value == 1 and iso and member.is_yes and gd.is_yes and gd.value == 0
    assert report(1, ok, elapsed, 1.0, f"Ext1(U,U)={ext1} pd(U)={pd} etaIso={iso} gClass={member} gDim={gd}")


def test_criterion_2_dimensions(report):
    t = time.perf_counter()
    ws = load_workspace()
    lam = ws.algebra
    S, _ = endomorphism_algebra(ws.module("U"))
    # by hand: paths in A3, and Hom(P_v, X) = X_v with Hom(S2, -) read off socles
    paths = count_paths(3, [("a", 0, 1), ("b", 1, 2)], 3)
    names = ("P1", "P2", "S2")
    hand = {("S2", "P1"): 0, ("S2", "P2"): 0, ("S2", "S2"): 1}
    for x in ("P1", "P2"):
        v = int(x[1]) - 1
        for y in names:
            hand[(x, y)] = ws.module(y).dims[v]
    engine_pairs = {(x, y): hom_dim(ws.module(x), ws.module(y)) for x in names for y in names}
    elapsed = time.perf_counter() - t
    ok = lam.dimension == paths == 6 and S.dimension == sum(hand.values()) == 5 and engine_pairs == hand
    assert report(2, ok, elapsed, 1.0, f"dim Lambda={lam.dimension} (paths {paths}) dim End(U)={S.dimension} "
                                       f"(hand {sum(hand.values())})")


def test_criterion_3_euler_form(report):
    t = time.perf_counter()
    cases = [("a3", [(0, 1), (1, 2)]), ("d4", [(0, 1), (0, 2), (1, 3), (2, 3)])]
    total = agree = 0
    for name, arrows in cases:
        A = builtin_algebra(name, F5)
        for k in range(260):
            M = _random_module(A, derive_seed("euler-M", name, k))
            N = _random_module(A, derive_seed("euler-N", name, k))
            rep = ext_dim(M, N, 1)
            total += 1
            agree += rep[0] - rep[1] == euler_form(M.dims, N.dims, arrows)
    elapsed = time.perf_counter() - t
    ok = total >= 500 and agree == total
    assert report(3, ok, elapsed, 30.0, f"{agree}/{total} pairs satisfy Hom - Ext1 = Euler form")


def test_criterion_4_dimension_shift(report):
    t = time.perf_counter()
    total = agree = 0
    for name in ("a3", "a3-ba0", "d4"):
        A = builtin_algebra(name, F5)
        for k in range(70):
            rng = random.Random(derive_seed("shift", name, k))
            M = _random_module(A, derive_seed("shift-M", name, k))
            N = _random_module(A, derive_seed("shift-N", name, k))
            i, n = rng.randint(1, 2), rng.randint(1, 2)
            total += 1
            agree += ext_dim(M, N, i + n)[i + n] == ext_dim(syzygy(M, n), N, i)[i]
    elapsed = time.perf_counter() - t
    ok = total >= 200 and agree == total
    assert report(4, ok, elapsed, 30.0, f"{agree}/{total} probes satisfy Ext^(i+n)(M,N) = Ext^i(syz^n M, N)")


def test_criterion_5_law_suite(report):
    t = time.perf_counter()
    cfg = LawSuiteConfig()
    results = LawSuite(cfg).run()
    elapsed = time.perf_counter() - t
    worst = max(r.skip_rate for r in results)
    violations = sum(len(r.violations) for r in results)
    ok = violations == 0 and all(r.passed for r in results) and cfg.instances == 200
    detail = ", ".join(f"{r.law} {r.checked}/{r.instances} skip {r.skip_rate:.0%}" for r in results)
    assert report(5, ok, elapsed, 180.0, f"violations={violations} maxSkip={worst:.0%}: {detail}")


def test_criterion_6_g_resolutions(report):
    t = time.perf_counter()
    cfg = LawSuiteConfig(laws=("gclassResolution",), instances=120, seed=derive_seed("criterion-6"))
    (r,) = LawSuite(cfg).run()
    elapsed = time.perf_counter() - t
    ok = r.nontrivial >= 50 and not r.violations and r.passed
    assert report(6, ok, elapsed, 60.0, f"{r.nontrivial} resolutions of length >= 1 checked "
                                        f"({r.checked} total), violations={len(r.violations)}")


def test_criterion_7_fdim_projectives_is_pdim(report):
    t = time.perf_counter()
    total = agree = 0
    for name in ("a3", "a3-ba0"):
        A = builtin_algebra(name, F5)
        o = projectives_oracle(A)
        mods = [simple(A, v) for v in range(3)] + [indec_projective(A, v) for v in range(3)]
        mods += [_random_module(A, derive_seed("fdim", name, k)) for k in range(100)]
        for M in mods:
            total += 1
            agree += f_dim(o, M).value == pdim(M)
    A = builtin_algebra("a3-ba0", F5)
    S1 = simple(A, 0)
    terms = [t_.dims for t_ in minimal_resolution(S1).terms]
    by_hand = [indec_projective(A, v).dims for v in (0, 1, 2)]  # P(1), P(2), P(3)
    pd_s1 = pdim(S1)
    elapsed = time.perf_counter() - t
    ok = agree == total and pd_s1.value == 2 and terms == by_hand == [(1, 1, 0), (0, 1, 1), (0, 0, 1)]
    assert report(7, ok, elapsed, 30.0, f"{agree}/{total} modules agree; pd S(1) over ba=0 is {pd_s1}, "
                                        f"resolution terms {terms}")


def test_criterion_8_determinism(report, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"instances": 5}))
    commands = [
        ["algebra", "check"],
        ["resolve", "U"],
        ["ext", "U", "U"],
        ["pdim", "S1", "--workspace", "builtin:a3-ba0"],
        ["fdim", "perp:U:inf", "S1"],
        ["gclass", "S1"],
        ["gdim", "--ctx", "U", "U"],
        ["dreflexive", "S1", "--n", "1"],
        ["laws", "run", "--config", str(cfg), "--seed", "42"],
        ["laws", "run", "--config", str(cfg), "--seed", "42", "--field", "fp:3"],
    ]
    t = time.perf_counter()
    same = 0
    for argv in commands:
        outs = [subprocess.run([sys.executable, "-m", "homdim.cli", *argv], capture_output=True, check=False)
                for _ in range(2)]
        same += outs[0].stdout == outs[1].stdout and bool(outs[0].stdout) and outs[0].returncode == 0
    elapsed = time.perf_counter() - t
    ok = same == len(commands)
    assert report(8, ok, elapsed, 300.0, f"{same}/{len(commands)} commands byte-identical across two runs")
