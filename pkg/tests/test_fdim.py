import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homdim import Field, builtin_algebra, load_workspace
from homdim.fdim import (
    add_oracle,
    derive_seed,
    f_dim,
    global_fdim_probe,
    injective_dim,
    parse_oracle,
    perp_oracle,
    projectives_oracle,
)
from homdim.homology import pdim
from homdim.rep import direct_sum, indec_projective, random_representation, simple, zero_module
from homdim.verdict import No, Unknown, Yes, all_of

F5 = Field.prime(5)


def test_verdicts():
    assert all_of(Yes(), Yes()).is_yes
    assert all_of(Yes(), Unknown("x")).is_unknown
    assert all_of(Unknown(), No()).is_no
    assert Yes(2).to_json() == {"verdict": "Yes", "value": 2}
    assert No({"d": 1}).to_json() == {"verdict": "No", "witness": {"d": 1}}
    assert Unknown("r").to_json() == {"verdict": "Unknown", "reason": "r"}
    assert not Unknown().determinate


def test_derive_seed_stable():
    assert derive_seed(0, "law", 3) == derive_seed(0, "law", 3)
    assert derive_seed(0, "law", 3) != derive_seed(0, "law", 4)
    assert 0 <= derive_seed("x") < 2 ** 64


def test_projectives_membership(ws):
    o = projectives_oracle(ws.algebra)
    assert o.membership(direct_sum(ws.algebra, [ws.module("P1"), ws.module("P3")])).is_yes
    assert o.membership(ws.module("S1")).is_no
    assert o.membership(zero_module(ws.algebra)).is_yes
    assert f_dim(o, ws.module("U")).value == Yes(1)


def test_perp_membership(ws):
    assert perp_oracle([ws.module("P1")], None).membership(ws.module("S3")).is_yes
    v = perp_oracle([ws.module("S3")], 1).membership(ws.module("S2"))
    assert v.is_no and v.value["degree"] == 1
    assert f_dim(perp_oracle([ws.module("U")], None), ws.module("S1")).value == Yes(1)


def test_add_membership(ws):
    o = add_oracle(ws.module("U"))
    for name in ("P1", "P2", "S2", "U"):
        assert o.membership(ws.module(name)).is_yes
    assert o.membership(direct_sum(ws.algebra, [ws.module("U"), ws.module("S2")])).is_yes
    assert o.membership(ws.module("S1")).is_no
    assert o.membership(ws.module("P3")).is_no
    assert o.contains_projectives.is_no
    kc = o.kernel_closed
    assert kc.is_no and kc.value["kernelDims"] == [0, 0, 1]


def test_fdim_heuristic_flag_for_non_resolving(ws):
    o = add_oracle(ws.module("U"))
    rep = f_dim(o, ws.module("S1"))
    assert rep.heuristic


def test_injective_dim(ws, a3ba0):
    assert injective_dim(ws.module("U")).value == 1
    assert injective_dim(ws.module("S1")).value == 0  # S1 is the injective hull of itself over A3
    assert injective_dim(simple(a3ba0, 2)).value == 2


def test_parse_oracle(ws):
    A, mods = ws.algebra, ws.modules
    assert parse_oracle("projectives", mods, A).kind == "projectives"
    o = parse_oracle("perp:S2,S3:1", mods, A)
    assert o.kind == "perp" and o.m == 1 and len(o.G) == 2
    assert parse_oracle("perp:P1:inf", mods, A).m is None
    assert parse_oracle("add:U", mods, A).U == ws.module("U")
    for bad in ("projective", "perp::1", "perp:S1:0", "add", "what:S1"):
        with pytest.raises(ValueError):
            parse_oracle(bad, mods, A)
    with pytest.raises(KeyError):
        parse_oracle("perp:X:1", mods, A)


def test_global_probe(ws):
    r = global_fdim_probe(projectives_oracle(ws.algebra), ws.algebra, sample_budget=10)
    assert r["value"] == {"verdict": "Yes", "value": 1}
    r = global_fdim_probe(perp_oracle([ws.module("U")], None), ws.algebra, sample_budget=10)
    assert r["injectiveBound"] == 1 and r["boundViolations"] == 0


def test_global_probe_relation_algebra(a3ba0):
    r = global_fdim_probe(projectives_oracle(a3ba0), a3ba0, sample_budget=10)
    assert r["maxObserved"] == 2


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["a3", "a3-ba0"]), st.lists(st.integers(0, 3), min_size=3, max_size=3),
       st.integers(0, 2 ** 32))
def test_fdim_projectives_is_pdim(name, d, seed):
    A = builtin_algebra(name, F5)
    M = random_representation(A, d, seed)
    assert f_dim(projectives_oracle(A), M).value == pdim(M)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=3, max_size=3), st.lists(st.integers(0, 2), min_size=3, max_size=3),
       st.integers(0, 2 ** 32))
def test_perp_summand_stability(d1, d2, seed):
    A = builtin_algebra("a3-ba0", F5)
    o = perp_oracle([simple(A, 2)], None)
    L = random_representation(A, d1, seed)
    M = random_representation(A, d2, seed + 1)
    both = o.membership(L).is_yes and o.membership(M).is_yes
    assert o.membership(direct_sum(A, [L, M])).is_yes == both


def test_perp_m_bounded_by_horizon(a3ba0):
    # Ext^2(S1, S3) != 0, so S1 is in the degree-1 perp but not in the full one
    S1, S3 = simple(a3ba0, 0), simple(a3ba0, 2)
    assert perp_oracle([S3], 1).membership(S1).is_yes
    assert perp_oracle([S3], None).membership(S1).is_no


def test_perp_unknown_when_not_certified():
    from homdim import path_algebra

    A = path_algebra([1], [("x", 1, 1)], length_bound=2, field_=F5)
    S = simple(A, 0)
    P = indec_projective(A, 0)
    # Ext^i(P, S) = 0 for all i; the target S has infinite injective dimension
    assert perp_oracle([S], None, horizon=3).membership(P).is_yes
    assert perp_oracle([S], None, horizon=3).membership(S).is_no
    o = perp_oracle([P], None, horizon=3)
    # k[x]/x^2 is self-injective so S is perpendicular to P, but the injective
    # dimension of P is certified through simples whose resolutions never stop
    v = o.membership(S)
    assert v.is_unknown and "degree 3" in v.value
    assert o.g_injective_dims[0].is_unknown


def test_workspace_field_switch():
    ws = load_workspace(field_=F5)
    assert ws.algebra.field == F5
    assert ws.module("U").dims == (1, 3, 2)
