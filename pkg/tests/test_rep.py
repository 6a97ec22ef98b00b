import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from homdim import Field, builtin_algebra
from homdim.exactla import Matrix
from homdim.homology import projective_cover
from homdim.rep import (
    SES,
    RepError,
    RepMap,
    Representation,
    cokernel,
    direct_sum,
    direct_sum_with_maps,
    hom_dim,
    hom_space,
    image,
    indec_projective,
    kernel,
    pullback,
    random_representation,
    random_sub_ses,
    sc_hom,
    sc_module_of,
    simple,
    submodule_generated,
    zero_module,
)
from oracles import hom_dim_by_enumeration

F2, F5 = Field.prime(2), Field.prime(5)
dims3 = st.lists(st.integers(0, 2), min_size=3, max_size=3)


def test_projectives_and_simples(a3):
    assert [indec_projective(a3, v).dims for v in range(3)] == [(1, 1, 1), (0, 1, 1), (0, 0, 1)]
    assert simple(a3, 1).dims == (0, 1, 0)
    assert indec_projective(a3, 2) == simple(a3, 2)


def test_workspace_u(ws):
    U = ws.module("U")
    assert U.dims == (1, 3, 2)
    assert U.total_dim == 6


def test_hom_dims_a3(a3):
    P = [indec_projective(a3, v) for v in range(3)]
    S = [simple(a3, v) for v in range(3)]
    # Hom(P_v, M) = M_v
    for v in range(3):
        for M in P + S:
            assert hom_dim(P[v], M) == M.dims[v]
    assert hom_dim(S[1], P[0]) == 0
    assert hom_dim(S[2], P[0]) == 1


def test_relations_enforced(a3ba0):
    one = Matrix(a3ba0.field, [[1]])
    with pytest.raises(RepError):
        Representation(a3ba0, (1, 1, 1), [one, one])
    Representation(a3ba0, (1, 1, 1), [one, Matrix.zeros(a3ba0.field, 1, 1)])


def test_nilpotency_enforced():
    from homdim import path_algebra

    A = path_algebra([1], [("x", 1, 1)], length_bound=2)
    with pytest.raises(RepError):
        Representation(A, (1,), [Matrix(A.field, [[1]])])
    Representation(A, (2,), [Matrix(A.field, [[0, 0], [1, 0]])])


def test_shape_enforced(a3):
    with pytest.raises(RepError):
        Representation(a3, (1, 1, 0), [Matrix(a3.field, [[1, 1]]), Matrix.zeros(a3.field, 0, 1)])


def test_json_roundtrip(ws):
    for name in ("U", "M", "P1", "S2"):
        M = ws.module(name)
        assert Representation.from_json(ws.algebra, M.to_json()) == M


def test_pullback_of_cover_with_itself(a3):
    """P2 -> S2 pulled back along itself: kernel of (p, -p): P2 + P2 -> S2."""
    P2, S2 = indec_projective(a3, 1), simple(a3, 1)
    _, p = projective_cover(S2)
    assert p.source == P2
    Pb, l, r = pullback(p, p)
    assert Pb.dims == (0, 1, 2)
    assert Pb.total_dim == 2 * P2.total_dim - S2.total_dim


def test_kernel_cokernel_image(a3):
    _, p = projective_cover(simple(a3, 0))
    K, inc = kernel(p)
    assert K.dims == (0, 1, 1)
    assert inc.is_injective()
    C, q = cokernel(inc)
    assert C.dims == (1, 0, 0)
    assert image(p).dims == (1, 0, 0)


def test_direct_sum_maps(a3):
    mods = [simple(a3, 0), indec_projective(a3, 1)]
    S, incs, projs = direct_sum_with_maps(a3, mods)
    for i, j in [(0, 0), (1, 1), (0, 1)]:
        comp = projs[j].compose_after(incs[i])
        assert comp == (mods[i].identity() if i == j else mods[i].zero_map_to(mods[j]))


def test_submodule_generated(a3):
    P1 = indec_projective(a3, 0)
    sub, inc = submodule_generated(P1, [(1, (1,))])
    assert sub.dims == (0, 1, 1)
    assert zero_module(a3).is_zero()


def test_repmap_validation(a3):
    S1, S2 = simple(a3, 0), simple(a3, 1)
    P1 = indec_projective(a3, 0)
    one = Matrix(a3.field, [[1]])
    z = Matrix.zeros
    # the map P1 -> S2 picking the middle basis vector is not a module map
    with pytest.raises(RepError):
        RepMap(P1, S2, [z(a3.field, 0, 1), one, z(a3.field, 0, 1)])
    RepMap(P1, S1, [one, z(a3.field, 0, 1), z(a3.field, 0, 1)])


@settings(max_examples=40, deadline=None)
@given(dims3, dims3, st.integers(0, 2 ** 32))
def test_hom_dim_matches_enumeration(d1, d2, seed):
    A = builtin_algebra("a3", F2)
    M = random_representation(A, d1, seed)
    N = random_representation(A, d2, seed ^ 0x5A5A)
    if sum(a * b for a, b in zip(M.dims, N.dims)) > 12:
        return
    assert hom_dim(M, N) == hom_dim_by_enumeration(M, N, 2)


@settings(max_examples=25, deadline=None)
@given(dims3, dims3, st.integers(0, 2 ** 32))
def test_hom_dim_matches_enumeration_with_relation(d1, d2, seed):
    A = builtin_algebra("a3-ba0", F2)
    M = random_representation(A, d1, seed)
    N = random_representation(A, d2, seed + 7)
    if sum(a * b for a, b in zip(M.dims, N.dims)) > 12:
        return
    assert hom_dim(M, N) == hom_dim_by_enumeration(M, N, 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(0, 3), min_size=4, max_size=4), st.integers(0, 2 ** 32))
def test_random_sub_ses_is_exact(d, seed):
    A = builtin_algebra("d4", F5)
    M = random_representation(A, d, seed)
    ses = random_sub_ses(M, seed + 1)
    assert ses.is_exact()
    SES(ses.f, ses.g)  # the checked constructor agrees


@settings(max_examples=30, deadline=None)
@given(dims3, dims3, st.integers(0, 2 ** 32))
def test_homs_are_module_maps_and_additive(d1, d2, seed):
    A = builtin_algebra("a3-ba0", F5)
    M = random_representation(A, d1, seed)
    N = random_representation(A, d2, seed + 3)
    for f in hom_space(M, N):
        f.validate()
    assert hom_dim(direct_sum(A, [M, M]), N) == 2 * hom_dim(M, N)


@settings(max_examples=20, deadline=None)
@given(dims3, dims3, st.integers(0, 2 ** 32))
def test_sc_hom_agrees_with_quiver_hom(d1, d2, seed):
    A = builtin_algebra("a3", F5)
    M = random_representation(A, d1, seed)
    N = random_representation(A, d2, seed + 11)
    assert len(sc_hom(sc_module_of(M), sc_module_of(N))) == hom_dim(M, N)


def test_random_representation_respects_relation(a3ba0):
    for seed in range(20):
        M = random_representation(a3ba0, (2, 2, 2), seed)
        assert M.path_matrix(0, ("b", "a")).is_zero()


def test_random_representation_deterministic(a3):
    assert random_representation(a3, (2, 1, 2), 99) == random_representation(a3, (2, 1, 2), 99)
    assert random_representation(a3, (2, 1, 2), 99).key == random_representation(a3, (2, 1, 2), 99).key
