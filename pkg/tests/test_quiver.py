import itertools
import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import linalg
import quiver
from errors import NotRealizable, ValidationError
from linalg import ExactMatrix, FieldSpec, Subspace
from quiver import Decomposition, DimVector, ExtendedRanks, RepMatrices, SubrepPoint


@st.composite
def decompositions(draw, n=None, max_dim=5):
    n = n or draw(st.integers(1, 4))
    mult = {}
    dims = [0] * n
    for a, b in draw(st.lists(st.tuples(st.integers(1, n), st.integers(1, n)), max_size=3 * n)):
        a, b = min(a, b), max(a, b)
        if all(dims[i - 1] < max_dim for i in range(a, b + 1)):
            mult[(a, b)] = mult.get((a, b), 0) + 1
            for i in range(a, b + 1):
                dims[i - 1] += 1
    return Decomposition(n, mult)


@st.composite
def decomposition_pairs(draw):
    n = draw(st.integers(1, 4))
    return draw(decompositions(n=n)), draw(decompositions(n=n))


def test_dim_vector_validation():
    assert DimVector(3, (1, 2)).n == 2
    for m, d in [(3, (1, 3)), (3, (2, 1)), (3, (0, 2)), (2, (1, 1)), (3, ())]:
        with pytest.raises(ValidationError):
            DimVector(m, d)


def test_euler_form():
    assert quiver.euler_form((1, 4), (5, 2)) == 11
    assert quiver.euler_form((1, 4), (0, 0)) == 0
    assert quiver.euler_form((1, 2), (2, 1)) == 3
    with pytest.raises(ValidationError):
        quiver.euler_form((1,), (1, 2))


def test_hom_ext_tables():
    n = 3
    U13 = Decomposition.interval(n, 1, 3)
    U23 = Decomposition.interval(n, 2, 3)
    assert quiver.hom_dim(U13, U23) == 0
    assert quiver.ext_dim(U13, U23) == 0
    for h in range(1, n):
        assert quiver.ext_dim(Decomposition.interval(n, 1, h), Decomposition.interval(n, h + 1, n)) == 1


@given(decomposition_pairs())
@settings(max_examples=100, deadline=None)
def test_hom_minus_ext_is_euler_form(pair):
    A, B = pair
    assert quiver.hom_dim(A, B) - quiver.ext_dim(A, B) == quiver.euler_form(A.dims, B.dims)


@given(decomposition_pairs(), st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_hom_table_matches_intertwiners(pair, seed):
    A, B = pair
    F = FieldSpec.prime(101)
    rng = random.Random(seed)
    M = quiver.random_conjugate(quiver.realize(A, F), rng)
    N = quiver.random_conjugate(quiver.realize(B, F), rng)
    assert linalg.intertwiner_space_dim(M, N) == quiver.hom_dim(A, B)


def test_rank_profile_examples(qq):
    identity = RepMatrices.projections(qq, 3, [(), ()])
    R = quiver.rank_profile(identity)
    assert all(R[a, b] == 3 for a in range(1, 4) for b in range(a, 4))

    R = quiver.rank_profile(RepMatrices.projections(qq, 3, [(1,)]))
    assert (R[1, 1], R[2, 2], R[1, 2]) == (3, 3, 2)

    R = quiver.rank_profile(RepMatrices.projections(qq, 2, [(1, 2), (1, 2)]))
    assert R.off_diagonal() == [0, 0, 0]


def test_rank_profile_decreases_along_composites(qq):
    rng = random.Random(7)
    for _ in range(20):
        M = RepMatrices.constant(qq, 3, [linalg.random_matrix(qq, 3, 3, rng) for _ in range(3)])
        R = quiver.rank_profile(M)
        for a in range(1, 5):
            for b in range(a, 4):
                assert R[a, b] >= R[a, b + 1]


def test_decompose_from_ranks_example():
    m, n = 3, 2
    R = ExtendedRanks(n, {(1, 1): m, (2, 2): m, (1, 2): 2})
    assert quiver.decompose_from_ranks(R) == Decomposition(2, {(1, 1): 1, (1, 2): 2, (2, 2): 1})


def test_decompose_identity():
    R = ExtendedRanks(3, {(a, b): 4 for a in range(1, 4) for b in range(a, 4)})
    assert quiver.decompose_from_ranks(R) == Decomposition(3, {(1, 3): 4})


def test_decompose_not_realizable():
    with pytest.raises(NotRealizable):
        quiver.decompose_from_ranks(ExtendedRanks(2, {(1, 1): 2, (2, 2): 2, (1, 2): 3}))


def test_decomposition_matches_projection_oracle(qq):
    # every 0/1 projection of rank 2 on Q^3 decomposes as U11 + U12^2 + U22
    expected = Decomposition(2, {(1, 1): 1, (1, 2): 2, (2, 2): 1})
    for J in ([1], [2], [3]):
        M = RepMatrices.projections(qq, 3, [J])
        D = quiver.decomposition_of(M)
        assert D == expected
        for a in range(1, 3):
            for b in range(a, 3):
                U = quiver.realize(Decomposition.interval(2, a, b), qq)
                assert linalg.intertwiner_space_dim(U, M) == quiver.hom_dim(Decomposition.interval(2, a, b), D)


def test_ranks_from_decomposition_examples():
    R = quiver.ranks_from_decomposition(Decomposition(3, {(1, 3): 5}))
    assert all(R[a, b] == 5 for a in range(1, 4) for b in range(a, 4))
    R = quiver.ranks_from_decomposition(Decomposition(2, {(1, 1): 1, (2, 2): 1}))
    assert R[1, 2] == 0


@given(decompositions())
@settings(max_examples=200, deadline=None)
def test_decomposition_round_trip(D):
    R = quiver.ranks_from_decomposition(D)
    assert quiver.decompose_from_ranks(R) == D
    assert quiver.ranks_from_decomposition(quiver.decompose_from_ranks(R)) == R


def test_well_behaved_rep():
    assert quiver.well_behaved_rep(3, DimVector(3, (1, 2))) == Decomposition(2, {(1, 1): 1, (1, 2): 2, (2, 2): 1})
    assert quiver.well_behaved_rep(6, DimVector(6, (1, 4))) == Decomposition(2, {(1, 1): 3, (1, 2): 3, (2, 2): 3})


@pytest.mark.parametrize("m", range(2, 9))
def test_well_behaved_ranks_are_r1(m):
    for n in range(1, m):
        for d in itertools.combinations(range(1, m), n):
            d = DimVector(m, d)
            R = quiver.ranks_from_decomposition(quiver.well_behaved_rep(m, d))
            for i in range(1, n):
                for j in range(i, n):
                    assert R.composite_rank(i, j) == m + d[i] - d[j + 1]


def test_well_behaved_split():
    d = DimVector(5, (1, 3, 4))
    P, I = quiver.well_behaved_split(5, d)
    assert quiver.is_projective(P)
    assert quiver.is_injective(I)
    assert P + I == quiver.well_behaved_rep(5, d)


def test_minimal_projective_resolution_of_interval():
    P, Q = quiver.minimal_projective_resolution(Decomposition.interval(3, 1, 2))
    assert P == Decomposition.interval(3, 1, 3)
    assert Q == Decomposition.interval(3, 3, 3)


def test_minimal_projective_resolution_n2():
    m = 4
    for rk in range(0, m + 1):
        D = quiver.decompose_from_ranks(ExtendedRanks(2, {(1, 1): m, (2, 2): m, (1, 2): rk}))
        P, Q = quiver.minimal_projective_resolution(D)
        assert P == Decomposition(2, {(1, 2): m, (2, 2): m - rk})
        assert Q == Decomposition(2, {(2, 2): m - rk})


def test_projective_has_no_syzygy():
    P, Q = quiver.minimal_projective_resolution(Decomposition(3, {(1, 3): 2, (2, 3): 1, (3, 3): 4}))
    assert Q == Decomposition.zero(3)
    assert P == Decomposition(3, {(1, 3): 2, (2, 3): 1, (3, 3): 4})


@given(decompositions())
@settings(max_examples=100, deadline=None)
def test_resolution_is_exact_on_dimensions(D):
    P, Q = quiver.minimal_projective_resolution(D)
    assert all(p == q + x for p, q, x in zip(P.dims, Q.dims, D.dims))


def test_is_catenoid():
    m, n, h = 4, 3, 2
    assert quiver.is_catenoid(quiver.mh_decomposition(m, n, h))
    assert quiver.is_catenoid(Decomposition(2, {(1, 1): 1, (2, 2): 1}))
    assert not quiver.is_catenoid(Decomposition(3, {(1, 3): 1, (2, 2): 1}))
    assert quiver.is_catenoid(Decomposition.interval(4, 2, 3, k=3))


def interval_graph(n):
    graph = nx.DiGraph()
    for i, j in itertools.combinations_with_replacement(range(1, n + 1), 2):
        graph.add_node((i, j))
        if i > 1:
            graph.add_edge((i, j), (i - 1, j))
        if j > i:
            graph.add_edge((i, j), (i, j - 1))
    return graph


def catenoid_by_paths(D, graph):
    return all(nx.has_path(graph, x, y) or nx.has_path(graph, y, x)
               for x, y in itertools.combinations(D.intervals(), 2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_is_catenoid_agrees_with_path_search(n):
    graph = interval_graph(n)
    intervals = sorted(graph)
    for size in range(len(intervals) + 1):
        for chosen in itertools.combinations(intervals, size):
            D = Decomposition(n, {ab: 2 for ab in chosen})
            assert quiver.is_catenoid(D) == catenoid_by_paths(D, graph), D.label()


def test_schubert_embedding_target():
    D = Decomposition(2, {(1, 1): 1, (1, 2): 2, (2, 2): 1})
    assert quiver.schubert_embedding_target(D, (1, 2)) == ((3, 4), (1, 3))
    projective = Decomposition(2, {(1, 2): 2, (2, 2): 1})
    assert quiver.schubert_embedding_target(projective, (1, 2)) == (projective.dims, (1, 2))


def test_surjective_at():
    D = quiver.mh_decomposition(3, 3, 1)
    assert not quiver.surjective_at(D, 1)
    assert quiver.surjective_at(D, 2)


def test_quotient_rep_trivial_cases(qq):
    M = RepMatrices.projections(qq, 3, [(1,)])
    everything = SubrepPoint((Subspace.coordinate(qq, 3, (1, 2, 3)), Subspace.coordinate(qq, 3, (1, 2, 3))))
    nothing = SubrepPoint((Subspace.zero(qq, 3), Subspace.zero(qq, 3)))
    assert quiver.quotient_rep(M, everything).vertex_dims == (0, 0)
    assert quiver.quotient_rep(M, nothing) == M


def test_quotient_rep_rejects_non_subrep(qq):
    M = RepMatrices.projections(qq, 3, [()])
    L = SubrepPoint.coordinate(qq, [3, 3], [(1,), (2, 3)])
    with pytest.raises(ValidationError):
        quiver.quotient_rep(M, L)


def test_sub_and_quotient_are_consistent():
    F = FieldSpec.prime(3)
    M = RepMatrices.projections(F, 3, [(1,), (2,)])
    assert quiver.rank_profile(M).off_diagonal() == [2, 1, 2]

    def span(*vectors):
        return Subspace.span(F, 3, [tuple(F.element(x) for x in v) for v in vectors])

    # (1,1,1) -> (0,1,1) -> (0,0,1)
    L = SubrepPoint((span((1, 1, 1)), span((0, 1, 1), (1, 0, 0)), span((0, 0, 1), (1, 0, 0))))
    assert quiver.is_subrep(M, L)
    sub, quot = quiver.sub_rep(M, L), quiver.quotient_rep(M, L)
    assert sub.vertex_dims == (1, 2, 2)
    assert quot.vertex_dims == (2, 1, 1)
    A, B = quiver.decomposition_of(sub), quiver.decomposition_of(quot)
    assert linalg.intertwiner_space_dim(sub, quot) == quiver.hom_dim(A, B)
    assert linalg.intertwiner_space_dim(quot, sub) == quiver.hom_dim(B, A)


def test_mh_and_mprime_reps(qq):
    m, n = 4, 4
    for h in range(1, n):
        assert quiver.decomposition_of(quiver.mh_rep(qq, m, n, h)) == quiver.mh_decomposition(m, n, h)
        Mp = quiver.mprime_rep(qq, m, n, h)
        assert quiver.decomposition_of(Mp) == quiver.mprime_decomposition(m, n, h)
        assert Mp.vertex_dims[h - 1] == Mp.vertex_dims[h] == m - 1
    with pytest.raises(ValidationError):
        quiver.mh_rep(qq, m, n, n)


def test_rep_matrices_shape_check(qq):
    with pytest.raises(ValidationError):
        RepMatrices(qq, [2, 3], [ExactMatrix.identity(qq, 2)])
    with pytest.raises(ValidationError):
        RepMatrices(qq, [2, 2], [])


def test_decomposition_restrict():
    D = Decomposition(3, {(1, 1): 2, (2, 3): 1})
    assert D.restrict(2, 3) == Decomposition(2, {(1, 2): 1})
    assert D.restrict(1, 1) == Decomposition(1, {(1, 1): 2})
