import itertools

import pytest

import classifier
import enumerator
import orbits
import quiver
from errors import NotFlat, NotIrreducible, PreconditionError
from linalg import FieldSpec, Subspace
from orbits import ProjectionTuple, RankSequence
from quiver import DimVector, RepMatrices


def rank2(m, rank):
    return RankSequence.from_ranks(m, 2, {(1, 1): rank})


EXAMPLE_D = DimVector(6, (1, 4))


def test_is_smooth():
    assert classifier.is_smooth(RankSequence.identity(4, 3))
    assert not classifier.is_smooth(rank2(6, 5))
    assert classifier.is_smooth(RankSequence.zero(4, 3))


def test_is_irreducible():
    assert classifier.is_irreducible(rank2(6, 3), EXAMPLE_D)
    assert not classifier.is_irreducible(rank2(6, 2), EXAMPLE_D)
    for d in [(1, 2), (1, 5), (3, 4)]:
        assert classifier.is_irreducible(rank2(6, 0), DimVector(6, d))


@pytest.mark.parametrize("m", [3, 4, 5])
def test_two_vertex_irreducibility(m):
    for d1, d2 in itertools.combinations(range(1, m), 2):
        d = DimVector(m, (d1, d2))
        for rank in range(m + 1):
            expected = rank == 0 or d2 - d1 >= m - rank
            assert classifier.is_irreducible(rank2(m, rank), d) == expected


def test_flat_flags():
    d = DimVector(3, (1, 2))
    r1, _ = orbits.flat_targets(d)
    assert classifier.flat_flags(r1, d) == (True, True, True)
    assert classifier.flat_flags(rank2(3, 1), d) == (True, False, False)
    assert classifier.flat_flags(RankSequence.zero(3, 2), d)[2]


def test_orbit_flags_for_m3():
    d = DimVector(3, (1, 2))
    for r in orbits.enumerate_orbits(3, 2):
        rank = r.rank(1)
        flat, flat_irr, _ = classifier.flat_flags(r, d)
        assert flat == (rank >= 1 or rank == 0)
        assert flat_irr == (rank >= 2 or rank == 0)
        assert classifier.is_smooth(r) == (rank in (0, 3))


def test_consistency_sweep():
    for m in range(2, 5):
        for n in range(1, min(3, m - 1) + 1):
            all_orbits = orbits.enumerate_orbits(m, n)
            for d in itertools.combinations(range(1, m), n):
                d = DimVector(m, d)
                for r in all_orbits:
                    irreducible = classifier.is_irreducible(r, d)
                    flat, flat_irr, in_u_irr = classifier.flat_flags(r, d)
                    assert irreducible == in_u_irr
                    assert irreducible or not classifier.is_smooth(r)
                    assert flat or not flat_irr


def test_flat_irr_dominates_flat_targets():
    d = DimVector(5, (1, 3, 4))
    for stratum in orbits.strata(d.n):
        r1, r2 = orbits.stratum_rank_targets(stratum, d)
        assert orbits.degenerates_to(r1, r2)


def test_split_product():
    m = 4
    assert len(classifier.split_product(RankSequence.identity(m, 3), DimVector(m, (1, 2, 3)))) == 1

    segments = classifier.split_product(RankSequence.zero(m, 3), DimVector(m, (1, 2, 3)))
    assert [s.d.d for s in segments] == [(1,), (2,), (3,)]

    r = RankSequence.of(RepMatrices.projections(FieldSpec.rational(), m, [(1,), (1, 2, 3, 4)]))
    segments = classifier.split_product(r, DimVector(m, (1, 2, 3)))
    assert [(s.start, s.end) for s in segments] == [(1, 2), (3, 3)]
    assert [s.d.d for s in segments] == [(1, 2), (3,)]
    assert segments[0].ranks.ranks() == (3,)


def test_dimension():
    assert classifier.dimension(rank2(6, 4), EXAMPLE_D) == 11
    assert classifier.dimension(RankSequence.identity(3, 2), DimVector(3, (1, 2))) == 3
    assert classifier.dimension(RankSequence.zero(3, 2), DimVector(3, (1, 2))) == 4
    with pytest.raises(NotFlat):
        classifier.dimension(rank2(6, 1), EXAMPLE_D)


def test_dimension_is_product_of_factors():
    m = 4
    d = DimVector(m, (1, 2, 3))
    r = RankSequence.of(RepMatrices.projections(FieldSpec.rational(), m, [(1,), (1, 2, 3, 4)]))
    # a degenerate flag of type (1, 2) in F^4 times Gr(3, 4)
    assert classifier.dimension(r, d) == quiver.euler_form((1, 2), (3, 2)) + 3


def test_point_count_of_a_degenerate_flag():
    F2 = FieldSpec.prime(2)
    d = DimVector(4, (1, 2))
    M = RepMatrices.projections(F2, 4, [(1,)])
    assert classifier.dimension(RankSequence.of(M), d) == 5
    # U_1 = <v_1> leaves U_2 free, any other line forces U_2 to contain its image
    assert enumerator.point_count(M, d) == 35 + 14 * 7


def test_is_well_behaved():
    d = DimVector(5, (1, 3, 4))
    r = RankSequence.of_decomposition(5, quiver.well_behaved_rep(5, d))
    assert classifier.is_well_behaved(r, d)
    assert not classifier.is_well_behaved(rank2(6, 4), EXAMPLE_D)
    assert classifier.is_well_behaved(rank2(6, 3), EXAMPLE_D)


def test_is_well_behaved_matrices():
    qq = FieldSpec.rational()
    d = DimVector(4, (1, 2, 3))
    assert not classifier.is_well_behaved_matrices(RepMatrices.projections(qq, 4, [(1,), (1,)]), d)
    assert classifier.is_well_behaved_matrices(RepMatrices.projections(qq, 4, [(1,), (2,)]), d)


def test_singular_model_mh():
    info = classifier.singular_model_Mh(6, EXAMPLE_D, 1)
    assert (info.kind, info.sing_dim, info.sing_codim) == (classifier.EXACT, 4, 7)
    decomposition, dprime = info.model
    assert dprime == (0, 4)
    assert decomposition == quiver.Decomposition(2, {(1, 2): 5})

    info = classifier.singular_model_Mh(4, DimVector(4, (1, 2)), 1)
    assert (info.sing_codim, info.sing_dim) == (3, 2)


@pytest.mark.parametrize("m", range(3, 9))
def test_singular_model_consistency(m):
    for n in range(1, m):
        for d in itertools.combinations(range(1, m), n):
            d = DimVector(m, d)
            for h in range(1, n):
                info = classifier.singular_model_Mh(m, d, h)
                assert info.sing_dim + info.sing_codim == classifier.flag_dimension(d)
                if d.step(h) == 1:
                    assert info.sing_codim == 3


def test_singular_summary_example():
    assert classifier.singular_summary(rank2(6, 6), EXAMPLE_D).kind == classifier.EMPTY
    info = classifier.singular_summary(rank2(6, 5), EXAMPLE_D)
    assert (info.kind, info.sing_dim) == (classifier.EXACT, classifier.EXAMPLE_REFERENCE["sing_dim"][5])
    info = classifier.singular_summary(rank2(6, 4), EXAMPLE_D)
    assert (info.kind, info.codim_lower, info.codim_upper) == (classifier.BOUNDED, 3, 7)
    assert 3 <= 11 - classifier.EXAMPLE_REFERENCE["sing_dim"][4] <= 7
    info = classifier.singular_summary(rank2(6, 3), EXAMPLE_D)
    assert info.codim_lower <= 11 - classifier.EXAMPLE_REFERENCE["sing_dim"][3] <= info.codim_upper
    with pytest.raises(NotIrreducible):
        classifier.singular_summary(rank2(6, 2), EXAMPLE_D)


def test_singular_summary_unit_steps():
    m = 5
    d = DimVector(m, (1, 2, 3, 4))
    for r in orbits.enumerate_orbits(m, 4):
        if not classifier.is_irreducible(r, d) or classifier.is_smooth(r):
            continue
        info = classifier.singular_summary(r, d)
        assert (info.kind, info.sing_codim) == (classifier.EXACT, 3)


def test_singular_summary_of_products():
    qq = FieldSpec.rational()
    m = 4
    d = DimVector(m, (1, 2, 3))
    # an M^1 factor on vertices 1, 2 times a Grassmannian
    r = RankSequence.of(RepMatrices.projections(qq, m, [(1,), (1, 2, 3, 4)]))
    info = classifier.singular_summary(r, d)
    assert (info.kind, info.sing_codim) == (classifier.EXACT, 3)
    assert info.sing_dim == classifier.dimension(r, d) - 3
    assert info.model is None

    identity_and_zero = RankSequence.of(RepMatrices.projections(qq, m, [(), (1, 2, 3, 4)]))
    assert classifier.singular_summary(identity_and_zero, d).kind == classifier.EMPTY


@pytest.mark.parametrize("m,steps", [(4, (1, 2, 3)), (6, (1, 3, 5))])
def test_singular_dimension_is_monotone_on_exact_orbits(m, steps):
    d = DimVector(m, steps)
    exact = {}
    for r in orbits.enumerate_orbits(m, d.n):
        if classifier.is_irreducible(r, d) and not classifier.is_smooth(r):
            info = classifier.singular_summary(r, d)
            if info.kind == classifier.EXACT:
                exact[r] = info.sing_dim
    compared = set()
    for r, s in itertools.permutations(exact, 2):
        if orbits.degenerates_to(s, r):
            assert exact[r] >= exact[s]
            compared.add((exact[r], exact[s]))
    assert any(a > b for a, b in compared)


def test_construct_singular_witness():
    F = FieldSpec.prime(2)
    J = ProjectionTuple(3, 2, [(1,)])
    L = classifier.construct_singular_witness(J, DimVector(3, (1, 2)))
    assert L.subsets == ((1,), (2, 3))
    assert enumerator.analyze_point(J.to_rep(F), quiver.SubrepPoint.coordinate(F, [3, 3], L.subsets)).ext >= 1

    J = ProjectionTuple(4, 2, [(1,)])
    L = classifier.construct_singular_witness(J, DimVector(4, (1, 2)))
    assert L.subsets == ((1,), (2, 4))


def test_construct_singular_witness_relabels():
    qq = FieldSpec.rational()
    for m, d, zero_sets in [(4, (1, 2, 3), [(), (3,)]), (5, (2, 4), [(2, 5)]), (4, (1, 3), [(4,)])]:
        J = ProjectionTuple(m, len(d), zero_sets)
        L = classifier.construct_singular_witness(J, DimVector(m, d))
        M = J.to_rep(qq)
        assert quiver.is_subrep(M, L)
        assert L.dims == d
        assert enumerator.analyze_point(M, L).ext >= 1


def test_construct_singular_witness_preconditions():
    with pytest.raises(PreconditionError):
        classifier.construct_singular_witness(ProjectionTuple(3, 2, [()]), DimVector(3, (1, 2)))
    with pytest.raises(PreconditionError):
        classifier.construct_singular_witness(ProjectionTuple(6, 2, [(1, 2, 3, 4)]), EXAMPLE_D)
    with pytest.raises(PreconditionError):
        classifier.construct_singular_witness(ProjectionTuple(4, 3, [(1,), (1, 2, 3, 4)]), DimVector(4, (1, 2, 3)))


def test_mh_singular_by_projection(f2):
    def span(*rows):
        return Subspace.span(f2, 3, [tuple(f2.element(x) for x in row) for row in rows])

    on = quiver.SubrepPoint((span((1, 0, 0)), span((0, 1, 0), (0, 0, 1))))
    off = quiver.SubrepPoint((span((1, 0, 0)), span((1, 1, 0), (0, 0, 1))))
    assert classifier.mh_singular_by_projection(on, 1)
    assert not classifier.mh_singular_by_projection(off, 1)


def test_classify_report():
    report = classifier.classify(RankSequence.identity(3, 2), DimVector(3, (1, 2)))
    assert not report.flags["well_behaved"]
    assert report.flags["smooth"] and report.flags["irreducible"] and report.flags["in_U_irr"]
    assert report.flags["normal"] == "by theorem"
    assert report.dimension == 3
    assert report.singular.kind == classifier.EMPTY

    report = classifier.classify(rank2(6, 2), EXAMPLE_D)
    assert not report.flags["irreducible"]
    assert "normal" not in report.flags and "regular_codim2" not in report.flags
    assert report.singular is None

    document = classifier.classify(rank2(6, 5), EXAMPLE_D).to_dict()
    assert document["singular"] == {"kind": "exact", "sing_dim": 4, "sing_codim": 7,
                                    "model": {"decomposition": "U_{1,2}^5", "d": [0, 4]}}


def test_example_reference_table():
    ref = classifier.EXAMPLE_REFERENCE
    d = DimVector(ref["m"], ref["d"])
    for rank in range(3, 7):
        r = rank2(6, rank)
        assert classifier.flat_flags(r, d)[1]
        assert classifier.dimension(r, d) == ref["dimension"]
        assert classifier.is_smooth(r) == (rank == 6)
