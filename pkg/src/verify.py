"""Cross-module property suites.

Every suite runs the rank criteria against an independent computation
(intertwiner systems, point enumeration, explicit constructions) and
publishes one "verify.case" event per checked case and a "verify.failure"
event per counterexample.
"""
import itertools
import logging
import random
from dataclasses import dataclass, field

import classifier
import enumerator
import linalg
import orbits
import quiver
from events import EventBus
from linalg import FieldSpec
from quiver import Decomposition, DimVector, RepMatrices

log = logging.getLogger(__name__)

DEFAULT_SEED = 0
SAMPLE_PRIME = 101


@dataclass
class SuiteResult(object):
    name: str
    passed: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def check(self, condition, case):
        EventBus.pub("verify.case", {"suite": self.name, "case": case, "ok": bool(condition)})
        if condition:
            self.passed += 1
        else:
            self.failures.append(case)
            EventBus.pub("verify.failure", {"suite": self.name, "case": case})
        return condition

    def to_dict(self):
        return {"suite": self.name, "passed": self.passed, "failed": len(self.failures),
                "failures": self.failures[:10]}


def valid_dimension_vectors(m, n=None):
    """Every 0 < d_1 < ... < d_n < m, optionally of fixed length n."""
    lengths = [n] if n is not None else range(1, m)
    for k in lengths:
        for d in itertools.combinations(range(1, m), k):
            yield DimVector(m, d)


def random_decomposition(rng, n, max_dim=5):
    """Random intervals added while every vertex stays at most max_dim."""
    mult = {}
    dims = [0] * n
    for _ in range(rng.randint(0, 3 * n)):
        a = rng.randint(1, n)
        b = rng.randint(a, n)
        if all(dims[i - 1] < max_dim for i in range(a, b + 1)):
            mult[(a, b)] = mult.get((a, b), 0) + 1
            for i in range(a, b + 1):
                dims[i - 1] += 1
    return Decomposition(n, mult)


def suite_exthom(rng, cases=500):
    result = SuiteResult("exthom")
    F = FieldSpec.prime(SAMPLE_PRIME)
    for _ in range(cases):
        n = rng.randint(1, 4)
        A, B = random_decomposition(rng, n), random_decomposition(rng, n)
        M = quiver.random_conjugate(quiver.realize(A, F), rng)
        N = quiver.random_conjugate(quiver.realize(B, F), rng)
        hom = quiver.hom_dim(A, B)
        case = {"A": A.label(), "B": B.label()}
        result.check(hom == linalg.intertwiner_space_dim(M, N), dict(case, check="hom"))
        result.check(hom - quiver.ext_dim(A, B) == quiver.euler_form(A.dims, B.dims), dict(case, check="euler"))
    return result


def suite_classify_consistency(rng, max_m=4, max_n=3):
    result = SuiteResult("classify-consistency")
    for m in range(2, max_m + 1):
        for n in range(1, min(max_n, m - 1) + 1):
            all_orbits = orbits.enumerate_orbits(m, n)
            for d in valid_dimension_vectors(m, n):
                for r in all_orbits:
                    case = {"m": m, "d": list(d.d), "orbit": r.node_name()}
                    irreducible = classifier.is_irreducible(r, d)
                    flat, flat_irr, in_u_irr = classifier.flat_flags(r, d)
                    result.check(irreducible == in_u_irr, dict(case, check="irreducible-vs-U_irr"))
                    result.check(not classifier.is_smooth(r) or irreducible, dict(case, check="smooth-irreducible"))
                    result.check(not flat_irr or flat, dict(case, check="flat-irr-flat"))
    return result


def suite_roundtrip(rng, max_m=3, max_n=4, max_wb=8):
    result = SuiteResult("roundtrip")
    F = FieldSpec.rational()
    for m in range(1, max_m + 1):
        for n in range(1, max_n + 1):
            for r in orbits.enumerate_orbits(m, n):
                case = {"m": m, "n": n, "orbit": r.node_name()}
                J = orbits.representative(r)
                result.check(orbits.RankSequence.of(J.to_rep(F)) == r, dict(case, check="representative"))
                D = r.decomposition()
                result.check(quiver.ranks_from_decomposition(D) == r.extended, dict(case, check="ranks"))
                result.check(quiver.decompose_from_ranks(quiver.ranks_from_decomposition(D)) == D,
                             dict(case, check="decomposition"))
    for m in range(2, max_wb + 1):
        for d in valid_dimension_vectors(m):
            ranks = quiver.ranks_from_decomposition(quiver.well_behaved_rep(m, d))
            result.check(ranks == orbits.flat_targets(d)[0].extended, {"m": m, "d": list(d.d), "check": "r1"})
    return result


SIGMA_INSTANCES = ((3, (1, 2), 1, 2), (4, (1, 2), 1, 2), (4, (1, 3), 1, 2))


def suite_sigma(rng, instances=SIGMA_INSTANCES):
    result = SuiteResult("sigma")
    for m, d, h, p in instances:
        check = enumerator.sigma_bijection_check(m, DimVector(m, d), h, p)
        result.check(check.ok and check.singular == check.model,
                     {"m": m, "d": list(d), "h": h, "p": p, "singular": check.singular, "model": check.model})
    return result


def suite_rankcomposition(rng, cases=1000):
    """Maps with rk f_h >= m - (d_{h+1} - d_h) compose to rank >= m + d_h - d_{k+1}."""
    result = SuiteResult("rankcomposition")
    F = FieldSpec.prime(SAMPLE_PRIME)
    for _ in range(cases):
        m = rng.randint(2, 5)
        n = rng.randint(2, m - 1) if m > 2 else 1
        d = DimVector(m, sorted(rng.sample(range(1, m), n)))
        maps = [linalg.random_matrix_of_rank(F, m, rng.randint(m - d.step(i), m), rng) for i in range(1, n)]
        ranks = quiver.rank_profile(RepMatrices.constant(F, m, maps))
        ok = all(ranks.composite_rank(h, k) >= m + d[h] - d[k + 1] for h in range(1, n) for k in range(h, n))
        result.check(ok, {"m": m, "d": list(d.d), "ranks": ranks.off_diagonal()})
    return result


def suite_codim3(rng, max_m=6):
    """Unit-step d: every singular irreducible orbit has singular codimension exactly 3."""
    result = SuiteResult("codim3")
    for m in range(2, max_m + 1):
        for n in range(1, m):
            orbit_list = None
            for first in range(1, m - n + 1):
                d = DimVector(m, range(first, first + n))
                if orbit_list is None:
                    orbit_list = [r for r in orbits.enumerate_orbits(m, n)
                                  if all(x >= m - 1 or x == 0 for x in r.ranks())]
                for r in orbit_list:
                    if classifier.is_smooth(r) or not classifier.is_irreducible(r, d):
                        continue
                    info = classifier.singular_summary(r, d)
                    case = {"m": m, "d": list(d.d), "orbit": r.node_name(), "singular": info.to_dict()}
                    ok = info.kind == classifier.EXACT and info.sing_codim == 3
                    for h in orbits.mh_upper_bounds(r):
                        if r == orbits.mh_orbit(m, n, h):
                            ok = ok and classifier.singular_model_Mh(m, d, h).sing_codim == 3
                    result.check(ok, case)
    return result


def suite_example(rng):
    """rk f = 3..6 for m = 6, d = (1, 4)."""
    result = SuiteResult("example")
    ref = classifier.EXAMPLE_REFERENCE
    d = DimVector(ref["m"], ref["d"])
    for rank in range(0, 7):
        r = orbits.RankSequence.from_ranks(6, 2, {(1, 1): rank})
        flat, flat_irr, _ = classifier.flat_flags(r, d)
        case = {"rank": rank}
        result.check(flat_irr == (rank >= 3 or rank == 0), dict(case, check="flat-irr"))
        result.check(classifier.is_smooth(r) == (rank in (0, 6)), dict(case, check="smooth"))
        if rank >= 3:
            result.check(classifier.dimension(r, d) == ref["dimension"], dict(case, check="dimension"))
            info = classifier.singular_summary(r, d)
            if rank in ref["sing_dim"]:
                codim = ref["dimension"] - ref["sing_dim"][rank]
                if info.kind == classifier.EXACT:
                    result.check(info.sing_dim == ref["sing_dim"][rank], dict(case, check="sing_dim"))
                else:
                    result.check(info.codim_lower <= codim <= info.codim_upper, dict(case, check="codim-bounds"))
    return result


def suite_points(rng):
    result = SuiteResult("points")
    F2 = FieldSpec.prime(2)
    d = DimVector(3, (1, 2))
    identity = RepMatrices.projections(F2, 3, [()])
    zero = RepMatrices.projections(F2, 3, [(1, 2, 3)])
    result.check(enumerator.point_count(identity, d) == 21, {"check": "identity", "expected": 21})
    result.check(enumerator.point_count(zero, d) == 49, {"check": "zero", "expected": 49})
    J = orbits.ProjectionTuple(3, 2, [(1,)])
    result.check(len(enumerator.fixed_points(J, d)) == 7, {"check": "fixed-points", "expected": 7})
    census = enumerator.singular_point_census(RepMatrices.projections(F2, 4, [(1,)]), DimVector(4, (1, 2)))
    result.check(census[1] == 7, {"check": "census", "expected": 7, "got": list(census)})
    return result


def suite_smoothness(rng, max_m=4, max_n=3, p=2):
    """Irreducible orbits: some point has segment ext > 0 iff some 0 < r_i < m."""
    result = SuiteResult("smoothness")
    F = FieldSpec.prime(p)
    for m in range(2, max_m + 1):
        for n in range(1, min(max_n, m - 1) + 1):
            orbit_list = orbits.enumerate_orbits(m, n)
            for d in valid_dimension_vectors(m, n):
                for r in orbit_list:
                    if not classifier.is_irreducible(r, d):
                        continue
                    J = orbits.representative(r)
                    _, singular = enumerator.singular_point_census(J.to_rep(F), d)
                    case = {"m": m, "d": list(d.d), "orbit": r.node_name(), "singular_points": singular}
                    result.check((singular > 0) == (not classifier.is_smooth(r)), case)
    return result


SUITES = {
    "exthom": suite_exthom,
    "classify-consistency": suite_classify_consistency,
    "roundtrip": suite_roundtrip,
    "sigma": suite_sigma,
    "rankcomposition": suite_rankcomposition,
    "codim3": suite_codim3,
    "example": suite_example,
    "points": suite_points,
    "smoothness": suite_smoothness,
}


def run(name, seed=DEFAULT_SEED):
    """Run one suite (or "all"), each suite with its own generator seeded by seed."""
    names = sorted(SUITES) if name == "all" else [name]
    results = []
    for suite in names:
        log.info("running suite %s", suite)
        result = SUITES[suite](random.Random(seed))
        log.info("suite %s: %d passed, %d failed", suite, result.passed, len(result.failures))
        results.append(result)
    return results
