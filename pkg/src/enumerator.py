"""Brute-force points of quiver Grassmannians over small prime fields.

These are the oracles the rank criteria are checked against: full point
enumeration, torus fixed points of projection tuples, and the Hom/Ext
analysis of a point, which decides smoothness on irreducible degenerations.
"""
import itertools
import logging
import operator
from dataclasses import dataclass
from functools import reduce

import classifier
import linalg
import orbits
import quiver
from errors import GuardExceeded, NotIrreducible, ValidationError
from linalg import FieldSpec, Subspace
from quiver import DimVector, SubrepPoint

log = logging.getLogger(__name__)

POINT_GUARD = 10 ** 7


@dataclass
class PointAnalysis(object):
    sub_decomp: quiver.Decomposition
    quot_decomp: quiver.Decomposition
    hom: int
    ext: int
    segment_ext: int

    @property
    def tangent_dim(self):
        return self.hom

    @property
    def singular(self):
        return self.segment_ext > 0


@dataclass
class SigmaCheck(object):
    ok: bool
    singular: int
    model: int
    counterexample: SubrepPoint = None

    def __bool__(self):
        return self.ok


def _dims(M, d):
    dims = tuple(d)
    if len(dims) != M.n:
        raise ValidationError("dimension vector of length {} for {} vertices".format(len(dims), M.n))
    for i, (k, m) in enumerate(zip(dims, M.vertex_dims), 1):
        if not 0 <= k <= m:
            raise ValidationError("d_{} = {} outside 0..{}".format(i, k, m))
    return dims


def subspace_count(M, d):
    p = M.field.characteristic
    return reduce(operator.mul, (linalg.gaussian_binomial(m, k, p) for m, k in zip(M.vertex_dims, _dims(M, d))), 1)


def enumerate_subreps(M, d):
    """Every point of Gr_d(M) over GF(p), in the order of the vertex subspace lists."""
    if not M.field.is_prime:
        raise ValidationError("points can only be enumerated over a prime field")
    dims = _dims(M, d)
    candidates = subspace_count(M, dims)
    if candidates > POINT_GUARD:
        log.warning("enumeration of Gr_%s needs %d candidate tuples, guard is %d", dims, candidates, POINT_GUARD)
        raise GuardExceeded("{} candidate subspace tuples exceed the guard of {}".format(candidates, POINT_GUARD))

    spaces = [list(linalg.enumerate_subspaces(M.field, m, k)) for m, k in zip(M.vertex_dims, dims)]

    def extend(prefix):
        i = len(prefix)
        if i == M.n:
            yield SubrepPoint(tuple(prefix))
            return
        image = linalg.map_subspace(M.maps[i - 1], prefix[-1])
        for V in spaces[i]:
            if linalg.contains(V, image):
                for point in extend(prefix + [V]):
                    yield point

    for V in spaces[0]:
        for point in extend([V]):
            yield point


def point_count(M, d):
    return sum(1 for _ in enumerate_subreps(M, d))


def fixed_points(J, d, field=None):
    """Coordinate points: subsets S_i, |S_i| = d_i, with S_i minus J_i inside S_{i+1}."""
    if (J.m, J.n) != (d.m, d.n):
        raise ValidationError("projection tuple does not match d")
    field = field or FieldSpec.rational()
    universe = range(1, J.m + 1)

    def extend(prefix):
        i = len(prefix)
        if i == J.n:
            yield SubrepPoint.coordinate(field, [J.m] * J.n, prefix)
            return
        forced = set(prefix[-1]) - set(J.zero_sets[i - 1])
        for S in itertools.combinations(universe, d[i + 1]):
            if forced <= set(S):
                for point in extend(prefix + [S]):
                    yield point

    points = []
    for S in itertools.combinations(universe, d[1]):
        points.extend(extend([S]))
    return points


def zero_map_segments(M):
    """Vertex ranges between zero maps."""
    cuts = [0] + [i for i, f in enumerate(M.maps, 1) if f.is_zero()] + [M.n]
    return [(start + 1, end) for start, end in zip(cuts, cuts[1:])]


def analyze_point(M, L):
    sub = quiver.decomposition_of(quiver.sub_rep(M, L))
    quot = quiver.decomposition_of(quiver.quotient_rep(M, L))
    segment_ext = sum(quiver.ext_dim(sub.restrict(a, b), quot.restrict(a, b)) for a, b in zero_map_segments(M))
    return PointAnalysis(sub, quot, quiver.hom_dim(sub, quot), quiver.ext_dim(sub, quot), segment_ext)


def singular_point_census(M, d):
    """(points, singular points) of an irreducible degeneration."""
    r = orbits.RankSequence.of(M)
    if not classifier.is_irreducible(r, d):
        raise NotIrreducible("orbit {} is not irreducible for d={}".format(r.label(), d.d))
    total = singular = 0
    for L in enumerate_subreps(M, d):
        total += 1
        if analyze_point(M, L).singular:
            singular += 1
    log.info("census for d=%s: %d points, %d singular", d.d, total, singular)
    return total, singular


def _embed_tail(V, m):
    """A subspace of Span{v_2..v_m} as a subspace of F^m."""
    return Subspace.span(V.field, m, [(V.field.zero,) + row for row in V.basis])


def _drop_head(V):
    return Subspace.span(V.field, V.ambient_dim - 1, [row[1:] for row in V.basis])


def sigma(point, m, h):
    """Gr_{d'}(M') -> Gr_d(M^h): adds v_1 at vertex h and re-embeds vertices h, h+1."""
    field = point.spaces[0].field
    e1 = (field.one,) + (field.zero,) * (m - 1)
    spaces = list(point.spaces)
    spaces[h - 1] = linalg.span_sum(_embed_tail(spaces[h - 1], m), Subspace.span(field, m, [e1]))
    spaces[h] = _embed_tail(spaces[h], m)
    return SubrepPoint(tuple(spaces))


def sigma_prime(point, h):
    """Inverse of sigma on the singular locus: drops the v_1 coordinate at vertices h, h+1."""
    spaces = list(point.spaces)
    spaces[h - 1] = _drop_head(spaces[h - 1])
    spaces[h] = _drop_head(spaces[h])
    return SubrepPoint(tuple(spaces))


def sigma_bijection_check(m, d, h, p):
    """Sigma maps Gr_{d'}(M') onto the Ext-singular points of Gr_d(M^h), with sigma' as inverse."""
    if d.m != m:
        raise ValidationError("dimension vector is for m={}, not m={}".format(d.m, m))
    field = FieldSpec.prime(p)
    M = quiver.mh_rep(field, m, d.n, h)
    Mprime = quiver.mprime_rep(field, m, d.n, h)
    dprime = tuple(x - 1 if i == h else x for i, x in enumerate(d.d, 1))

    singular = set()
    for L in enumerate_subreps(M, d):
        by_ext = analyze_point(M, L).singular
        if by_ext != classifier.mh_singular_by_projection(L, h):
            log.warning("projection test disagrees with Ext at %s", L)
            return SigmaCheck(False, len(singular), 0, L)
        if by_ext:
            singular.add(L)

    images = set()
    model = 0
    for N in enumerate_subreps(Mprime, dprime):
        model += 1
        L = sigma(N, m, h)
        if L not in singular or sigma_prime(L, h) != N:
            log.warning("sigma fails at %s", N)
            return SigmaCheck(False, len(singular), model, N)
        images.add(L)

    ok = images == singular
    log.info("sigma check m=%d d=%s h=%d p=%d: %d singular, %d model points", m, d.d, h, p, len(singular), model)
    return SigmaCheck(ok, len(singular), model, None if ok else next(iter(singular - images)))
