"""Geometric classification of linear degenerations from their rank data.

Every decision here is a closed-form rank criterion: smoothness, irreducibility,
flatness within the stratum of the tuple, well-behavedness and the dimension
of the degeneration, plus what is known about its singular locus. Normality
and regularity in codimension 2 are consequences of irreducibility and are
reported as such, never computed.
"""
import logging
from dataclasses import dataclass, field

import linalg
import orbits
import quiver
from errors import NotFlat, NotIrreducible, PreconditionError, ValidationError
from linalg import FieldSpec, Subspace
from quiver import DimVector, SubrepPoint

log = logging.getLogger(__name__)

EMPTY = "empty"
EXACT = "exact"
BOUNDED = "bounded"

# Singular loci for m = 6, d = (1, 4), keyed by rk f (ambient dimension 11).
# Known values, stored for checks; singular_summary only bounds ranks 4 and 3.
EXAMPLE_REFERENCE = {
    "m": 6,
    "d": (1, 4),
    "dimension": 11,
    "sing_dim": {5: 4, 4: 6, 3: 8},
}


@dataclass(frozen=True)
class Segment(object):
    start: int
    end: int
    d: DimVector
    ranks: orbits.RankSequence

    def to_dict(self):
        return {"vertices": [self.start, self.end], "d": list(self.d.d), "ranks": self.ranks.to_dict()["ranks"]}


@dataclass
class SingularInfo(object):
    kind: str
    model: tuple = None
    sing_dim: int = None
    sing_codim: int = None
    codim_lower: int = None
    codim_upper: int = None

    def to_dict(self):
        result = {"kind": self.kind}
        if self.kind == EXACT:
            result["sing_dim"] = self.sing_dim
            result["sing_codim"] = self.sing_codim
            if self.model is not None:
                decomposition, dprime = self.model
                result["model"] = {"decomposition": decomposition.label(), "d": list(dprime)}
        elif self.kind == BOUNDED:
            result["codim_bounds"] = [self.codim_lower, self.codim_upper]
        return result


@dataclass
class DegenerationReport(object):
    rank_sequence: orbits.RankSequence
    d: DimVector
    stratum: orbits.Stratum
    decomposition: quiver.Decomposition
    segments: list
    flags: dict = field(default_factory=dict)
    dimension: int = None
    singular: SingularInfo = None

    def to_dict(self):
        return {
            "rank_sequence": self.rank_sequence.to_dict(),
            "d": list(self.d.d),
            "stratum": list(self.stratum.indices),
            "decomposition": self.decomposition.to_dict(),
            "segments": [s.to_dict() for s in self.segments],
            "flags": dict(self.flags),
            "dimension": self.dimension,
            "singular": self.singular.to_dict() if self.singular else None,
        }


def _check_shape(r, d):
    if (r.m, r.n) != (d.m, d.n):
        raise ValidationError("orbit (m={}, n={}) does not match d for m={} of length {}".format(r.m, r.n, d.m, d.n))


def is_smooth(r):
    return all(x in (0, r.m) for x in r.ranks())


def is_irreducible(r, d):
    _check_shape(r, d)
    return all(r.rank(i) == 0 or d.step(i) >= r.m - r.rank(i) for i in range(1, r.n))


def flat_flags(r, d):
    """(flat, flat irreducible, in U_irr), each relative to the stratum of r."""
    _check_shape(r, d)
    r1, r2 = orbits.stratum_rank_targets(orbits.stratum_of(r), d)
    flat_irr = orbits.degenerates_to(r, r1)
    return orbits.degenerates_to(r, r2), flat_irr, flat_irr


def split_product(r, d):
    """The factors of the degeneration, cut at every zero map."""
    _check_shape(r, d)
    stratum = orbits.stratum_of(r)
    cuts = [0] + list(stratum.indices) + [r.n]
    segments = []
    for start, end in zip(cuts, cuts[1:]):
        segments.append(Segment(start + 1, end, DimVector(d.m, d.d[start:end]), r.restrict(start + 1, end)))
    return segments


def flag_dimension(d):
    return quiver.euler_form(d.d, d.codims())


def dimension(r, d):
    if not flat_flags(r, d)[0]:
        raise NotFlat("orbit {} is not flat in its stratum for d={}".format(r.label(), d.d))
    return sum(flag_dimension(s.d) for s in split_product(r, d))


def is_well_behaved(r, d):
    _check_shape(r, d)
    return r == orbits.flat_targets(d)[0]


def is_well_behaved_matrices(M, d):
    """Ranks rk f_i = m - (d_{i+1} - d_i) and linearly independent kernels."""
    if M.vertex_dims != (d.m,) * d.n:
        raise ValidationError("tuple does not act on F^{} at {} vertices".format(d.m, d.n))
    kernels = [linalg.kernel(f) for f in M.maps]
    if any(d.m - K.dim != d.m - d.step(i) for i, K in enumerate(kernels, 1)):
        return False
    total = Subspace.zero(M.field, d.m)
    for K in kernels:
        total = linalg.span_sum(total, K)
    return total.dim == sum(K.dim for K in kernels)


def singular_model_Mh(m, d, h):
    """Sing Gr_d(M^h) as Gr_{d'}(M'), d' = d - e_h."""
    n = d.n
    if not 1 <= h <= n - 1:
        raise ValidationError("h must lie in 1..{}, got {}".format(n - 1, h))
    mprime = quiver.mprime_decomposition(m, n, h)
    dprime = tuple(x - 1 if i == h else x for i, x in enumerate(d.d, 1))
    sing_dim = quiver.euler_form(dprime, [a - b for a, b in zip(mprime.dims, dprime)])
    codim = 2 * d.step(h) + 1
    assert sing_dim + codim == quiver.euler_form(d.d, [m - x for x in d.d])
    return SingularInfo(EXACT, model=(mprime, dprime), sing_dim=sing_dim, sing_codim=codim)


def _segment_singular(segment):
    r, d = segment.ranks, segment.d
    defect = [i for i in range(1, r.n) if r.rank(i) < r.m]
    if not defect:
        return SingularInfo(EMPTY)
    dim = flag_dimension(d)
    for h in defect:
        if r == orbits.mh_orbit(r.m, r.n, h):
            return singular_model_Mh(r.m, d, h)
    if all(d.step(i) == 1 for i in range(1, r.n)):
        return SingularInfo(EXACT, sing_dim=dim - 3, sing_codim=3)
    upper = 2 * min(d.step(i) for i in defect) + 1
    if upper == 3:
        return SingularInfo(EXACT, sing_dim=dim - 3, sing_codim=3)
    return SingularInfo(BOUNDED, codim_lower=3, codim_upper=upper)


def singular_summary(r, d):
    """What is known about Sing of an irreducible degeneration; codims combine by min over factors."""
    if not flat_flags(r, d)[2]:
        raise NotIrreducible("orbit {} is not irreducible for d={}".format(r.label(), d.d))
    segments = split_product(r, d)
    total = sum(flag_dimension(s.d) for s in segments)
    parts = [info for info in (_segment_singular(s) for s in segments) if info.kind != EMPTY]
    if not parts:
        return SingularInfo(EMPTY)

    lower = min(p.sing_codim if p.kind == EXACT else p.codim_lower for p in parts)
    upper = min(p.sing_codim if p.kind == EXACT else p.codim_upper for p in parts)
    if lower != upper:
        return SingularInfo(BOUNDED, codim_lower=lower, codim_upper=upper)
    model = parts[0].model if len(segments) == 1 else None
    return SingularInfo(EXACT, model=model, sing_dim=total - lower, sing_codim=lower)


def construct_singular_witness(J, d):
    """A coordinate point of an irreducible, non-smooth degeneration with Ext(L, M/L) != 0.

    h is the first vertex with rk f_h < m; after swapping v_1 with the first
    vector killed by f_h the flag B_1 = {v_1..v_{d_1}} grows by the next
    indices, except that B_{h+1} trades v_1 for v_m.
    """
    if (J.m, J.n) != (d.m, d.n):
        raise ValidationError("projection tuple does not match d")
    r = orbits.RankSequence.of(J.to_rep(FieldSpec.rational()))
    if orbits.stratum_of(r).indices:
        raise PreconditionError("the tuple has zero maps; split it into factors first")
    if not is_irreducible(r, d):
        raise PreconditionError("the degeneration is not irreducible")
    defect = [i for i in range(1, J.n) if J.zero_sets[i - 1]]
    if not defect:
        raise PreconditionError("the degeneration is smooth")

    h = defect[0]
    swap = J.zero_sets[h - 1][0]
    relabel = {1: swap, swap: 1}

    blocks = [set(range(1, d[1] + 1))]
    for i in range(1, J.n):
        block = blocks[-1] | set(range(d[i] + 1, d[i + 1] + 1))
        if i == h:
            block = (block | {J.m}) - {1}
        blocks.append(block)
    subsets = [sorted(relabel.get(x, x) for x in block) for block in blocks]
    log.debug("singular witness for %s: %s", J.zero_sets, subsets)
    return SubrepPoint.coordinate(FieldSpec.rational(), [J.m] * J.n, subsets)


def mh_singular_by_projection(point, h):
    """v_1 in N_h and N_{h+1} inside ker(rho), rho the projection onto v_1."""
    N_h, N_next = point.spaces[h - 1], point.spaces[h]
    e1 = [N_h.field.one] + [N_h.field.zero] * (N_h.ambient_dim - 1)
    return N_h.contains_vector(e1) and not any(row[0] for row in N_next.basis)


def classify(r, d):
    _check_shape(r, d)
    smooth = is_smooth(r)
    irreducible = is_irreducible(r, d)
    flat, flat_irr, in_u_irr = flat_flags(r, d)
    flags = {
        "smooth": smooth,
        "irreducible": irreducible,
        "flat_in_stratum": flat,
        "flat_irr_in_stratum": flat_irr,
        "in_U_irr": in_u_irr,
        "well_behaved": is_well_behaved(r, d),
    }
    if irreducible:
        flags["normal"] = "by theorem"
        flags["regular_codim2"] = "by theorem"

    report = DegenerationReport(r, d, orbits.stratum_of(r), r.decomposition(), split_product(r, d), flags)
    if flat:
        report.dimension = dimension(r, d)
    if in_u_irr:
        report.singular = singular_summary(r, d)
    log.debug("classified %s for d=%s: %s", r.label(), d.d, flags)
    return report
