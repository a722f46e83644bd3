"""G-orbits of map tuples in End(F^m)^{n-1}, identified by their rank sequences.

An orbit is a RankSequence: an extended rank table with every vertex of
dimension m. Orbits are ordered by degeneration (s <= r entrywise means O_r
degenerates to O_s), and are enumerated through their interval multiplicity
tables, which are always realizable.
"""
import heapq
import itertools
import logging
from dataclasses import dataclass

import networkx as nx

import quiver
from errors import GuardExceeded, NotRealizable, ValidationError
from quiver import Decomposition, ExtendedRanks, RepMatrices

log = logging.getLogger(__name__)

ORBIT_GUARD = 10 ** 6


class RankSequence(object):
    def __init__(self, m, n, extended):
        if extended.n != n:
            raise ValidationError("rank table is for n={}, not n={}".format(extended.n, n))
        if any(x != m for x in extended.dims):
            raise ValidationError("orbit rank tables need every vertex of dimension {}".format(m))
        self.m = m
        self.n = n
        self.extended = extended

    @classmethod
    def from_ranks(cls, m, n, ranks):
        """From {(i, j): rk(f_j o ... o f_i)} for 1 <= i <= j <= n-1."""
        table = {(a, a): m for a in range(1, n + 1)}
        for a in range(1, n + 1):
            for b in range(a + 1, n + 1):
                try:
                    table[(a, b)] = ranks[(a, b - 1)]
                except KeyError:
                    raise ValidationError("missing rank r_{{{},{}}}".format(a, b - 1))
        return cls(m, n, ExtendedRanks(n, table))

    @classmethod
    def of(cls, M):
        if len(set(M.vertex_dims)) > 1:
            raise ValidationError("map tuple is not a family of endomorphisms")
        return cls(M.vertex_dims[0], M.n, quiver.rank_profile(M))

    @classmethod
    def of_decomposition(cls, m, D):
        return cls(m, D.n, quiver.ranks_from_decomposition(D))

    @classmethod
    def identity(cls, m, n):
        return cls.of_decomposition(m, Decomposition(n, {(1, n): m}))

    @classmethod
    def zero(cls, m, n):
        return cls.of_decomposition(m, Decomposition(n, {(i, i): m for i in range(1, n + 1)}))

    def rank(self, i):
        return self.extended.rank(i)

    def composite_rank(self, i, j):
        return self.extended.composite_rank(i, j)

    def ranks(self):
        """r_1, ..., r_{n-1}."""
        return tuple(self.rank(i) for i in range(1, self.n))

    def decomposition(self):
        return quiver.decompose_from_ranks(self.extended)

    def restrict(self, a, b):
        return RankSequence(self.m, b - a + 1, self.extended.restrict(a, b))

    def node_name(self):
        return "_".join(["r"] + [str(x) for x in self.extended.off_diagonal()])

    def label(self):
        parts = []
        for i in range(1, self.n):
            for j in range(i, self.n):
                name = "r{}".format(i) if i == j else "r{}{}".format(i, j)
                parts.append("{}={}".format(name, self.composite_rank(i, j)))
        return " ".join(parts) or "-"

    def to_dict(self):
        return {"m": self.m, "n": self.n,
                "ranks": {"{},{}".format(i, j): self.composite_rank(i, j)
                          for i in range(1, self.n) for j in range(i, self.n)}}

    def key(self):
        return (self.m, self.n, self.extended.key())

    def __eq__(self, other):
        return isinstance(other, RankSequence) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "RankSequence(m={}, n={}, {})".format(self.m, self.n, self.label())


@dataclass(frozen=True)
class ProjectionTuple(object):
    """(pi_{J_1}, ..., pi_{J_{n-1}}), pi_J killing the basis vectors indexed by J."""

    m: int
    n: int
    zero_sets: tuple

    def __post_init__(self):
        zero_sets = tuple(tuple(sorted(set(J))) for J in self.zero_sets)
        object.__setattr__(self, "zero_sets", zero_sets)
        if len(zero_sets) != self.n - 1:
            raise ValidationError("{} vertices need {} projections".format(self.n, self.n - 1))
        for J in zero_sets:
            if J and not (1 <= J[0] and J[-1] <= self.m):
                raise ValidationError("projection indices {} not in 1..{}".format(list(J), self.m))

    def to_rep(self, field):
        return RepMatrices.projections(field, self.m, self.zero_sets)

    def to_dict(self):
        return {"m": self.m, "n": self.n, "zero_sets": [list(J) for J in self.zero_sets]}


@dataclass(frozen=True)
class Stratum(object):
    """S_I: the tuples whose zero maps are exactly f_i, i in I."""

    indices: tuple

    def __post_init__(self):
        object.__setattr__(self, "indices", tuple(sorted(set(self.indices))))

    def __contains__(self, i):
        return i in self.indices

    def node_name(self):
        return "_".join(["I"] + [str(i) for i in self.indices]) if self.indices else "I_empty"

    def label(self):
        return "{" + ",".join(str(i) for i in self.indices) + "}"


def is_realizable(r):
    return all(k >= 0 for k in quiver.multiplicities(r.extended).values())


def degenerates_to(r, s):
    """True iff O_r degenerates to O_s, i.e. s <= r entrywise."""
    if (r.m, r.n) != (s.m, s.n):
        raise ValidationError("orbits of different shape: (m={}, n={}) vs (m={}, n={})".format(r.m, r.n, s.m, s.n))
    return s.extended <= r.extended


def _compositions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def _multiplicity_tables(m, n):
    def extend(i, mult):
        if i > n:
            yield dict(mult)
            return
        live = sum(k for (a, b), k in mult.items() if a < i <= b)
        for parts in _compositions(m - live, n - i + 1):
            for offset, k in enumerate(parts):
                mult[(i, i + offset)] = k
            for table in extend(i + 1, mult):
                yield table
            for offset in range(n - i + 1):
                del mult[(i, i + offset)]

    return extend(1, {})


def enumerate_orbits(m, n):
    """Every realizable rank sequence for (m, n), identity first."""
    if m < 1 or n < 1:
        raise ValidationError("need m >= 1 and n >= 1, got m={} n={}".format(m, n))
    orbits = []
    for mult in _multiplicity_tables(m, n):
        orbits.append(RankSequence.of_decomposition(m, Decomposition(n, mult)))
        if len(orbits) > ORBIT_GUARD:
            log.warning("orbit enumeration for m=%d n=%d exceeds %d orbits", m, n, ORBIT_GUARD)
            raise GuardExceeded("more than {} orbits for m={} n={}".format(ORBIT_GUARD, m, n))
    orbits.sort(key=lambda r: r.extended.off_diagonal(), reverse=True)
    log.debug("enumerated %d orbits for m=%d n=%d", len(orbits), m, n)
    return orbits


def representative(r):
    """A coordinate-projection tuple in the orbit r."""
    mult = quiver.multiplicities(r.extended)
    if any(k < 0 for k in mult.values()):
        raise NotRealizable("rank sequence {} is not realizable".format(r.label()))

    free = list(range(1, r.m + 1))
    heapq.heapify(free)
    ending = {}
    zero_sets = []
    for i in range(1, r.n + 1):
        for index in ending.pop(i - 1, []):
            heapq.heappush(free, index)
        starting = sorted((b for (a, b), k in mult.items() if a == i for _ in range(k)))
        for b in starting:
            ending.setdefault(b, []).append(heapq.heappop(free))
        if i < r.n:
            zero_sets.append(ending.get(i, []))
    return ProjectionTuple(r.m, r.n, zero_sets)


def stratum_of(r):
    return Stratum(tuple(i for i in range(1, r.n) if r.rank(i) == 0))


def stratum_rank_targets(I, d):
    """(r^{1,I}, r^{2,I}): the segment thresholds, zero on every composite through I."""
    m, n = d.m, d.n
    r1 = {}
    r2 = {}
    for i in range(1, n):
        for j in range(i, n):
            if any(i <= k <= j for k in I.indices):
                r1[(i, j)] = r2[(i, j)] = 0
            else:
                r1[(i, j)] = m + d[i] - d[j + 1]
                r2[(i, j)] = r1[(i, j)] - 1
    return RankSequence.from_ranks(m, n, r1), RankSequence.from_ranks(m, n, r2)


def flat_targets(d):
    """(r^1, r^2) of the open stratum."""
    return stratum_rank_targets(Stratum(()), d)


def mh_orbit(m, n, h):
    return RankSequence.of_decomposition(m, quiver.mh_decomposition(m, n, h))


def mh_upper_bounds(r):
    """The h whose M^h orbit degenerates to r."""
    return [h for h in range(1, r.n) if degenerates_to(mh_orbit(r.m, r.n, h), r)]


def orbit_table(orbits, annotate=None):
    """Rows (node name, label, decomposition, flags) for tabular output."""
    rows = []
    for r in orbits:
        flags = annotate(r) if annotate else {}
        rows.append({"orbit": r.node_name(), "ranks": r.label(),
                     "decomposition": r.decomposition().label(), "flags": flags})
    return rows


def _write_dot(name, graph, labels):
    lines = ["digraph {} {{".format(name)]
    for node in sorted(graph.nodes):
        lines.append('  "{}" [label="{}"];'.format(node, labels[node]))
    for source, target in sorted(graph.edges):
        lines.append('  "{}" -> "{}";'.format(source, target))
    lines.append("}")
    return "\n".join(lines) + "\n"


def hasse_dot(orbits, annotations=None):
    """DOT digraph of the covering relation of the degeneration order.

    annotations maps an orbit to a list of flag names appended to its label.
    """
    annotations = annotations or {}
    graph = nx.DiGraph()
    labels = {}
    for r in orbits:
        graph.add_node(r.node_name())
        flags = annotations.get(r, [])
        labels[r.node_name()] = "\\n".join([r.label()] + list(flags))
    for r, s in itertools.permutations(orbits, 2):
        if degenerates_to(r, s):
            graph.add_edge(r.node_name(), s.node_name())
    return _write_dot("orbits", nx.transitive_reduction(graph), labels)


def strata(n):
    return [Stratum(I) for size in range(n) for I in itertools.combinations(range(1, n), size)]


def strata_dot(n):
    """DOT of the strata poset: S_I lies in the closure of S_J iff J is a subset of I."""
    graph = nx.DiGraph()
    labels = {}
    all_strata = strata(n)
    for S in all_strata:
        graph.add_node(S.node_name())
        labels[S.node_name()] = S.label()
    for J, I in itertools.permutations(all_strata, 2):
        if set(J.indices) < set(I.indices):
            graph.add_edge(J.node_name(), I.node_name())
    return _write_dot("strata", nx.transitive_reduction(graph), labels)
