"""Representations of the equioriented A_n quiver 1 -> 2 -> ... -> n.

Isomorphism classes are handled as Decompositions (multisets of interval
modules U_{a,b}), explicit representations as RepMatrices. Vertices are
1-based everywhere; maps[i] of a RepMatrices is the 0-based list slot of
f_{i+1} : vertex i+1 -> vertex i+2.
"""
import logging
from dataclasses import dataclass

import linalg
from errors import NotRealizable, ValidationError
from linalg import ExactMatrix, Subspace

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class DimVector(object):
    """Subspace dimensions 0 < d_1 < ... < d_n < m of a partial flag."""

    m: int
    d: tuple

    def __post_init__(self):
        d = tuple(self.d)
        object.__setattr__(self, "d", d)
        if not d:
            raise ValidationError("dimension vector must not be empty")
        if any(not isinstance(x, int) for x in d + (self.m,)):
            raise ValidationError("dimension vector entries must be integers")
        bounds = (0,) + d + (self.m,)
        if any(lo >= hi for lo, hi in zip(bounds, bounds[1:])):
            raise ValidationError("need 0 < d_1 < ... < d_n < m, got d={} m={}".format(d, self.m))

    @property
    def n(self):
        return len(self.d)

    def __iter__(self):
        return iter(self.d)

    def __getitem__(self, i):
        """1-based access, d[i] = d_i."""
        return self.d[i - 1]

    def step(self, i):
        """d_{i+1} - d_i."""
        return self.d[i] - self.d[i - 1]

    def codims(self):
        return tuple(self.m - x for x in self.d)


class Decomposition(object):
    """A direct sum of interval modules, mult[(a, b)] copies of U_{a,b}."""

    def __init__(self, n, mult=None):
        self.n = n
        self.mult = {}
        for (a, b), k in sorted((mult or {}).items()):
            if not 1 <= a <= b <= n:
                raise ValidationError("interval U_{{{},{}}} outside 1..{}".format(a, b, n))
            if k < 0:
                raise ValidationError("negative multiplicity for U_{{{},{}}}".format(a, b))
            if k:
                self.mult[(a, b)] = k
        self.dims = tuple(sum(k for (a, b), k in self.mult.items() if a <= i <= b) for i in range(1, n + 1))

    @classmethod
    def interval(cls, n, a, b, k=1):
        return cls(n, {(a, b): k})

    @classmethod
    def zero(cls, n):
        return cls(n)

    def summands(self):
        return sorted(self.mult.items())

    def intervals(self):
        return sorted(self.mult)

    def restrict(self, a, b):
        """Restriction to vertices a..b, reindexed from 1."""
        mult = {}
        for (x, y), k in self.mult.items():
            lo, hi = max(x, a), min(y, b)
            if lo <= hi:
                key = (lo - a + 1, hi - a + 1)
                mult[key] = mult.get(key, 0) + k
        return Decomposition(b - a + 1, mult)

    def __add__(self, other):
        if self.n != other.n:
            raise ValidationError("direct sum of representations of A_{} and A_{}".format(self.n, other.n))
        mult = dict(self.mult)
        for key, k in other.mult.items():
            mult[key] = mult.get(key, 0) + k
        return Decomposition(self.n, mult)

    def __eq__(self, other):
        return isinstance(other, Decomposition) and (self.n, self.mult) == (other.n, other.mult)

    def __hash__(self):
        return hash((self.n, tuple(self.summands())))

    def __repr__(self):
        return "Decomposition(n={}, {})".format(self.n, self.label())

    def label(self):
        if not self.mult:
            return "0"
        parts = []
        for (a, b), k in self.summands():
            parts.append("U_{{{},{}}}".format(a, b) + ("^{}".format(k) if k > 1 else ""))
        return " + ".join(parts)

    def to_dict(self):
        return [{"a": a, "b": b, "mult": k} for (a, b), k in self.summands()]


class ExtendedRanks(object):
    """R[a][b] = rank of the composite vertex a -> vertex b, R[a][a] = dim at a.

    Indexed as R[a, b] with 1 <= a <= b <= n; the boundary R[0, b] and
    R[a, n+1] read as 0.
    """

    def __init__(self, n, table):
        self.n = n
        self.table = {}
        for a in range(1, n + 1):
            for b in range(a, n + 1):
                try:
                    self.table[(a, b)] = int(table[(a, b)])
                except KeyError:
                    raise ValidationError("rank table misses entry ({}, {})".format(a, b))

    def __getitem__(self, key):
        a, b = key
        if a == 0 or b == self.n + 1:
            return 0
        return self.table[(a, b)]

    @property
    def dims(self):
        return tuple(self.table[(a, a)] for a in range(1, self.n + 1))

    def rank(self, i):
        """r_i = rk f_i = R[i, i+1]."""
        return self.table[(i, i + 1)]

    def composite_rank(self, i, j):
        """r_{i,j} = rk(f_j o ... o f_i) = R[i, j+1]."""
        return self.table[(i, j + 1)]

    def off_diagonal(self):
        return [self.table[(a, b)] for a in range(1, self.n + 1) for b in range(a + 1, self.n + 1)]

    def restrict(self, a, b):
        """The table of the sub-quiver on vertices a..b, reindexed from 1."""
        return ExtendedRanks(b - a + 1, {(x - a + 1, y - a + 1): self.table[(x, y)]
                                         for x in range(a, b + 1) for y in range(x, b + 1)})

    def rows(self):
        return [[self.table[(a, b)] if b >= a else None for b in range(1, self.n + 1)] for a in range(1, self.n + 1)]

    def key(self):
        return (self.n, tuple(sorted(self.table.items())))

    def __le__(self, other):
        if self.n != other.n:
            raise ValidationError("rank tables of different length")
        return all(v <= other.table[k] for k, v in self.table.items())

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        return isinstance(other, ExtendedRanks) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ExtendedRanks(n={}, {})".format(self.n, self.rows())


class RepMatrices(object):
    """Explicit representation: vertex dimensions and the maps f_1, ..., f_{n-1}."""

    def __init__(self, field, vertex_dims, maps):
        self.field = field
        self.vertex_dims = tuple(vertex_dims)
        self.maps = tuple(maps)
        self.n = len(self.vertex_dims)
        if self.n < 1:
            raise ValidationError("a representation needs at least one vertex")
        if len(self.maps) != self.n - 1:
            raise ValidationError("{} vertices need {} maps, got {}".format(self.n, self.n - 1, len(self.maps)))
        for i, f in enumerate(self.maps):
            if f.field != field:
                raise ValidationError("map f_{} is over {!r}, expected {!r}".format(i + 1, f.field, field))
            if f.shape != (self.vertex_dims[i + 1], self.vertex_dims[i]):
                raise ValidationError("map f_{} has shape {}x{}, expected {}x{}".format(
                    i + 1, f.rows, f.cols, self.vertex_dims[i + 1], self.vertex_dims[i]))

    @classmethod
    def constant(cls, field, m, maps):
        return cls(field, [m] * (len(maps) + 1), maps)

    @classmethod
    def projections(cls, field, m, zero_sets):
        return cls.constant(field, m, [ExactMatrix.projection(field, m, J) for J in zero_sets])

    def restrict(self, a, b):
        return RepMatrices(self.field, self.vertex_dims[a - 1:b], self.maps[a - 1:b - 1])

    def key(self):
        return (self.field, self.vertex_dims, tuple(f.key() for f in self.maps))

    def __eq__(self, other):
        return isinstance(other, RepMatrices) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "RepMatrices({!r}, dims={}, maps={})".format(self.field, self.vertex_dims, list(self.maps))


@dataclass(frozen=True)
class SubrepPoint(object):
    """A tuple of subspaces, one per vertex; subsets is set for coordinate points."""

    spaces: tuple
    subsets: tuple = None

    @classmethod
    def coordinate(cls, field, vertex_dims, subsets):
        subsets = tuple(tuple(sorted(S)) for S in subsets)
        spaces = tuple(Subspace.coordinate(field, m, S) for m, S in zip(vertex_dims, subsets))
        return cls(spaces, subsets)

    @property
    def mode(self):
        return "generic" if self.subsets is None else "coordinate"

    @property
    def dims(self):
        return tuple(V.dim for V in self.spaces)

    def restrict(self, a, b):
        subsets = None if self.subsets is None else self.subsets[a - 1:b]
        return SubrepPoint(self.spaces[a - 1:b], subsets)

    def to_dict(self):
        if self.subsets is not None:
            return {"mode": self.mode, "subsets": [list(S) for S in self.subsets]}
        return {"mode": self.mode,
                "bases": [[[V.field.format(x) for x in row] for row in V.basis] for V in self.spaces]}


def euler_form(d, e):
    """<d, e> = sum d_i e_i - sum d_i e_{i+1}."""
    d, e = tuple(d), tuple(e)
    if len(d) != len(e):
        raise ValidationError("euler form of vectors of length {} and {}".format(len(d), len(e)))
    return sum(x * y for x, y in zip(d, e)) - sum(x * y for x, y in zip(d, e[1:]))


def _check_same_n(A, B):
    if A.n != B.n:
        raise ValidationError("quiver lengths differ: {} vs {}".format(A.n, B.n))


def hom_dim(A, B):
    _check_same_n(A, B)
    total = 0
    for (i, j), x in A.summands():
        for (h, k), y in B.summands():
            if h <= i <= k <= j:
                total += x * y
    return total


def ext_dim(A, B):
    _check_same_n(A, B)
    total = 0
    for (i, j), x in A.summands():
        for (h, k), y in B.summands():
            if i + 1 <= h <= j + 1 <= k:
                total += x * y
    return total


def rank_profile(M):
    table = {}
    for a in range(1, M.n + 1):
        table[(a, a)] = M.vertex_dims[a - 1]
        composite = ExactMatrix.identity(M.field, M.vertex_dims[a - 1])
        for b in range(a + 1, M.n + 1):
            composite = linalg.compose(M.maps[b - 2], composite)
            table[(a, b)] = linalg.rank(composite)
    return ExtendedRanks(M.n, table)


def multiplicities(R):
    """Second differences of the rank table; negative entries mean not realizable."""
    return {(a, b): R[a, b] - R[a - 1, b] - R[a, b + 1] + R[a - 1, b + 1]
            for a in range(1, R.n + 1) for b in range(a, R.n + 1)}


def decompose_from_ranks(R):
    mult = multiplicities(R)
    negative = sorted(key for key, k in mult.items() if k < 0)
    if negative:
        raise NotRealizable("rank table {} gives negative multiplicity at U_{{{},{}}}".format(
            R.off_diagonal(), *negative[0]))
    return Decomposition(R.n, mult)


def ranks_from_decomposition(D):
    return ExtendedRanks(D.n, {(a, b): sum(k for (x, y), k in D.mult.items() if x <= a and y >= b)
                               for a in range(1, D.n + 1) for b in range(a, D.n + 1)})


def well_behaved_split(m, d):
    """(P, I): the projective and injective parts of the well-behaved representation."""
    n = d.n
    projective = {(1, n): m - d[n]}
    injective = {(1, n): d[1]}
    for i in range(1, n):
        projective[(i + 1, n)] = projective.get((i + 1, n), 0) + d.step(i)
        injective[(1, i)] = injective.get((1, i), 0) + d.step(i)
    return Decomposition(n, projective), Decomposition(n, injective)


def well_behaved_rep(m, d):
    if d.m != m:
        raise ValidationError("dimension vector is for m={}, not m={}".format(d.m, m))
    P, I = well_behaved_split(m, d)
    return P + I


def is_projective(D):
    return all(b == D.n for a, b in D.intervals())


def is_injective(D):
    return all(a == 1 for a, b in D.intervals())


def projective_cover(n, i):
    """P_i = U_{i,n}."""
    return Decomposition.interval(n, i, n)


def simple(n, i):
    """S_i = U_{i,i}."""
    return Decomposition.interval(n, i, i)


def minimal_projective_resolution(D):
    """(P, Q) with 0 -> Q -> P -> D -> 0."""
    n = D.n
    P = {(i, n): hom_dim(D, simple(n, i)) for i in range(1, n + 1)}
    Q = {(i, n): ext_dim(D, simple(n, i)) for i in range(1, n + 1)}
    return Decomposition(n, P), Decomposition(n, Q)


def is_catenoid(D):
    intervals = D.intervals()
    for x, (a, b) in enumerate(intervals):
        for c, e in intervals[x + 1:]:
            if not ((a <= c and b <= e) or (c <= a and e <= b)):
                return False
    return True


def schubert_embedding_target(D, d):
    """(dim P, d + dim Q) for the embedding Gr_d(D) -> Fl_{d + dim Q}(P)."""
    d = tuple(d)
    if len(d) != D.n:
        raise ValidationError("dimension vector of length {} for A_{}".format(len(d), D.n))
    P, Q = minimal_projective_resolution(D)
    return P.dims, tuple(x + y for x, y in zip(d, Q.dims))


def surjective_at(D, k):
    """f_k is surjective iff no summand starts at vertex k+1."""
    if not 1 <= k < D.n:
        raise ValidationError("no map f_{} on A_{}".format(k, D.n))
    return not any(a == k + 1 for a, b in D.intervals())


def realize(D, field):
    """One basis vector per strand and vertex, identity along each strand."""
    strands = [(a, b) for (a, b), k in D.summands() for _ in range(k)]
    bases = [[s for s, (a, b) in enumerate(strands) if a <= i <= b] for i in range(1, D.n + 1)]
    maps = []
    for i in range(D.n - 1):
        source, target = bases[i], bases[i + 1]
        rows = [[field.one if s == t else field.zero for s in source] for t in target]
        maps.append(ExactMatrix(field, len(target), len(source), rows))
    return RepMatrices(field, D.dims, maps)


def conjugate(M, gs):
    """The base change g.f = (g_{i+1} f_i g_i^{-1})."""
    if len(gs) != M.n:
        raise ValidationError("need one base change per vertex")
    maps = [linalg.compose(linalg.compose(gs[i + 1], f), linalg.inverse(gs[i])) for i, f in enumerate(M.maps)]
    return RepMatrices(M.field, M.vertex_dims, maps)


def random_conjugate(M, rng):
    return conjugate(M, [linalg.random_invertible(M.field, k, rng) for k in M.vertex_dims])


def is_subrep(M, L):
    if len(L.spaces) != M.n:
        return False
    for i, V in enumerate(L.spaces):
        if V.ambient_dim != M.vertex_dims[i]:
            return False
    for i, f in enumerate(M.maps):
        if not linalg.contains(L.spaces[i + 1], linalg.map_subspace(f, L.spaces[i])):
            return False
    return True


def _check_subrep(M, L):
    if not is_subrep(M, L):
        raise ValidationError("point is not a subrepresentation")


def sub_rep(M, L):
    """Restriction of M to L, in the echelon bases of the L_i."""
    _check_subrep(M, L)
    maps = []
    for i, f in enumerate(M.maps):
        source, target = L.spaces[i], L.spaces[i + 1]
        images = linalg.apply(f, list(source.basis))
        columns = [target.coordinates(w) for w in images]
        maps.append(ExactMatrix(M.field, target.dim, source.dim,
                                [[col[r] for col in columns] for r in range(target.dim)]))
    return RepMatrices(M.field, L.dims, maps)


def quotient_rep(M, L):
    """M/L on the standard vectors with non-pivot indices of each L_i."""
    _check_subrep(M, L)
    complements = [V.complement_indices() for V in L.spaces]
    maps = []
    for i, f in enumerate(M.maps):
        source, target = complements[i], complements[i + 1]
        columns = [L.spaces[i + 1].reduce(f.column(c)) for c in source]
        maps.append(ExactMatrix(M.field, len(target), len(source),
                                [[col[t] for col in columns] for t in target]))
    return RepMatrices(M.field, [len(c) for c in complements], maps)


def decomposition_of(M):
    return decompose_from_ranks(rank_profile(M))


def mh_decomposition(m, n, h):
    """M^h = U_{1,n}^{m-1} + U_{1,h} + U_{h+1,n}."""
    _check_h(n, h)
    return Decomposition(n, {(1, n): m - 1}) + Decomposition(n, {(1, h): 1}) + Decomposition(n, {(h + 1, n): 1})


def mprime_decomposition(m, n, h):
    """M' = U_{1,n}^{m-1} + U_{1,h-1} + U_{h+2,n} (missing ends dropped)."""
    _check_h(n, h)
    mult = {(1, n): m - 1}
    if h > 1:
        mult[(1, h - 1)] = mult.get((1, h - 1), 0) + 1
    if h + 2 <= n:
        mult[(h + 2, n)] = mult.get((h + 2, n), 0) + 1
    return Decomposition(n, mult)


def _check_h(n, h):
    if not 1 <= h <= n - 1:
        raise ValidationError("h must lie in 1..{}, got {}".format(n - 1, h))


def mh_rep(field, m, n, h):
    """f_h = pi_{1}, every other map the identity."""
    _check_h(n, h)
    maps = [ExactMatrix.projection(field, m, [1] if i == h else []) for i in range(1, n)]
    return RepMatrices.constant(field, m, maps)


def mprime_rep(field, m, n, h):
    """M' with M'_h = M'_{h+1} = Span{v_2, ..., v_m} and dimension m elsewhere."""
    _check_h(n, h)
    dims = [m - 1 if i in (h, h + 1) else m for i in range(1, n + 1)]
    tail = list(range(2, m + 1))
    maps = []
    for i in range(1, n):
        if i == h - 1:
            maps.append(ExactMatrix.coordinate_embedding(field, m, tail).transpose())
        elif i == h + 1:
            maps.append(ExactMatrix.coordinate_embedding(field, m, tail))
        else:
            maps.append(ExactMatrix.identity(field, dims[i - 1]))
    return RepMatrices(field, dims, maps)
