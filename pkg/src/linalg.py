"""Exact dense linear algebra over the rationals and small prime fields.

Every rank and subspace decision of the other modules goes through here.
Arithmetic is delegated to sympy's DomainMatrix over QQ or GF(p); this module
adds the canonical (reduced row echelon) subspace representation, and the
intertwiner system used as the Hom oracle.

Vectors are tuples of domain elements and matrices act on column vectors, so
a k-dimensional subspace of F^m is stored as k echelon rows of length m.
"""
import itertools
import logging
from fractions import Fraction

from sympy import GF, QQ, isprime
from sympy.polys.matrices import DomainMatrix

from errors import ValidationError

log = logging.getLogger(__name__)

MAX_PRIME = 2 ** 16


class FieldSpec(object):
    RATIONAL = "rational"
    PRIME = "prime"

    def __init__(self, kind, characteristic=0):
        if kind == self.RATIONAL:
            characteristic = 0
            domain = QQ
        elif kind == self.PRIME:
            if not isinstance(characteristic, int) or characteristic < 2 or not isprime(characteristic):
                raise ValidationError("characteristic must be a prime, got {!r}".format(characteristic))
            if characteristic >= MAX_PRIME:
                raise ValidationError("prime fields are limited to p < {}, got {}".format(MAX_PRIME, characteristic))
            domain = GF(characteristic, symmetric=False)
        else:
            raise ValidationError("unknown field kind {!r}".format(kind))

        self.kind = kind
        self.characteristic = characteristic
        self.domain = domain

    @classmethod
    def rational(cls):
        return cls(cls.RATIONAL)

    @classmethod
    def prime(cls, p):
        return cls(cls.PRIME, p)

    @property
    def is_prime(self):
        return self.kind == self.PRIME

    @property
    def zero(self):
        return self.domain.zero

    @property
    def one(self):
        return self.domain.one

    def element(self, value):
        """Convert an int, Fraction or exact string ("-3/7") into a field element."""
        if isinstance(value, str):
            try:
                value = Fraction(value.strip())
            except (ValueError, ZeroDivisionError):
                raise ValidationError("not an exact number: {!r}".format(value))
        elif isinstance(value, float):
            raise ValidationError("floating point entries are not accepted: {!r}".format(value))
        value = Fraction(value)

        if self.kind == self.RATIONAL:
            return QQ(value.numerator, value.denominator)

        p = self.characteristic
        if value.denominator % p == 0:
            raise ValidationError("{} is undefined in GF({})".format(value, p))
        return self.domain(value.numerator * pow(value.denominator, -1, p) % p)

    def to_python(self, x):
        """Canonical Python value of an element: Fraction over QQ, 0 <= int < p over GF(p)."""
        if self.kind == self.RATIONAL:
            return Fraction(int(x.numerator), int(x.denominator))
        return int(x) % self.characteristic

    def format(self, x):
        return str(self.to_python(x))

    def elements(self):
        if not self.is_prime:
            raise ValidationError("the rationals cannot be enumerated")
        return [self.domain(v) for v in range(self.characteristic)]

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.kind, self.characteristic) == (other.kind, other.characteristic)

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def __repr__(self):
        if self.is_prime:
            return "GF({})".format(self.characteristic)
        return "QQ"

    def to_dict(self):
        if self.is_prime:
            return {"kind": self.kind, "p": self.characteristic}
        return {"kind": self.kind}


def _check_field(a, b):
    if a.field != b.field:
        raise ValidationError("field mismatch: {!r} vs {!r}".format(a.field, b.field))


class ExactMatrix(object):
    """Immutable dense matrix with entries in a FieldSpec."""

    def __init__(self, field, rows, cols, entries):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.entries = tuple(tuple(row) for row in entries)
        self._dm = None
        if len(self.entries) != rows or any(len(row) != cols for row in self.entries):
            raise ValidationError("entries do not match shape {}x{}".format(rows, cols))

    @classmethod
    def from_values(cls, field, values, cols=None):
        values = [list(row) for row in values]
        if cols is None:
            cols = len(values[0]) if values else 0
        return cls(field, len(values), cols, [[field.element(v) for v in row] for row in values])

    @classmethod
    def zero(cls, field, rows, cols):
        return cls(field, rows, cols, [[field.zero] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field, k):
        return cls(field, k, k, [[field.one if i == j else field.zero for j in range(k)] for i in range(k)])

    @classmethod
    def projection(cls, field, m, zero_set):
        """pi_J on F^m: kills the basis vectors with (1-based) index in J, fixes the others."""
        zero_set = set(zero_set)
        if not zero_set <= set(range(1, m + 1)):
            raise ValidationError("projection indices {} not in 1..{}".format(sorted(zero_set), m))
        return cls(field, m, m, [[field.one if i == j and (i + 1) not in zero_set else field.zero
                                  for j in range(m)] for i in range(m)])

    @classmethod
    def coordinate_embedding(cls, field, rows, kept):
        """rows x len(kept) matrix sending the j-th basis vector to e_{kept[j]} (1-based)."""
        return cls(field, rows, len(kept), [[field.one if kept[j] == i + 1 else field.zero
                                             for j in range(len(kept))] for i in range(rows)])

    @classmethod
    def from_dm(cls, field, dm):
        rows, cols = dm.shape
        if rows == 0 or cols == 0:
            return cls.zero(field, rows, cols)
        return cls(field, rows, cols, dm.to_list())

    @property
    def dm(self):
        if self._dm is None:
            self._dm = DomainMatrix([list(row) for row in self.entries], (self.rows, self.cols), self.field.domain)
        return self._dm

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_empty(self):
        return self.rows == 0 or self.cols == 0

    def transpose(self):
        return ExactMatrix(self.field, self.cols, self.rows, [[self.entries[i][j] for i in range(self.rows)]
                                                              for j in range(self.cols)])

    def column(self, j):
        return tuple(row[j] for row in self.entries)

    def is_zero(self):
        return not any(x for row in self.entries for x in row)

    def values(self):
        return [[self.field.to_python(x) for x in row] for row in self.entries]

    def key(self):
        return (self.field, self.rows, self.cols, tuple(tuple(row) for row in self.values()))

    def __eq__(self, other):
        return isinstance(other, ExactMatrix) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "ExactMatrix({!r}, {})".format(self.field, [[str(v) for v in row] for row in self.values()])


def rank(A):
    if A.is_empty:
        return 0
    return A.dm.rank()


def compose(A, B):
    """A o B, i.e. the product A.B (apply B first)."""
    _check_field(A, B)
    if A.cols != B.rows:
        raise ValidationError("cannot compose {}x{} after {}x{}".format(A.rows, A.cols, B.rows, B.cols))
    if A.is_empty or B.is_empty:
        return ExactMatrix.zero(A.field, A.rows, B.cols)
    return ExactMatrix.from_dm(A.field, A.dm * B.dm)


def inverse(A):
    if A.rows != A.cols or rank(A) != A.rows:
        raise ValidationError("matrix is not invertible")
    if A.rows == 0:
        return A
    return ExactMatrix.from_dm(A.field, A.dm.inv())


def _rref(field, vectors, width):
    vectors = [list(v) for v in vectors]
    if not vectors or width == 0:
        return (), ()
    reduced, pivots = DomainMatrix(vectors, (len(vectors), width), field.domain).rref()
    rows = reduced.to_list()[:len(pivots)]
    return tuple(tuple(row) for row in rows), tuple(pivots)


class Subspace(object):
    """A subspace of F^m held as the rows of its reduced row echelon basis.

    The echelon form is unique, so equality and hashing compare bases directly.
    """

    def __init__(self, field, ambient_dim, basis, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = tuple(tuple(row) for row in basis)
        self.pivots = tuple(pivots)

    @classmethod
    def span(cls, field, ambient_dim, vectors):
        for v in vectors:
            if len(v) != ambient_dim:
                raise ValidationError("vector of length {} in F^{}".format(len(v), ambient_dim))
        basis, pivots = _rref(field, vectors, ambient_dim)
        return cls(field, ambient_dim, basis, pivots)

    @classmethod
    def zero(cls, field, ambient_dim):
        return cls(field, ambient_dim, (), ())

    @classmethod
    def coordinate(cls, field, ambient_dim, indices):
        """Span of the standard basis vectors with the given 1-based indices."""
        indices = sorted(set(indices))
        if indices and not (1 <= indices[0] and indices[-1] <= ambient_dim):
            raise ValidationError("coordinate indices {} not in 1..{}".format(indices, ambient_dim))
        basis = [[field.one if j == i - 1 else field.zero for j in range(ambient_dim)] for i in indices]
        return cls(field, ambient_dim, basis, [i - 1 for i in indices])

    @property
    def dim(self):
        return len(self.basis)

    def matrix(self):
        return ExactMatrix(self.field, self.dim, self.ambient_dim, self.basis)

    def reduce(self, vector):
        """Residual of vector after clearing the pivot columns with the basis rows."""
        residual = list(vector)
        for row, p in zip(self.basis, self.pivots):
            c = residual[p]
            if c:
                residual = [x - c * y for x, y in zip(residual, row)]
        return tuple(residual)

    def contains_vector(self, vector):
        return not any(self.reduce(vector))

    def coordinates(self, vector):
        """Coefficients of a vector of this subspace in the echelon basis."""
        return tuple(vector[p] for p in self.pivots)

    def complement_indices(self):
        """0-based non-pivot columns; their standard vectors complete the basis."""
        pivots = set(self.pivots)
        return tuple(j for j in range(self.ambient_dim) if j not in pivots)

    def support(self):
        """1-based indices when the subspace is spanned by standard vectors, else None."""
        indices = []
        for row, p in zip(self.basis, self.pivots):
            if any(x for j, x in enumerate(row) if j != p):
                return None
            indices.append(p + 1)
        return tuple(indices)

    def key(self):
        return (self.field, self.ambient_dim, tuple(tuple(self.field.to_python(x) for x in row) for row in self.basis))

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        rows = ["[{}]".format(" ".join(self.field.format(x) for x in row)) for row in self.basis]
        return "Subspace(dim={}/{}, {})".format(self.dim, self.ambient_dim, " ".join(rows) or "0")


def _check_ambient(V, W):
    _check_field(V, W)
    if V.ambient_dim != W.ambient_dim:
        raise ValidationError("ambient dimension mismatch: {} vs {}".format(V.ambient_dim, W.ambient_dim))


def apply(A, vectors):
    """Images A.v of the given vectors, as tuples."""
    if not vectors:
        return []
    V = ExactMatrix(A.field, len(vectors), A.cols, vectors)
    return list(compose(V, A.transpose()).entries)


def image(A):
    return Subspace.span(A.field, A.rows, [A.column(j) for j in range(A.cols)])


def kernel(A):
    field = A.field
    reduced, pivots = _rref(field, A.entries, A.cols)
    vectors = []
    for free in (j for j in range(A.cols) if j not in pivots):
        v = [field.zero] * A.cols
        v[free] = field.one
        for row, p in zip(reduced, pivots):
            v[p] = -row[free]
        vectors.append(v)
    return Subspace.span(field, A.cols, vectors)


def contains(V, W):
    """True iff W is a subspace of V."""
    _check_ambient(V, W)
    return all(V.contains_vector(w) for w in W.basis)


def map_subspace(A, V):
    _check_field(A, V)
    if A.cols != V.ambient_dim:
        raise ValidationError("cannot map a subspace of F^{} with a {}x{} matrix".format(V.ambient_dim, A.rows, A.cols))
    return Subspace.span(A.field, A.rows, apply(A, list(V.basis)))


def span_sum(V, W):
    _check_ambient(V, W)
    return Subspace.span(V.field, V.ambient_dim, list(V.basis) + list(W.basis))


def intertwiner_space_dim(M, N):
    """dim Hom(M, N) as the solution space of psi_{i+1} f_i = g_i psi_i for all arrows.

    Works on anything with n, vertex_dims, maps and field (RepMatrices).
    """
    if M.n != N.n:
        raise ValidationError("quiver lengths differ: {} vs {}".format(M.n, N.n))
    _check_field(M, N)
    field = M.field

    offsets = []
    unknowns = 0
    for i in range(M.n):
        offsets.append(unknowns)
        unknowns += N.vertex_dims[i] * M.vertex_dims[i]

    def var(i, r, c):
        # psi_i[r][c], psi_i : M_i -> N_i
        return offsets[i] + r * M.vertex_dims[i] + c

    equations = []
    for i in range(M.n - 1):
        f = M.maps[i].entries
        g = N.maps[i].entries
        for r in range(N.vertex_dims[i + 1]):
            for c in range(M.vertex_dims[i]):
                row = [field.zero] * unknowns
                for k in range(M.vertex_dims[i + 1]):
                    row[var(i + 1, r, k)] += f[k][c]
                for k in range(N.vertex_dims[i]):
                    row[var(i, k, c)] -= g[r][k]
                equations.append(row)

    if unknowns == 0:
        return 0
    if not equations:
        return unknowns
    return unknowns - rank(ExactMatrix(field, len(equations), unknowns, equations))


def random_matrix(field, rows, cols, rng):
    if field.is_prime:
        draw = lambda: rng.randrange(field.characteristic)
    else:
        draw = lambda: rng.randint(-3, 3)
    return ExactMatrix.from_values(field, [[draw() for _ in range(cols)] for _ in range(rows)], cols=cols)


def random_invertible(field, k, rng):
    while True:
        A = random_matrix(field, k, k, rng)
        if rank(A) == k:
            return A


def random_matrix_of_rank(field, m, r, rng):
    """Random m x m matrix of rank exactly r (product of an m x r and an r x m factor)."""
    while True:
        A = compose(random_matrix(field, m, r, rng), random_matrix(field, r, m, rng))
        if rank(A) == r:
            return A


def gaussian_binomial(m, k, q):
    """Number of k-dimensional subspaces of F_q^m."""
    if k < 0 or k > m:
        return 0
    numerator = denominator = 1
    for i in range(k):
        numerator *= q ** (m - i) - 1
        denominator *= q ** (i + 1) - 1
    return numerator // denominator


def enumerate_subspaces(field, m, k):
    """All k-dim subspaces of GF(p)^m, ordered by pivot set, then by free entries."""
    if not field.is_prime:
        raise ValidationError("subspaces can only be enumerated over a prime field")
    elements = field.elements()
    for pivots in itertools.combinations(range(m), k):
        free = [(r, c) for r in range(k) for c in range(pivots[r] + 1, m) if c not in pivots]
        for values in itertools.product(elements, repeat=len(free)):
            basis = [[field.zero] * m for _ in range(k)]
            for r, p in enumerate(pivots):
                basis[r][p] = field.one
            for (r, c), x in zip(free, values):
                basis[r][c] = x
            yield Subspace(field, m, basis, pivots)
