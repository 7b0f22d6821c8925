"""Exact linear algebra over the Gaussian rationals.

Subspaces are stored as their reduced row-echelon basis, so equal
subspaces compare equal. Elimination itself is delegated to sympy's
`DomainMatrix` over `QQ_I`; this module only converts between `Scalar`
vectors and domain elements and composes the subspace operations.
"""
from dataclasses import dataclass
from fractions import Fraction
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple

from sympy import QQ
from sympy import QQ_I
from sympy.polys.matrices import DomainMatrix

from .errors import DimensionMismatchError
from .errors import DomainError
from .exterior import ONE
from .exterior import ZERO
from .exterior import Scalar

Vector = Tuple[Scalar, ...]


def _to_domain(value: Scalar):
    re, im = value.re, value.im
    return QQ_I(QQ(re.numerator, re.denominator), QQ(im.numerator, im.denominator))


def _rational(element) -> Fraction:
    return Fraction(int(element.numerator), int(element.denominator))


def _from_domain(element) -> Scalar:
    return Scalar(_rational(element.x), _rational(element.y))


def _matrix(rows: Sequence[Sequence[Scalar]], ncols: int) -> DomainMatrix:
    data = [[_to_domain(Scalar.of(c)) for c in row] for row in rows]
    return DomainMatrix(data, (len(data), ncols), QQ_I)


def _rows(matrix: DomainMatrix) -> List[Vector]:
    return [tuple(_from_domain(e) for e in row) for row in matrix.to_list()]


def _check_length(vectors: Sequence[Sequence], ambient_dim: int):
    for vector in vectors:
        if len(vector) != ambient_dim:
            raise DimensionMismatchError(
                f"Vector of length {len(vector)} in ambient dimension {ambient_dim}."
            )


def _rref(rows: Sequence[Sequence[Scalar]], ncols: int) -> Tuple[List[Vector], Tuple[int, ...]]:
    if not rows or ncols == 0:
        return [], ()
    reduced, pivots = _matrix(rows, ncols).rref()
    pivots = tuple(pivots)
    return _rows(reduced)[: len(pivots)], pivots


@dataclass(frozen=True)
class SubspaceBasis:
    """Reduced row-echelon basis of a subspace of Q(i)^ambient_dim."""

    ambient_dim: int
    rows: Tuple[Vector, ...] = ()

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> Tuple[int, ...]:
        return tuple(next(i for i, c in enumerate(row) if c) for row in self.rows)

    def __len__(self):
        return len(self.rows)

    def __iter__(self):
        return iter(self.rows)


@dataclass(frozen=True)
class LinearMap:
    """Dense matrix acting on column vectors: rows index the codomain."""

    domain_dim: int
    codomain_dim: int
    matrix: Tuple[Vector, ...] = ()

    def __post_init__(self):
        matrix = tuple(tuple(Scalar.of(c) for c in row) for row in self.matrix)
        if not matrix:
            matrix = tuple((ZERO,) * self.domain_dim for _ in range(self.codomain_dim))
        if len(matrix) != self.codomain_dim:
            raise DimensionMismatchError(
                f"Matrix has {len(matrix)} rows, expected {self.codomain_dim}."
            )
        _check_length(matrix, self.domain_dim)
        object.__setattr__(self, "matrix", matrix)

    @classmethod
    def from_columns(cls, codomain_dim: int, columns: Sequence[Sequence[Scalar]]) -> "LinearMap":
        """Map whose j-th column is the image of the j-th domain basis vector."""
        _check_length(columns, codomain_dim)
        matrix = tuple(
            tuple(column[i] for column in columns) for i in range(codomain_dim)
        )
        return cls(len(columns), codomain_dim, matrix)

    @classmethod
    def identity(cls, dim: int) -> "LinearMap":
        return cls(
            dim,
            dim,
            tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)),
        )

    def columns(self) -> List[Vector]:
        return [
            tuple(self.matrix[i][j] for i in range(self.codomain_dim))
            for j in range(self.domain_dim)
        ]

    def apply(self, vector: Sequence[Scalar]) -> Vector:
        _check_length([vector], self.domain_dim)
        return tuple(
            sum((a * b for a, b in zip(row, vector)), ZERO) for row in self.matrix
        )

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self ∘ inner."""
        if inner.codomain_dim != self.domain_dim:
            raise DimensionMismatchError(
                f"Cannot compose {self.domain_dim}-dimensional domain with "
                f"{inner.codomain_dim}-dimensional codomain."
            )
        if not self.codomain_dim or not inner.domain_dim or not self.domain_dim:
            return LinearMap(inner.domain_dim, self.codomain_dim)
        outer = _matrix(self.matrix, self.domain_dim)
        product = outer.matmul(_matrix(inner.matrix, inner.domain_dim))
        return LinearMap(inner.domain_dim, self.codomain_dim, tuple(_rows(product)))


def zero_space(ambient_dim: int) -> SubspaceBasis:
    return SubspaceBasis(ambient_dim)


def full_space(ambient_dim: int) -> SubspaceBasis:
    return SubspaceBasis(ambient_dim, LinearMap.identity(ambient_dim).matrix)


def row_reduce(
    vectors: Sequence[Sequence[Scalar]], ambient_dim: Optional[int] = None
) -> SubspaceBasis:
    """Canonical reduced echelon basis of the span of `vectors`."""
    vectors = list(vectors)
    if ambient_dim is None:
        if not vectors:
            raise DimensionMismatchError("Ambient dimension of an empty span is unknown.")
        ambient_dim = len(vectors[0])
    _check_length(vectors, ambient_dim)
    rows, _ = _rref(vectors, ambient_dim)
    return SubspaceBasis(ambient_dim, tuple(rows))


def rank(m: LinearMap) -> int:
    return len(_rref(m.matrix, m.domain_dim)[1])


def kernel(m: LinearMap) -> SubspaceBasis:
    """Null space of `m` read off the free columns of its reduced form."""
    reduced, pivots = _rref(m.matrix, m.domain_dim)
    free = [j for j in range(m.domain_dim) if j not in pivots]
    vectors = []
    for column in free:
        vector = [ZERO] * m.domain_dim
        vector[column] = ONE
        for row, pivot in zip(reduced, pivots):
            vector[pivot] = -row[column]
        vectors.append(tuple(vector))
    return row_reduce(vectors, m.domain_dim)


def image(m: LinearMap) -> SubspaceBasis:
    return row_reduce(m.columns(), m.codomain_dim)


def _same_ambient(a: SubspaceBasis, b: SubspaceBasis):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"Subspaces live in dimensions {a.ambient_dim} and {b.ambient_dim}."
        )


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _same_ambient(a, b)
    return row_reduce(a.rows + b.rows, a.ambient_dim)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    """a ∩ b from the kernel of the stacked system x·A − y·B = 0."""
    _same_ambient(a, b)
    if not a.rank or not b.rank:
        return zero_space(a.ambient_dim)
    columns = list(a.rows) + [tuple(-c for c in row) for row in b.rows]
    relations = kernel(LinearMap.from_columns(a.ambient_dim, columns))
    vectors = []
    for relation in relations.rows:
        combined = [ZERO] * a.ambient_dim
        for coeff, row in zip(relation[: a.rank], a.rows):
            if coeff:
                combined = [x + coeff * y for x, y in zip(combined, row)]
        vectors.append(tuple(combined))
    return row_reduce(vectors, a.ambient_dim)


def remainder(v: Sequence[Scalar], a: SubspaceBasis) -> Vector:
    """Reduction of v modulo the echelon rows of a."""
    _check_length([v], a.ambient_dim)
    vector = list(v)
    for row, pivot in zip(a.rows, a.pivots):
        coeff = vector[pivot]
        if coeff:
            vector = [x - coeff * y for x, y in zip(vector, row)]
    return tuple(vector)


def member(v: Sequence[Scalar], a: SubspaceBasis) -> bool:
    return not any(remainder(v, a))


def is_subspace(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    """Whether a ⊆ b."""
    _same_ambient(a, b)
    return all(member(row, b) for row in a.rows)


def annihilator(a: SubspaceBasis) -> SubspaceBasis:
    """Vectors w with Σ w_k v_k = 0 for every v in a (no conjugation)."""
    if not a.rank:
        return full_space(a.ambient_dim)
    return kernel(LinearMap(a.ambient_dim, a.rank, a.rows))


def preimage(m: LinearMap, target: SubspaceBasis) -> SubspaceBasis:
    """m⁻¹(target) as the kernel of m followed by the quotient by target."""
    if target.ambient_dim != m.codomain_dim:
        raise DimensionMismatchError(
            f"Target lives in dimension {target.ambient_dim}, "
            f"map codomain is {m.codomain_dim}."
        )
    equations = annihilator(target)
    if not equations.rank:
        return full_space(m.domain_dim)
    quotient = LinearMap(m.codomain_dim, equations.rank, equations.rows)
    return kernel(quotient.compose(m))


def restrict_image(m: LinearMap, source: SubspaceBasis) -> SubspaceBasis:
    """m(source)."""
    if source.ambient_dim != m.domain_dim:
        raise DimensionMismatchError(
            f"Source lives in dimension {source.ambient_dim}, map domain is {m.domain_dim}."
        )
    return row_reduce([m.apply(row) for row in source.rows], m.codomain_dim)


def inverse(m: LinearMap) -> LinearMap:
    if m.domain_dim != m.codomain_dim:
        raise DimensionMismatchError("Only square matrices have inverses.")
    if rank(m) != m.domain_dim:
        raise DomainError("Matrix is singular.")
    if not m.domain_dim:
        return m
    inverted = _matrix(m.matrix, m.domain_dim).inv()
    return LinearMap(m.domain_dim, m.domain_dim, tuple(_rows(inverted)))


def express(
    v: Sequence[Scalar], vectors: Sequence[Sequence[Scalar]]
) -> Optional[Vector]:
    """Coefficients c with Σ c_i vectors_i = v, or None if v is not in the span.

    Free coefficients are set to zero, so the answer is deterministic even
    for dependent spanning lists.
    """
    ambient_dim = len(v)
    _check_length(vectors, ambient_dim)
    count = len(vectors)
    if not count:
        return () if not any(v) else None
    augmented = [
        tuple(vector[i] for vector in vectors) + (v[i],) for i in range(ambient_dim)
    ]
    reduced, pivots = _rref(augmented, count + 1)
    if count in pivots:
        return None
    coeffs = [ZERO] * count
    for row, pivot in zip(reduced, pivots):
        coeffs[pivot] = row[count]
    return tuple(coeffs)


def quotient_complement(big: SubspaceBasis, small: SubspaceBasis) -> SubspaceBasis:
    """Canonical complement of `small` inside `big + small`.

    Its rows are representatives of a basis of the quotient big/(big ∩ small)
    and have zeros in every pivot column of `small`.
    """
    _same_ambient(big, small)
    remainders = [remainder(row, small) for row in big.rows]
    return row_reduce([r for r in remainders if any(r)], big.ambient_dim)
