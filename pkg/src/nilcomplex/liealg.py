"""Structure equations, the Chevalley–Eilenberg differential and Lie invariants.

A complex structure is given by the differentials dω^1..dω^n of a basis of
(1,0)-forms; conjugate generators are differentiated by conjugation. A real
Lie algebra is given by de^1..de^m in the same `Form` type with no barred
generators. Both expose the generator images of d, so the differential,
brackets and series computations are shared.
"""
import functools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict
from typing import List
from typing import Optional
from typing import Sequence
from typing import Tuple
from typing import Union

import numpy as np

from .errors import ConsistencyAlarm
from .errors import DimensionMismatchError
from .errors import DomainError
from .errors import IntegrabilityError
from .errors import JacobiError
from .errors import NonHomogeneousError
from .errors import NotAlmostComplexError
from .errors import UnsupportedCaseError
from .errors import VerificationError
from .errors import Violation
from .exterior import ONE
from .exterior import ZERO
from .exterior import Form
from .exterior import Generator
from .exterior import I
from .exterior import Monomial
from .exterior import Scalar
from .exterior import basis
from .exterior import conjugate
from .exterior import conjugate_coefficients
from .exterior import coordinates_in
from .exterior import from_coordinates
from .exterior import generator
from .exterior import linear_combination
from .exterior import project
from .exterior import pullback
from .exterior import real_basis
from .exterior import total_basis
from .exterior import wedge
from .linalg import LinearMap
from .linalg import SubspaceBasis
from .linalg import image
from .linalg import inverse
from .linalg import kernel
from .linalg import rank
from .linalg import row_reduce

logger = logging.getLogger(__name__)

APPROXIMATE_TOLERANCE = 1e-9


@dataclass(frozen=True)
class StructureEquations:
    """Differentials dω^1..dω^n of a (1,0)-basis.

    Construction only checks shapes; call `validate()` (or build through
    `structure()`) to enforce d² = 0 and integrability.
    """

    n: int
    d_of: Tuple[Form, ...]

    def __post_init__(self):
        object.__setattr__(self, "d_of", tuple(self.d_of))
        if len(self.d_of) != self.n:
            raise DimensionMismatchError(
                f"Expecting {self.n} differentials, got {len(self.d_of)}."
            )
        for j, form in enumerate(self.d_of, start=1):
            for monomial, _ in form:
                if monomial.degree != 2:
                    raise DomainError(f"dw{j} has a term of degree {monomial.degree}.")
                if any(i > self.n for i in monomial.holo + monomial.anti):
                    raise DomainError(f"dw{j} uses a generator beyond w{self.n}.")

    @functools.cached_property
    def images(self) -> Dict[Generator, Form]:
        images = {}
        for j, form in enumerate(self.d_of, start=1):
            images[(j, False)] = form
            images[(j, True)] = conjugate(form)
        return images

    @property
    def dimension(self) -> int:
        """Real dimension of the underlying Lie algebra."""
        return 2 * self.n

    def generators(self) -> List[Generator]:
        return [(j, False) for j in range(1, self.n + 1)] + [
            (j, True) for j in range(1, self.n + 1)
        ]

    def degree_basis(self, k: int) -> Tuple[Monomial, ...]:
        return total_basis(self.n, k)

    def validate(self) -> "StructureEquations":
        report = check_integrability(self)
        integrability = [v for v in report.violations if v.kind == "integrability"]
        if integrability:
            raise IntegrabilityError(integrability)
        if report.violations:
            raise JacobiError(report.violations[0].generator, str(report.violations[0]))
        return self

    def __str__(self):
        return "; ".join(f"dw{j}={form}" for j, form in enumerate(self.d_of, start=1))


@dataclass(frozen=True)
class RealStructureEquations:
    """Differentials de^1..de^m of a real Lie algebra with rational constants."""

    m: int
    d_of_real: Tuple[Form, ...]

    def __post_init__(self):
        object.__setattr__(self, "d_of_real", tuple(self.d_of_real))
        if len(self.d_of_real) != self.m:
            raise DimensionMismatchError(
                f"Expecting {self.m} differentials, got {len(self.d_of_real)}."
            )
        for j, form in enumerate(self.d_of_real, start=1):
            for monomial, coeff in form:
                if monomial.anti or monomial.degree != 2:
                    raise DomainError(f"de{j} is not a real 2-form.")
                if any(i > self.m for i in monomial.holo):
                    raise DomainError(f"de{j} uses a generator beyond e{self.m}.")
                if not coeff.is_real:
                    raise DomainError(f"de{j} has a non-real coefficient {coeff}.")

    @functools.cached_property
    def images(self) -> Dict[Generator, Form]:
        return {(j, False): form for j, form in enumerate(self.d_of_real, start=1)}

    @property
    def dimension(self) -> int:
        return self.m

    def generators(self) -> List[Generator]:
        return [(j, False) for j in range(1, self.m + 1)]

    def degree_basis(self, k: int) -> Tuple[Monomial, ...]:
        return real_basis(self.m, k)

    def validate(self) -> "RealStructureEquations":
        for j in range(1, self.m + 1):
            if differential(self, self.images[(j, False)]):
                raise JacobiError(j)
        return self

    def __str__(self):
        return "; ".join(
            f"de{j}={form}" for j, form in enumerate(self.d_of_real, start=1)
        )


Algebra = Union[StructureEquations, RealStructureEquations]


def structure(d_of: Sequence[Form], n: Optional[int] = None) -> StructureEquations:
    """Validated complex structure equations."""
    d_of = tuple(d_of)
    return StructureEquations(len(d_of) if n is None else n, d_of).validate()


def _monomial_form(gens: Sequence[Generator], coeff: Scalar = ONE) -> Form:
    holo = tuple(j for j, barred in gens if not barred)
    anti = tuple(j for j, barred in gens if barred)
    return Form(((Monomial(holo, anti), coeff),))


def _derive(form: Form, images: Dict[Generator, Form]) -> Form:
    """Anti-derivation extending the generator images by the Leibniz rule."""
    result = Form()
    for monomial, coeff in form:
        gens = monomial.generators()
        for position, gen in enumerate(gens):
            image_form = images.get(gen)
            if image_form is None:
                raise DomainError(f"No differential for generator {gen}.")
            if not image_form:
                continue
            sign = -1 if position % 2 else 1
            term = wedge(
                _monomial_form(gens[:position], coeff * sign),
                image_form,
                _monomial_form(gens[position + 1:]),
            )
            result = result + term
    return result


def differential(eqs: Algebra, f: Form) -> Form:
    """Chevalley–Eilenberg differential of f."""
    return _derive(f, eqs.images)


def del_and_delbar(eqs: StructureEquations, f: Form) -> Tuple[Form, Form]:
    """(∂f, ∂̄f) for a form of pure bidegree."""
    bidegrees = f.bidegrees()
    if len(bidegrees) > 1:
        raise NonHomogeneousError(f"Form has bidegrees {sorted(bidegrees)}.")
    if not bidegrees:
        return Form(), Form()
    p, q = bidegrees.pop()
    df = differential(eqs, f)
    del_part = project(df, p + 1, q)
    delbar_part = project(df, p, q + 1)
    if df != del_part + delbar_part:
        raise IntegrabilityError(check_integrability(eqs).violations)
    return del_part, delbar_part


@dataclass(frozen=True)
class IntegrabilityReport:
    violations: Tuple[Violation, ...] = ()

    def __bool__(self):
        return not self.violations


def check_integrability(eqs: StructureEquations) -> IntegrabilityReport:
    """Integrability (no (0,2) part in dω^j) and d²ω^j = 0 for every j."""
    violations = []
    for j, form in enumerate(eqs.d_of, start=1):
        if project(form, 0, 2):
            violations.append(Violation(j, "integrability", (0, 2)))
        square = differential(eqs, form)
        if square:
            violations.append(Violation(j, "jacobi", min(square.bidegrees())))
    if violations:
        logger.debug("Structure %s has violations %s", eqs, violations)
    return IntegrabilityReport(tuple(violations))


def is_abelian(eqs: StructureEquations) -> bool:
    """Abelian complex structure: ∂ω^j = 0 for every j."""
    return all(not project(form, 2, 0) for form in eqs.d_of)


def is_complex_parallelizable(eqs: StructureEquations) -> bool:
    """dω^j has only (2,0) components."""
    return all(form == project(form, 2, 0) for form in eqs.d_of)


@functools.lru_cache(maxsize=2048)
def differential_map(eqs: Algebra, k: int) -> LinearMap:
    """Matrix of d from degree k to degree k+1 in the fixed monomial bases."""
    source = eqs.degree_basis(k)
    target = eqs.degree_basis(k + 1)
    columns = [
        coordinates_in(differential(eqs, Form(((m, ONE),))), target) for m in source
    ]
    return LinearMap.from_columns(len(target), columns)


@functools.lru_cache(maxsize=2048)
def _bigraded_map(
    eqs: StructureEquations, p: int, q: int, dp: int, dq: int
) -> LinearMap:
    source = basis(eqs.n, p, q)
    target = basis(eqs.n, p + dp, q + dq)
    columns = []
    for m in source:
        df = differential(eqs, Form(((m, ONE),)))
        columns.append(coordinates_in(project(df, p + dp, q + dq), target))
    return LinearMap.from_columns(len(target), columns)


def del_map(eqs: StructureEquations, p: int, q: int) -> LinearMap:
    """∂: ⋀^{p,q} → ⋀^{p+1,q}."""
    return _bigraded_map(eqs, p, q, 1, 0)


def delbar_map(eqs: StructureEquations, p: int, q: int) -> LinearMap:
    """∂̄: ⋀^{p,q} → ⋀^{p,q+1}."""
    return _bigraded_map(eqs, p, q, 0, 1)


def betti_numbers(eqs: Algebra) -> Tuple[int, ...]:
    """b_0..b_dim by rank–nullity of d."""
    dim = eqs.dimension
    ranks = [rank(differential_map(eqs, k)) for k in range(dim + 1)]
    return tuple(
        len(eqs.degree_basis(k)) - ranks[k] - (ranks[k - 1] if k else 0)
        for k in range(dim + 1)
    )


def brackets(eqs: Algebra) -> Dict[Tuple[int, int], Tuple[Scalar, ...]]:
    """[X_a, X_b] for the basis dual to the generators, from dθ(X,Y) = −θ([X,Y])."""
    gens = eqs.generators()
    index = {gen: i for i, gen in enumerate(gens)}
    size = len(gens)
    table = {(a, b): [ZERO] * size for a in range(size) for b in range(size)}
    for k, gen in enumerate(gens):
        for monomial, coeff in eqs.images[gen]:
            a, b = (index[g] for g in monomial.generators())
            table[(a, b)][k] = table[(a, b)][k] - coeff
            table[(b, a)][k] = table[(b, a)][k] + coeff
    return {key: tuple(value) for key, value in table.items()}


def _bracket_with(table, size: int, a: int, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    result = [ZERO] * size
    for b, coeff in enumerate(vector):
        if coeff:
            result = [x + coeff * y for x, y in zip(result, table[(a, b)])]
    return tuple(result)


def lower_central_series(eqs: Algebra) -> List[SubspaceBasis]:
    """g¹ = [g,g], g² = [g,g¹], ... until the series vanishes or stabilizes."""
    table = brackets(eqs)
    size = len(eqs.generators())
    current = row_reduce(
        [table[(a, b)] for a in range(size) for b in range(a + 1, size)], size
    )
    series = [current]
    while current.rank:
        following = row_reduce(
            [_bracket_with(table, size, a, row) for a in range(size) for row in current.rows],
            size,
        )
        if following.rank == current.rank:
            break
        series.append(following)
        current = following
    return series


def nilpotency_step(eqs: Algebra) -> Optional[int]:
    """Nilpotency step (1 for abelian algebras), None when not nilpotent."""
    series = lower_central_series(eqs)
    if series[-1].rank:
        return None
    return len(series)


def center(eqs: Algebra) -> SubspaceBasis:
    table = brackets(eqs)
    size = len(eqs.generators())
    rows = []
    for a in range(size):
        for k in range(size):
            rows.append(tuple(table[(a, b)][k] for b in range(size)))
    return kernel(LinearMap(size, len(rows), tuple(rows)))


def exact_real_two_forms(eqs: Algebra) -> List[Form]:
    """Real basis of d(g*), as forms fixed by conjugation."""
    exact = image(differential_map(eqs, 1))
    target = eqs.degree_basis(2)
    forms = [from_coordinates(row, target) for row in exact.rows]
    if isinstance(eqs, RealStructureEquations):
        return forms

    chosen: List[Form] = []
    span = row_reduce([], len(target))
    for form in forms:
        conj = conjugate(form)
        for candidate in (form + conj, (form - conj).scale(I)):
            vector = coordinates_in(candidate, target)
            extended = row_reduce(span.rows + (vector,), len(target))
            if extended.rank > span.rank:
                chosen.append(candidate)
                span = extended
        if len(chosen) == exact.rank:
            break
    return chosen


def _inertia(matrix: List[List[Fraction]]) -> Tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational matrix."""
    a = [list(row) for row in matrix]
    size = len(a)
    positive = negative = 0
    remaining = list(range(size))
    while remaining:
        pivot = next((i for i in remaining if a[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in remaining for j in remaining if i < j and a[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for k in range(size):
                a[i][k] += a[j][k]
            for k in range(size):
                a[k][i] += a[k][j]
            pivot = i
        d = a[pivot][pivot]
        if d > 0:
            positive += 1
        else:
            negative += 1
        remaining.remove(pivot)
        for i in remaining:
            factor = a[i][pivot] / d
            if factor:
                for k in range(size):
                    a[i][k] -= factor * a[pivot][k]
                for k in range(size):
                    a[k][i] -= factor * a[k][pivot]
    return positive, negative, size - positive - negative


def alpha_invariant(eqs: Algebra) -> int:
    """Number of linearly independent decomposable exact 2-forms.

    A real 2-form τ in dimension 6 is decomposable iff τ∧τ = 0, so the
    decomposable exact forms are the null cone of τ ↦ τ∧τ on V = d(g*).
    When the 4-forms τ_i∧τ_j span a line this is a real quadratic form:
    its null cone spans V when it is indefinite and equals the radical
    otherwise.
    """
    taus = exact_real_two_forms(eqs)
    size = len(taus)
    target = eqs.degree_basis(4)
    products = {
        (i, j): coordinates_in(wedge(taus[i], taus[j]), target)
        for i in range(size)
        for j in range(i, size)
    }
    span = row_reduce(list(products.values()), len(target)) if products else None
    if span is None or span.rank == 0:
        return size
    if span.rank > 1:
        raise UnsupportedCaseError(
            f"Products of exact 2-forms span {span.rank} dimensions."
        )
    line = span.rows[0]
    column = span.pivots[0]
    gram = [[Fraction(0)] * size for _ in range(size)]
    for (i, j), vector in products.items():
        ratio = vector[column] / line[column]
        if not ratio.is_real:
            raise ConsistencyAlarm("Wedge of real forms has a non-real ratio.")
        gram[i][j] = gram[j][i] = ratio.re
    positive, negative, zero = _inertia(gram)
    logger.debug("alpha inertia (%d, %d, %d) on %d exact forms", positive, negative, zero, size)
    if positive and negative:
        return size
    return zero


@dataclass(frozen=True)
class Fingerprint:
    dim_derived: int
    dim_g2: int
    dim_g3: int
    dim_center: int
    betti: Tuple[int, int, int]
    alpha: Optional[int] = None
    extensions: Tuple[int, ...] = ()


def fingerprint(eqs: Algebra) -> Fingerprint:
    series = [s.rank for s in lower_central_series(eqs)]
    series += [series[-1] if series[-1] else 0] * (3 - len(series))
    try:
        alpha = alpha_invariant(eqs)
    except UnsupportedCaseError:
        alpha = None
    betti = betti_numbers(eqs)
    return Fingerprint(
        dim_derived=series[0],
        dim_g2=series[1],
        dim_g3=series[2],
        dim_center=center(eqs).rank,
        betti=(betti[1], betti[2], betti[3]),
        alpha=alpha,
    )


def _transport(
    new_differentials: Sequence[Form], images: Dict[Generator, Form], n: int
) -> StructureEquations:
    return StructureEquations(
        n, tuple(pullback(form, images) for form in new_differentials)
    ).validate()


def _basis_images(q_matrix: LinearMap, n: int, keys: Sequence[Generator]) -> Dict[Generator, Form]:
    """Old generators as combinations of the new ν_b = ω^b (b < n) or ω^{b̄}."""
    new_gens = [generator(b + 1) for b in range(n)] + [
        generator(b + 1, barred=True) for b in range(n)
    ]
    return {
        key: linear_combination(row, new_gens) for key, row in zip(keys, q_matrix.matrix)
    }


def rebase(eqs: StructureEquations, forms: Sequence[Form]) -> StructureEquations:
    """Equations of the same structure in the (1,0)-basis σ^b = forms[b]."""
    for form in forms:
        if not form.is_homogeneous(1, 0):
            raise NonHomogeneousError(f"{form} is not a (1,0)-form.")
    return declare_holomorphic(eqs, forms)


def declare_holomorphic(eqs: StructureEquations, forms: Sequence[Form]) -> StructureEquations:
    """Equations of the structure whose (1,0)-forms are spanned by `forms`.

    The forms are arbitrary complex 1-forms of the algebra of `eqs`; together
    with their conjugates they must form a basis. The new structure is
    checked for integrability, so this also deforms a structure along a
    basis that mixes ω^j and ω^{j̄}.
    """
    n = eqs.n
    if len(forms) != n:
        raise DimensionMismatchError(f"Expecting {n} forms, got {len(forms)}.")
    one_forms = basis(n, 1, 0) + basis(n, 0, 1)
    rows = []
    for form in forms:
        if not form.bidegrees() <= {(1, 0), (0, 1)}:
            raise NonHomogeneousError(f"{form} is not a 1-form.")
        rows.append(coordinates_in(form, one_forms))
    rows += [coordinates_in(conjugate(form), one_forms) for form in forms]
    q_matrix = inverse(LinearMap(2 * n, 2 * n, tuple(rows)))
    images = _basis_images(q_matrix, n, [m.generators()[0] for m in one_forms])
    new_differentials = [differential(eqs, form) for form in forms]
    return _transport(new_differentials, images, n)


@dataclass(frozen=True)
class AlmostComplexMatrix:
    """J acting on real 1-forms: row k holds the coefficients of J e^k."""

    rows: Tuple[Tuple[Scalar, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(Scalar.of(c) for c in row) for row in self.rows)
        object.__setattr__(self, "rows", rows)
        size = len(rows)
        if size % 2 or any(len(row) != size for row in rows):
            raise DimensionMismatchError("J must be an even-sized square matrix.")
        square = LinearMap(size, size, rows).compose(LinearMap(size, size, rows))
        minus_identity = tuple(
            tuple(-c for c in row) for row in LinearMap.identity(size).matrix
        )
        if square.matrix != minus_identity:
            raise NotAlmostComplexError("J² ≠ −Id.")

    @property
    def size(self) -> int:
        return len(self.rows)

    def apply(self, vector: Sequence[Scalar]) -> Tuple[Scalar, ...]:
        """J acting on the 1-form with the given coordinates (row vector)."""
        return tuple(
            sum((vector[k] * self.rows[k][l] for k in range(self.size)), ZERO)
            for l in range(self.size)
        )


def _one_form_vector(form: Form, m: int) -> Tuple[Scalar, ...]:
    if not form.is_homogeneous(1, 0):
        raise NonHomogeneousError(f"{form} is not a real 1-form.")
    return coordinates_in(form, real_basis(m, 1))


def complexify(
    real: RealStructureEquations,
    J: AlmostComplexMatrix,
    forms: Optional[Sequence[Form]] = None,
) -> StructureEquations:
    """Complex structure equations of (real, J) in a basis of (1,0)-forms.

    Without explicit forms the basis is chosen greedily among e^k − iJe^k.
    """
    m = real.m
    if J.size != m:
        raise DimensionMismatchError(f"J has size {J.size}, algebra has dimension {m}.")
    n = m // 2
    if forms is None:
        rows: List[Tuple[Scalar, ...]] = []
        for k in range(m):
            unit = tuple(ONE if i == k else ZERO for i in range(m))
            candidate = tuple(u - I * j for u, j in zip(unit, J.apply(unit)))
            if row_reduce(rows + [candidate], m).rank > len(rows):
                rows.append(candidate)
            if len(rows) == n:
                break
    else:
        rows = [_one_form_vector(form, m) for form in forms]
        for row in rows:
            if J.apply(row) != tuple(I * c for c in row):
                raise DomainError("Basis form is not of type (1,0) for J.")
    if len(rows) != n:
        raise DimensionMismatchError(f"Expecting {n} (1,0)-forms, got {len(rows)}.")
    full = rows + [tuple(c.conj() for c in row) for row in rows]
    q_matrix = inverse(LinearMap(m, m, tuple(full)))
    images = _basis_images(q_matrix, n, [(k, False) for k in range(1, m + 1)])
    new_differentials = [linear_combination(row, real.d_of_real) for row in rows]
    return _transport(new_differentials, images, n)


def default_real_basis(n: int) -> List[Form]:
    """ω^k = e^{2k−1} + i e^{2k}."""
    return [generator(2 * k - 1) + generator(2 * k, coeff=I) for k in range(1, n + 1)]


def realify(
    eqs: StructureEquations, forms: Optional[Sequence[Form]] = None
) -> RealStructureEquations:
    """Real structure equations on e^1..e^{2n} where ω^k = forms[k]."""
    n = eqs.n
    m = 2 * n
    forms = list(forms) if forms is not None else default_real_basis(n)
    rows = [_one_form_vector(form, m) for form in forms]
    full = rows + [tuple(c.conj() for c in row) for row in rows]
    q_matrix = inverse(LinearMap(m, m, tuple(full)))
    complex_differentials = list(eqs.d_of) + [conjugate(f) for f in eqs.d_of]
    images = {(j, False): forms[j - 1] for j in range(1, n + 1)}
    images.update(
        {(j, True): conjugate_coefficients(forms[j - 1]) for j in range(1, n + 1)}
    )
    real_differentials = []
    for k, row in enumerate(q_matrix.matrix, start=1):
        form = pullback(linear_combination(row, complex_differentials), images)
        if any(not c.is_real for _, c in form):
            raise DomainError(f"de{k} is not real in the given basis.")
        real_differentials.append(form)
    return RealStructureEquations(m, tuple(real_differentials)).validate()


def structure_tensor(eqs: StructureEquations) -> np.ndarray:
    """Antisymmetric C[k, x, y] with dω^k = ½ Σ C[k,x,y] ν^x∧ν^y."""
    n = eqs.n
    index = {gen: i for i, gen in enumerate(eqs.generators())}
    tensor = np.zeros((n, 2 * n, 2 * n), dtype=complex)
    for k, form in enumerate(eqs.d_of):
        for monomial, coeff in form:
            x, y = (index[g] for g in monomial.generators())
            tensor[k, x, y] += coeff.to_complex()
            tensor[k, y, x] -= coeff.to_complex()
    return tensor


def _real_tensor(real: RealStructureEquations) -> np.ndarray:
    m = real.m
    tensor = np.zeros((m, m, m), dtype=complex)
    for k, form in enumerate(real.d_of_real):
        for monomial, coeff in form:
            a, b = (i - 1 for i in monomial.holo)
            tensor[k, a, b] += coeff.to_complex()
            tensor[k, b, a] -= coeff.to_complex()
    return tensor


@dataclass(frozen=True)
class ApproximateStructure:
    """Complex structure constants computed in binary64.

    Never used for ranks; only compared against exact equations.
    """

    tensor: np.ndarray
    eigen_residual: float


def complexify_approximate(
    real: RealStructureEquations,
    J,
    forms=None,
    tolerance: float = APPROXIMATE_TOLERANCE,
) -> ApproximateStructure:
    """Floating-point counterpart of `complexify` for radical-laden bases.

    `J` is an m×m array acting on 1-forms by rows, `forms` an n×m array of
    (1,0)-form coordinates; without forms, +i eigenvectors of Jᵀ are used.
    """
    m = real.m
    n = m // 2
    J = np.asarray(J, dtype=complex)
    if J.shape != (m, m):
        raise DimensionMismatchError(f"J has shape {J.shape}, expected ({m}, {m}).")
    if np.max(np.abs(J @ J + np.eye(m))) > tolerance:
        raise NotAlmostComplexError("J² ≠ −Id within tolerance.")
    if forms is None:
        values, vectors = np.linalg.eig(J.T)
        chosen = [i for i in range(m) if abs(values[i] - 1j) < np.sqrt(tolerance)]
        P = vectors[:, chosen[:n]].T
    else:
        P = np.asarray(forms, dtype=complex)
    if P.shape != (n, m):
        raise DimensionMismatchError(f"Forms have shape {P.shape}, expected ({n}, {m}).")
    eigen_residual = float(np.max(np.abs(P @ J - 1j * P)))
    Q = np.linalg.inv(np.vstack([P, P.conj()]))
    tensor = np.einsum("ka,abc,bx,cy->kxy", P, _real_tensor(real), Q, Q)
    return ApproximateStructure(tensor=tensor, eigen_residual=eigen_residual)


def residual(approximate: ApproximateStructure, eqs: StructureEquations) -> float:
    difference = np.max(np.abs(approximate.tensor - structure_tensor(eqs)))
    return max(float(difference), approximate.eigen_residual)


def verify_approximate(
    real: RealStructureEquations,
    J,
    forms,
    eqs: StructureEquations,
    tolerance: float = APPROXIMATE_TOLERANCE,
) -> float:
    """Residual of the claimed equations; raises if it exceeds the tolerance."""
    value = residual(complexify_approximate(real, J, forms, tolerance), eqs)
    logger.debug("Approximate residual %.3e against %s", value, eqs)
    if value >= tolerance:
        raise VerificationError(f"Residual {value:.3e} exceeds {tolerance:.0e}.")
    return value
