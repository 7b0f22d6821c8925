"""Dolbeault and de Rham cohomology of structure equations."""
import logging
from dataclasses import dataclass
from typing import Optional
from typing import Tuple

from .errors import ConsistencyAlarm
from .exterior import Form
from .exterior import basis
from .exterior import coordinates_in
from .exterior import from_coordinates
from .exterior import wedge
from .liealg import Algebra
from .liealg import StructureEquations
from .liealg import betti_numbers
from .liealg import delbar_map
from .liealg import differential_map
from .linalg import SubspaceBasis
from .linalg import image
from .linalg import kernel
from .linalg import quotient_complement
from .linalg import row_reduce
from .linalg import subspace_sum
from .linalg import zero_space

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CohomologyGroup:
    """Cohomology in one (bi)degree with canonical representatives."""

    degree: int
    dimension: int
    representatives: Tuple[Form, ...] = ()
    bidegree: Optional[Tuple[int, int]] = None

    def __str__(self):
        if self.bidegree is None:
            return f"H^{self.degree} (dim {self.dimension})"
        p, q = self.bidegree
        return f"H^{{{p},{q}}} (dim {self.dimension})"


def _quotient(cycles: SubspaceBasis, boundaries: SubspaceBasis, monomials) -> Tuple[int, Tuple[Form, ...]]:
    complement = quotient_complement(cycles, boundaries)
    dimension = cycles.rank - boundaries.rank
    if complement.rank != dimension:
        raise ConsistencyAlarm(
            f"Quotient complement has rank {complement.rank}, expected {dimension}."
        )
    return dimension, tuple(from_coordinates(row, monomials) for row in complement.rows)


def dolbeault(eqs: StructureEquations, p: int, q: int) -> CohomologyGroup:
    """H^{p,q}_∂̄ = ker ∂̄ / im ∂̄ in bidegree (p, q)."""
    monomials = basis(eqs.n, p, q)
    cycles = kernel(delbar_map(eqs, p, q))
    boundaries = image(delbar_map(eqs, p, q - 1)) if q else zero_space(len(monomials))
    dimension, representatives = _quotient(cycles, boundaries, monomials)
    logger.debug("Dolbeault h^{%d,%d} = %d", p, q, dimension)
    return CohomologyGroup(p + q, dimension, representatives, (p, q))


def de_rham(eqs: Algebra, k: int) -> CohomologyGroup:
    """H^k = ker d / im d in total degree k."""
    monomials = eqs.degree_basis(k)
    cycles = kernel(differential_map(eqs, k))
    boundaries = image(differential_map(eqs, k - 1)) if k else zero_space(len(monomials))
    dimension, representatives = _quotient(cycles, boundaries, monomials)
    logger.debug("de Rham b_%d = %d", k, dimension)
    return CohomologyGroup(k, dimension, representatives)


@dataclass(frozen=True)
class HodgeTable:
    """h[p][q] = dim H^{p,q}_∂̄ and the Betti numbers b_0..b_2n."""

    h: Tuple[Tuple[int, ...], ...]
    betti: Tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.h) - 1

    def total(self, k: int) -> int:
        return sum(
            self.h[p][k - p] for p in range(self.n + 1) if 0 <= k - p <= self.n
        )

    def is_symmetric(self) -> bool:
        return all(
            self.h[p][q] == self.h[q][p]
            for p in range(self.n + 1)
            for q in range(self.n + 1)
        )


def serre_dual(table: HodgeTable) -> HodgeTable:
    """The table with h[p][q] replaced by h[n−p][n−q]."""
    n = table.n
    return HodgeTable(
        tuple(tuple(table.h[n - p][n - q] for q in range(n + 1)) for p in range(n + 1)),
        tuple(reversed(table.betti)),
    )


def frolicher_inequality(table: HodgeTable) -> bool:
    return all(table.total(k) >= b for k, b in enumerate(table.betti))


def hodge_table(eqs: StructureEquations) -> HodgeTable:
    n = eqs.n
    table = HodgeTable(
        tuple(
            tuple(dolbeault(eqs, p, q).dimension for q in range(n + 1))
            for p in range(n + 1)
        ),
        betti_numbers(eqs),
    )
    if not frolicher_inequality(table):
        raise ConsistencyAlarm(f"Frölicher inequality fails for {eqs}.")
    return table


def cup_product_rank(eqs: Algebra) -> int:
    """Rank of the product H¹ × H¹ → H²."""
    ones = de_rham(eqs, 1).representatives
    monomials = eqs.degree_basis(2)
    boundaries = image(differential_map(eqs, 1))
    products = [
        coordinates_in(wedge(a, b), monomials)
        for i, a in enumerate(ones)
        for b in ones[i + 1:]
    ]
    if not products:
        return 0
    spanned = subspace_sum(row_reduce(products, len(monomials)), boundaries)
    return spanned.rank - boundaries.rank
