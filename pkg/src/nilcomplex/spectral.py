"""Frölicher spectral sequence from the filtration of the total complex.

With F^p A^k spanned by the monomials of holomorphic degree at least p,

    Z_r^{p,q} = F^p A^k ∩ d⁻¹(F^{p+r} A^{k+1}),
    B_r^{p,q} = Z_{r−1}^{p+1,q−1} + d Z_{r−1}^{p−r+1,q+r−2},
    E_r^{p,q} = Z_r^{p,q} / B_r^{p,q},          k = p + q.

All spaces are subspaces of the coordinate space of `total_basis(n, k)`.
"""
import functools
import logging
from dataclasses import dataclass
from threading import RLock
from typing import Callable
from typing import Dict
from typing import Mapping
from typing import Tuple

from .errors import ConsistencyAlarm
from .exterior import ONE
from .exterior import ZERO
from .exterior import total_basis
from .liealg import StructureEquations
from .liealg import betti_numbers
from .liealg import del_map
from .liealg import delbar_map
from .liealg import differential_map
from .linalg import LinearMap
from .linalg import SubspaceBasis
from .linalg import express
from .linalg import image
from .linalg import intersect
from .linalg import kernel
from .linalg import member
from .linalg import preimage
from .linalg import quotient_complement
from .linalg import rank
from .linalg import restrict_image
from .linalg import subspace_sum
from .linalg import zero_space

logger = logging.getLogger(__name__)

Dims = Tuple[Tuple[int, ...], ...]


@dataclass(frozen=True)
class SpectralTerm:
    r: int
    dims: Dims
    representatives: Mapping[Tuple[int, int], SubspaceBasis]

    def total(self, k: int) -> int:
        n = len(self.dims) - 1
        return sum(self.dims[p][k - p] for p in range(n + 1) if 0 <= k - p <= n)


@dataclass(frozen=True)
class BehaviourSignature:
    text: str
    degeneration_step: int
    drops: Tuple[int, ...]

    def __str__(self):
        return self.text


@dataclass(frozen=True)
class EInftyReport:
    """Comparison of Σ_p dim E_∞^{p,k−p} with b_k; truthy when they agree."""

    totals: Tuple[int, ...]
    betti: Tuple[int, ...]

    @property
    def mismatches(self) -> Tuple[int, ...]:
        return tuple(k for k, (a, b) in enumerate(zip(self.totals, self.betti)) if a != b)

    def __bool__(self):
        return not self.mismatches


class FrolicherSequence:
    """Spectral-sequence terms of one structure, cached under a lock.

    Usage:
        sequence = FrolicherSequence(eqs)
        sequence.dims(2)
        sequence.d_r(2, 0, 2)
    """

    def __init__(self, eqs: StructureEquations):
        self.eqs = eqs
        self.n = eqs.n
        self._lock = RLock()
        self._cache: Dict[tuple, object] = {}

    def __repr__(self):
        return f"FrolicherSequence({self.eqs})"

    @property
    def infinity(self) -> int:
        """First page equal to E_∞."""
        return self.n + 1

    def _cached(self, key: tuple, compute: Callable[[], object]):
        with self._lock:
            if key in self._cache:
                return self._cache[key]
        value = compute()
        with self._lock:
            return self._cache.setdefault(key, value)

    def filtration(self, p: int, k: int) -> SubspaceBasis:
        """F^p A^k as a span of coordinate unit vectors."""

        def compute():
            monomials = total_basis(self.n, k)
            size = len(monomials)
            rows = tuple(
                tuple(ONE if j == i else ZERO for j in range(size))
                for i, m in enumerate(monomials)
                if len(m.holo) >= p
            )
            return SubspaceBasis(size, rows)

        return self._cached(("F", p, k), compute)

    def cycles(self, r: int, p: int, k: int) -> SubspaceBasis:
        """Z_r^{p, k−p}."""

        def compute():
            if k < 0:
                return zero_space(0)
            lifted = preimage(
                differential_map(self.eqs, k), self.filtration(p + r, k + 1)
            )
            return intersect(self.filtration(p, k), lifted)

        return self._cached(("Z", r, p, k), compute)

    def boundaries(self, r: int, p: int, k: int) -> SubspaceBasis:
        """B_r^{p, k−p} ∩ Z_r^{p, k−p}."""

        def compute():
            cycles = self.cycles(r, p, k)
            lower = self.cycles(r - 1, p + 1, k)
            if k >= 1:
                source = self.cycles(r - 1, p - r + 1, k - 1)
                exact = restrict_image(differential_map(self.eqs, k - 1), source)
                lower = subspace_sum(lower, exact)
            return intersect(lower, cycles)

        return self._cached(("B", r, p, k), compute)

    def representatives(self, r: int, p: int, q: int) -> SubspaceBasis:
        k = p + q
        return self._cached(
            ("R", r, p, k),
            lambda: quotient_complement(self.cycles(r, p, k), self.boundaries(r, p, k)),
        )

    def dimension(self, r: int, p: int, q: int) -> int:
        if not (0 <= p <= self.n and 0 <= q <= self.n):
            return 0
        k = p + q
        return self.cycles(r, p, k).rank - self.boundaries(r, p, k).rank

    def dims(self, r: int) -> Dims:
        return tuple(
            tuple(self.dimension(r, p, q) for q in range(self.n + 1))
            for p in range(self.n + 1)
        )

    def term(self, r: int) -> SpectralTerm:
        def compute():
            dims = self.dims(r)
            representatives = {
                (p, q): self.representatives(r, p, q)
                for p in range(self.n + 1)
                for q in range(self.n + 1)
            }
            logger.debug("E_%d dims %s", r, dims)
            return SpectralTerm(r, dims, representatives)

        return self._cached(("E", r), compute)

    def d_r(self, r: int, p: int, q: int) -> LinearMap:
        """d_r: E_r^{p,q} → E_r^{p+r,q−r+1} in the canonical representatives."""
        return self._cached(("d", r, p, q), lambda: self._compute_d_r(r, p, q))

    def _compute_d_r(self, r: int, p: int, q: int) -> LinearMap:
        k = p + q
        source = self.representatives(r, p, q) if self.dimension(r, p, q) else None
        target_p, target_q = p + r, q - r + 1
        if self.dimension(r, target_p, target_q):
            target = self.representatives(r, target_p, target_q)
            target_boundaries = self.boundaries(r, target_p, k + 1)
        else:
            target = target_boundaries = None
        domain_dim = source.rank if source is not None else 0
        codomain_dim = target.rank if target is not None else 0
        if not domain_dim or not codomain_dim:
            return LinearMap(domain_dim, codomain_dim)

        d = differential_map(self.eqs, k)
        for row in self.boundaries(r, p, k).rows:
            if not member(d.apply(row), target_boundaries):
                raise ConsistencyAlarm(
                    f"d_{r} is not well defined at ({p},{q}) for {self.eqs}."
                )
        spanning = list(target.rows) + list(target_boundaries.rows)
        columns = []
        for row in source.rows:
            coeffs = express(d.apply(row), spanning)
            if coeffs is None:
                raise ConsistencyAlarm(
                    f"d_{r} leaves Z_{r} at ({p},{q}) for {self.eqs}."
                )
            columns.append(coeffs[:codomain_dim])
        return LinearMap.from_columns(codomain_dim, columns)

    def dimension_from_maps(self, r: int, p: int, q: int) -> int:
        """dim E_{r+1}^{p,q} as dim ker d_r − rank of the incoming d_r."""
        outgoing = self.d_r(r, p, q)
        incoming = self.d_r(r, p - r, q + r - 1)
        return outgoing.domain_dim - rank(outgoing) - rank(incoming)

    def behaviour(self) -> BehaviourSignature:
        pages = [self.dims(r) for r in range(1, self.infinity + 1)]
        limit = pages[-1]
        step = next(r for r, dims in enumerate(pages, start=1) if dims == limit)
        drops = tuple(r for r in range(1, step) if pages[r - 1] != pages[r])
        text = "E1"
        for r in range(1, step):
            text += ("≇" if r in drops else "≅") + f"E{r + 1}"
        text += "≅E∞"
        return BehaviourSignature(text, step, drops)


@functools.lru_cache(maxsize=256)
def sequence_of(eqs: StructureEquations) -> FrolicherSequence:
    """Shared, lock-protected sequence for a structure."""
    return FrolicherSequence(eqs)


def er_term(eqs: StructureEquations, r: int) -> SpectralTerm:
    return sequence_of(eqs).term(r)


def dr_map(eqs: StructureEquations, r: int, p: int, q: int) -> LinearMap:
    return sequence_of(eqs).d_r(r, p, q)


def behaviour(eqs: StructureEquations) -> BehaviourSignature:
    signature = sequence_of(eqs).behaviour()
    logger.info("Behaviour %s for %s", signature, eqs)
    return signature


def einfty_check(eqs: StructureEquations) -> EInftyReport:
    sequence = sequence_of(eqs)
    limit = sequence.term(sequence.infinity)
    report = EInftyReport(
        tuple(limit.total(k) for k in range(2 * eqs.n + 1)), betti_numbers(eqs)
    )
    if not report:
        logger.error("E_inf totals %s differ from Betti numbers %s", report.totals, report.betti)
    return report


def e2_zigzag_dimension(eqs: StructureEquations, p: int, q: int) -> int:
    """dim E_2^{p,q} from the ∂/∂̄ zig-zag description.

    Classes are ∂̄-closed α with ∂α ∈ im ∂̄, modulo im ∂̄ + ∂(ker ∂̄).
    """
    n = eqs.n
    size = delbar_map(eqs, p, q).domain_dim
    closed = kernel(delbar_map(eqs, p, q))
    if q >= 1 and p + 1 <= n:
        hit = image(delbar_map(eqs, p + 1, q - 1))
    else:
        hit = zero_space(del_map(eqs, p, q).codomain_dim)
    cocycles = intersect(closed, preimage(del_map(eqs, p, q), hit))
    exact = image(delbar_map(eqs, p, q - 1)) if q >= 1 else zero_space(size)
    if p >= 1:
        exact = subspace_sum(
            exact, restrict_image(del_map(eqs, p - 1, q), kernel(delbar_map(eqs, p - 1, q)))
        )
    return cocycles.rank - intersect(exact, cocycles).rank
