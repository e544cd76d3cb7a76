"""
Existence and construction of the supremum A∨B under the logic order.

A∨B exists iff P^A(Δ1) P^B(Δ2) = 0 for every pair of disjoint Borel sets
avoiding 0. With finite spectra a Borel set only matters through the
spectral points it contains, so it is enough to test singleton pairs
{λ}, {μ} of distinct nonzero spectral points: O(k_A * k_B) projection
products. When the condition holds, the join measure

    E({λ}) = P^A({λ}) ∨ P^B({λ}),   E({0}) = N(A) ∧ N(B)

is a spectral measure and the operator it generates is A∨B.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from logicsup.borel import BorelSet
from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import (
    DimensionMismatchError,
    InternalConsistencyError,
    LogicSupError,
    SupremumDoesNotExistError,
)
from logicsup.logic_order import OrderVerdict, logic_leq, match_spectra, pair_match_tol
from logicsup.operator_core import (
    HermitianOperator,
    SpectralDecomposition,
    SpectralPoint,
    spectral_decompose,
)
from logicsup.projection_lattice import Projection, join, meet, overlap_norm, spectral_norm
from logicsup.spectral_measure import (
    FiniteSpectralMeasure,
    evaluate,
    measure_of,
    measure_to_operator,
)


@dataclass(frozen=True, eq=False)
class Witness:
    """
    Two distinct nonzero values λ of A and μ of B whose events overlap.

    ``unit_vector`` is a state in which "A takes λ" and "B takes μ" both
    have positive probability (``prob_a`` and ``prob_b``).
    """

    lam: float
    mu: float
    overlap_norm: float
    unit_vector: np.ndarray
    prob_a: float = 0.0
    prob_b: float = 0.0


@dataclass(frozen=True)
class ExistenceResult:
    exists: bool
    witness: Optional[Witness]
    checked_pairs: int
    bound: float = 0.0

    def __bool__(self) -> bool:
        return self.exists


def _decompose_pair(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances
) -> Tuple[SpectralDecomposition, SpectralDecomposition, float]:
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)
    decomposition_a = spectral_decompose(a, tol=tol)
    decomposition_b = spectral_decompose(b, tol=tol)
    return decomposition_a, decomposition_b, pair_match_tol(decomposition_a, decomposition_b, tol)


def _witness(lam: float, mu: float, p: Projection, q: Projection) -> Witness:
    product = p.entries @ q.entries
    _, singular, vh = scipy.linalg.svd(product)
    vector = vh[0].conj()
    return Witness(
        lam=lam,
        mu=mu,
        overlap_norm=float(singular[0]),
        unit_vector=vector,
        prob_a=float(np.linalg.norm(p.entries @ vector) ** 2),
        prob_b=float(np.linalg.norm(q.entries @ vector) ** 2),
    )


def _scan(
    decomposition_a: SpectralDecomposition,
    decomposition_b: SpectralDecomposition,
    match_tol: float,
    tol: Tolerances,
) -> Tuple[List[Witness], int]:
    failures = []
    checked = 0
    for lam, p in decomposition_a.points:
        for mu, q in decomposition_b.points:
            if abs(lam - mu) <= match_tol:
                continue
            checked += 1
            if overlap_norm(p, q) > tol.orth:
                failures.append(_witness(lam, mu, p, q))
    failures.sort(key=lambda w: (-w.overlap_norm, w.lam, w.mu))
    return failures, checked


def failing_pairs(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> List[Witness]:
    """Every overlapping (λ, μ) pair, largest overlap first."""
    decomposition_a, decomposition_b, match_tol = _decompose_pair(a, b, tol)
    return _scan(decomposition_a, decomposition_b, match_tol, tol)[0]


def sup_exists(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> ExistenceResult:
    decomposition_a, decomposition_b, match_tol = _decompose_pair(a, b, tol)
    failures, checked = _scan(decomposition_a, decomposition_b, match_tol, tol)
    bound = max(a.norm, b.norm)
    if failures:
        witness = failures[0]
        logger.debug(
            f"supremum missing: {len(failures)} of {checked} pairs overlap, "
            f"largest at ({witness.lam:g}, {witness.mu:g}) = {witness.overlap_norm:.6g}"
        )
        return ExistenceResult(False, witness, checked, bound)
    return ExistenceResult(True, None, checked, bound)


def borel_overlap(
    a: HermitianOperator,
    b: HermitianOperator,
    delta_a: BorelSet,
    delta_b: BorelSet,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """||P^A(Δ1) P^B(Δ2)|| for arbitrary Borel sets."""
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)
    return overlap_norm(evaluate(measure_of(a, tol), delta_a, tol), evaluate(measure_of(b, tol), delta_b, tol))


def _require_existence(
    decomposition_a: SpectralDecomposition,
    decomposition_b: SpectralDecomposition,
    match_tol: float,
    tol: Tolerances,
) -> None:
    failures, _ = _scan(decomposition_a, decomposition_b, match_tol, tol)
    if failures:
        raise SupremumDoesNotExistError(failures[0])


def build_join_measure(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> FiniteSpectralMeasure:
    decomposition_a, decomposition_b, match_tol = _decompose_pair(a, b, tol)
    _require_existence(decomposition_a, decomposition_b, match_tol, tol)
    matches = match_spectra(decomposition_a, decomposition_b, match_tol)

    support: List[SpectralPoint] = []
    for i, (lam, p) in enumerate(decomposition_a.points):
        j = matches.get(i)
        joined = p if j is None else join(p, decomposition_b.points[j].projection, tol)
        support.append(SpectralPoint(lam, joined))
    matched_b = set(matches.values())
    for j, point in enumerate(decomposition_b.points):
        if j not in matched_b:
            support.append(point)

    for i, first in enumerate(support):
        for second in support[i + 1:]:
            overlap = overlap_norm(first.projection, second.projection)
            if overlap > tol.orth:
                logger.error(
                    f"join measure not orthogonal at ({first.value:g}, {second.value:g}): {overlap:.3e}"
                )
                raise InternalConsistencyError(
                    f"Joined eigenprojections at {first.value!r} and {second.value!r} overlap with norm "
                    f"{overlap:.3e} > {tol.orth:.3e}; the tolerances are mis-tuned for this pair"
                )

    null_meet = meet(decomposition_a.zero_projection, decomposition_b.zero_projection, tol)
    if null_meet.rank > 0:
        support.append(SpectralPoint(0.0, null_meet))

    measure = FiniteSpectralMeasure(tuple(support), a.dim)
    measure.validate(tol, cluster_tol=min(decomposition_a.cluster_tol, decomposition_b.cluster_tol))
    return measure


def join_measure_at(
    a: HermitianOperator,
    b: HermitianOperator,
    delta: BorelSet,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Projection:
    """
    E(Δ) straight from its case definition:

    - 0 not in Δ:  P^A(Δ) ∨ P^B(Δ)
    - Δ = {0}:     N(A) ∧ N(B)
    - 0 in Δ:      P^A(Δ minus 0) ∨ P^B(Δ minus 0) + N(A) ∧ N(B)
    """
    _require_existence(*_decompose_pair(a, b, tol), tol)
    measure_a = measure_of(a, tol)
    measure_b = measure_of(b, tol)
    zero = BorelSet.points(0.0)
    null_meet = meet(evaluate(measure_a, zero, tol), evaluate(measure_b, zero, tol), tol)
    if not delta.contains(0.0):
        return join(evaluate(measure_a, delta, tol), evaluate(measure_b, delta, tol), tol)
    if delta.is_zero_singleton():
        return null_meet
    trimmed = delta.without(0.0)
    joined = join(evaluate(measure_a, trimmed, tol), evaluate(measure_b, trimmed, tol), tol)
    return Projection.checked(joined.entries + null_meet.entries, tol)


def supremum(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> HermitianOperator:
    result = measure_to_operator(build_join_measure(a, b, tol), tol)
    if a.label and b.label:
        result = HermitianOperator(result.entries, f"{a.label} v {b.label}")
    return result


@dataclass
class BoundCheck:
    index: int
    is_common_bound: bool
    verdict: Optional[OrderVerdict] = None


@dataclass
class SupremumReport:
    a_below: Optional[OrderVerdict]
    b_below: Optional[OrderVerdict]
    certificate_deviation: float
    commutator_a: float
    commutator_b: float
    bound_checks: List[BoundCheck] = field(default_factory=list)
    failures: List[str] = field(default_factory=list)
    tolerance: float = DEFAULT_TOLERANCES.eq

    @property
    def passed(self) -> bool:
        return not self.failures


def certificate_deviation(
    a: HermitianOperator,
    b: HermitianOperator,
    s: HermitianOperator,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """max over nonzero λ of ||P^S({λ}) - P^A({λ}) ∨ P^B({λ})||."""
    for other in (b, s):
        if other.dim != a.dim:
            raise DimensionMismatchError(a.dim, other.dim)
    decomposition_a = spectral_decompose(a, tol=tol)
    decomposition_b = spectral_decompose(b, tol=tol)
    decomposition_s = spectral_decompose(s, tol=tol)
    match_tol = tol.match_for(decomposition_a.cluster_tol, decomposition_b.cluster_tol, decomposition_s.cluster_tol)
    values = sorted(decomposition_a.values + decomposition_b.values + decomposition_s.values)
    representatives: List[float] = []
    for value in values:
        if not representatives or value - representatives[-1] > match_tol:
            representatives.append(value)

    zero = Projection.zero(s.dim)
    worst = 0.0
    for lam in representatives:
        p = decomposition_a.projection_at(lam, match_tol) or zero
        q = decomposition_b.projection_at(lam, match_tol) or zero
        r = decomposition_s.projection_at(lam, match_tol) or zero
        worst = max(worst, spectral_norm(r.entries - join(p, q, tol).entries))
    return worst


def verify_supremum(
    a: HermitianOperator,
    b: HermitianOperator,
    s: HermitianOperator,
    bounds: Sequence[HermitianOperator] = (),
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SupremumReport:
    failures: List[str] = []

    def attempt(description, action, default=None):
        try:
            return action()
        except LogicSupError as e:
            failures.append(f"{description}: {e}")
            return default

    a_below = attempt("A ≼ S", lambda: logic_leq(a, s, tol))
    b_below = attempt("B ≼ S", lambda: logic_leq(b, s, tol))
    if a_below is not None and not a_below.holds:
        failures.append(f"A ≼ S fails (defect {a_below.defect:.3e})")
    if b_below is not None and not b_below.holds:
        failures.append(f"B ≼ S fails (defect {b_below.defect:.3e})")

    deviation = attempt("spectral certificate", lambda: certificate_deviation(a, b, s, tol))
    if deviation is None:
        deviation = float("inf")
    elif deviation > tol.eq * max(1.0, s.norm):
        failures.append(f"spectral certificate deviation {deviation:.3e} exceeds {tol.eq:.3e}")

    commutator_a = spectral_norm(a.entries @ s.entries - s.entries @ a.entries) if a.dim == s.dim else float("inf")
    commutator_b = spectral_norm(b.entries @ s.entries - s.entries @ b.entries) if b.dim == s.dim else float("inf")

    checks: List[BoundCheck] = []
    for index, bound in enumerate(bounds):
        above_a = attempt(f"bound {index}: A ≼ F", lambda: logic_leq(a, bound, tol))
        above_b = attempt(f"bound {index}: B ≼ F", lambda: logic_leq(b, bound, tol))
        common = bool(above_a and above_b)
        check = BoundCheck(index, common)
        if common:
            check.verdict = attempt(f"bound {index}: S ≼ F", lambda: logic_leq(s, bound, tol))
            if check.verdict is not None and not check.verdict.holds:
                failures.append(f"bound {index}: S ≼ F fails although F bounds A and B")
        checks.append(check)

    return SupremumReport(
        a_below=a_below,
        b_below=b_below,
        certificate_deviation=deviation,
        commutator_a=commutator_a,
        commutator_b=commutator_b,
        bound_checks=checks,
        failures=failures,
        tolerance=tol.eq,
    )
