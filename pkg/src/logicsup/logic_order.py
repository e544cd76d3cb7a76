"""
The logic order: A ≼ B iff some Hermitian C has AC = 0 and A + C = B.

Two independent routes decide it. The algebraic route tests ||A(B - A)||
directly; the spectral route checks that every eigenprojection of A at a
nonzero eigenvalue sits under the eigenprojection of B at the same value.
The spectral route is canonical.

Each route has its own defect and tolerance: ||A(B - A)|| / max(1, ||A|| ||B||)
against ``order`` and max ||P - QP|| against ``orth``. A disagreement with
either defect within a factor of 10 of its tolerance is reported as
ambiguous; anything else raises RouteDisagreementError.
"""

import math
from dataclasses import dataclass
from typing import Dict, Optional

from loguru import logger

from logicsup.borel import BorelSet
from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import (
    DimensionMismatchError,
    IllConditionedPairError,
    PreconditionError,
    RouteDisagreementError,
)
from logicsup.operator_core import (
    HermitianOperator,
    SpectralDecomposition,
    null_projection,
    range_projection,
    spectral_decompose,
)
from logicsup.projection_lattice import spectral_norm
from logicsup.spectral_measure import evaluate, measure_of


@dataclass(frozen=True)
class OrderVerdict:
    holds: bool
    route_algebraic: bool
    route_spectral: bool
    residual: Optional[HermitianOperator]
    defect: float
    tolerance: float
    ambiguous: bool = False
    spectral_defect: float = 0.0
    spectral_tolerance: float = DEFAULT_TOLERANCES.orth

    @property
    def residual_norm(self) -> Optional[float]:
        return None if self.residual is None else self.residual.norm

    def __bool__(self) -> bool:
        return self.holds


def match_spectra(
    first: SpectralDecomposition, second: SpectralDecomposition, match_tol: float
) -> Dict[int, int]:
    """
    Greedy nearest-value matching of nonzero spectral points.

    Returns {index in first: index in second}. Raises when two points of
    ``first`` land on the same point of ``second``.
    """
    matches: Dict[int, int] = {}
    taken: Dict[int, int] = {}
    for i, point in enumerate(first.points):
        best = None
        for j, other in enumerate(second.points):
            gap = abs(point.value - other.value)
            if gap <= match_tol and (best is None or gap < best[1]):
                best = (j, gap)
        if best is None:
            continue
        j = best[0]
        if j in taken:
            raise IllConditionedPairError(
                f"Eigenvalues {first.points[taken[j]].value!r} and {point.value!r} both match "
                f"{second.points[j].value!r} within {match_tol:.3e}; the clustering is too coarse"
            )
        taken[j] = i
        matches[i] = j
    return matches


def pair_match_tol(
    first: SpectralDecomposition, second: SpectralDecomposition, tol: Tolerances
) -> float:
    return tol.match_for(first.cluster_tol, second.cluster_tol)


def _in_band(defect: float, tolerance: float) -> bool:
    return tolerance / 10 <= defect <= 10 * tolerance


def logic_leq(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> OrderVerdict:
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)

    residual = b - a
    scale = max(1.0, a.norm * b.norm)
    defect = spectral_norm(a.entries @ residual.entries) / scale
    route_algebraic = defect <= tol.order

    decomposition_a = spectral_decompose(a, tol=tol)
    decomposition_b = spectral_decompose(b, tol=tol)
    matches = match_spectra(decomposition_a, decomposition_b, pair_match_tol(decomposition_a, decomposition_b, tol))
    # max ||P - QP|| over the nonzero points of A; an unmatched point is inf
    spectral_defect = 0.0
    for i, point in enumerate(decomposition_a.points):
        j = matches.get(i)
        if j is None:
            spectral_defect = math.inf
            break
        q = decomposition_b.points[j].projection.entries
        p = point.projection.entries
        spectral_defect = max(spectral_defect, spectral_norm(p - q @ p))
    route_spectral = spectral_defect <= tol.orth

    ambiguous = False
    if route_algebraic != route_spectral:
        if _in_band(defect, tol.order) or _in_band(spectral_defect, tol.orth):
            ambiguous = True
            logger.warning(
                f"Order routes disagree inside the ambiguity band (algebraic defect {defect:.3e}, "
                f"spectral defect {spectral_defect:.3e}); the verdict is numerically ambiguous"
            )
        else:
            logger.error(
                f"Order routes disagree outside the ambiguity band (algebraic defect {defect:.3e}, "
                f"spectral defect {spectral_defect:.3e})"
            )
            raise RouteDisagreementError(
                f"algebraic route says {route_algebraic}, spectral route says {route_spectral} "
                f"(defect {defect:.3e} against {tol.order:.3e}, "
                f"spectral defect {spectral_defect:.3e} against {tol.orth:.3e})"
            )

    return OrderVerdict(
        holds=route_spectral,
        route_algebraic=route_algebraic,
        route_spectral=route_spectral,
        residual=residual if route_spectral else None,
        defect=defect,
        tolerance=tol.order,
        ambiguous=ambiguous,
        spectral_defect=spectral_defect,
        spectral_tolerance=tol.orth,
    )


def _require_order(a: HermitianOperator, b: HermitianOperator, tol: Tolerances, check: str) -> None:
    if not logic_leq(a, b, tol).holds:
        raise PreconditionError(f"{check} requires A ≼ B, which does not hold for this pair")


def check_factorization(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """||A - B P_A|| for A ≼ B; zero up to rounding."""
    _require_order(a, b, tol, "The factorization A = B P_A")
    p_a = range_projection(a, tol)
    return spectral_norm(a.entries - b.entries @ p_a.entries)


def check_commutation(
    a: HermitianOperator, f: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> float:
    """||AF - FA|| for A ≼ F: an upper bound commutes with what it bounds."""
    _require_order(a, f, tol, "Commutation with an upper bound")
    return spectral_norm(a.entries @ f.entries - f.entries @ a.entries)


def check_upper_bound_restriction(
    a: HermitianOperator,
    f: HermitianOperator,
    delta: BorelSet,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> float:
    """
    Deviation of P^A(Δ) from its expression through an upper bound F:

    - 0 not in Δ:  P^A(Δ) = P^F(Δ) P_A
    - Δ = {0}:     P^A(Δ) = N(A)
    - 0 in Δ:      P^A(Δ) = P^F(Δ minus 0) P_A + N(A)
    """
    _require_order(a, f, tol, "The upper-bound restriction")
    measure_a = measure_of(a, tol)
    measure_f = measure_of(f, tol)
    lhs = evaluate(measure_a, delta, tol).entries
    null_a = null_projection(a, tol)
    range_a = null_a.complement()

    if not delta.contains(0.0):
        rhs = evaluate(measure_f, delta, tol).entries @ range_a.entries
        case = "zero excluded"
    elif delta.is_zero_singleton():
        rhs = null_a.entries
        case = "zero singleton"
    else:
        rhs = evaluate(measure_f, delta.without(0.0), tol).entries @ range_a.entries + null_a.entries
        case = "zero included"
    deviation = spectral_norm(lhs - rhs)
    logger.debug(f"upper-bound restriction on {delta} ({case}): deviation {deviation:.3e}")
    return deviation
