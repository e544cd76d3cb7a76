"""
Finitely supported projection-valued measures.

With finite spectra every Borel set only matters through the support points
it contains, so a measure is a sorted list of (point, projection) pairs and
evaluation is a sum over the members.
"""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Tuple

import numpy as np

from logicsup.borel import BorelSet
from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import InvariantViolationError
from logicsup.operator_core import (
    HermitianOperator,
    SpectralPoint,
    spectral_decompose,
)
from logicsup.projection_lattice import Projection, spectral_norm


@dataclass(frozen=True, eq=False)
class FiniteSpectralMeasure:
    support: Tuple[SpectralPoint, ...]
    dim: int

    def __post_init__(self):
        ordered = tuple(sorted((SpectralPoint(float(v), p) for v, p in self.support), key=lambda s: s.value))
        object.__setattr__(self, "support", ordered)

    @property
    def points(self) -> List[float]:
        return [point.value for point in self.support]

    def projection_at(self, value: float, match_tol: float = 0.0) -> Optional[Projection]:
        for point in self.support:
            if abs(point.value - value) <= match_tol:
                return point.projection
        return None

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES, cluster_tol: Optional[float] = None) -> None:
        values = self.points
        if sum(1 for v in values if v == 0.0) > 1:
            raise InvariantViolationError("at most one zero point", f"support {values}")
        separation = tol.cluster_for(max((abs(v) for v in values), default=0.0)) if cluster_tol is None else cluster_tol
        for low, high in zip(values, values[1:]):
            if high - low <= separation:
                raise InvariantViolationError(
                    "distinct support points", f"{low!r} and {high!r} closer than {separation:.3e}"
                )
        for i, first in enumerate(self.support):
            if first.projection.dim != self.dim:
                raise InvariantViolationError("common dimension", f"{first.projection.dim} != {self.dim}")
            for second in self.support[i + 1:]:
                overlap = spectral_norm(first.projection.entries @ second.projection.entries)
                if overlap > tol.orth:
                    raise InvariantViolationError(
                        "mutually orthogonal projections",
                        f"points {first.value!r} and {second.value!r} overlap with norm {overlap:.3e}",
                    )
        total = self._sum(p.projection for p in self.support)
        defect = spectral_norm(total - np.eye(self.dim))
        if defect > tol.orth * self.dim:
            raise InvariantViolationError("completeness E(R) = I", f"||sum - I|| = {defect:.3e}")

    def _sum(self, projections: Iterable[Projection]) -> np.ndarray:
        total = np.zeros((self.dim, self.dim), dtype=complex)
        for projection in projections:
            total = total + projection.entries
        return total

    def __repr__(self) -> str:
        body = ", ".join(f"{p.value:g}:rank {p.projection.rank}" for p in self.support)
        return f"FiniteSpectralMeasure(dim={self.dim}, {{{body}}})"


def measure_of(a: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES) -> FiniteSpectralMeasure:
    decomposition = spectral_decompose(a, tol=tol)
    support = list(decomposition.points)
    if decomposition.zero_projection.rank > 0:
        support.append(SpectralPoint(0.0, decomposition.zero_projection))
    return FiniteSpectralMeasure(tuple(support), a.dim)


def evaluate(
    measure: FiniteSpectralMeasure, delta: BorelSet, tol: Tolerances = DEFAULT_TOLERANCES
) -> Projection:
    members = [point.projection for point in measure.support if delta.contains(point.value)]
    if not members:
        return Projection.zero(measure.dim)
    if len(members) == 1:
        return members[0]
    return Projection.checked(measure._sum(members), tol)


def resolution(
    measure: FiniteSpectralMeasure, lam: float, tol: Tolerances = DEFAULT_TOLERANCES
) -> Projection:
    """E_lambda = E((-inf, lambda])."""
    return evaluate(measure, BorelSet.half_line(lam), tol)


def measure_to_operator(
    measure: FiniteSpectralMeasure, tol: Tolerances = DEFAULT_TOLERANCES
) -> HermitianOperator:
    measure.validate(tol)
    total = np.zeros((measure.dim, measure.dim), dtype=complex)
    for value, projection in measure.support:
        total += value * projection.entries
    return HermitianOperator(total)
