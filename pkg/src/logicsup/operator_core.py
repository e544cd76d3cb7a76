"""
Hermitian operators and their finite spectral decompositions.

The zero threshold decides which eigenvalues count as 0 and therefore fixes
P_A and N(A). Every order and supremum decision downstream inherits it: the
logic order is discontinuous at 0, so an eigenvalue just above zero_tol and
one just below it give different answers.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg
from loguru import logger

from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import (
    ClusterAmbiguityError,
    DimensionMismatchError,
    InputError,
    InvariantViolationError,
    NotHermitianError,
)
from logicsup.projection_lattice import Projection, orthonormal_basis, spectral_norm


@dataclass(frozen=True, eq=False)
class HermitianOperator:
    """A bounded observable on a finite-dimensional Hilbert space."""

    entries: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1] or entries.shape[0] == 0:
            raise InputError(f"Operator must be a non-empty square matrix, got shape {entries.shape}")
        check_hermitian(entries)
        # rounding-level asymmetry only
        entries = (entries + entries.conj().T) / 2
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_matrix(
        cls, matrix, label: Optional[str] = None, tol: Tolerances = DEFAULT_TOLERANCES
    ) -> "HermitianOperator":
        """Validate hermiticity, then build the operator."""
        raw = np.asarray(matrix, dtype=complex)
        if raw.ndim != 2 or raw.shape[0] != raw.shape[1]:
            raise InputError(f"Operator must be a square matrix, got shape {raw.shape}")
        check_hermitian(raw, tol)
        return cls((raw + raw.conj().T) / 2, label)

    @classmethod
    def diagonal(cls, values: Sequence[float], label: Optional[str] = None) -> "HermitianOperator":
        return cls(np.diag(np.asarray(values, dtype=float)), label)

    @classmethod
    def zero(cls, dim: int) -> "HermitianOperator":
        return cls(np.zeros((dim, dim), dtype=complex))

    @classmethod
    def identity(cls, dim: int) -> "HermitianOperator":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def from_projection(cls, projection: Projection, scale: float = 1.0) -> "HermitianOperator":
        return cls(scale * projection.entries)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def eigenvalues(self) -> np.ndarray:
        return scipy.linalg.eigh(self.entries, eigvals_only=True)

    @cached_property
    def norm(self) -> float:
        return float(np.max(np.abs(self.eigenvalues)))

    def __add__(self, other: "HermitianOperator") -> "HermitianOperator":
        _check_dims(self, other)
        return HermitianOperator(self.entries + other.entries)

    def __sub__(self, other: "HermitianOperator") -> "HermitianOperator":
        _check_dims(self, other)
        return HermitianOperator(self.entries - other.entries)

    def __neg__(self) -> "HermitianOperator":
        return HermitianOperator(-self.entries)

    def __mul__(self, scale: float) -> "HermitianOperator":
        return HermitianOperator(float(scale) * self.entries)

    __rmul__ = __mul__

    def distance(self, other: "HermitianOperator") -> float:
        _check_dims(self, other)
        return spectral_norm(self.entries - other.entries)

    def is_close(self, other: "HermitianOperator", tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        """||X - Y|| <= eq_tol * max(1, ||X||, ||Y||)."""
        return self.distance(other) <= tol.eq * max(1.0, self.norm, other.norm)

    def __repr__(self) -> str:
        name = f" {self.label!r}" if self.label else ""
        return f"HermitianOperator{name}(dim={self.dim}, norm={self.norm:.6g})"


def _check_dims(a: HermitianOperator, b: HermitianOperator) -> None:
    if a.dim != b.dim:
        raise DimensionMismatchError(a.dim, b.dim)


def check_hermitian(matrix: np.ndarray, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    asymmetry = float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))
    scale = max(1.0, float(np.max(np.abs(matrix), initial=0.0)))
    if asymmetry > tol.herm * scale:
        raise NotHermitianError(asymmetry, tol.herm * scale)
    return asymmetry


class SpectralPoint(NamedTuple):
    value: float
    projection: Projection


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    points: Tuple[SpectralPoint, ...]
    zero_projection: Projection
    cluster_tol: float
    zero_tol: float = 0.0

    @property
    def dim(self) -> int:
        return self.zero_projection.dim

    @property
    def values(self) -> List[float]:
        return [point.value for point in self.points]

    def projection_at(self, value: float, match_tol: float) -> Optional[Projection]:
        """Eigenprojection of the point nearest to value, if within match_tol."""
        best = None
        for point in self.points:
            gap = abs(point.value - value)
            if gap <= match_tol and (best is None or gap < abs(best.value - value)):
                best = point
        return None if best is None else best.projection

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        values = self.values
        for low, high in zip(values, values[1:]):
            if high - low <= self.cluster_tol:
                raise InvariantViolationError(
                    "strictly increasing separated eigenvalues",
                    f"{low!r} and {high!r} are within {self.cluster_tol:.3e}",
                )
        for value in values:
            if abs(value) <= self.zero_tol:
                raise InvariantViolationError("nonzero eigenvalues", f"{value!r} lies within zero_tol")
        projections = [point.projection for point in self.points] + [self.zero_projection]
        for i, first in enumerate(projections):
            if first.dim != self.dim:
                raise InvariantViolationError("common dimension", f"{first.dim} != {self.dim}")
            for second in projections[i + 1:]:
                overlap = spectral_norm(first.entries @ second.entries)
                if overlap > tol.orth:
                    raise InvariantViolationError(
                        "mutually orthogonal eigenprojections", f"overlap {overlap:.3e}"
                    )
        total = sum((p.entries for p in projections), np.zeros((self.dim, self.dim), dtype=complex))
        defect = spectral_norm(total - np.eye(self.dim))
        if defect > tol.orth * self.dim:
            raise InvariantViolationError("resolution of identity", f"||sum - I|| = {defect:.3e}")


def _cluster(values: np.ndarray, cluster_tol: float) -> List[List[int]]:
    """Single-linkage grouping of sorted eigenvalues."""
    clusters: List[List[int]] = []
    for index, value in enumerate(values):
        if clusters and value - values[clusters[-1][-1]] <= cluster_tol:
            clusters[-1].append(index)
        else:
            clusters.append([index])
    return clusters


def spectral_decompose(
    a: HermitianOperator,
    cluster_tol: Optional[float] = None,
    zero_tol: Optional[float] = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> SpectralDecomposition:
    if not isinstance(a, HermitianOperator):
        a = HermitianOperator.from_matrix(a, tol=tol)
    values, vectors = scipy.linalg.eigh(a.entries)
    norm = float(np.max(np.abs(values)))
    cluster_tol = tol.cluster_for(norm) if cluster_tol is None else cluster_tol
    zero_tol = tol.zero_for(norm) if zero_tol is None else zero_tol
    if cluster_tol < 0 or zero_tol < 0:
        raise InputError("Tolerances must be nonnegative")

    clusters = _cluster(values, cluster_tol)
    for left, right in zip(clusters, clusters[1:]):
        gap = values[right[0]] - values[left[-1]]
        if gap <= 2 * cluster_tol:
            raise ClusterAmbiguityError(float(gap), cluster_tol)
    for members in clusters:
        diameter = values[members[-1]] - values[members[0]]
        if diameter > cluster_tol:
            raise ClusterAmbiguityError(float(diameter), cluster_tol)

    rank_tol = tol.rank_for(a.dim)
    points = []
    zero_blocks = []
    for members in clusters:
        representative = float(np.mean(values[members]))
        block = orthonormal_basis(vectors[:, members], rank_tol)
        if abs(representative) <= zero_tol:
            zero_blocks.append(block)
            continue
        points.append(SpectralPoint(representative, Projection(block @ block.conj().T)))

    if zero_blocks:
        zero_basis = orthonormal_basis(np.hstack(zero_blocks), rank_tol)
        zero_projection = Projection(zero_basis @ zero_basis.conj().T)
    else:
        zero_projection = Projection.zero(a.dim)

    logger.debug(
        f"decomposed dim={a.dim}: {len(points)} nonzero points, null rank {zero_projection.rank}, "
        f"cluster_tol={cluster_tol:.3e}"
    )
    return SpectralDecomposition(tuple(points), zero_projection, cluster_tol, zero_tol)


def null_projection(a: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES) -> Projection:
    return spectral_decompose(a, tol=tol).zero_projection


def range_projection(a: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES) -> Projection:
    return null_projection(a, tol).complement()


def synthesize(
    decomposition: SpectralDecomposition, tol: Tolerances = DEFAULT_TOLERANCES
) -> HermitianOperator:
    decomposition.validate(tol)
    total = np.zeros((decomposition.dim, decomposition.dim), dtype=complex)
    for value, projection in decomposition.points:
        total += value * projection.entries
    return HermitianOperator(total)


def numeric_leq(
    a: HermitianOperator, b: HermitianOperator, tol: Tolerances = DEFAULT_TOLERANCES
) -> bool:
    """Numerical order: B - A is positive semidefinite."""
    difference = b - a
    return float(difference.eigenvalues[0]) >= -tol.psd
