"""
Orthogonal projections and their lattice operations.

A projection is stored as its dense matrix; the orthonormal basis of its
range is derived lazily and reused by join and meet.
"""

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np
import scipy.linalg
from loguru import logger

from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import DimensionMismatchError, NotAProjectionError


def spectral_norm(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    return float(np.linalg.norm(matrix, ord=2))


@dataclass(frozen=True, eq=False)
class Projection:
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.ndim != 2 or entries.shape[0] != entries.shape[1]:
            raise NotAProjectionError(f"Projection must be square, got shape {entries.shape}")
        entries = (entries + entries.conj().T) / 2
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def checked(cls, entries, tol: Tolerances = DEFAULT_TOLERANCES) -> "Projection":
        matrix = np.asarray(entries, dtype=complex)
        if matrix.ndim == 2 and matrix.shape[0] == matrix.shape[1]:
            asym = float(np.max(np.abs(matrix - matrix.conj().T), initial=0.0))
            if asym > tol.idem:
                raise NotAProjectionError(f"Projection is not Hermitian (asymmetry {asym:.3e})")
        projection = cls(matrix)
        projection.validate(tol)
        return projection

    @classmethod
    def zero(cls, dim: int) -> "Projection":
        return cls(np.zeros((dim, dim), dtype=complex))

    @classmethod
    def identity(cls, dim: int) -> "Projection":
        return cls(np.eye(dim, dtype=complex))

    @classmethod
    def onto(cls, vectors, dim: Optional[int] = None, rank_tol: Optional[float] = None) -> "Projection":
        """Projection onto the span of the given column vectors."""
        columns = np.asarray(vectors, dtype=complex)
        if columns.ndim == 1:
            columns = columns[:, np.newaxis]
        n = columns.shape[0] if dim is None else dim
        if columns.size == 0:
            return cls.zero(n)
        basis = orthonormal_basis(columns, DEFAULT_TOLERANCES.rank_for(n) if rank_tol is None else rank_tol)
        return cls(basis @ basis.conj().T)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @cached_property
    def trace(self) -> float:
        return float(np.trace(self.entries).real)

    @cached_property
    def rank(self) -> int:
        return int(round(self.trace))

    @cached_property
    def basis(self) -> np.ndarray:
        """Orthonormal basis of the range, one column per dimension."""
        if self.rank == 0:
            return np.zeros((self.dim, 0), dtype=complex)
        values, vectors = scipy.linalg.eigh(self.entries)
        return vectors[:, values > 0.5]

    def complement(self) -> "Projection":
        return Projection(np.eye(self.dim) - self.entries)

    def validate(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        defect = spectral_norm(self.entries @ self.entries - self.entries)
        if defect > tol.idem:
            raise NotAProjectionError(f"||P^2 - P|| = {defect:.3e} exceeds {tol.idem:.3e}")
        if abs(self.trace - self.rank) > 0.1:
            raise NotAProjectionError(f"trace {self.trace:.6f} is not close to an integer rank")

    def distance(self, other: "Projection") -> float:
        _check_dims(self, other)
        return spectral_norm(self.entries - other.entries)

    def is_close(self, other: "Projection", tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return self.distance(other) <= tol.eq

    def __repr__(self) -> str:
        return f"Projection(dim={self.dim}, rank={self.rank})"


def _check_dims(p: Projection, q: Projection) -> None:
    if p.dim != q.dim:
        raise DimensionMismatchError(p.dim, q.dim, "projections")


def orthonormal_basis(columns: np.ndarray, rank_tol: float) -> np.ndarray:
    """Rank-revealing orthonormalization: left singular vectors above rank_tol."""
    if columns.shape[1] == 0:
        return columns
    u, s, _ = scipy.linalg.svd(columns, full_matrices=False)
    return u[:, s > rank_tol]


def join(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOLERANCES) -> Projection:
    """Projection onto range(P) + range(Q)."""
    _check_dims(p, q)
    stacked = np.hstack([p.basis, q.basis])
    if stacked.shape[1] == 0:
        return Projection.zero(p.dim)
    basis = orthonormal_basis(stacked, tol.rank_for(p.dim))
    logger.debug(f"join: ranks {p.rank} + {q.rank} -> {basis.shape[1]}")
    return Projection(basis @ basis.conj().T)


def meet(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOLERANCES) -> Projection:
    """Projection onto range(P) ∩ range(Q), as I - join(I-P, I-Q)."""
    _check_dims(p, q)
    return join(p.complement(), q.complement(), tol).complement()


def proj_leq(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    _check_dims(p, q)
    return spectral_norm(p.entries - q.entries @ p.entries) <= tol.orth


def overlap_norm(p: Projection, q: Projection) -> float:
    _check_dims(p, q)
    return spectral_norm(p.entries @ q.entries)


def is_orthogonal(p: Projection, q: Projection, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    return overlap_norm(p, q) <= tol.orth
