"""
Oracles and generators that exercise the order and supremum machinery
without leaning on it.

Spectra come first and bases second: random-entry matrices almost never
have repeated or zero eigenvalues, and those are the cases where the logic
order is interesting.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from logicsup.config import DEFAULT_TOLERANCES, Tolerances
from logicsup.errors import DimensionMismatchError, InputError, SpectrumSpecError
from logicsup.operator_core import HermitianOperator, spectral_decompose
from logicsup.projection_lattice import Projection, spectral_norm

Spectrum = Sequence[Tuple[float, int]]

SPECTRUM_VALUES = (-2.0, -1.0, 1.0, 2.0, 3.0)


def diagonal_sup_oracle(a: Sequence[float], b: Sequence[float]) -> Optional[np.ndarray]:
    """
    Supremum of diag(a) and diag(b) read off index by index.

    For diagonal operators AC = 0 splits into a_i * c_i = 0, so an upper
    bound must copy every nonzero entry of either side. It exists iff each
    index has a_i = b_i, a_i = 0 or b_i = 0.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise DimensionMismatchError(len(a), len(b), "diagonals")
    result = np.empty_like(a)
    for i, (x, y) in enumerate(zip(a, b)):
        if x != 0 and y != 0 and x != y:
            return None
        result[i] = x if x != 0 else y
    return result


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    gaussian = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = scipy.linalg.qr(gaussian)
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def expand_spectrum(spectrum: Spectrum) -> np.ndarray:
    return np.array([float(value) for value, count in spectrum for _ in range(int(count))])


def gen_random_hermitian(dim: int, spectrum: Spectrum, seed: int) -> HermitianOperator:
    if any(int(count) < 0 for _, count in spectrum):
        raise SpectrumSpecError("Multiplicities must be nonnegative")
    total = sum(int(count) for _, count in spectrum)
    if total != dim:
        raise SpectrumSpecError(f"Multiplicities sum to {total}, expected {dim}")
    rng = np.random.default_rng(seed)
    u = haar_unitary(dim, rng)
    return HermitianOperator(u @ np.diag(expand_spectrum(spectrum)) @ u.conj().T)


def gen_random_spectrum(dim: int, rng: np.random.Generator) -> List[Tuple[float, int]]:
    """Spectrum with a repeated value and with 0, each with probability 1/2."""
    values: List[float] = []
    if dim > 1 and rng.random() < 0.5:
        values.append(0.0)
    while len(values) < dim:
        values.append(float(rng.choice(SPECTRUM_VALUES)))
    if dim > 1 and rng.random() < 0.5:
        values[-1] = values[0]
    counts = {}
    for value in values:
        counts[value] = counts.get(value, 0) + 1
    return sorted(counts.items())


def gen_random_projection(dim: int, rank: int, seed: int) -> Projection:
    if not 0 <= rank <= dim:
        raise InputError(f"Rank {rank} out of range for dimension {dim}")
    rng = np.random.default_rng(seed)
    return Projection.onto(haar_unitary(dim, rng)[:, :rank], dim)


def _random_subprojection(basis: np.ndarray, rng: np.random.Generator) -> np.ndarray:
    size = basis.shape[1]
    if size == 0:
        return np.zeros((basis.shape[0], basis.shape[0]), dtype=complex)
    rank = int(rng.integers(0, size + 1))
    if rank == 0:
        return np.zeros((basis.shape[0], basis.shape[0]), dtype=complex)
    mixing = haar_unitary(size, rng)[:, :rank]
    sub = basis @ mixing
    return sub @ sub.conj().T


def pair_from_projections(
    k: HermitianOperator,
    p: Projection,
    q: Projection,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> Tuple[HermitianOperator, HermitianOperator]:
    """(K P, K Q) for projections commuting with K; both sit below K."""
    for name, projection in (("P", p), ("Q", q)):
        if projection.dim != k.dim:
            raise DimensionMismatchError(projection.dim, k.dim, f"{name} and K")
        commutator = spectral_norm(k.entries @ projection.entries - projection.entries @ k.entries)
        if commutator > tol.eq * max(1.0, k.norm):
            raise InputError(f"{name} does not commute with K (||[K, {name}]|| = {commutator:.3e})")
    return _hermitian_product(k, p), _hermitian_product(k, q)


def _hermitian_product(k: HermitianOperator, p: Projection) -> HermitianOperator:
    """K P for P commuting with K, taken as (KP + PK) / 2."""
    return HermitianOperator((k.entries @ p.entries + p.entries @ k.entries) / 2)


def gen_pair_under_bound(
    k: HermitianOperator, seed: int, tol: Tolerances = DEFAULT_TOLERANCES
) -> Tuple[HermitianOperator, HermitianOperator]:
    """
    Random A, B with A ≼ K and B ≼ K.

    P and Q are sums of random sub-projections of each eigenspace of K
    (null space included), so they commute with K and C = K(I - P)
    satisfies (KP) C = K^2 P (I - P) = 0.
    """
    rng = np.random.default_rng(seed)
    decomposition = spectral_decompose(k, tol=tol)
    blocks = [point.projection.basis for point in decomposition.points]
    blocks.append(decomposition.zero_projection.basis)
    p = sum((_random_subprojection(block, rng) for block in blocks), np.zeros((k.dim, k.dim), dtype=complex))
    q = sum((_random_subprojection(block, rng) for block in blocks), np.zeros((k.dim, k.dim), dtype=complex))
    return pair_from_projections(k, Projection(p), Projection(q), tol)


def gen_pair_without_sup(dim: int, seed: int) -> Tuple[HermitianOperator, HermitianOperator]:
    """λ·proj(u) and μ·proj(v) with λ != μ nonzero and generic u, v."""
    rng = np.random.default_rng(seed)
    lam, mu = rng.choice(SPECTRUM_VALUES, size=2, replace=False)
    u = haar_unitary(dim, rng)[:, 0]
    v = haar_unitary(dim, rng)[:, 0]
    a = float(lam) * np.outer(u, u.conj())
    b = float(mu) * np.outer(v, v.conj())
    return HermitianOperator(a), HermitianOperator(b)


def parse_spectrum_spec(text: str) -> List[Tuple[float, int]]:
    """``"0:1,1:2"`` -> [(0.0, 1), (1.0, 2)]."""
    spectrum = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        value, sep, count = item.rpartition(":")
        if not sep:
            raise SpectrumSpecError(f"Spectrum entry {item!r} is not of the form value:multiplicity")
        try:
            spectrum.append((float(value), int(count)))
        except ValueError:
            raise SpectrumSpecError(f"Spectrum entry {item!r} is not of the form value:multiplicity")
        if spectrum[-1][1] <= 0:
            raise SpectrumSpecError(f"Multiplicity in {item!r} must be positive")
    if not spectrum:
        raise SpectrumSpecError("Empty spectrum specification")
    return spectrum
