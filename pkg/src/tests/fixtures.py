import math

import numpy as np

from logicsup.borel import BorelSet, Interval
from logicsup.operator_core import HermitianOperator
from logicsup.projection_lattice import Projection
from logicsup.testgen_oracle import gen_random_hermitian, gen_random_spectrum, haar_unitary

# Borel-set boundaries sit on half-integers; generated spectra are integers,
# so membership never depends on the last bits of an eigenvalue.
CUTS = tuple(k + 0.5 for k in range(-4, 4))

E1 = np.array([1, 0, 0], dtype=complex)
E2 = np.array([0, 1, 0], dtype=complex)
E3 = np.array([0, 0, 1], dtype=complex)
DIAGONAL_U = (E1 + E2) / math.sqrt(2)


def pauli_x() -> HermitianOperator:
    return HermitianOperator(np.array([[0, 1], [1, 0]], dtype=complex))


def p_minus() -> np.ndarray:
    return 0.5 * np.array([[1, -1], [-1, 1]], dtype=complex)


def p_plus() -> np.ndarray:
    return 0.5 * np.array([[1, 1], [1, 1]], dtype=complex)


def rank_one(vector: np.ndarray, scale: float = 1.0) -> HermitianOperator:
    return HermitianOperator(scale * np.outer(vector, vector.conj()))


def diag(*values: float) -> np.ndarray:
    return np.diag(np.array(values, dtype=complex))


def random_operator(dim: int, rng: np.random.Generator) -> HermitianOperator:
    return gen_random_hermitian(dim, gen_random_spectrum(dim, rng), int(rng.integers(2**31)))


def random_bound(rng: np.random.Generator, low: int = 2, high: int = 16) -> HermitianOperator:
    dim = int(rng.integers(low, high + 1))
    return random_operator(dim, rng)


def random_psd(dim: int, rng: np.random.Generator) -> HermitianOperator:
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianOperator(g @ g.conj().T)


def commuting_chain(dim: int, rng: np.random.Generator):
    """K P1 P2 ≼ K P1 ≼ K with K, P1, P2 diagonal in one random basis."""
    u = haar_unitary(dim, rng)
    k = rng.choice([-2.0, -1.0, 0.0, 1.0, 2.0, 3.0], size=dim)
    m1 = rng.integers(0, 2, size=dim)
    m2 = rng.integers(0, 2, size=dim)

    def rotate(values):
        return HermitianOperator(u @ np.diag(values.astype(complex)) @ u.conj().T)

    return rotate(k * m1 * m2), rotate(k * m1), rotate(k)


def random_segments(rng: np.random.Generator):
    """Split the line at random half-integer cuts into open segments."""
    count = int(rng.integers(1, len(CUTS)))
    cuts = sorted(rng.choice(CUTS, size=count, replace=False))
    edges = [-math.inf] + [float(c) for c in cuts] + [math.inf]
    return [Interval(lo, hi) for lo, hi in zip(edges, edges[1:])]


def random_disjoint_pair(rng: np.random.Generator):
    """Two disjoint Borel sets, neither containing 0."""
    first, second = [], []
    for segment in random_segments(rng):
        slot = int(rng.integers(0, 3))
        if slot == 0:
            first.append(segment)
        elif slot == 1:
            second.append(segment)
    return BorelSet(tuple(first)).without(0.0), BorelSet(tuple(second)).without(0.0)


def random_borel_set(rng: np.random.Generator, case: str) -> BorelSet:
    """case is 'excluded' (0 not in Δ), 'singleton' (Δ = {0}) or 'included' (0 in Δ)."""
    if case == "singleton":
        return BorelSet.points(0.0)
    chosen = tuple(s for s in random_segments(rng) if rng.random() < 0.5)
    if case == "excluded":
        return BorelSet(chosen).without(0.0)
    return BorelSet(chosen, extra_points=(0.0,))


def random_projection(dim: int, rng: np.random.Generator) -> Projection:
    rank = int(rng.integers(0, dim + 1))
    return Projection.onto(haar_unitary(dim, rng)[:, :rank], dim)
