import unittest

import numpy as np

from logicsup.errors import DimensionMismatchError, NotAProjectionError
from logicsup.projection_lattice import (
    Projection,
    is_orthogonal,
    join,
    meet,
    orthonormal_basis,
    overlap_norm,
    proj_leq,
    spectral_norm,
)
from tests.fixtures import DIAGONAL_U, E1, E2, diag, random_projection


class TestProjection(unittest.TestCase):
    def test_checked_rejects_non_idempotent(self):
        with self.assertRaises(NotAProjectionError):
            Projection.checked(diag(1, 0.5))

    def test_checked_rejects_non_hermitian(self):
        with self.assertRaises(NotAProjectionError):
            Projection.checked(np.array([[1, 1], [0, 0]], dtype=complex))

    def test_onto_and_basis(self):
        p = Projection.onto(np.column_stack([E1, E1 + E2]))
        np.testing.assert_allclose(p.entries, diag(1, 1, 0), atol=1e-12)
        self.assertEqual(p.rank, 2)
        self.assertEqual(p.basis.shape, (3, 2))
        self.assertEqual(Projection.onto(np.zeros((3, 0)), 3).rank, 0)

    def test_complement(self):
        np.testing.assert_allclose(Projection(diag(1, 0, 0)).complement().entries, diag(0, 1, 1), atol=0)

    def test_orthonormal_basis_drops_dependent_columns(self):
        columns = np.column_stack([E1, 2 * E1, E2])
        basis = orthonormal_basis(columns, 1e-10)
        self.assertEqual(basis.shape[1], 2)
        np.testing.assert_allclose(basis.conj().T @ basis, np.eye(2), atol=1e-12)


class TestJoinMeet(unittest.TestCase):
    def test_examples(self):
        p1 = Projection(diag(1, 0, 0))
        p2 = Projection(diag(0, 1, 0))
        np.testing.assert_allclose(join(p1, p2).entries, diag(1, 1, 0), atol=1e-12)
        self.assertEqual(meet(p1, p2).rank, 0)

        pu = Projection.onto(DIAGONAL_U)
        np.testing.assert_allclose(join(p1, pu).entries, diag(1, 1, 0), atol=1e-12)
        self.assertLess(spectral_norm(meet(p1, pu).entries), 1e-12)

        p12 = Projection(diag(1, 1, 0))
        p23 = Projection(diag(0, 1, 1))
        np.testing.assert_allclose(meet(p12, p23).entries, diag(0, 1, 0), atol=1e-12)
        np.testing.assert_allclose(join(p12, p23).entries, np.eye(3), atol=1e-12)

    def test_units(self):
        rng = np.random.default_rng(1)
        for _ in range(10):
            p = random_projection(4, rng)
            self.assertTrue(join(p, Projection.zero(4)).is_close(p))
            self.assertTrue(meet(p, Projection.identity(4)).is_close(p))
            self.assertTrue(proj_leq(Projection.zero(4), p))
            self.assertTrue(is_orthogonal(p, p.complement()))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            join(Projection.zero(2), Projection.zero(3))

    def test_lattice_identities(self):
        rng = np.random.default_rng(21)
        for _ in range(60):
            dim = int(rng.integers(1, 7))
            p, q, r = (random_projection(dim, rng) for _ in range(3))

            self.assertTrue(join(p, q).is_close(join(q, p)))
            self.assertTrue(meet(p, q).is_close(meet(q, p)))
            self.assertTrue(join(join(p, q), r).is_close(join(p, join(q, r))))
            self.assertTrue(meet(meet(p, q), r).is_close(meet(p, meet(q, r))))
            self.assertTrue(join(p, p).is_close(p))
            self.assertTrue(meet(p, p).is_close(p))
            self.assertTrue(join(p, meet(p, q)).is_close(p))
            self.assertTrue(meet(p, join(p, q)).is_close(p))

            # De Morgan
            self.assertTrue(join(p, q).complement().is_close(meet(p.complement(), q.complement())))

            # dim(U + V) + dim(U ∩ V) = dim U + dim V
            self.assertEqual(join(p, q).rank + meet(p, q).rank, p.rank + q.rank)

            self.assertTrue(proj_leq(p, join(p, q)))
            self.assertTrue(proj_leq(meet(p, q), q))
            self.assertLessEqual(join(p, q).rank, min(dim, p.rank + q.rank))

    def test_commuting_sum_identity(self):
        rng = np.random.default_rng(8)
        for _ in range(30):
            dim = int(rng.integers(1, 7))
            u = np.linalg.qr(rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim)))[0]
            m1 = rng.integers(0, 2, size=dim)
            m2 = rng.integers(0, 2, size=dim)
            p = Projection(u @ np.diag(m1.astype(complex)) @ u.conj().T)
            q = Projection(u @ np.diag(m2.astype(complex)) @ u.conj().T)
            total = join(p, q).entries + meet(p, q).entries
            self.assertLess(spectral_norm(total - p.entries - q.entries), 1e-9)


class TestOrderAndOverlap(unittest.TestCase):
    def test_proj_leq(self):
        self.assertTrue(proj_leq(Projection(diag(1, 0, 0)), Projection(diag(1, 1, 0))))
        self.assertTrue(proj_leq(Projection(diag(1, 0)), Projection.identity(2)))
        self.assertFalse(proj_leq(Projection(diag(1, 1, 0)), Projection(diag(1, 0, 0))))
        self.assertFalse(proj_leq(Projection.onto(DIAGONAL_U), Projection(diag(1, 0, 0))))

    def test_overlap_and_orthogonality(self):
        p1 = Projection(diag(1, 0, 0))
        p2 = Projection(diag(0, 1, 0))
        self.assertTrue(is_orthogonal(p1, p2))
        self.assertAlmostEqual(overlap_norm(p1, Projection.onto(DIAGONAL_U)), 1 / np.sqrt(2), places=12)
        self.assertFalse(is_orthogonal(p1, Projection.onto(DIAGONAL_U)))


if __name__ == "__main__":
    unittest.main()
