import math
import unittest

import numpy as np

from logicsup.borel import BorelSet
from logicsup.config import Tolerances
from logicsup.errors import (
    DimensionMismatchError,
    IllConditionedPairError,
    PreconditionError,
    RouteDisagreementError,
)
from logicsup.logic_order import (
    check_commutation,
    check_factorization,
    check_upper_bound_restriction,
    logic_leq,
    match_spectra,
)
from logicsup.operator_core import HermitianOperator, numeric_leq, spectral_decompose
from logicsup.projection_lattice import Projection, proj_leq
from logicsup.testgen_oracle import gen_pair_under_bound, haar_unitary
from tests.fixtures import commuting_chain, diag, pauli_x, random_bound, random_borel_set, random_operator


def rotated_pair(theta: float):
    """diag(1, 0) against the projection onto (cos θ, sin θ)."""
    v = np.array([math.cos(theta), math.sin(theta)], dtype=complex)
    return HermitianOperator.diagonal([1, 0]), HermitianOperator(np.outer(v, v.conj()))


class TestLogicLeq(unittest.TestCase):
    def test_examples(self):
        verdict = logic_leq(HermitianOperator.zero(2), pauli_x())
        self.assertTrue(verdict.holds)
        np.testing.assert_allclose(verdict.residual.entries, pauli_x().entries, atol=1e-12)

        verdict = logic_leq(HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([1, 2]))
        self.assertTrue(verdict.holds)
        self.assertTrue(verdict.route_algebraic)
        np.testing.assert_allclose(verdict.residual.entries, diag(0, 2), atol=1e-12)
        self.assertAlmostEqual(verdict.residual_norm, 2.0)

        verdict = logic_leq(HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([2, 2]))
        self.assertFalse(verdict.holds)
        self.assertFalse(verdict.route_algebraic)
        self.assertIsNone(verdict.residual)
        self.assertAlmostEqual(verdict.defect, 0.5)

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            logic_leq(HermitianOperator.zero(2), HermitianOperator.zero(3))

    def test_disagreement_inside_band_is_reported(self):
        tol = Tolerances(order=1e-8, orth=1e-6)
        a, b = rotated_pair(5e-8)
        verdict = logic_leq(a, b, tol)
        self.assertTrue(verdict.ambiguous)
        self.assertTrue(verdict.holds)
        self.assertFalse(verdict.route_algebraic)

    def test_disagreement_outside_band_raises(self):
        tol = Tolerances(order=1e-8, orth=1e-5)
        a, b = rotated_pair(5e-7)
        with self.assertRaises(RouteDisagreementError):
            logic_leq(a, b, tol)

    def test_large_norms_shrink_only_the_algebraic_defect(self):
        theta = 5e-8
        r = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
        a = HermitianOperator.diagonal([100, 0])
        b = HermitianOperator(r @ np.diag([100.0, 101.0]) @ r.T)
        verdict = logic_leq(a, b)
        self.assertTrue(verdict.ambiguous)
        self.assertTrue(verdict.route_algebraic)
        self.assertFalse(verdict.route_spectral)
        self.assertFalse(verdict.holds)
        self.assertLess(verdict.defect, 1e-9)
        self.assertAlmostEqual(verdict.spectral_defect, theta, delta=1e-9)

    def test_spectral_defect_is_recorded(self):
        verdict = logic_leq(HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([1, 2]))
        self.assertLess(verdict.spectral_defect, 1e-12)
        verdict = logic_leq(HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([2, 2]))
        self.assertEqual(verdict.spectral_defect, math.inf)

    def test_routes_agree_on_random_pairs(self):
        rng = np.random.default_rng(1234)
        held = 0
        for index in range(500):
            k = random_bound(rng)
            mode = index % 3
            if mode == 0:
                a, _ = gen_pair_under_bound(k, int(rng.integers(2**31)))
                b = k
            elif mode == 1:
                a, b = gen_pair_under_bound(k, int(rng.integers(2**31)))
            else:
                a, b = random_operator(k.dim, rng), k
            verdict = logic_leq(a, b)
            self.assertFalse(verdict.ambiguous)
            self.assertEqual(verdict.route_algebraic, verdict.route_spectral)
            held += verdict.holds
            if verdict.holds:
                self.assertLessEqual(verdict.defect, 1e-8)
                self.assertTrue((a + verdict.residual).is_close(b))
        self.assertGreaterEqual(held, 167)

    def test_partial_order_properties(self):
        rng = np.random.default_rng(99)
        for _ in range(60):
            dim = int(rng.integers(2, 9))
            a, b, c = commuting_chain(dim, rng)
            self.assertTrue(logic_leq(a, a).holds)
            self.assertTrue(logic_leq(a, b).holds)
            self.assertTrue(logic_leq(b, c).holds)
            self.assertTrue(logic_leq(a, c).holds)
            if logic_leq(b, a).holds:
                self.assertTrue(a.is_close(b))

    def test_antisymmetry_on_generated_pairs(self):
        rng = np.random.default_rng(5)
        for _ in range(60):
            k = random_bound(rng, 2, 8)
            a, _ = gen_pair_under_bound(k, int(rng.integers(2**31)))
            if logic_leq(k, a).holds:
                self.assertLessEqual(a.distance(k), 1e-9 * max(1.0, k.norm))

    def test_projections_agree_with_range_inclusion(self):
        rng = np.random.default_rng(12)
        for index in range(100):
            dim = int(rng.integers(1, 8))
            u = haar_unitary(dim, rng)
            r1, r2 = sorted(rng.integers(0, dim + 1, size=2))
            p = Projection.onto(u[:, :r1], dim)
            if index % 2:
                q = Projection.onto(u[:, :r2], dim)
            else:
                q = Projection.onto(haar_unitary(dim, rng)[:, :r2], dim)
            expected = proj_leq(p, q)
            if index % 2:
                self.assertTrue(expected)
            verdict = logic_leq(HermitianOperator.from_projection(p), HermitianOperator.from_projection(q))
            self.assertEqual(verdict.holds, expected)

    def test_orders_are_distinct(self):
        a = HermitianOperator.zero(3)
        b = -HermitianOperator.identity(3)
        self.assertTrue(logic_leq(a, b).holds)
        self.assertFalse(numeric_leq(a, b))


class TestMatchSpectra(unittest.TestCase):
    def test_injective_matching(self):
        first = spectral_decompose(HermitianOperator.diagonal([1, 2, 0]))
        second = spectral_decompose(HermitianOperator.diagonal([2, 3, -1]))
        self.assertEqual(match_spectra(first, second, 1e-7), {1: 1})

    def test_coarse_matching_is_rejected(self):
        first = spectral_decompose(HermitianOperator.diagonal([1, 1 + 3e-8, 0]), cluster_tol=1e-8)
        second = spectral_decompose(HermitianOperator.diagonal([1 + 1.5e-8, 0, 0]), cluster_tol=1e-8)
        self.assertEqual(len(first.points), 2)
        with self.assertRaises(IllConditionedPairError):
            match_spectra(first, second, 1e-7)


class TestUpperBoundIdentities(unittest.TestCase):
    def test_factorization_examples(self):
        self.assertLess(check_factorization(HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([1, 2])), 1e-12)
        self.assertLess(check_factorization(pauli_x(), pauli_x()), 1e-12)
        self.assertLess(check_factorization(HermitianOperator.zero(2), pauli_x()), 1e-12)

    def test_factorization_requires_order(self):
        with self.assertRaises(PreconditionError):
            check_factorization(HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([2, 2]))

    def test_factorization_on_generated_pairs(self):
        rng = np.random.default_rng(7)
        for _ in range(60):
            k = random_bound(rng)
            a, b = gen_pair_under_bound(k, int(rng.integers(2**31)))
            for lower in (a, b):
                self.assertLessEqual(check_factorization(lower, k), 1e-9 * max(1.0, k.norm))

    def test_restriction_examples(self):
        a = HermitianOperator.diagonal([1, 0])
        f = HermitianOperator.diagonal([1, 2])
        self.assertLess(check_upper_bound_restriction(a, f, BorelSet.interval(0.5, 1.5)), 1e-12)
        self.assertLess(check_upper_bound_restriction(a, f, BorelSet.points(0.0)), 1e-12)
        self.assertLess(check_upper_bound_restriction(a, f, BorelSet.interval(-1, 1, True, True)), 1e-12)

    def test_restriction_requires_order(self):
        with self.assertRaises(PreconditionError):
            check_upper_bound_restriction(
                HermitianOperator.diagonal([1, 0]), HermitianOperator.diagonal([2, 2]), BorelSet.real_line()
            )

    def test_restriction_on_generated_pairs_in_every_case(self):
        rng = np.random.default_rng(31)
        for case in ("excluded", "singleton", "included"):
            for _ in range(40):
                f = random_bound(rng, 2, 10)
                a, _ = gen_pair_under_bound(f, int(rng.integers(2**31)))
                delta = random_borel_set(rng, case)
                with self.subTest(case=case, delta=str(delta)):
                    self.assertLessEqual(check_upper_bound_restriction(a, f, delta), 1e-9)

    def test_upper_bound_commutes(self):
        rng = np.random.default_rng(17)
        for _ in range(40):
            k = random_bound(rng, 2, 10)
            a, _ = gen_pair_under_bound(k, int(rng.integers(2**31)))
            self.assertLessEqual(check_commutation(a, k), 1e-9 * max(1.0, k.norm) ** 2)

    def test_commutation_requires_order(self):
        with self.assertRaises(PreconditionError):
            check_commutation(HermitianOperator.diagonal([1, 0]), pauli_x())


if __name__ == "__main__":
    unittest.main()
