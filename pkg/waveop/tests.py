"""
Tests unitaires de l'opérateur d'onde tridiagonal.
"""

import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import quad

from hyperwave.core.exceptions import DomainError, DegenerateBasisError
from potential.models import PotentialParams
from potential.services import evaluate_dimensionless
from waveop.models import Branch, BasisSpec, TridiagMatrix
from waveop.serializers import TridiagMatrixSerializer
from waveop.services import (
    recursion_coeffs, recursion_arrays, y_matrix_element, j_matrix_element,
    build_t_gamma, basis_function, basis_functions, basis_derivative
)


class TestRecursionCoefficients(SimpleTestCase):
    """Tests des coefficients a_n, b_n."""

    def test_plus_branch_first_row(self):
        for mu in (0.1, 0.9, 3.0):
            a0, b0 = recursion_coeffs(Branch.PLUS, mu, 0)
            self.assertAlmostEqual(a0, mu * (mu + 1), places=14)
            self.assertAlmostEqual(b0, 1 / math.sqrt(2 * mu + 3), places=14)

    def test_minus_branch_a1(self):
        self.assertEqual(recursion_coeffs(Branch.MINUS, 0.4, 1)[0], 2.0)

    def test_branches_coincide_at_zero(self):
        a_plus, b_plus = recursion_arrays(Branch.PLUS, 0.0, 30)
        a_minus, b_minus = recursion_arrays(Branch.MINUS, 0.0, 30)
        np.testing.assert_allclose(a_plus, a_minus)
        np.testing.assert_allclose(b_plus, b_minus, rtol=1e-15)

    def test_b_matches_y_element(self):
        for mu in (0.05, 0.7, 4.2):
            _, b = recursion_arrays(Branch.PLUS, mu, 101)
            for n in range(101):
                self.assertAlmostEqual(y_matrix_element(mu, mu, n + 1, n) / b[n], 1.0, places=13)

    def test_minus_b_matches_y_element(self):
        mu = 0.35
        _, b = recursion_arrays(Branch.MINUS, mu, 40)
        for n in range(40):
            self.assertAlmostEqual(y_matrix_element(mu, -mu, n, n + 1) / b[n], 1.0, places=13)

    def test_out_of_domain(self):
        with self.assertRaises(DomainError):
            recursion_coeffs(Branch.MINUS, 1.2, 0)
        with self.assertRaises(DomainError):
            recursion_coeffs(Branch.PLUS, -0.7, 0)
        with self.assertRaises(DomainError):
            BasisSpec(mu=-1.0)

    def test_basis_spec_from_energy(self):
        plus = BasisSpec.from_energy(-0.36)
        self.assertAlmostEqual(plus.mu, 0.6, places=15)
        self.assertAlmostEqual(plus.nu, 0.6, places=15)
        self.assertAlmostEqual(plus.alpha, 0.3, places=15)
        self.assertAlmostEqual(plus.beta, 0.3, places=15)
        minus = BasisSpec.from_energy(-0.36, Branch.MINUS)
        self.assertAlmostEqual(minus.alpha, -0.3, places=15)
        with self.assertRaises(DomainError):
            BasisSpec.from_energy(0.5)
        with self.assertRaises(DomainError):
            BasisSpec.from_energy(-4.0, Branch.MINUS)


class TestMatrixElements(SimpleTestCase):
    """Tests de ⟨n|y|m⟩ et J_nm."""

    def test_band_structure(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            mu, nu = rng.uniform(0.01, 5.0, size=2)
            n = int(rng.integers(0, 30))
            m = n + int(rng.integers(2, 6))
            self.assertEqual(y_matrix_element(mu, nu, n, m), 0.0)
            self.assertEqual(j_matrix_element(m, n, 3.0, 0.4, mu, nu), 0.0)

    def test_diagonal_vanishes_on_branches(self):
        self.assertEqual(y_matrix_element(0.8, 0.8, 3, 3), 0.0)
        self.assertEqual(y_matrix_element(0.3, -0.3, 0, 0), 0.0)

    def test_first_offdiagonal(self):
        mu = 1.7
        self.assertAlmostEqual(y_matrix_element(mu, mu, 1, 0), 1 / math.sqrt(2 * mu + 3), places=14)

    def test_free_diagonal(self):
        mu = 0.6
        self.assertAlmostEqual(j_matrix_element(0, 0, 0.0, 0.4, mu, mu), mu * (mu + 1), places=14)

    def test_symmetry(self):
        self.assertEqual(
            j_matrix_element(0, 1, 5.0, 0.2, 0.9, 0.9),
            j_matrix_element(1, 0, 5.0, 0.2, 0.9, 0.9)
        )

    def test_against_quadrature(self):
        mu, gamma, C = 0.8, 0.3, 6.0
        params = PotentialParams(C, gamma)

        def integrand(xi, n, m):
            kinetic = basis_derivative(n, mu, xi) * basis_derivative(m, mu, xi)
            return kinetic + basis_function(n, mu, xi) * (
                evaluate_dimensionless(params, xi) + mu * mu
            ) * basis_function(m, mu, xi)

        for n in range(4):
            for m in range(4):
                value, _ = quad(integrand, -60, 60, args=(n, m), points=[0.0], limit=400,
                                epsabs=1e-12, epsrel=1e-12)
                expected = j_matrix_element(n, m, C, gamma, mu, mu)
                self.assertAlmostEqual(value, expected, delta=1e-8)

    def test_basis_orthonormal_in_y_measure(self):
        mu = 1.1
        for n in range(4):
            for m in range(4):
                value, _ = quad(
                    lambda xi: basis_function(n, mu, xi) * basis_function(m, mu, xi) / math.cosh(xi) ** 2,
                    -60, 60, limit=200
                )
                self.assertAlmostEqual(value, 1.0 if n == m else 0.0, places=10)

    def test_basis_functions_batch(self):
        xi = np.linspace(-5, 5, 11)
        batch = basis_functions(6, 0.45, xi)
        self.assertEqual(batch.shape, (6, 11))
        np.testing.assert_allclose(batch[5], basis_function(5, 0.45, xi), rtol=1e-14)


class TestTGamma(SimpleTestCase):
    """Tests de la matrice T_gamma."""

    def test_zero_gamma_has_zero_diagonal(self):
        matrix = build_t_gamma(0.0, 0.5, N=50)
        self.assertTrue(np.all(matrix.diag == 0.0))
        self.assertEqual(matrix.size, 50)

    def test_entries_decay_as_inverse_square(self):
        gamma, mu, N = 0.6, 0.3, 100000
        matrix = build_t_gamma(gamma, mu, N=N)
        n = np.arange(1, N + 1, dtype=float)
        self.assertLess(np.max(np.abs(matrix.diag) * n ** 2), 10.0)
        self.assertLess(np.max(np.abs(matrix.off) * n[:-1] ** 2), 10.0)
        self.assertTrue(np.all(matrix.off > 0))

    def test_gamma_sign_flip_similarity(self):
        for N in (2, 17, 400):
            t_plus = build_t_gamma(0.45, 0.2, N=N)
            t_minus = build_t_gamma(-0.45, 0.2, N=N)
            d = np.diag((-1.0) ** np.arange(N))
            np.testing.assert_allclose(t_minus.to_dense(), -d @ t_plus.to_dense() @ d, atol=1e-15)
            eig_plus = np.linalg.eigvalsh(t_plus.to_dense())
            eig_minus = np.linalg.eigvalsh(t_minus.to_dense())
            scale = max(1.0, np.abs(eig_plus).max())
            np.testing.assert_allclose(np.sort(-eig_plus), eig_minus, atol=1e-12 * scale)

    def test_degenerate_basis(self):
        with self.assertRaises(DegenerateBasisError):
            build_t_gamma(0.2, 0.0, N=10)
        with self.assertRaises(DegenerateBasisError):
            build_t_gamma(0.2, 0.3, branch=Branch.MINUS, N=10, delta=0.0)

    def test_minus_branch_regularized(self):
        matrix = build_t_gamma(0.2, 0.3, branch=Branch.MINUS, N=10, delta=1e-3)
        self.assertEqual(matrix.delta_mu, 1e-3)
        self.assertAlmostEqual(matrix.diag[0], 0.2 / (1e-3 * (1 + 1e-3)), places=6)
        self.assertAlmostEqual(matrix.diag[1], 0.1, places=15)

    def test_small_truncation_rejected(self):
        with self.assertRaises(DomainError):
            build_t_gamma(0.2, 0.5, N=1)

    def test_matrix_is_read_only(self):
        matrix = TridiagMatrix(diag=[2.0, 2.0], off=[0.0])
        with self.assertRaises(ValueError):
            matrix.diag[0] = 1.0
        self.assertEqual(matrix.to_dict(), {'diag': [2.0, 2.0], 'off': [0.0]})

    def test_serializer(self):
        data = TridiagMatrixSerializer(build_t_gamma(0.2, 0.5, N=3)).data
        self.assertEqual(data['branch'], 'plus')
        self.assertEqual(len(data['diag']), 3)
        self.assertEqual(len(data['off']), 2)
