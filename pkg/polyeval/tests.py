"""
Tests unitaires des fonctions spéciales.
"""

import math

import numpy as np
from django.test import SimpleTestCase
from scipy.special import eval_gegenbauer, eval_legendre, gamma

from hyperwave.core.exceptions import DomainError
from polyeval.services import gegenbauer, gegenbauer_sequence, series_coefficient, prefactor


class TestGegenbauer(SimpleTestCase):
    """Tests de la récurrence de Gegenbauer."""

    def setUp(self):
        self.z = np.linspace(-1.0, 1.0, 41)

    def test_degree_zero_and_one(self):
        self.assertEqual(gegenbauer(0, 0.7, 0.3), 1.0)
        self.assertAlmostEqual(gegenbauer(1, 1.0, 0.5), 1.0, places=15)

    def test_half_order_is_legendre(self):
        np.testing.assert_allclose(gegenbauer(4, 0.5, self.z), eval_legendre(4, self.z), atol=1e-14)

    def test_matches_scipy(self):
        for lam in (0.5, 1.3, 3.7):
            for n in (2, 7, 25):
                np.testing.assert_allclose(
                    gegenbauer(n, lam, self.z), eval_gegenbauer(n, lam, self.z),
                    rtol=1e-10, atol=1e-10
                )

    def test_recurrence_residual(self):
        lam = 1.25
        seq = gegenbauer_sequence(202, lam, self.z)
        for n in range(1, 201):
            residual = (n + 1) * seq[n + 1] - 2 * (n + lam) * self.z * seq[n] + (n + 2 * lam - 1) * seq[n - 1]
            scale = np.maximum(np.maximum(np.abs(seq[n + 1]), np.abs(seq[n - 1])), 1.0)
            self.assertTrue(np.all(np.abs(residual) <= 1e-10 * scale))

    def test_sequence_matches_single_evaluation(self):
        seq = gegenbauer_sequence(12, 0.8, self.z)
        np.testing.assert_allclose(seq[11], gegenbauer(11, 0.8, self.z), rtol=1e-14)

    def test_parity(self):
        for n in range(0, 12):
            np.testing.assert_allclose(
                gegenbauer(n, 0.9, -self.z), (-1) ** n * gegenbauer(n, 0.9, self.z),
                rtol=1e-12, atol=1e-14
            )

    def test_endpoint_value(self):
        for two_lam in (1, 2, 3, 5):
            for n in range(0, 15):
                expected = math.comb(n + two_lam - 1, n)
                self.assertAlmostEqual(gegenbauer(n, two_lam / 2, 1.0) / expected, 1.0, places=12)

    def test_invalid_order(self):
        with self.assertRaises(DomainError):
            gegenbauer(3, -0.5, 0.2)
        with self.assertRaises(DomainError):
            gegenbauer(-1, 0.5, 0.2)


class TestNormalizationFactors(SimpleTestCase):
    """Tests des coefficients de la série et du préfacteur."""

    def test_series_coefficient_examples(self):
        self.assertAlmostEqual(series_coefficient(0, 0.0), math.sqrt(0.5), places=14)
        self.assertAlmostEqual(series_coefficient(5, 0.0), math.sqrt(5.5), places=13)
        self.assertAlmostEqual(series_coefficient(1, 0.5), 1.0, places=14)

    def test_series_coefficient_against_gamma(self):
        for mu in (0.1, 0.75, 2.5):
            for m in (0, 3, 40):
                direct = math.sqrt((m + mu + 0.5) * gamma(m + 1) / gamma(m + 2 * mu + 1))
                self.assertAlmostEqual(series_coefficient(m, mu) / direct, 1.0, places=12)

    def test_series_coefficient_no_overflow(self):
        values = series_coefficient(np.arange(0, 10001), 3.3)
        self.assertTrue(np.all(np.isfinite(values)))
        self.assertTrue(np.all(values > 0))

    def test_prefactor_examples(self):
        self.assertAlmostEqual(prefactor(0.0), 1.0, places=14)
        self.assertAlmostEqual(prefactor(0.5), math.sqrt(2 / math.pi), places=14)
        self.assertAlmostEqual(prefactor(1.5), 2 * math.sqrt(2 / math.pi), places=14)

    def test_domain(self):
        with self.assertRaises(DomainError):
            prefactor(-0.5)
        with self.assertRaises(DomainError):
            series_coefficient(2, -0.7)
