"""
Tests unitaires du potentiel hyperbolique.
"""

import math

import numpy as np
from django.test import SimpleTestCase
from scipy.integrate import quad

from hyperwave.core.exceptions import DomainError, UsageError
from potential.models import PotentialParams, PotentialKind
from potential.services import (
    evaluate, evaluate_dimensionless, extrema, classify, sample_grid, potential_minimum
)


class TestEvaluate(SimpleTestCase):
    """Tests de l'évaluation du potentiel."""

    def test_origin_value(self):
        self.assertAlmostEqual(evaluate(PotentialParams(10.0, 0.2), 0.0), 2.0, places=14)

    def test_decay(self):
        params = PotentialParams(37.0, 0.6)
        self.assertLess(abs(evaluate(params, 800.0)), 1e-300)
        self.assertLess(abs(evaluate(params, -800.0)), 1e-300)
        self.assertTrue(np.isfinite(evaluate(params, 1e6)))

    def test_known_value(self):
        x = math.atanh(1 / math.sqrt(3))
        self.assertAlmostEqual(evaluate(PotentialParams(1.0, 0.0), x), 2 / (3 * math.sqrt(3)), places=14)

    def test_lambda_rescales_coordinate(self):
        params = PotentialParams(3.0, 0.4, lambda_scale=2.5)
        x = np.linspace(-3, 3, 13)
        np.testing.assert_allclose(evaluate(params, x), evaluate_dimensionless(params, 2.5 * x))

    def test_cpgamma_invariance(self):
        x = np.linspace(-8, 8, 161)
        params = PotentialParams(7.5, 0.3)
        np.testing.assert_allclose(evaluate(params.conjugate(), -x), evaluate(params, x), rtol=1e-14)

    def test_gamma_reflection_antisymmetry(self):
        x = np.linspace(-8, 8, 161)
        params = PotentialParams(7.5, 0.3)
        np.testing.assert_allclose(evaluate(PotentialParams(7.5, -0.3), -x), -evaluate(params, x), rtol=1e-14)

    def test_integral(self):
        params = PotentialParams(4.0, 0.35)
        value, _ = quad(lambda xi: evaluate_dimensionless(params, xi), -40, 40, limit=200)
        self.assertAlmostEqual(value, 2 * 0.35 * 4.0, places=9)

    def test_invalid_lambda(self):
        with self.assertRaises(DomainError):
            PotentialParams(1.0, 0.0, lambda_scale=0.0)


class TestExtrema(SimpleTestCase):
    """Tests des extrema."""

    def test_symmetric_pair(self):
        plus, minus = extrema(PotentialParams(1.0, 0.0))
        self.assertAlmostEqual(plus.x, -math.atanh(1 / math.sqrt(3)), places=14)
        self.assertAlmostEqual(minus.x, math.atanh(1 / math.sqrt(3)), places=14)
        self.assertAlmostEqual(plus.value, -2 / (3 * math.sqrt(3)), places=14)
        self.assertAlmostEqual(minus.value, 2 / (3 * math.sqrt(3)), places=14)

    def test_stationary_points(self):
        params = PotentialParams(1.0, 0.5)
        h = 1e-5
        for ext in extrema(params):
            derivative = (evaluate(params, ext.x + h) - evaluate(params, ext.x - h)) / (2 * h)
            self.assertLess(abs(derivative), 1e-8)

    def test_absent_extremum(self):
        plus, minus = extrema(PotentialParams(-1.0, 2.0))
        self.assertFalse(plus.present)
        self.assertTrue(minus.present)

    def test_potential_minimum(self):
        self.assertAlmostEqual(potential_minimum(PotentialParams(1.0, 0.0)), -2 / (3 * math.sqrt(3)), places=14)
        self.assertEqual(potential_minimum(PotentialParams(0.0, 0.3)), 0.0)
        grid = evaluate_dimensionless(PotentialParams(-3.0, 2.0), np.linspace(-10, 10, 20001))
        self.assertAlmostEqual(potential_minimum(PotentialParams(-3.0, 2.0)), grid.min(), places=6)


class TestClassify(SimpleTestCase):
    """Tests de la classification."""

    def test_examples(self):
        self.assertEqual(classify(PotentialParams(5.0, 0.3)).kind, PotentialKind.SINGLE_WAVE)
        self.assertEqual(classify(PotentialParams(5.0, 1.5)).kind, PotentialKind.BARRIER)
        self.assertEqual(classify(PotentialParams(-5.0, 1.5)).kind, PotentialKind.WELL)

    def test_zero_strength_is_degenerate_well(self):
        result = classify(PotentialParams(0.0, 0.3))
        self.assertEqual(result.kind, PotentialKind.WELL)
        self.assertTrue(result.degenerate)


class TestSampleGrid(SimpleTestCase):
    """Tests de l'échantillonnage."""

    def test_antisymmetric_when_gamma_zero(self):
        table = sample_grid(PotentialParams(2.0, 0.0), -5.0, 5.0, 101)
        np.testing.assert_allclose(table['U'].to_numpy(), -table['U'].to_numpy()[::-1], atol=1e-13)

    def test_two_points_are_endpoints(self):
        table = sample_grid(PotentialParams(1.0, 0.0), -6.0, 6.0, 2)
        self.assertEqual(list(table.columns), ['x', 'U'])
        self.assertEqual(table['x'].tolist(), [-6.0, 6.0])
        self.assertTrue(np.all(np.abs(table['U']) < 1e-4))

    def test_mirror_under_gamma_flip(self):
        a = sample_grid(PotentialParams(3.0, 0.9), -4.0, 4.0, 81)
        b = sample_grid(PotentialParams(3.0, -0.9), -4.0, 4.0, 81)
        np.testing.assert_allclose(b['U'].to_numpy()[::-1], -a['U'].to_numpy(), atol=1e-13)

    def test_invalid_range(self):
        with self.assertRaises(UsageError):
            sample_grid(PotentialParams(1.0, 0.0), 1.0, -1.0, 10)
        with self.assertRaises(UsageError):
            sample_grid(PotentialParams(1.0, 0.0), -1.0, 1.0, 1)
