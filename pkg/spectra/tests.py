"""
Tests unitaires des spectres : solveur tridiagonal, spectre en paramètre,
forces critiques, comptage et inversion en énergie.
"""

import json
from unittest.mock import patch

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase

from hyperwave.core.exceptions import BranchTrackingError, DomainError, DegenerateBasisError
from waveop.models import Branch, TridiagMatrix
from waveop.services import build_t_gamma
from spectra.models import Side
from spectra.serializers import CriticalRowSerializer
from spectra.services.critical import _extremes
from spectra.services import (
    eigenvalues_tridiag, extreme_eigenvalues, refine_eigenvalue, sturm_count,
    parameter_spectrum, critical_strengths, count_bound_states,
    energy_spectrum, spectral_map
)


def load_table():
    with open(settings.SAMPLE_DATA_DIR / 'critical_table.json', encoding='utf-8') as handle:
        return json.load(handle)['values']


class TestEigensolver(SimpleTestCase):
    """Tests du solveur de valeurs propres."""

    def setUp(self):
        rng = np.random.default_rng(2024)
        self.random = TridiagMatrix(diag=rng.normal(size=50), off=rng.normal(size=49))

    def test_diagonal_matrix(self):
        matrix = TridiagMatrix(diag=[2.0, 2.0], off=[0.0])
        for method in ('lapack', 'sturm'):
            np.testing.assert_allclose(eigenvalues_tridiag(matrix, method=method), [2.0, 2.0], atol=1e-14)

    def test_two_by_two(self):
        matrix = TridiagMatrix(diag=[0.0, 0.0], off=[1.0])
        for method in ('lapack', 'sturm'):
            np.testing.assert_allclose(eigenvalues_tridiag(matrix, method=method), [-1.0, 1.0], atol=1e-14)

    def test_random_against_inverse_iteration(self):
        values = eigenvalues_tridiag(self.random)
        for value in values:
            self.assertAlmostEqual(refine_eigenvalue(self.random, value + 1e-9), value, delta=1e-12)

    def test_sturm_matches_lapack(self):
        np.testing.assert_allclose(
            eigenvalues_tridiag(self.random, method='sturm'),
            eigenvalues_tridiag(self.random), atol=1e-12
        )

    def test_sturm_count(self):
        values = eigenvalues_tridiag(self.random)
        shifts = 0.5 * (values[:-1] + values[1:])
        np.testing.assert_array_equal(
            sturm_count(self.random.diag, self.random.off, shifts), np.arange(1, 50)
        )

    def test_selection(self):
        full = eigenvalues_tridiag(self.random)
        np.testing.assert_allclose(eigenvalues_tridiag(self.random, (3, 7)), full[3:8], atol=1e-13)
        np.testing.assert_allclose(extreme_eigenvalues(self.random, 3, lowest=False), full[::-1][:3], atol=1e-13)

    def test_relative_accuracy_with_regularized_row(self):
        matrix = build_t_gamma(0.2, 1e-7, N=300)
        lowest = extreme_eigenvalues(matrix, 3, lowest=True)
        for value in lowest:
            self.assertAlmostEqual(refine_eigenvalue(matrix, value) / value, 1.0, places=11)

    def test_invalid_arguments(self):
        with self.assertRaises(DomainError):
            eigenvalues_tridiag(self.random, method='qr')
        with self.assertRaises(DomainError):
            eigenvalues_tridiag(self.random, (10, 60))


class TestParameterSpectrum(SimpleTestCase):
    """Tests du spectre en paramètre."""

    def test_gamma_flip_reflects_spectrum(self):
        plus = parameter_spectrum(-0.5, 0.3, N=300)
        minus = parameter_spectrum(-0.5, -0.3, N=300)
        a = plus.c_values[np.abs(plus.c_values) < 1e4]
        b = minus.c_values[np.abs(minus.c_values) < 1e4]
        np.testing.assert_allclose(np.sort(-a), b, rtol=1e-10)

    def test_eigenvalue_sign_flip_exact(self):
        for N in (10, 300):
            theta = eigenvalues_tridiag(build_t_gamma(0.3, 0.7, N=N))
            theta_flip = eigenvalues_tridiag(build_t_gamma(-0.3, 0.7, N=N))
            np.testing.assert_allclose(np.sort(-theta), theta_flip, atol=1e-12)

    def test_symmetric_when_gamma_zero(self):
        spectrum = parameter_spectrum(-1.0, 0.0, N=300)
        values = spectrum.c_values[np.abs(spectrum.c_values) < 1e4]
        np.testing.assert_allclose(np.sort(-values), values, rtol=1e-10)

    def test_convergence_flags(self):
        spectrum = parameter_spectrum(-1.0, 0.2, N=200)
        self.assertEqual(spectrum.truncation, 200)
        self.assertTrue(spectrum.converged.any())
        self.assertFalse(spectrum.converged.all())
        smallest = np.argsort(np.abs(spectrum.c_values))[:6]
        self.assertTrue(np.all(spectrum.converged[smallest]))
        self.assertTrue(np.all(np.diff(spectrum.c_values) > 0))

    def test_rows_rank_by_side(self):
        spectrum = parameter_spectrum(-1.0, 0.2, N=100)
        rows = list(spectrum.rows())
        positive = [row for row in rows if row['C'] > 0]
        self.assertEqual(positive[0]['k'], 0)
        self.assertEqual([row['k'] for row in positive], list(range(len(positive))))

    def test_minus_branch_reported(self):
        spectrum = parameter_spectrum(-0.25, 0.2, N=100, branch=Branch.MINUS, delta=1e-6)
        self.assertEqual(spectrum.branch, Branch.MINUS)
        self.assertEqual(spectrum.delta_mu, 1e-6)
        self.assertGreater(spectrum.accepted().size, 0)

    def test_domain(self):
        with self.assertRaises(DomainError):
            parameter_spectrum(0.0, 0.2, N=50)
        with self.assertRaises(DomainError):
            parameter_spectrum(0.5, 0.2, N=50)
        with self.assertRaises(DegenerateBasisError):
            parameter_spectrum(-1e-20, 0.2, N=50)


class TestCriticalStrengths(SimpleTestCase):
    """Tests des forces critiques contre la table de référence."""

    def test_table_reproduction(self):
        table = load_table()
        truncation = settings.HYPERWAVE_NUMERICS['TABLE_TRUNCATION']
        for gamma_key, expected in table.items():
            result = critical_strengths(float(gamma_key), 6, N=truncation)
            np.testing.assert_allclose(result.c_hat_positive, expected['positive'], rtol=1e-6)
            self.assertEqual(result.c_hat_negative[0], 0.0)
            np.testing.assert_allclose(result.c_hat_negative[1:], expected['negative'][1:], rtol=1e-6)

    def test_antisymmetry(self):
        for gamma in (0.2, 0.8):
            plus = critical_strengths(gamma, 6, N=400)
            minus = critical_strengths(-gamma, 6, N=400)
            np.testing.assert_allclose(minus.c_hat_positive, -plus.c_hat_negative, rtol=1e-10)
            np.testing.assert_allclose(minus.c_hat_negative, -plus.c_hat_positive, rtol=1e-10)

    def test_gamma_zero_has_zero_on_both_sides(self):
        result = critical_strengths(0.0, 3, N=400)
        self.assertEqual(result.c_hat_positive[0], 0.0)
        self.assertEqual(result.c_hat_negative[0], 0.0)
        np.testing.assert_allclose(result.c_hat_positive[1:], -result.c_hat_negative[1:], rtol=1e-10)

    def test_rows_and_serializer(self):
        result = critical_strengths(0.2, 2, N=200)
        rows = list(result.rows())
        self.assertEqual([(r['side'], r['n']) for r in rows],
                         [('positive', 0), ('positive', 1), ('negative', 0), ('negative', 1)])
        data = CriticalRowSerializer(rows[0]).data
        self.assertAlmostEqual(data['C_hat'], 9.4299992413, places=6)

    def test_invalid_arguments(self):
        with self.assertRaises(DomainError):
            critical_strengths(0.2, 0, N=100)
        with self.assertRaises(DomainError):
            critical_strengths(0.2, 3, N=100, delta=0.0)

    def test_quarter_step_only_when_estimates_disagree(self):
        delta = settings.HYPERWAVE_NUMERICS['DELTA_MU']
        reference = critical_strengths(0.2, 3, N=400)
        self.assertTrue(reference.diagnostics['quarter_step'])

        loose = {**settings.HYPERWAVE_NUMERICS, 'RICHARDSON_TOL': 1e-3}
        with self.settings(HYPERWAVE_NUMERICS=loose), \
                patch('spectra.services.critical._extremes', wraps=_extremes) as extremes:
            result = critical_strengths(0.2, 3, N=400)
        self.assertEqual(sorted(call.args[1] for call in extremes.call_args_list), [delta / 2.0, delta])
        self.assertFalse(result.diagnostics['quarter_step'])
        self.assertEqual(result.diagnostics['three_point_branches'], 0)
        np.testing.assert_allclose(result.c_hat_positive, reference.c_hat_positive, rtol=1e-5)
        np.testing.assert_allclose(result.c_hat_negative[1:], reference.c_hat_negative[1:], rtol=1e-5)


class TestCountBoundStates(SimpleTestCase):
    """Tests du comptage des états liés."""

    def test_examples(self):
        self.assertEqual(count_bound_states(20.0, 0.2, N=400), 1)
        self.assertEqual(count_bound_states(-10.0, 0.2, N=400), 2)
        self.assertEqual(count_bound_states(-1e-6, 0.2, N=400), 1)
        self.assertEqual(count_bound_states(5.0, 0.2, N=400), 0)
        self.assertEqual(count_bound_states(0.0, 0.2), 0)

    def test_oracle_pairs(self):
        with open(settings.SAMPLE_DATA_DIR / 'oracle_pairs.json', encoding='utf-8') as handle:
            pairs = json.load(handle)['pairs']
        for pair in pairs:
            self.assertEqual(count_bound_states(pair['C'], pair['gamma'], N=400), pair['count'], pair)

    def test_large_strength_grows_critical_set(self):
        self.assertEqual(count_bound_states(800.0, 0.2, N=400), 8)

    def test_count_limit(self):
        capped = {**settings.HYPERWAVE_NUMERICS, 'COUNT_LIMIT': 16}
        with self.settings(HYPERWAVE_NUMERICS=capped):
            with self.assertRaises(DomainError):
                count_bound_states(1e6, 0.2, N=400)


class TestEnergySpectrum(SimpleTestCase):
    """Tests de l'inversion en énergie."""

    def test_single_state(self):
        spectrum = energy_spectrum(20.0, 0.2, N=400)
        self.assertEqual(spectrum.count, 1)
        self.assertLess(spectrum.energies[0], 0.0)
        self.assertAlmostEqual(spectrum.mu_values[0] ** 2, -spectrum.energies[0], places=14)

    def test_inversion_consistency(self):
        for C, gamma in ((20.0, 0.2), (-10.0, 0.2)):
            spectrum = energy_spectrum(C, gamma, N=400)
            self.assertEqual(spectrum.count, count_bound_states(C, gamma, N=400))
            for epsilon in spectrum.energies:
                values = parameter_spectrum(float(epsilon), gamma, N=400).accepted()
                self.assertLess(np.min(np.abs(values - C)) / abs(C), 1e-8)

    def test_cpgamma_energies(self):
        a = energy_spectrum(-10.0, 0.2, N=400)
        b = energy_spectrum(10.0, -0.2, N=400)
        np.testing.assert_allclose(a.energies, b.energies, atol=1e-9)

    def test_no_bound_state(self):
        self.assertEqual(energy_spectrum(5.0, 0.2, N=400).count, 0)

    def test_zero_strength_rejected(self):
        with self.assertRaises(DomainError):
            energy_spectrum(0.0, 0.2)

    def test_energies_above_floor(self):
        spectrum = energy_spectrum(-45.0, 0.4, N=400)
        self.assertEqual(spectrum.count, 4)
        self.assertTrue(np.all(np.diff(spectrum.energies) > 0))

    def test_count_mismatch_raises(self):
        for wrong in (0, 2):
            with self.subTest(expected=wrong), \
                    patch('spectra.services.energy.count_bound_states', return_value=wrong):
                with self.assertRaises(BranchTrackingError):
                    energy_spectrum(20.0, 0.2, N=400)

    def test_branches_sized_by_scan(self):
        narrow = {**settings.HYPERWAVE_NUMERICS, 'ENERGY_INITIAL_BRANCHES': 1}
        with self.settings(HYPERWAVE_NUMERICS=narrow):
            spectrum = energy_spectrum(-45.0, 0.4, N=400)
        self.assertEqual(spectrum.count, 4)
        np.testing.assert_allclose(spectrum.energies, energy_spectrum(-45.0, 0.4, N=400).energies, atol=1e-10)

    def test_raised_floor_keeps_upper_states(self):
        full = energy_spectrum(-45.0, 0.4, N=400)
        floor = 0.5 * (full.energies[1] + full.energies[2])
        partial = energy_spectrum(-45.0, 0.4, eps_floor=floor, N=400)
        self.assertEqual(partial.count, 2)
        np.testing.assert_allclose(partial.energies, full.energies[2:], atol=1e-10)


class TestSpectralMap(SimpleTestCase):
    """Tests de la carte spectrale."""

    def test_zero_energy_limit_matches_critical(self):
        table = load_table()['0.2']
        result = spectral_map(0.2, [-1e-12], N=400, branches=3)
        curves = {(c.side, c.k): c.strength[0] for c in result.curves}
        for k in range(3):
            self.assertAlmostEqual(curves[(Side.POSITIVE, k)] / table['positive'][k], 1.0, delta=1e-3)
        self.assertLess(abs(curves[(Side.NEGATIVE, 0)]), 1e-3)
        self.assertAlmostEqual(curves[(Side.NEGATIVE, 1)] / table['negative'][1], 1.0, delta=1e-3)

    def test_monotone_branches(self):
        grid = -np.linspace(0.01, 2.0, 120)
        result = spectral_map(-0.5, grid, N=300, branches=3)
        for curve in result.curves:
            # ε décroissant -> |C| croissant
            self.assertTrue(np.all(np.diff(curve.epsilon) < 0))
            self.assertTrue(np.all(np.diff(np.abs(curve.strength)) > 0))

    def test_gamma_flip_reflects_map(self):
        grid = -np.linspace(0.1, 1.0, 46)
        a = spectral_map(0.4, grid, N=300, branches=2)
        b = spectral_map(-0.4, grid, N=300, branches=2)
        left = {(c.side, c.k): c.strength for c in a.curves}
        right = {(c.side, c.k): c.strength for c in b.curves}
        for k in range(2):
            np.testing.assert_allclose(right[(Side.NEGATIVE, k)], -left[(Side.POSITIVE, k)], rtol=1e-10)

    def test_rows(self):
        result = spectral_map(0.2, [-0.5], N=100, branches=1)
        rows = list(result.rows())
        self.assertEqual(len(rows), 2)
        self.assertEqual(set(rows[0]), {'gamma', 'side', 'k', 'epsilon', 'C'})

    def test_positive_energy_rejected(self):
        with self.assertRaises(DomainError):
            spectral_map(0.2, [-0.5, 0.1], N=100)
