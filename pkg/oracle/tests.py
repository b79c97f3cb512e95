"""
Tests unitaires de l'oracle : grille, tir de Numerov, diffusion et
vérification CPγ.
"""

import json

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase
from scipy.integrate import simpson

from hyperwave.core.exceptions import GridPreconditionError, UsageError
from boundstate.services import build_wavefunction, evaluate_wavefunction
from potential.models import PotentialParams
from spectra.services import energy_spectrum
from oracle.models import Grid1D, ScatterPoint, VerificationReport
from oracle.serializers import ScatterPointSerializer, VerificationReportSerializer
from oracle.services import (
    check_grid, numerov_bound_states, numerov_count, numerov_eigenfunction,
    transmission_reflection, cpgamma_verify
)


def load_json(name):
    with open(settings.SAMPLE_DATA_DIR / name, encoding='utf-8') as handle:
        return json.load(handle)


class TestGrid(SimpleTestCase):
    """Tests de la grille et de ses préconditions."""

    def test_default_grid(self):
        grid = Grid1D.default()
        self.assertEqual(grid.xi_min, -25.0)
        self.assertEqual(grid.xi_max, 25.0)
        self.assertEqual(grid.size, 50001)
        nodes = grid.nodes()
        self.assertAlmostEqual(nodes[0], -25.0)
        self.assertAlmostEqual(nodes[-1], 25.0, places=9)

    def test_default_grid_widens_for_shallow_states(self):
        self.assertEqual(Grid1D.default(mu=0.8).xi_max, 50.0)
        self.assertEqual(Grid1D.default(mu=1e-4).xi_max, 200.0)

    def test_grid_must_bracket_origin(self):
        with self.assertRaises(GridPreconditionError):
            Grid1D(1.0, 5.0, 0.01)
        with self.assertRaises(GridPreconditionError):
            Grid1D(-5.0, 5.0, 0.0)

    def test_narrow_grid_rejected(self):
        with self.assertRaises(GridPreconditionError):
            check_grid(PotentialParams(20.0, 0.2), Grid1D(-3.0, 3.0, 1e-3))

    def test_coarse_step_rejected(self):
        with self.assertRaises(GridPreconditionError):
            check_grid(PotentialParams(1000.0, 0.8), Grid1D(-25.0, 25.0, 0.1))


class TestNumerov(SimpleTestCase):
    """Tests des états liés de l'oracle."""

    def test_free_potential_has_no_state(self):
        self.assertEqual(numerov_bound_states(PotentialParams(0.0, 0.3)), [])
        self.assertEqual(numerov_count(PotentialParams(0.0, 0.3)), 0)

    def test_single_state(self):
        states = numerov_bound_states(PotentialParams(20.0, 0.2))
        self.assertEqual(len(states), 1)
        self.assertEqual(states[0].nodes, 0)
        self.assertLess(states[0].epsilon, 0.0)

    def test_max_states(self):
        states = numerov_bound_states(PotentialParams(-45.0, 0.4), max_states=2)
        self.assertEqual([state.index for state in states], [0, 1])

    def test_parity_at_zero_gamma(self):
        direct = numerov_bound_states(PotentialParams(15.0, 0.0))
        flipped = numerov_bound_states(PotentialParams(-15.0, 0.0))
        self.assertEqual(len(direct), len(flipped))
        np.testing.assert_allclose([s.epsilon for s in direct], [s.epsilon for s in flipped], atol=1e-9)

    def test_grid_refinement_is_fourth_order(self):
        params = PotentialParams(20.0, 0.2)
        energies = [
            numerov_bound_states(params, max_states=1, grid=Grid1D(-25.0, 25.0, step), tol=1e-14)[0].epsilon
            for step in (0.02, 0.01, 0.005)
        ]
        ratio = abs(energies[0] - energies[1]) / abs(energies[1] - energies[2])
        self.assertGreater(ratio, 12.0)
        self.assertLess(ratio, 20.0)

    def test_oracle_pair_suite(self):
        for pair in load_json('oracle_pairs.json')['pairs']:
            with self.subTest(C=pair['C'], gamma=pair['gamma']):
                states = numerov_bound_states(PotentialParams(pair['C'], pair['gamma']))
                spectrum = energy_spectrum(pair['C'], pair['gamma'])
                self.assertEqual(len(states), pair['count'])
                self.assertEqual(spectrum.count, pair['count'])
                self.assertEqual([s.nodes for s in states], list(range(pair['count'])))
                np.testing.assert_allclose([s.epsilon for s in states], spectrum.energies, rtol=0, atol=1e-6)

    def test_new_state_appears_at_critical_strength(self):
        table = load_json('critical_table.json')['values']['0.2']
        for side in ('positive', 'negative'):
            for n in (1, 2):
                critical = table[side][n]
                with self.subTest(side=side, n=n):
                    self.assertEqual(numerov_count(PotentialParams(0.999 * critical, 0.2)), n)
                    self.assertEqual(numerov_count(PotentialParams(1.001 * critical, 0.2)), n + 1)

    def test_eigenfunction_overlap_with_series(self):
        for pair in load_json('oracle_pairs.json')['pairs']:
            C, gamma = pair['C'], pair['gamma']
            params = PotentialParams(C, gamma)
            for state, epsilon in zip(numerov_bound_states(params), energy_spectrum(C, gamma).energies):
                with self.subTest(C=C, gamma=gamma, state=state.index):
                    x, psi = numerov_eigenfunction(params, state.epsilon)
                    series = evaluate_wavefunction(build_wavefunction(C, gamma, float(epsilon)), x)
                    overlap = simpson(psi * series, x=x) / np.sqrt(simpson(series * series, x=x))
                    self.assertGreater(abs(overlap), 0.999999)

    def test_eigenfunction_normalized_in_x(self):
        params = PotentialParams(20.0, 0.2, lambda_scale=2.0)
        epsilon = numerov_bound_states(params)[0].epsilon
        x, psi = numerov_eigenfunction(params, epsilon)
        self.assertAlmostEqual(simpson(psi * psi, x=x), 1.0, places=10)
        self.assertGreater(psi[np.argmax(np.abs(psi))], 0.0)

    def test_eigenfunction_mirrors_under_cpgamma(self):
        for pair in load_json('oracle_pairs.json')['pairs']:
            params = PotentialParams(pair['C'], pair['gamma'])
            for state in numerov_bound_states(params):
                with self.subTest(C=pair['C'], gamma=pair['gamma'], state=state.index):
                    grid = Grid1D.default(mu=float(np.sqrt(-state.epsilon)))
                    _, psi = numerov_eigenfunction(params, state.epsilon, grid)
                    _, image = numerov_eigenfunction(params.conjugate(), state.epsilon, grid)
                    np.testing.assert_allclose(image[::-1], psi, atol=1e-6 * np.max(np.abs(psi)))


class TestScattering(SimpleTestCase):
    """Tests des coefficients de réflexion et de transmission."""

    def test_free_particle_transmits(self):
        for point in transmission_reflection(PotentialParams(0.0, 0.2), [0.1, 1.0, 50.0]):
            self.assertAlmostEqual(point.T2, 1.0, delta=1e-9)
            self.assertAlmostEqual(point.R2, 0.0, delta=1e-9)

    def test_flux_conservation(self):
        eps_grid = np.linspace(0.05, 40.0, 200)
        points = transmission_reflection(PotentialParams(20.0, 0.2), eps_grid)
        self.assertEqual(len(points), 200)
        for point in points:
            self.assertLess(point.flux_error, 1e-8)
            self.assertGreaterEqual(point.T2, 0.0)
            self.assertLessEqual(point.R2, 1.0 + 1e-8)

    def test_high_energy_transmission(self):
        low, mid, high = transmission_reflection(PotentialParams(20.0, 0.2), [0.5, 20.0, 200.0])
        self.assertLess(low.T2, mid.T2)
        self.assertLess(mid.T2, high.T2)
        self.assertGreater(high.T2, 0.999)

    def test_order_preserved(self):
        eps_grid = [5.0, 0.1, 30.0]
        points = transmission_reflection(PotentialParams(8.0, -0.4), eps_grid)
        self.assertEqual([p.epsilon for p in points], eps_grid)

    def test_non_positive_energy_rejected(self):
        with self.assertRaises(UsageError):
            transmission_reflection(PotentialParams(20.0, 0.2), [1.0, 0.0])
        with self.assertRaises(UsageError):
            transmission_reflection(PotentialParams(20.0, 0.2), [])

    def test_serializer(self):
        data = ScatterPointSerializer(ScatterPoint(epsilon=1.0, R2=0.25, T2=0.75)).data
        self.assertEqual(dict(data), {'epsilon': 1.0, 'R2': 0.25, 'T2': 0.75})


class TestVerification(SimpleTestCase):
    """Tests de la vérification CPγ."""

    def test_report_passes(self):
        report = cpgamma_verify(PotentialParams(20.0, 0.2))
        self.assertTrue(report.counts_match)
        self.assertLess(report.max_energy_diff, 1e-9)
        self.assertLess(report.max_oracle_diff, 1e-6)
        self.assertLess(report.max_wavefunction_diff, 1e-8)
        self.assertTrue(report.passed)

    def test_report_is_symmetric(self):
        direct = cpgamma_verify(PotentialParams(-10.0, 0.2))
        image = cpgamma_verify(PotentialParams(10.0, -0.2))
        self.assertEqual(direct.max_energy_diff, image.max_energy_diff)
        self.assertEqual(direct.max_oracle_diff, image.max_oracle_diff)
        self.assertEqual(direct.max_wavefunction_diff, image.max_wavefunction_diff)

    def test_free_potential(self):
        report = cpgamma_verify(PotentialParams(0.0, 0.5))
        self.assertTrue(report.counts_match)
        self.assertEqual(report.max_energy_diff, 0.0)

    def test_serializer(self):
        report = cpgamma_verify(PotentialParams(0.0, 0.5))
        data = VerificationReportSerializer(report).data
        self.assertTrue(data['counts_match'])
        self.assertTrue(data['passed'])
        self.assertEqual(data['counts']['oracle'], 0)

    def test_oracle_disagreement_fails_report(self):
        fields = dict(
            strength=20.0, gamma=0.2, tolerance=1e-9,
            counts={'spectra': 1, 'spectra_conjugate': 1, 'oracle': 1, 'oracle_conjugate': 1},
            max_energy_diff=0.0, max_wavefunction_diff=0.0, counts_match=True,
        )
        self.assertTrue(VerificationReport(max_oracle_diff=1e-8, **fields).passed)
        failing = VerificationReport(max_oracle_diff=1e-3, **fields)
        self.assertFalse(failing.passed)
        self.assertFalse(failing.to_dict()['passed'])
