"""
Tests unitaires des fonctions d'onde liées.
"""

import json
from dataclasses import replace

import numpy as np
from django.conf import settings
from django.test import SimpleTestCase
from scipy.integrate import quad

from hyperwave.core.exceptions import DomainError, DivergenceError
from potential.models import PotentialParams
from spectra.services import energy_spectrum
from waveop.models import Branch
from waveop.services import recursion_coeffs
from boundstate.models import CoefficientSequence, BoundStateWavefunction
from boundstate.serializers import WavefunctionSummarySerializer
from boundstate.services import (
    expansion_coefficients, recursion_residual, select_truncation, build_wavefunction,
    evaluate_wavefunction, normalize, basis_norm_check, hamiltonian_residual
)


class TestExpansionCoefficients(SimpleTestCase):
    """Tests de la récurrence des coefficients P_n."""

    def test_first_terms_closed_form(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            mu = rng.uniform(0.1, 3.0)
            gamma = rng.uniform(-1.0, 1.0)
            C = rng.choice([-1.0, 1.0]) * rng.uniform(1.0, 100.0)
            a0, b0 = recursion_coeffs(Branch.PLUS, mu, 0)
            a1, b1 = recursion_coeffs(Branch.PLUS, mu, 1)
            values = expansion_coefficients(mu, gamma, C, N=3).values

            self.assertEqual(values[0], 1.0)
            np.testing.assert_allclose(values[1], -(gamma + a0 / C) / b0, rtol=1e-12)
            expected = (gamma + a0 / C) * (gamma + a1 / C) / (b0 * b1) - b0 / b1
            np.testing.assert_allclose(values[2], expected, rtol=1e-12, atol=1e-12)

    def test_forward_recursion_is_consistent(self):
        seq = expansion_coefficients(0.9, 0.3, 12.0, N=40)
        self.assertLess(recursion_residual(seq), 1e-10)

    def test_sign_flip_alternates_coefficients(self):
        seq = expansion_coefficients(1.3, 0.4, 25.0, N=60)
        mirrored = expansion_coefficients(1.3, -0.4, -25.0, N=60)
        n_star, _ = select_truncation(seq, on_spectrum=False)
        signs = (-1.0) ** np.arange(n_star)
        np.testing.assert_array_equal(mirrored.values[:n_star], signs * seq.values[:n_star])

    def test_zero_strength_rejected(self):
        with self.assertRaises(DomainError):
            expansion_coefficients(0.5, 0.2, 0.0)

    def test_values_read_only(self):
        seq = expansion_coefficients(0.5, 0.2, 3.0, N=10)
        with self.assertRaises(ValueError):
            seq.values[0] = 2.0


class TestSelectTruncation(SimpleTestCase):
    """Tests du choix de N* et de la détection de divergence."""

    def test_decaying_sequence_is_kept_whole(self):
        seq = CoefficientSequence(mu=1.0, gamma=0.0, C=1.0, values=0.1 ** np.arange(12))
        n_star, annotated = select_truncation(seq)
        self.assertEqual(n_star, 12)
        self.assertFalse(annotated.divergent)

    def test_minimum_before_regrowth(self):
        values = np.concatenate([0.01 ** np.arange(8), 1e-14 * 100.0 ** np.arange(1, 9)])
        seq = CoefficientSequence(mu=1.0, gamma=0.0, C=1.0, values=values)
        n_star, annotated = select_truncation(seq)
        self.assertEqual(n_star, 8)
        self.assertEqual(annotated.stable.size, 8)
        self.assertFalse(annotated.divergent)

    def test_growing_sequence_is_divergent(self):
        seq = CoefficientSequence(mu=1.0, gamma=0.0, C=1.0, values=2.0 ** np.arange(30))
        _, annotated = select_truncation(seq, on_spectrum=False)
        self.assertTrue(annotated.divergent)

    def test_shallow_minimum_is_divergent(self):
        values = np.concatenate([0.5 ** np.arange(10), 0.5 ** 9 * 10.0 ** np.arange(1, 8)])
        seq = CoefficientSequence(mu=1.0, gamma=0.0, C=1.0, values=values)
        _, annotated = select_truncation(seq, on_spectrum=False)
        self.assertTrue(annotated.divergent)


class TestBoundStates(SimpleTestCase):
    """Tests des fonctions d'onde normalisées sur des énergies du spectre."""

    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls.single = energy_spectrum(20.0, 0.2)
        cls.double = energy_spectrum(-10.0, 0.2)
        with open(settings.SAMPLE_DATA_DIR / 'oracle_pairs.json', encoding='utf-8') as handle:
            pairs = json.load(handle)['pairs']
        cls.suite = [energy_spectrum(pair['C'], pair['gamma']) for pair in pairs]

    def suite_states(self):
        for spectrum in self.suite:
            for n, epsilon in enumerate(spectrum.energies):
                yield spectrum, n, float(epsilon)

    def test_expected_state_counts(self):
        self.assertEqual(self.single.count, 1)
        self.assertEqual(self.double.count, 2)

    def test_normalization(self):
        for spectrum, n, epsilon in self.suite_states():
            with self.subTest(C=spectrum.C, gamma=spectrum.gamma, state=n):
                ws = build_wavefunction(spectrum.C, spectrum.gamma, epsilon)
                limit = 40.0 / ws.mu
                norm, _ = quad(lambda x: evaluate_wavefunction(ws, x) ** 2, -limit, limit,
                               points=[0.0], limit=500, epsrel=1e-11)
                self.assertAlmostEqual(norm, 1.0, delta=1e-8)

    def test_normalize_is_idempotent(self):
        ws = build_wavefunction(20.0, 0.2, float(self.single.energies[0]))
        self.assertAlmostEqual(normalize(ws), ws.omega, delta=1e-9 * ws.omega)

    def test_lambda_rescaling(self):
        epsilon = float(self.single.energies[0])
        unit = build_wavefunction(20.0, 0.2, epsilon)
        scaled = build_wavefunction(20.0, 0.2, epsilon, lambda_scale=2.0)
        x = np.linspace(-4.0, 4.0, 81)
        np.testing.assert_allclose(
            evaluate_wavefunction(scaled, x),
            np.sqrt(2.0) * evaluate_wavefunction(unit, 2.0 * x),
            rtol=1e-8, atol=1e-12
        )

    def test_hamiltonian_residual_small(self):
        for spectrum, n, epsilon in self.suite_states():
            with self.subTest(C=spectrum.C, gamma=spectrum.gamma, state=n):
                ws = build_wavefunction(spectrum.C, spectrum.gamma, epsilon)
                self.assertLess(hamiltonian_residual(ws), 1e-6)

    def test_residual_detects_wrong_energy(self):
        ws = build_wavefunction(20.0, 0.2, float(self.single.energies[0]))
        exact = hamiltonian_residual(ws)
        shifted = hamiltonian_residual(ws, epsilon=ws.epsilon * (1.0 + 1e-3))
        self.assertGreater(shifted, 10.0 * exact)

    def test_excited_state_has_one_node(self):
        ws = build_wavefunction(-10.0, 0.2, float(self.double.energies[1]))
        x = np.linspace(-30.0, 30.0, 6001)
        psi = evaluate_wavefunction(ws, x)
        significant = np.abs(psi) > 1e-6 * np.max(np.abs(psi))
        signs = np.sign(psi[significant])
        self.assertEqual(int(np.count_nonzero(signs[1:] != signs[:-1])), 1)

    def test_states_are_orthogonal(self):
        first, second = (build_wavefunction(-10.0, 0.2, float(e)) for e in self.double.energies)
        limit = 40.0 / min(first.mu, second.mu)
        overlap, _ = quad(lambda x: evaluate_wavefunction(first, x) * evaluate_wavefunction(second, x),
                          -limit, limit, points=[0.0], limit=500)
        self.assertLess(abs(overlap), 1e-6)

    def test_discrete_norm_matches_quadrature(self):
        for spectrum, n, epsilon in self.suite_states():
            with self.subTest(C=spectrum.C, gamma=spectrum.gamma, state=n):
                check = basis_norm_check(build_wavefunction(spectrum.C, spectrum.gamma, epsilon))
                self.assertLess(check['relative_difference'], 1e-8)

    def test_sign_flip_mirrors_wavefunction(self):
        epsilon = float(self.single.energies[0])
        ws = build_wavefunction(20.0, 0.2, epsilon)
        mirrored = build_wavefunction(-20.0, -0.2, epsilon)
        x = np.linspace(-10.0, 10.0, 201)
        np.testing.assert_allclose(
            evaluate_wavefunction(mirrored, -x), evaluate_wavefunction(ws, x), atol=1e-12
        )

    def test_off_spectrum_energy_diverges(self):
        epsilon = float(self.single.energies[0])
        with self.assertRaises(DivergenceError):
            build_wavefunction(20.0, 0.2, 0.9 * epsilon)

    def test_divergent_sequence_cannot_be_evaluated(self):
        ws = build_wavefunction(20.0, 0.2, float(self.single.energies[0]))
        broken = replace(ws, coeffs=replace(ws.coeffs, divergent=True))
        with self.assertRaises(DivergenceError):
            evaluate_wavefunction(broken, 0.0)

    def test_unbound_energy_rejected(self):
        with self.assertRaises(DomainError):
            build_wavefunction(20.0, 0.2, 0.1)

    def test_free_potential_residual_rejected(self):
        ws = build_wavefunction(20.0, 0.2, float(self.single.energies[0]))
        with self.assertRaises(DomainError):
            hamiltonian_residual(ws, params=PotentialParams(0.0, 0.2))

    def test_summary_serializer(self):
        ws = build_wavefunction(20.0, 0.2, float(self.single.energies[0]))
        data = WavefunctionSummarySerializer({
            'C': 20.0, 'gamma': 0.2, 'lambda_scale': 1.0, 'state': 0,
            'epsilon': ws.epsilon, 'mu': ws.mu, 'omega': ws.omega,
            'N_star': ws.n_star, 'residual': None,
        }).data
        self.assertEqual(data['N_star'], ws.n_star)
        self.assertIsNone(data['residual'])
        self.assertIsInstance(ws, BoundStateWavefunction)
