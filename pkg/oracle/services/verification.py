"""
Vérification croisée de la symétrie CPγ : (C, γ, x) -> (−C, −γ, −x).
"""

import logging
from typing import List, Optional

import numpy as np

from boundstate.services import build_wavefunction, evaluate_wavefunction
from potential.models import PotentialParams
from spectra.services import energy_spectrum
from ..models import Grid1D, VerificationReport
from .numerov import numerov_bound_states

logger = logging.getLogger(__name__)

MIRROR_HALF_WIDTH = 20.0
MIRROR_POINTS = 201


def _spectra_energies(params: PotentialParams) -> np.ndarray:
    if params.is_free:
        return np.array([])
    return energy_spectrum(params.strength, params.gamma).energies


def _oracle_energies(params: PotentialParams, grid: Optional[Grid1D]) -> np.ndarray:
    return np.array([state.epsilon for state in numerov_bound_states(params, grid=grid)])


def _max_difference(first: np.ndarray, second: np.ndarray) -> float:
    count = min(first.size, second.size)
    if count == 0:
        return 0.0
    return float(np.max(np.abs(first[:count] - second[:count])))


def _mirror_grid(scale: float) -> np.ndarray:
    """Grille exactement symétrique : x et −x sont tous deux des nœuds."""
    half = np.linspace(0.0, MIRROR_HALF_WIDTH / scale, MIRROR_POINTS)
    return np.concatenate([-half[:0:-1], half])


def _mirror_difference(params: PotentialParams, energies: np.ndarray) -> float:
    image = params.conjugate()
    x = _mirror_grid(params.lambda_scale)
    worst = 0.0
    for epsilon in energies:
        direct = build_wavefunction(params.strength, params.gamma, float(epsilon), params.lambda_scale)
        mirrored = build_wavefunction(image.strength, image.gamma, float(epsilon), image.lambda_scale)
        difference = np.abs(evaluate_wavefunction(mirrored, -x) - evaluate_wavefunction(direct, x))
        worst = max(worst, float(np.max(difference)))
    return worst


def cpgamma_verify(params: PotentialParams, tol: float = 1e-9,
                   grid: Optional[Grid1D] = None) -> VerificationReport:
    """
    Compare les spectres de (C, γ) et (−C, −γ) par la méthode tridiagonale et
    par Numerov, ainsi que les fonctions d'onde miroirs.

    Le rapport est symétrique : vérifier (C, γ) ou (−C, −γ) donne les mêmes écarts.
    """
    image = params.conjugate()
    logger.info(f"Vérification CPgamma : C={params.strength}, gamma={params.gamma}")

    spectra = [_spectra_energies(params), _spectra_energies(image)]
    oracle = [_oracle_energies(params, grid), _oracle_energies(image, grid)]
    counts = {
        'spectra': int(spectra[0].size),
        'spectra_conjugate': int(spectra[1].size),
        'oracle': int(oracle[0].size),
        'oracle_conjugate': int(oracle[1].size),
    }
    counts_match = len(set(counts.values())) == 1

    energy_diff = max(_max_difference(*spectra), _max_difference(*oracle))
    oracle_diff = max(_max_difference(spectra[0], oracle[0]), _max_difference(spectra[1], oracle[1]))

    mirror_diffs: List[float] = []
    if spectra[0].size:
        # énergie commune aux deux côtés
        shared = 0.5 * (spectra[0][:spectra[1].size] + spectra[1][:spectra[0].size])
        mirror_diffs.append(_mirror_difference(params, shared))
    wavefunction_diff = max(mirror_diffs, default=0.0)

    report = VerificationReport(
        strength=params.strength,
        gamma=params.gamma,
        tolerance=tol,
        counts=counts,
        max_energy_diff=energy_diff,
        max_oracle_diff=oracle_diff,
        max_wavefunction_diff=wavefunction_diff,
        counts_match=counts_match,
    )
    if not report.passed:
        logger.warning(f"Vérification CPgamma en échec : {report.to_dict()}")
    return report
