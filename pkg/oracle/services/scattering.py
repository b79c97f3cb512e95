"""
Coefficients de réflexion et de transmission par intégration de Numerov
complexe, vectorisée sur les énergies.

On part à droite d'une onde sortante e^{ik̃ξ} d'amplitude 1 et on intègre
vers la gauche, où la solution est décomposée en onde incidente A·e^{ik̃ξ}
et réfléchie B·e^{−ik̃ξ}. k̃ est le nombre d'onde du schéma discret libre,
de sorte que le cas C = 0 est exact.
"""

import logging
from typing import List, Sequence

import numpy as np
from django.conf import settings

from hyperwave.core.exceptions import UsageError, GridPreconditionError
from hyperwave.core.services import ComputeExecutor
from potential.models import PotentialParams
from ..models import Grid1D, ScatterPoint
from .numerov import check_grid

logger = logging.getLogger(__name__)

ENERGY_CHUNK = 64
FLUX_TOLERANCE = 1e-8


def _discrete_wavenumber(shift: np.ndarray, step: float) -> np.ndarray:
    """k̃ avec cos(k̃h) = 1 + shift (shift < 0 pour ε > 0)."""
    half = 1.0 + shift
    if np.any(np.abs(half) >= 1.0):
        raise GridPreconditionError(
            f"Énergie trop grande pour le pas h={step} : cos(k̃h) hors de (−1, 1)",
            {'step': step}
        )
    return np.arccos(half) / step


def _amplitudes(potential: np.ndarray, xi: np.ndarray, step: float, energies: np.ndarray):
    h2 = step * step
    g_edge = h2 * (potential[-1] - energies)
    k_right = _discrete_wavenumber(0.5 * g_edge / (1.0 - g_edge / 12.0), step)
    g_edge = h2 * (potential[0] - energies)
    k_left = _discrete_wavenumber(0.5 * g_edge / (1.0 - g_edge / 12.0), step)

    n = xi.size
    nxt = np.exp(1j * k_right * xi[-1]) * (1.0 - h2 * (potential[-1] - energies) / 12.0)
    cur = np.exp(1j * k_right * xi[-2]) * (1.0 - h2 * (potential[-2] - energies) / 12.0)
    for i in range(n - 2, 0, -1):
        g = h2 * (potential[i] - energies)
        prev = (2.0 + g / (1.0 - g / 12.0)) * cur - nxt
        nxt, cur = cur, prev

    psi0 = cur / (1.0 - h2 * (potential[0] - energies) / 12.0)
    psi1 = nxt / (1.0 - h2 * (potential[1] - energies) / 12.0)
    s = np.exp(1j * k_left * step)
    incoming = (psi1 - psi0 / s) / (s - 1.0 / s)
    reflected = psi0 - incoming
    # ψ0 = a + b, ψ1 = a·s + b/s avec a = A e^{ik̃ξ0}, b = B e^{−ik̃ξ0}
    transmitted2 = (k_right / k_left) / np.abs(incoming) ** 2
    reflected2 = np.abs(reflected) ** 2 / np.abs(incoming) ** 2
    return reflected2, transmitted2


def transmission_reflection(params: PotentialParams, eps_grid: Sequence[float],
                            grid: Grid1D = None) -> List[ScatterPoint]:
    """
    |R|² et |T|² sur une grille d'énergies positives.

    Args:
        params: Paramètres du potentiel
        eps_grid: Énergies adimensionnées (> 0)
        grid: Grille en ξ (Grid1D.default() par défaut)

    Returns:
        Liste de ScatterPoint dans l'ordre de eps_grid
    """
    energies = np.asarray(eps_grid, dtype=float).ravel()
    if energies.size == 0:
        raise UsageError("Grille d'énergie vide")
    if np.any(~np.isfinite(energies)) or np.any(energies <= 0):
        raise UsageError(
            "La diffusion exige epsilon > 0 pour tous les points de la grille",
            {'min_epsilon': float(np.nanmin(energies))}
        )

    grid = grid or Grid1D.default()
    potential = check_grid(params, grid)
    xi = grid.nodes()
    logger.info(f"Diffusion : C={params.strength}, gamma={params.gamma}, {energies.size} énergies, "
                f"{xi.size} nœuds")

    chunks = np.array_split(energies, int(np.ceil(energies.size / ENERGY_CHUNK)))
    parts = ComputeExecutor().map_ordered(lambda part: _amplitudes(potential, xi, grid.step, part), chunks)
    reflected2 = np.concatenate([p[0] for p in parts])
    transmitted2 = np.concatenate([p[1] for p in parts])

    points = [ScatterPoint(epsilon=float(e), R2=float(r), T2=float(t))
              for e, r, t in zip(energies, reflected2, transmitted2)]
    worst = max(point.flux_error for point in points)
    if worst > FLUX_TOLERANCE:
        logger.warning(f"Conservation du flux violée : |R2+T2−1| = {worst:.3g} (pas trop grand ?)")
    return points
