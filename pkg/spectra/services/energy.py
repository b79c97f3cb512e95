"""
Inversion du spectre en paramètre : énergies liées à (C, γ) fixés et
courbes C_k(ε) de la carte spectrale.
"""

import logging
from typing import List, Optional, Sequence

import numpy as np
from django.conf import settings
from scipy.optimize import brentq

from hyperwave.core.exceptions import DomainError, BranchTrackingError
from hyperwave.core.services import ComputeExecutor
from potential.models import PotentialParams
from potential.services import potential_minimum
from ..models import EnergySpectrum, Side, SpectralCurve, SpectralMap
from .critical import count_bound_states
from .parameter import mu_from_energy, side_eigenvalues

logger = logging.getLogger(__name__)


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def _energy_grid(eps_floor: float, eps_ceiling: float, points: int) -> np.ndarray:
    """Grille log-espacée en −ε, de eps_floor vers eps_ceiling (ordre croissant de ε)."""
    return -np.geomspace(-eps_floor, -eps_ceiling, points)


def _crossings(residual: np.ndarray) -> np.ndarray:
    return np.nonzero(np.sign(residual[:-1]) * np.sign(residual[1:]) < 0)[0]


def _scan_branches(grid: np.ndarray, gamma: float, side: Side, target: float, N: int,
                   initial: int) -> np.ndarray:
    """
    Balaye θ_k(ε) − target en doublant le nombre de branches jusqu'à ce que
    la dernière ne croise plus la cible sur la grille.

    Returns:
        tableau (points, branches) des résidus
    """
    executor = ComputeExecutor()
    branches = max(1, min(initial, N))
    while True:
        residual = np.array(executor.map_ordered(
            lambda eps: side_eigenvalues(eps, gamma, branches, side, N), grid
        )) - target
        top = residual[:, -1]
        if _crossings(top).size == 0 and not np.any(top == 0):
            return residual
        if branches >= N:
            raise BranchTrackingError(
                f"Les {branches} branches de T_gamma croisent toutes -1/C : augmenter N",
                {'branches': branches, 'N': N}
            )
        branches = min(2 * branches, N)
        logger.debug(f"Balayage étendu à {branches} branches")


def energy_spectrum(C: float, gamma: float, eps_floor: Optional[float] = None,
                    N: Optional[int] = None, delta: Optional[float] = None) -> EnergySpectrum:
    """
    Énergies liées du potentiel (C, γ).

    Chaque branche θ_k(ε) est balayée sur une grille log-espacée de
    (eps_floor, −δ²) ; les changements de signe de θ_k(ε) + 1/C sont
    raffinés par brentq. Le nombre de branches vient du balayage seul, puis
    le nombre de racines est confronté à count_bound_states.

    Args:
        C: Force (non nulle)
        gamma: Paramètre de forme
        eps_floor: Borne inférieure (minimum du potentiel par défaut)
        N: Troncature
        delta: Régularisation en μ, fixe le plafond −δ² du balayage

    Returns:
        EnergySpectrum (éventuellement vide)

    Raises:
        BranchTrackingError: si le nombre de racines contredit les forces critiques
    """
    if C == 0:
        raise DomainError("C = 0 : le potentiel libre n'a pas d'état lié", {'C': C})

    numerics = _numerics()
    N = int(N if N is not None else numerics.get('TRUNCATION', 4000))
    delta = float(delta if delta is not None else numerics.get('DELTA_MU', 1e-7))
    points = int(numerics.get('ENERGY_SCAN_POINTS', 48))
    xtol = numerics.get('ENERGY_TOL', 1e-12)

    minimum = potential_minimum(PotentialParams(C, gamma))
    if eps_floor is None:
        eps_floor = minimum
    # au-dessus du minimum, des états peuvent légitimement manquer
    full_range = eps_floor <= minimum
    eps_ceiling = -delta * delta
    if not eps_floor < eps_ceiling:
        logger.info(f"Aucune énergie sous {eps_ceiling} pour C={C}, gamma={gamma}")
        return EnergySpectrum(C=C, gamma=gamma, energies=[])

    side = Side.of(C)
    target = -1.0 / C
    grid = _energy_grid(eps_floor, eps_ceiling, points)
    residual = _scan_branches(grid, gamma, side, target, N, int(numerics.get('ENERGY_INITIAL_BRANCHES', 4)))
    branches = residual.shape[1]
    logger.info(f"Spectre d'énergie : C={C}, gamma={gamma}, {branches} branches, "
                f"{points} points dans [{eps_floor:.6g}, {eps_ceiling:.3g}]")

    def branch_residual(eps: float, k: int) -> float:
        return float(side_eigenvalues(eps, gamma, k + 1, side, N)[k] - target)

    brackets = []
    for k in range(branches):
        changes = _crossings(residual[:, k])
        if changes.size > 1:
            logger.error(f"Branche {k} traverse -1/C {changes.size} fois")
            raise BranchTrackingError(
                f"Branche {k} non monotone : {changes.size} changements de signe",
                {'branch': k, 'C': C, 'gamma': gamma}
            )
        for index in changes:
            brackets.append((k, grid[index], grid[index + 1]))
        exact = np.nonzero(residual[:, k] == 0)[0]
        for index in exact:
            brackets.append((k, grid[index], grid[index]))

    def solve(bracket) -> float:
        k, left, right = bracket
        if left == right:
            return float(left)
        return float(brentq(branch_residual, left, right, args=(k,), xtol=xtol))

    energies = np.sort(ComputeExecutor().map_ordered(solve, brackets))
    spectrum = EnergySpectrum(C=C, gamma=gamma, energies=energies)

    expected = count_bound_states(C, gamma, N, delta)
    if spectrum.count > expected or (full_range and spectrum.count != expected):
        logger.error(f"{spectrum.count} énergies trouvées pour {expected} forces critiques "
                     f"franchies (C={C}, gamma={gamma})")
        raise BranchTrackingError(
            f"Inversion incohérente : {spectrum.count} énergies liées, {expected} attendues",
            {'C': C, 'gamma': gamma, 'found': spectrum.count, 'expected': expected}
        )
    logger.info(f"{spectrum.count} énergies liées pour C={C}, gamma={gamma}")
    return spectrum


def _check_continuation(previous: np.ndarray, current: np.ndarray, side: Side, epsilon: float) -> None:
    """Chaque C_k doit rester plus proche de son propre prédécesseur que des voisins."""
    for k, value in enumerate(current):
        distances = np.abs(previous - value)
        if int(np.argmin(distances)) != k:
            raise BranchTrackingError(
                f"Croisement apparent de la branche {k} côté {side.value} en epsilon={epsilon:.6g} "
                f"(grille trop grossière ?)",
                {'side': side.value, 'branch': k, 'epsilon': epsilon}
            )
    if np.any(np.diff(np.abs(current)) <= 0):
        raise BranchTrackingError(
            f"Entrelacement violé côté {side.value} en epsilon={epsilon:.6g}",
            {'side': side.value, 'epsilon': epsilon}
        )


def spectral_map(gamma: float, eps_grid: Sequence[float], N: Optional[int] = None,
                 branches: int = 4) -> SpectralMap:
    """
    Courbes C_k(ε) des deux côtés sur une grille d'énergies négatives.
    """
    grid = np.sort(np.asarray(eps_grid, dtype=float))[::-1]
    if grid.size == 0:
        raise DomainError("Grille d'énergie vide")
    for eps in grid:
        mu_from_energy(float(eps))
    if branches < 1:
        raise DomainError(f"branches doit être >= 1 (reçu {branches})")

    logger.info(f"Carte spectrale : gamma={gamma}, {grid.size} énergies, {branches} branches par côté")
    executor = ComputeExecutor()
    curves: List[SpectralCurve] = []
    for side in (Side.POSITIVE, Side.NEGATIVE):
        theta = np.array(executor.map_ordered(
            lambda eps: side_eigenvalues(float(eps), gamma, branches, side, N), grid
        ))
        wrong_sign = theta >= 0 if side == Side.POSITIVE else theta <= 0
        if np.any(wrong_sign):
            raise BranchTrackingError(
                f"Valeur propre de signe inattendu côté {side.value}",
                {'side': side.value}
            )
        strengths = -1.0 / theta
        for i in range(1, grid.size):
            _check_continuation(strengths[i - 1], strengths[i], side, float(grid[i]))
        for k in range(branches):
            curves.append(SpectralCurve(side=side, k=k, epsilon=grid.copy(), strength=strengths[:, k].copy()))
    return SpectralMap(gamma=gamma, curves=curves)
