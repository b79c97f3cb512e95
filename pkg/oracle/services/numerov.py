"""
Oracle des états liés : intégration de Numerov de ψ'' = (U − ε)ψ en ξ,
indépendante de la représentation tridiagonale.

Les deux extrémités partent de la queue exacte e^{−κ|ξ|} du schéma discret
(condition de Robin), ce qui rend le résultat insensible à la largeur de la
boîte tant que U y est négligeable. Le nombre d'états sous ε est compté par
le théorème d'oscillation ; chaque énergie est ensuite affinée sur le
wronskien normalisé au minimum du potentiel.
"""

import logging
from typing import Dict, List, Optional, Tuple

import numpy as np
from django.conf import settings
from scipy.integrate import simpson
from scipy.optimize import brentq

from hyperwave.core.exceptions import GridPreconditionError
from hyperwave.core.services import ComputeExecutor
from potential.models import PotentialParams
from potential.services import evaluate_dimensionless, potential_minimum
from ..models import Grid1D, NumerovState

logger = logging.getLogger(__name__)

EDGE_TOLERANCE = 1e-12
STABILITY_LIMIT = 0.01
RESCALE = 1e-150


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def check_grid(params: PotentialParams, grid: Grid1D, eps_floor: float = 0.0) -> np.ndarray:
    """
    Vérifie les préconditions de la grille et renvoie U sur ses nœuds.

    Raises:
        GridPreconditionError: U non négligeable aux bords ou pas trop grand
    """
    xi = grid.nodes()
    potential = np.asarray(evaluate_dimensionless(params, xi), dtype=float)
    edges = max(abs(potential[0]), abs(potential[-1]))
    if edges >= EDGE_TOLERANCE:
        raise GridPreconditionError(
            f"Grille trop étroite : |U| = {edges:.3g} aux bords (< {EDGE_TOLERANCE} requis), "
            f"élargir [{grid.xi_min}, {grid.xi_max}]",
            {'edge_potential': float(edges), 'xi_min': grid.xi_min, 'xi_max': grid.xi_max}
        )
    stiffness = grid.step ** 2 * float(np.max(np.abs(potential - min(eps_floor, 0.0))))
    if stiffness >= STABILITY_LIMIT:
        raise GridPreconditionError(
            f"Pas trop grand : h²·max|U−ε| = {stiffness:.3g} (< {STABILITY_LIMIT} requis), réduire h={grid.step}",
            {'stiffness': stiffness, 'step': grid.step}
        )
    return potential


def _tail_ratio(shift: float) -> float:
    """
    e^{−κ̃h} avec cosh(κ̃h) = 1 + shift : rapport exact de la queue décroissante
    du schéma discret, calculé sans soustraction catastrophique près de ε = 0.
    """
    return float(1.0 + shift - np.sqrt(shift * (2.0 + shift)))


def _march(coef: List[float], u0: float, u1: float) -> Tuple[np.ndarray, int]:
    """
    Récurrence u_{i+1} = c_i·u_i − u_{i−1} avec u = (1 − g/12)ψ.

    Les valeurs déjà calculées sont renormalisées quand |u| dépasse 1/RESCALE.

    Returns:
        (u sur toute la longueur de coef, nombre de changements de signe)
    """
    n = len(coef)
    u = np.empty(n)
    u[0] = u0
    u[1] = u1
    prev, cur = u0, u1
    nodes = 0
    for i in range(1, n - 1):
        nxt = coef[i] * cur - prev
        if (nxt < 0) != (cur < 0) and nxt != 0:
            nodes += 1
        if abs(nxt) > 1.0 / RESCALE:
            u[:i + 1] *= RESCALE
            cur *= RESCALE
            nxt *= RESCALE
        u[i + 1] = nxt
        prev, cur = cur, nxt
    return u, nodes


class _Shooter:
    """Intégrations de Numerov à énergie fixée pour un couple (potentiel, grille)."""

    def __init__(self, potential: np.ndarray, step: float):
        self.potential = potential
        self.h2 = step * step
        self.match = int(np.clip(np.argmin(potential), 2, potential.size - 3))
        self._counts: Dict[float, int] = {}

    def _coefficients(self, epsilon: float) -> Tuple[np.ndarray, np.ndarray, Tuple[float, float]]:
        g = self.h2 * (self.potential - epsilon)
        weight = 1.0 - g / 12.0
        shift = 0.5 * g / weight
        return 2.0 + 2.0 * shift, weight, (_tail_ratio(shift[0]), _tail_ratio(shift[-1]))

    def count(self, epsilon: float) -> int:
        """Nombre d'états liés d'énergie strictement inférieure à ε."""
        if epsilon in self._counts:
            return self._counts[epsilon]
        coef, _, (left_ratio, right_ratio) = self._coefficients(epsilon)
        u, nodes = _march(coef.tolist(), left_ratio, 1.0)
        last, before = u[-1], u[-2]
        # la queue décroît plus vite que e^{−κξ} : un nœud de plus au-delà du bord
        if before * last >= 0 and before != 0 and last / before < right_ratio:
            nodes += 1
        self._counts[epsilon] = nodes
        return nodes

    def _half_solutions(self, epsilon: float) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        coef, weight, (left_ratio, right_ratio) = self._coefficients(epsilon)
        m = self.match
        left, _ = _march(coef[:m + 2].tolist(), left_ratio, 1.0)
        right, _ = _march(coef[m:][::-1].tolist(), right_ratio, 1.0)
        return left, right[::-1], weight

    def mismatch(self, epsilon: float) -> float:
        """Wronskien discret normalisé des solutions gauche et droite au point de raccord."""
        left, right, _ = self._half_solutions(epsilon)
        m = self.match
        uL0, uL1 = left[m], left[m + 1]
        uR0, uR1 = right[0], right[1]
        wronskian = uL0 * uR1 - uL1 * uR0
        return float(wronskian / (np.hypot(uL0, uL1) * np.hypot(uR0, uR1)))

    def eigenfunction(self, epsilon: float) -> np.ndarray:
        left, right, weight = self._half_solutions(epsilon)
        m = self.match
        scale = left[m] / right[0] if right[0] != 0 else left[m + 1] / right[1]
        u = np.concatenate([left[:m], scale * right])
        return u / weight


def _bracket_state(shooter: _Shooter, k: int, floor: float, top: float) -> Tuple[float, float]:
    lo, hi = floor, top
    while not (shooter.count(lo) == k and shooter.count(hi) == k + 1):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if shooter.count(mid) <= k:
            lo = mid
        else:
            hi = mid
    return lo, hi


def _count_nodes(psi: np.ndarray) -> int:
    significant = psi[np.abs(psi) > 1e-8 * np.max(np.abs(psi))]
    return int(np.count_nonzero(np.signbit(significant[1:]) != np.signbit(significant[:-1])))


def numerov_bound_states(params: PotentialParams, max_states: Optional[int] = None,
                         grid: Optional[Grid1D] = None, tol: Optional[float] = None) -> List[NumerovState]:
    """
    Énergies liées par tir de Numerov et comptage de nœuds.

    Args:
        params: Paramètres du potentiel
        max_states: Nombre maximal d'états (tous par défaut)
        grid: Grille en ξ (Grid1D.default() par défaut)
        tol: Tolérance absolue sur ε (NUMEROV_ENERGY_TOL par défaut)

    Returns:
        Liste de NumerovState par énergie croissante
    """
    numerics = _numerics()
    grid = grid or Grid1D.default()
    tol = tol if tol is not None else numerics.get('NUMEROV_ENERGY_TOL', 1e-11)
    if params.is_free:
        check_grid(params, grid)
        return []

    floor = potential_minimum(params)
    top = -numerics.get('DELTA_MU', 1e-7) ** 2
    potential = check_grid(params, grid, floor)
    if not floor < top:
        return []

    shooter = _Shooter(potential, grid.step)
    total = shooter.count(top)
    if max_states is not None:
        total = min(total, int(max_states))
    logger.info(f"Numerov : C={params.strength}, gamma={params.gamma}, {total} états sous {top:.3g}, "
                f"{grid.size} nœuds")

    def solve(k: int) -> NumerovState:
        lo, hi = _bracket_state(shooter, k, floor, top)
        epsilon = float(brentq(shooter.mismatch, lo, hi, xtol=tol))
        nodes = _count_nodes(shooter.eigenfunction(epsilon))
        if nodes != k:
            logger.warning(f"État {k} : {nodes} nœuds comptés (epsilon={epsilon:.12g})")
        return NumerovState(index=k, epsilon=epsilon, nodes=nodes)

    return ComputeExecutor().map_ordered(solve, range(total))


def numerov_count(params: PotentialParams, grid: Optional[Grid1D] = None) -> int:
    """Nombre d'états liés d'énergie inférieure à −δ², sans affinage."""
    grid = grid or Grid1D.default()
    if params.is_free:
        return 0
    floor = potential_minimum(params)
    top = -_numerics().get('DELTA_MU', 1e-7) ** 2
    potential = check_grid(params, grid, floor)
    if not floor < top:
        return 0
    return _Shooter(potential, grid.step).count(top)


def numerov_eigenfunction(params: PotentialParams, epsilon: float,
                          grid: Optional[Grid1D] = None) -> Tuple[np.ndarray, np.ndarray]:
    """
    Fonction propre de Numerov normalisée en x (∫ψ² dx = 1, méthode de Simpson).

    Le signe est choisi pour que la valeur de plus grand module soit positive.

    Returns:
        (x, ψ(x))
    """
    grid = grid or Grid1D.default(mu=float(np.sqrt(-epsilon)) if epsilon < 0 else None)
    potential = check_grid(params, grid, epsilon)
    psi = _Shooter(potential, grid.step).eigenfunction(epsilon)
    xi = grid.nodes()
    psi = psi / np.sqrt(simpson(psi * psi, x=xi))
    if psi[np.argmax(np.abs(psi))] < 0:
        psi = -psi
    scale = params.lambda_scale
    return xi / scale, psi * np.sqrt(scale)
