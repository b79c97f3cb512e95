"""
Forces critiques Ĉ_n(γ) : limite ε -> 0⁻ du spectre en paramètre.

T_γ est singulière en μ = 0 (a_0 = 0). On l'évalue en μ = δ et δ/2 (puis δ/4
si les deux estimations diffèrent), on extrapole chaque branche vers μ = 0
(Richardson) et on reporte la branche divergente comme Ĉ_0 = 0.
"""

import logging
from typing import Dict, Optional, Tuple

import numpy as np
from django.conf import settings

from hyperwave.core.exceptions import DomainError, BranchTrackingError, NumericError
from hyperwave.core.services import ComputeExecutor
from waveop.models import Branch
from waveop.services import build_t_gamma
from ..models import CriticalSet, Side
from .eigensolver import extreme_eigenvalues

logger = logging.getLogger(__name__)

# une branche convergente varie de O(δ) entre δ et δ/2, une branche divergente d'un facteur √2 à 2
DIVERGENCE_RATIO = 1.2
BRANCH_JUMP_RTOL = 1e-3
REFINEMENT_FACTOR = 10.0


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def _extremes(gamma: float, mu: float, count: int, N: int) -> Tuple[np.ndarray, np.ndarray]:
    matrix = build_t_gamma(gamma, mu, Branch.PLUS, N)
    return (
        extreme_eigenvalues(matrix, count, lowest=True),
        extreme_eigenvalues(matrix, count, lowest=False),
    )


def _richardson(theta: np.ndarray, tol: float) -> Tuple[np.ndarray, int]:
    """
    Extrapolation vers μ = 0 à partir des lignes θ(δ), θ(δ/2) et, si elle a
    été calculée, θ(δ/4).

    Retourne les valeurs extrapolées et le nombre de branches pour
    lesquelles l'extrapolant à trois points a été retenu.
    """
    two_point = 2.0 * theta[1] - theta[0]
    if theta.shape[0] < 3:
        return two_point, 0
    three_point = (8.0 * theta[2] - 6.0 * theta[1] + theta[0]) / 3.0
    disagree = np.abs(two_point - three_point) > tol * np.abs(three_point)
    return np.where(disagree, three_point, two_point), int(np.count_nonzero(disagree))


def _needs_quarter_step(tracked: np.ndarray, tol: float) -> bool:
    """Vrai si les estimations en δ et δ/2 diffèrent au-delà de tol."""
    return bool(np.any(np.abs(tracked[1] - tracked[0]) > tol * np.abs(tracked[1])))


def _track_side(series: np.ndarray, side: Side) -> Tuple[int, np.ndarray]:
    """
    Sépare la branche divergente (extrémité) des branches convergentes.

    Args:
        series: tableau (2 ou 3, count) des θ extrêmes en δ, δ/2 et δ/4

    Returns:
        (nombre de branches divergentes, tableau des branches suivies)
    """
    divergent = 0
    first = series[0, 0]
    if first != 0 and series[1, 0] / first > DIVERGENCE_RATIO:
        divergent = 1

    tracked = series[:, divergent:]
    jumps = np.abs(tracked[1:] - tracked[:-1]) / np.maximum(np.abs(tracked[:-1]), np.finfo(float).tiny)
    if np.any(jumps > BRANCH_JUMP_RTOL):
        k = int(np.argmax(np.max(jumps, axis=0)))
        raise BranchTrackingError(
            f"Branche ambiguë côté {side.value} (indice {k}) entre delta et delta/{2 ** (series.shape[0] - 1)}",
            {'side': side.value, 'branch': k}
        )
    return divergent, tracked


def _side_values(theta_zero: np.ndarray, divergent: int, side: Side, n_max: int) -> np.ndarray:
    if side == Side.POSITIVE:
        theta_zero = theta_zero[theta_zero < 0]
    else:
        theta_zero = theta_zero[theta_zero > 0]
    values = list(np.zeros(divergent)) + list(-1.0 / theta_zero)
    if len(values) < n_max:
        raise NumericError(
            f"Seulement {len(values)} forces critiques côté {side.value} (n_max={n_max}) : augmenter N",
            {'side': side.value, 'n_max': n_max}
        )
    return np.asarray(values[:n_max], dtype=float)


def _solve_rows(gamma: float, mus, count: int, N: int) -> Dict[Side, np.ndarray]:
    results = ComputeExecutor().map_ordered(lambda mu: _extremes(gamma, mu, count, N), mus)
    return {
        Side.POSITIVE: np.array([r[0] for r in results]),
        Side.NEGATIVE: np.array([r[1] for r in results]),
    }


def _attempt(gamma: float, n_max: int, N: int, delta: float, tol: float) -> CriticalSet:
    count = n_max + 1
    series = _solve_rows(gamma, [delta, delta / 2.0], count, N)
    tracked = {side: _track_side(rows, side) for side, rows in series.items()}

    quarter_step = any(_needs_quarter_step(rows, tol) for _, rows in tracked.values())
    if quarter_step:
        quarter = _solve_rows(gamma, [delta / 4.0], count, N)
        series = {side: np.vstack([rows, quarter[side]]) for side, rows in series.items()}
        tracked = {side: _track_side(rows, side) for side, rows in series.items()}

    values: Dict[Side, np.ndarray] = {}
    diagnostics = {'quarter_step': quarter_step, 'three_point_branches': 0, 'divergent': {}}
    for side, (divergent, rows) in tracked.items():
        theta_zero, used_three = _richardson(rows, tol)
        diagnostics['three_point_branches'] += used_three
        diagnostics['divergent'][side.value] = divergent
        values[side] = _side_values(theta_zero, divergent, side, n_max)

    return CriticalSet(
        gamma=gamma,
        c_hat_positive=values[Side.POSITIVE],
        c_hat_negative=values[Side.NEGATIVE],
        n_max=n_max,
        truncation=N,
        delta=delta,
        diagnostics=diagnostics,
    )


def critical_strengths(gamma: float, n_max: int, N: Optional[int] = None,
                       delta: Optional[float] = None) -> CriticalSet:
    """
    Calcule les n_max premières forces critiques de chaque côté.

    Args:
        gamma: Paramètre de forme
        n_max: Nombre de valeurs par côté (>= 1)
        N: Troncature (TRUNCATION par défaut)
        delta: Régularisation en μ (DELTA_MU par défaut)

    Returns:
        CriticalSet

    Raises:
        BranchTrackingError: si l'ambiguïté persiste après un raffinement de delta
    """
    numerics = _numerics()
    N = int(N if N is not None else numerics.get('TRUNCATION', 4000))
    delta = float(delta if delta is not None else numerics.get('DELTA_MU', 1e-7))
    tol = numerics.get('RICHARDSON_TOL', 1e-10)

    if n_max < 1:
        raise DomainError(f"n_max doit être >= 1 (reçu {n_max})", {'n_max': n_max})
    if not delta > 0:
        raise DomainError(f"delta doit être > 0 (reçu {delta})", {'delta': delta})
    if N < n_max + 2:
        raise DomainError(f"Troncature N={N} trop petite pour n_max={n_max}", {'N': N})

    logger.info(f"Forces critiques : gamma={gamma}, n_max={n_max}, N={N}, delta={delta}")
    try:
        result = _attempt(gamma, n_max, N, delta, tol)
    except BranchTrackingError as exc:
        refined = delta / REFINEMENT_FACTOR
        logger.warning(f"{exc.message} ; nouvel essai avec delta={refined}")
        try:
            result = _attempt(gamma, n_max, N, refined, tol)
        except BranchTrackingError as retry_exc:
            logger.error(f"Suivi des branches impossible pour gamma={gamma} : {retry_exc.message}")
            raise

    if result.diagnostics['three_point_branches']:
        logger.info(f"Extrapolation à trois points retenue pour "
                    f"{result.diagnostics['three_point_branches']} branches")
    return result


def count_bound_states(C: float, gamma: float, N: Optional[int] = None,
                       delta: Optional[float] = None) -> int:
    """
    Nombre d'états liés : nombre de Ĉ du même signe que C avec |Ĉ| < |C|.

    Le nombre de forces critiques calculées est doublé jusqu'à dépasser |C|,
    sans dépasser COUNT_LIMIT ni N − 2.

    Raises:
        DomainError: si |C| dépasse encore la dernière force critique à la limite
    """
    if C == 0:
        return 0
    numerics = _numerics()
    N = int(N if N is not None else numerics.get('TRUNCATION', 4000))
    limit = min(int(numerics.get('COUNT_LIMIT', 512)), N - 2)
    side = Side.of(C)
    n_max = min(8, limit)
    while True:
        critical = critical_strengths(gamma, n_max, N, delta)
        values = critical.values(side)
        if abs(values[-1]) > abs(C):
            count = int(np.count_nonzero(np.abs(values) < abs(C)))
            logger.info(f"C={C}, gamma={gamma} : {count} états liés")
            return count
        if n_max >= limit:
            logger.error(f"|C|={abs(C)} au-delà des {n_max} premières forces critiques (gamma={gamma})")
            raise DomainError(
                f"|C|={abs(C)} trop grand : plus de {n_max} états liés, au-delà de la limite de comptage "
                f"(augmenter N ou COUNT_LIMIT)",
                {'C': C, 'gamma': gamma, 'n_max': n_max, 'N': N}
            )
        n_max = min(2 * n_max, limit)
