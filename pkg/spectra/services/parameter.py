"""
Spectre en paramètre : à énergie ε < 0 et γ fixés, ensemble des forces C
pour lesquelles ε est valeur propre. Les C_k sont les −1/θ_k de T_γ.
"""

import logging
import math
from typing import Optional

import numpy as np
from django.conf import settings

from hyperwave.core.exceptions import DomainError, DegenerateBasisError
from waveop.models import Branch
from waveop.services import build_t_gamma
from ..models import ParameterSpectrum, Side
from .eigensolver import eigenvalues_tridiag, extreme_eigenvalues

logger = logging.getLogger(__name__)


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def mu_from_energy(epsilon: float) -> float:
    if not math.isfinite(epsilon) or epsilon >= 0:
        raise DomainError(
            f"Énergie invalide : epsilon={epsilon} (epsilon < 0 requis pour un état lié)",
            {'epsilon': epsilon}
        )
    return math.sqrt(-epsilon)


def _strengths(theta: np.ndarray, cutoff: float) -> np.ndarray:
    kept = theta[np.abs(theta) >= cutoff]
    return -1.0 / kept


def _match_convergence(theta_n: np.ndarray, theta_2n: np.ndarray, cutoff_n: float,
                       cutoff_2n: float, rtol: float) -> np.ndarray:
    """
    Compare chaque C de la troncature N à son homologue à 2N.

    Les θ < 0 sont appariés depuis le bas du spectre, les θ > 0 depuis le haut.
    """
    c_n = _strengths(theta_n, cutoff_n)
    flags = np.zeros(c_n.size, dtype=bool)

    neg_n = theta_n[theta_n <= -cutoff_n]
    neg_2n = theta_2n[theta_2n <= -cutoff_2n]
    pos_n = theta_n[theta_n >= cutoff_n][::-1]
    pos_2n = theta_2n[theta_2n >= cutoff_2n][::-1]

    for values_n, values_2n, offset, step in (
        (neg_n, neg_2n, 0, 1),
        (pos_n, pos_2n, c_n.size - 1, -1),
    ):
        count = min(values_n.size, values_2n.size)
        moved = np.abs(1.0 / values_2n[:count] - 1.0 / values_n[:count]) * np.abs(values_2n[:count])
        for i in range(count):
            flags[offset + step * i] = moved[i] <= rtol
    return flags


def parameter_spectrum(epsilon: float, gamma: float, N: Optional[int] = None,
                       branch=Branch.PLUS, delta: Optional[float] = None,
                       method: str = 'lapack') -> ParameterSpectrum:
    """
    Calcule le spectre en paramètre {C_k(ε, γ)}.

    Args:
        epsilon: Énergie adimensionnée (< 0)
        gamma: Paramètre de forme
        N: Troncature (TRUNCATION par défaut) ; la convergence est vérifiée à 2N
        branch: 'plus' (défaut) ou 'minus'
        delta: Régularisation de a_0 pour la branche moins
        method: Solveur de valeurs propres ('lapack' ou 'sturm')

    Returns:
        ParameterSpectrum
    """
    numerics = _numerics()
    N = int(N if N is not None else numerics.get('TRUNCATION', 4000))
    mu = mu_from_energy(epsilon)
    branch = Branch(branch)

    # sous l'échelle de régularisation, a_0 = μ(μ+1) est numériquement dégénéré
    if branch == Branch.PLUS and mu < numerics.get('DELTA_MU', 1e-7):
        raise DegenerateBasisError(
            f"Énergie trop proche de 0 (mu={mu:.3g}) : utiliser critical_strengths "
            f"pour la limite d'énergie nulle",
            {'epsilon': epsilon}
        )

    cutoff_rel = numerics.get('THETA_CUTOFF', 1e-12)
    rtol = numerics.get('CONVERGENCE_RTOL', 1e-8)

    logger.info(f"Spectre en paramètre : epsilon={epsilon}, gamma={gamma}, N={N}, branche {branch.value}")
    matrix = build_t_gamma(gamma, mu, branch, N, delta)
    reference = build_t_gamma(gamma, mu, branch, 2 * N, delta)

    theta = eigenvalues_tridiag(matrix, method=method)
    theta_ref = eigenvalues_tridiag(reference, method=method)
    cutoff = cutoff_rel * matrix.norm()
    cutoff_ref = cutoff_rel * reference.norm()

    strengths = _strengths(theta, cutoff)
    converged = _match_convergence(theta, theta_ref, cutoff, cutoff_ref, rtol)

    order = np.argsort(strengths)
    spectrum = ParameterSpectrum(
        epsilon=epsilon,
        gamma=gamma,
        c_values=strengths[order],
        converged=converged[order],
        truncation=N,
        delta_mu=matrix.delta_mu,
        branch=branch,
    )
    unconverged = int(np.count_nonzero(~spectrum.converged))
    if unconverged:
        logger.warning(f"{unconverged} valeurs de C non convergées entre N={N} et 2N (|C| grand)")
    logger.info(f"{spectrum.accepted().size} valeurs de C acceptées")
    return spectrum


def side_eigenvalues(epsilon: float, gamma: float, count: int, side: Side,
                     N: Optional[int] = None) -> np.ndarray:
    """
    Les `count` valeurs propres θ de T_γ(μ(ε)) qui correspondent aux plus
    petits |C| du côté demandé : les plus basses pour C > 0, les plus hautes
    pour C < 0.
    """
    numerics = _numerics()
    N = int(N if N is not None else numerics.get('TRUNCATION', 4000))
    matrix = build_t_gamma(gamma, mu_from_energy(epsilon), Branch.PLUS, N)
    return extreme_eigenvalues(matrix, count, lowest=(side == Side.POSITIVE))
