"""
Briques de fonctions spéciales : polynômes de Gegenbauer et coefficients
de normalisation de la série de la fonction d'onde.

Toutes les fonctions sont pures et vectorisées sur l'argument z (ou m).
"""

from typing import Union

import numpy as np
from numpy.typing import ArrayLike
from scipy.special import gammaln

from hyperwave.core.exceptions import DomainError


Real = Union[float, np.ndarray]

_LOG_PI = np.log(np.pi)
_LOG_2 = np.log(2.0)


def _check_order(lam: float) -> None:
    if not np.isfinite(lam) or lam <= -0.5:
        raise DomainError(
            f"Ordre de Gegenbauer invalide : lam={lam} (lam > -1/2 requis)",
            {'lam': lam}
        )


def _check_mu(mu: float) -> None:
    if not np.isfinite(mu) or mu <= -0.5:
        raise DomainError(
            f"Paramètre de base invalide : mu={mu} (mu > -1/2 requis)",
            {'mu': mu}
        )


def gegenbauer(n: int, lam: float, z: ArrayLike) -> Real:
    """
    Évalue C_n^lam(z) par la récurrence à trois termes (stable pour |z| <= 1).

    Args:
        n: Degré (n >= 0)
        lam: Ordre (lam > -1/2)
        z: Argument scalaire ou tableau

    Returns:
        Valeur(s) de C_n^lam(z), de même forme que z
    """
    if n < 0:
        raise DomainError(f"Degré négatif : n={n}", {'n': n})
    _check_order(lam)

    z = np.asarray(z, dtype=float)
    prev = np.ones_like(z)
    if n == 0:
        return prev if prev.ndim else float(prev)

    curr = 2.0 * lam * z
    for k in range(1, n):
        prev, curr = curr, (2.0 * (k + lam) * z * curr - (k + 2.0 * lam - 1.0) * prev) / (k + 1.0)

    return curr if curr.ndim else float(curr)


def gegenbauer_sequence(n_terms: int, lam: float, z: ArrayLike) -> np.ndarray:
    """
    Retourne toutes les valeurs C_0..C_{n_terms-1} en un seul passage.

    Returns:
        np.ndarray: tableau de forme (n_terms,) + z.shape
    """
    if n_terms < 1:
        raise DomainError(f"Nombre de termes invalide : {n_terms}", {'n_terms': n_terms})
    _check_order(lam)

    z = np.asarray(z, dtype=float)
    out = np.empty((n_terms,) + z.shape)
    out[0] = 1.0
    if n_terms > 1:
        out[1] = 2.0 * lam * z
    for k in range(1, n_terms - 1):
        out[k + 1] = (2.0 * (k + lam) * z * out[k] - (k + 2.0 * lam - 1.0) * out[k - 1]) / (k + 1.0)
    return out


def series_coefficient(m: ArrayLike, mu: float) -> Real:
    """
    Facteur sqrt[(m+mu+1/2) Γ(m+1)/Γ(m+2mu+1)] calculé en espace logarithmique.

    Pour mu > -1/2 tous les arguments de Γ sont positifs : aucun changement
    de signe à suivre.
    """
    _check_mu(mu)
    m_arr = np.asarray(m, dtype=float)
    if np.any(m_arr < 0):
        raise DomainError(f"Indice négatif dans series_coefficient : m={m}", {'mu': mu})

    log_ratio = gammaln(m_arr + 1.0) - gammaln(m_arr + 2.0 * mu + 1.0)
    value = np.exp(0.5 * (np.log(m_arr + mu + 0.5) + log_ratio))
    return value if value.ndim else float(value)


def prefactor(mu: float) -> float:
    """Facteur π^{-1/2}·2^mu·Γ(mu+1/2) de la fonction d'onde."""
    _check_mu(mu)
    return float(np.exp(-0.5 * _LOG_PI + mu * _LOG_2 + gammaln(mu + 0.5)))
