"""
Construction des éléments de l'opérateur d'onde dans la base de Gegenbauer :
coefficients de récurrence a_n, b_n, éléments ⟨n|y|m⟩ et J_nm, matrice T_γ
et fonctions de base φ_m(ξ).

La base φ_m(ξ) = K_m·sech^μ ξ·C_m^{μ+1/2}(tanh ξ) est orthonormée pour la
mesure dy = sech²ξ dξ ; J_nm s'exprime dans la mesure dξ.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike
from django.conf import settings

from hyperwave.core.exceptions import DomainError, DegenerateBasisError
from polyeval.services import gegenbauer_sequence, series_coefficient, prefactor
from .models import Branch, BasisSpec, TridiagMatrix

logger = logging.getLogger(__name__)

_LOG_2 = np.log(2.0)


def _as_branch(branch) -> Branch:
    try:
        return Branch(branch)
    except ValueError:
        raise DomainError(f"Branche inconnue : {branch!r} (plus|minus)")


def recursion_arrays(branch, mu: float, count: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    Calcule a_0..a_{count-1} et b_0..b_{count-1} pour une branche.

    (n+μ+1)² − 1/4 est évalué sous la forme (n+μ+1/2)(n+μ+3/2).

    Returns:
        Tuple (a, b) de tableaux numpy
    """
    branch = _as_branch(branch)
    BasisSpec(mu=mu, branch=branch)
    n = np.arange(count, dtype=float)

    if branch == Branch.PLUS:
        a = (n + mu) * (n + mu + 1.0)
        ratio = (n + 1.0) * (n + 2.0 * mu + 1.0) / ((n + mu + 0.5) * (n + mu + 1.5))
    else:
        a = n * (n + 1.0)
        ratio = (n + 1.0 - mu) * (n + 1.0 + mu) / ((n + 0.5) * (n + 1.5))

    if count and np.any(ratio <= 0):
        bad = int(np.argmax(ratio <= 0))
        raise DomainError(
            f"Argument de racine négatif pour b_{bad} (mu={mu}, branche {branch.value})",
            {'mu': mu, 'n': bad, 'branch': branch.value}
        )
    return a, 0.5 * np.sqrt(ratio)


def recursion_coeffs(branch, mu: float, n: int) -> Tuple[float, float]:
    """Coefficients (a_n, b_n) de la récurrence à trois termes."""
    if n < 0:
        raise DomainError(f"Indice négatif : n={n}")
    a, b = recursion_arrays(branch, mu, n + 1)
    return float(a[n]), float(b[n])


def _y_lower(k: int, mu: float, nu: float) -> float:
    """⟨k|y|k−1⟩ pour k >= 1."""
    s = mu + nu
    radicand = k * (k + mu) * (k + nu) * (k + s) / ((2 * k + s - 1) * (2 * k + s + 1))
    if radicand < 0:
        raise DomainError(f"Élément <{k}|y|{k - 1}> non réel pour mu={mu}, nu={nu}")
    return 2.0 / (2 * k + s) * float(np.sqrt(radicand))


def y_matrix_element(mu: float, nu: float, n: int, m: int) -> float:
    """
    Élément ⟨n|y|m⟩ de la représentation tridiagonale de y = tanh ξ.

    Nul dès que |n − m| >= 2.
    """
    if mu <= -1 or nu <= -1:
        raise DomainError(f"Paramètres de base hors domaine : mu={mu}, nu={nu}")
    if n < 0 or m < 0:
        raise DomainError(f"Indices négatifs : n={n}, m={m}")

    if n == m:
        if nu * nu == mu * mu:
            return 0.0
        s = mu + nu
        return (nu * nu - mu * mu) / ((2 * n + s) * (2 * n + s + 2))
    if abs(n - m) == 1:
        return _y_lower(max(n, m), mu, nu)
    return 0.0


def j_matrix_element(n: int, m: int, C: float, gamma: float, mu: float, nu: float) -> float:
    """
    Élément J_nm = [γC + (n+s/2)(n+s/2+1)]δ_nm + C⟨n|y|m⟩ avec s = ν + μ.
    """
    value = C * y_matrix_element(mu, nu, n, m)
    if n == m:
        half = n + 0.5 * (nu + mu)
        value += gamma * C + half * (half + 1.0)
    return value


def build_t_gamma(gamma: float, mu: float, branch=Branch.PLUS, N: Optional[int] = None,
                  delta: Optional[float] = None) -> TridiagMatrix:
    """
    Construit T_γ : diag A_n = γ/a_n, off B_n = b_n/√(a_n a_{n+1}).

    Les valeurs propres θ de T_γ sont les −1/C du spectre en paramètre.

    Args:
        gamma: Paramètre de forme
        mu: Paramètre de base μ (> 0 pour la branche plus)
        branch: Branch.PLUS ou Branch.MINUS
        N: Troncature (TRUNCATION par défaut)
        delta: Régularisation de a_0 pour la branche moins (DELTA_MU par défaut)

    Returns:
        TridiagMatrix
    """
    numerics = getattr(settings, 'HYPERWAVE_NUMERICS', {})
    branch = _as_branch(branch)
    N = int(N if N is not None else numerics.get('TRUNCATION', 4000))
    if N < 2:
        raise DomainError(f"Troncature invalide : N={N} (N >= 2 requis)", {'N': N})

    a, b = recursion_arrays(branch, mu, N + 1)
    delta_mu = 0.0

    if branch == Branch.MINUS:
        delta_mu = float(delta if delta is not None else numerics.get('DELTA_MU', 1e-7))
        if not delta_mu > 0:
            raise DegenerateBasisError(
                "a_0 = 0 pour la branche nu=-mu : une régularisation delta > 0 est requise",
                {'branch': branch.value}
            )
        a = a.copy()
        a[0] = delta_mu * (delta_mu + 1.0)

    if np.any(a[:N + 1] == 0):
        raise DegenerateBasisError(
            f"a_n = 0 rencontré (mu={mu}) : utiliser la régularisation en mu "
            f"(critical_strengths) plutôt qu'une énergie nulle",
            {'mu': mu, 'branch': branch.value}
        )
    if np.any(a[:N + 1] < 0):
        raise DomainError(
            f"mu={mu} donne a_n < 0 : la branche plus exige mu > 0 pour T_gamma",
            {'mu': mu}
        )

    diag = gamma / a[:N]
    off = b[:N - 1] / np.sqrt(a[:N - 1] * a[1:N])
    logger.debug(f"T_gamma construite : N={N}, gamma={gamma}, mu={mu:.6g}, branche {branch.value}")
    return TridiagMatrix(diag=diag, off=off, gamma=gamma, mu=mu, branch=branch, delta_mu=delta_mu)


def _sech_power(mu: float, xi: np.ndarray) -> np.ndarray:
    # sech^μ ξ = exp(−μ ln cosh ξ), ln cosh ξ = logaddexp(ξ, −ξ) − ln 2
    return np.exp(-mu * (np.logaddexp(xi, -xi) - _LOG_2))


def basis_functions(n_terms: int, mu: float, xi: ArrayLike) -> np.ndarray:
    """
    Évalue φ_0..φ_{n_terms-1} sur la grille ξ.

    Returns:
        np.ndarray de forme (n_terms,) + ξ.shape
    """
    xi = np.asarray(xi, dtype=float)
    weights = prefactor(mu) * series_coefficient(np.arange(n_terms), mu)
    polys = gegenbauer_sequence(n_terms, mu + 0.5, np.tanh(xi))
    weights = np.reshape(weights, (n_terms,) + (1,) * xi.ndim)
    return weights * polys * _sech_power(mu, xi)


def basis_function(m: int, mu: float, xi: ArrayLike):
    """φ_m(ξ) = prefactor(μ)·series_coefficient(m, μ)·sech^μ ξ·C_m^{μ+1/2}(tanh ξ)."""
    value = basis_functions(m + 1, mu, xi)[m]
    return value if value.ndim else float(value)


def basis_derivative(m: int, mu: float, xi: ArrayLike):
    """
    dφ_m/dξ = K_m·sech^μ ξ·[−μ t C_m^λ(t) + (1 − t²)·2λ C_{m−1}^{λ+1}(t)], λ = μ + 1/2.
    """
    xi = np.asarray(xi, dtype=float)
    lam = mu + 0.5
    t = np.tanh(xi)
    weight = prefactor(mu) * series_coefficient(m, mu)

    value = -mu * t * gegenbauer_sequence(m + 1, lam, t)[m]
    if m >= 1:
        value = value + (1.0 - t) * (1.0 + t) * 2.0 * lam * gegenbauer_sequence(m, lam + 1.0, t)[m - 1]
    value = weight * _sech_power(mu, xi) * value
    return value if value.ndim else float(value)
