"""
Fonctions d'onde des états liés par développement tridiagonal.

Les coefficients P_n^μ(γ, C) sont obtenus par récurrence avant à partir de
P_0 = 1. Sur le spectre, c'est la solution minimale de la récurrence : elle
décroît puis la contamination par la solution dominante la fait croître de
nouveau. La troncature N* est placée au minimum.
"""

import logging
from dataclasses import replace
from typing import Dict, Optional, Tuple

import numpy as np
from numpy.typing import ArrayLike
from django.conf import settings
from scipy.integrate import quad

from hyperwave.core.exceptions import DomainError, DivergenceError, QuadratureError
from hyperwave.core.services import ComputeExecutor
from potential.models import PotentialParams
from potential.services import evaluate_dimensionless
from waveop.models import Branch
from waveop.services import recursion_arrays, basis_functions
from .models import CoefficientSequence, BoundStateWavefunction

logger = logging.getLogger(__name__)

EVALUATION_CHUNK = 4096


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def expansion_coefficients(mu: float, gamma: float, C: float, N: Optional[int] = None) -> CoefficientSequence:
    """
    Récurrence P_n = −(1/b_{n−1})[(γ + a_{n−1}/C)P_{n−1} + b_{n−2}P_{n−2}].

    Args:
        mu: Paramètre de base (> −1)
        gamma: Paramètre de forme
        C: Force (non nulle)
        N: Nombre de termes (COEFFICIENT_TERMS par défaut)

    Returns:
        CoefficientSequence (non tronquée)
    """
    if C == 0:
        raise DomainError("C = 0 : la récurrence des coefficients n'est pas définie", {'C': C})
    N = int(N if N is not None else _numerics().get('COEFFICIENT_TERMS', 400))
    if N < 1:
        raise DomainError(f"Nombre de termes invalide : N={N}")

    a, b = recursion_arrays(Branch.PLUS, mu, N)
    if np.any(b[:max(N - 1, 0)] == 0):
        raise DomainError(f"b_n = 0 rencontré pour mu={mu}", {'mu': mu})

    values = np.zeros(N)
    values[0] = 1.0
    with np.errstate(over='ignore', invalid='ignore'):
        for n in range(1, N):
            previous = b[n - 2] * values[n - 2] if n >= 2 else 0.0
            values[n] = -((gamma + a[n - 1] / C) * values[n - 1] + previous) / b[n - 1]
    return CoefficientSequence(mu=mu, gamma=gamma, C=C, values=values)


def recursion_residual(seq: CoefficientSequence, upto: Optional[int] = None) -> float:
    """
    max_n |γP_n + (a_n/C)P_n + b_{n−1}P_{n−1} + b_nP_{n+1}| / max|P| pour n < upto − 1.
    """
    upto = int(upto if upto is not None else (seq.stable_len or seq.size))
    p = seq.values[:upto]
    a, b = recursion_arrays(Branch.PLUS, seq.mu, upto)
    residual = (seq.gamma + a[:-1] / seq.C) * p[:-1] + b[:-1] * p[1:]
    residual[1:] += b[:-2] * p[:-2]
    return float(np.max(np.abs(residual)) / np.max(np.abs(p)))


def select_truncation(seq: CoefficientSequence, on_spectrum: bool = True) -> Tuple[int, CoefficientSequence]:
    """
    Choisit N* et détecte la divergence.

    La phase de décroissance commence quand |P_n| passe sous max/facteur.
    Ensuite on suit le minimum courant ; N* = argmin + 1 dès que |P_n|
    dépasse facteur·min sur `fenêtre` indices consécutifs.

    Returns:
        (N*, séquence annotée avec stable_len et divergent)
    """
    numerics = _numerics()
    factor = numerics.get('TRUNCATION_GROWTH_FACTOR', 10.0)
    window = int(numerics.get('TRUNCATION_WINDOW', 5))
    tail_ratio = numerics.get('DIVERGENCE_TAIL_RATIO', 1e-4)

    magnitude = np.abs(seq.values)
    magnitude[~np.isfinite(magnitude)] = np.inf

    peak = magnitude[0]
    decaying = False
    best = 0
    streak = 0
    stopped = False
    for n in range(seq.size):
        value = magnitude[n]
        if not decaying:
            if value > peak:
                peak = value
            if value < peak / factor:
                decaying = True
                best = n
            continue
        if value < magnitude[best]:
            best = n
            streak = 0
        elif value >= factor * magnitude[best]:
            streak += 1
            if streak >= window:
                stopped = True
                break
        else:
            streak = 0

    if not decaying:
        best = int(np.argmin(magnitude))
    n_star = best + 1
    head = magnitude[:n_star]
    ratio = float(magnitude[best] / np.max(head[np.isfinite(head)])) if np.isfinite(magnitude[best]) else np.inf
    divergent = (not decaying) or ratio > tail_ratio

    if divergent:
        logger.warning(f"Série divergente (mu={seq.mu:.6g}, C={seq.C}) : rapport de queue {ratio:.3g}"
                       + (" pour des paramètres supposés sur le spectre" if on_spectrum else ""))
    elif not stopped:
        logger.info(f"Aucune croissance détectée sur {seq.size} termes, N*={n_star}")

    return n_star, replace(seq, stable_len=n_star, divergent=divergent)


def _series(coeffs: np.ndarray, mu: float, xi: np.ndarray) -> np.ndarray:
    return coeffs @ basis_functions(coeffs.size, mu, xi)


def _evaluate_xi(ws: BoundStateWavefunction, xi: ArrayLike) -> np.ndarray:
    if ws.coeffs.divergent:
        raise DivergenceError(
            f"Évaluation impossible : série divergente (epsilon={ws.epsilon}, C={ws.params.strength})",
            {'epsilon': ws.epsilon, 'C': ws.params.strength}
        )
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    coeffs = ws.coeffs.stable
    if xi.size <= EVALUATION_CHUNK:
        return ws.omega * _series(coeffs, ws.mu, xi)
    chunks = np.array_split(xi, int(np.ceil(xi.size / EVALUATION_CHUNK)))
    parts = ComputeExecutor().map_ordered(lambda part: _series(coeffs, ws.mu, part), chunks)
    return ws.omega * np.concatenate(parts)


def evaluate_wavefunction(ws: BoundStateWavefunction, x: ArrayLike):
    """
    ψ(x) = ω·prefactor(μ)·sech^μ(λx)·Σ_{m<N*} series_coefficient(m, μ)·P_m·C_m^{μ+1/2}(tanh λx).

    Raises:
        DivergenceError: si la série est marquée divergente
    """
    x_arr = np.asarray(x, dtype=float)
    values = _evaluate_xi(ws, x_arr * ws.params.lambda_scale).reshape(x_arr.shape)
    return values if values.ndim else float(values)


def _integrate(func, limit: float, what: str) -> float:
    numerics = _numerics()
    rtol = numerics.get('QUADRATURE_RTOL', 1e-11)
    value, error = quad(func, -limit, limit, points=[0.0], limit=500, epsabs=0.0, epsrel=rtol)
    if not np.isfinite(value) or value <= 0 or error > 1e-8 * abs(value):
        logger.error(f"Quadrature non convergée ({what}) : valeur={value}, erreur={error}")
        raise QuadratureError(
            f"La quadrature de {what} n'a pas convergé (erreur estimée {error:.3g})",
            {'value': value, 'error': error}
        )
    return float(value)


def _cutoff(mu: float) -> float:
    return _numerics().get('QUADRATURE_CUTOFF', 40.0) / mu


def normalize(ws: BoundStateWavefunction) -> float:
    """
    Facteur ω tel que ∫|ψ|² dx = 1, par quadrature adaptative sur |ξ| <= cutoff/μ.

    ∫ dx = (1/λ)∫ dξ, donc ω² = λ / ∫(Σ P_m φ_m)² dξ.
    """
    unit = replace(ws, omega=1.0)
    norm = _integrate(lambda xi: float(_evaluate_xi(unit, xi)[0]) ** 2, _cutoff(ws.mu), "la norme")
    return float(np.sqrt(ws.params.lambda_scale / norm))


def basis_norm_check(ws: BoundStateWavefunction) -> Dict[str, float]:
    """
    Compare Σ(ωP_m)² à ∫ψ² sech²ξ dξ (la base est orthonormée pour dy = sech²ξ dξ).
    """
    series = float(np.sum((ws.omega * ws.coeffs.stable) ** 2))
    quadrature = _integrate(
        lambda xi: float(_evaluate_xi(ws, xi)[0]) ** 2 / np.cosh(xi) ** 2,
        min(_cutoff(ws.mu), 350.0), "la norme discrète"
    )
    return {
        'series': series,
        'quadrature': quadrature,
        'relative_difference': abs(series - quadrature) / quadrature,
    }


def build_wavefunction(C: float, gamma: float, epsilon: float, lambda_scale: float = 1.0,
                       N: Optional[int] = None) -> BoundStateWavefunction:
    """
    Assemble coefficients, troncature et normalisation pour une énergie liée.

    Args:
        C: Force
        gamma: Paramètre de forme
        epsilon: Énergie liée (issue de energy_spectrum)
        lambda_scale: λ
        N: Nombre de termes calculés avant troncature

    Returns:
        BoundStateWavefunction normalisée
    """
    if not epsilon < 0:
        raise DomainError(f"Énergie non liée : epsilon={epsilon}", {'epsilon': epsilon})
    params = PotentialParams(C, gamma, lambda_scale)
    mu = float(np.sqrt(-epsilon))
    seq = expansion_coefficients(mu, gamma, C, N)
    n_star, seq = select_truncation(seq, on_spectrum=True)

    ws = BoundStateWavefunction(mu=mu, epsilon=epsilon, coeffs=seq, omega=1.0, params=params)
    if seq.divergent:
        raise DivergenceError(
            f"Paramètres hors spectre : la série diverge (epsilon={epsilon}, C={C}, gamma={gamma})",
            {'epsilon': epsilon, 'C': C, 'gamma': gamma, 'N_star': n_star}
        )
    ws = replace(ws, omega=normalize(ws))
    logger.info(f"Fonction d'onde construite : epsilon={epsilon:.12g}, N*={n_star}, omega={ws.omega:.6g}")
    return ws


def default_grid(mu: float, step: Optional[float] = None) -> np.ndarray:
    """Grille uniforme en ξ couvrant la décroissance e^{−μ|ξ|}."""
    numerics = _numerics()
    step = step or numerics.get('NUMEROV_STEP', 1e-3)
    half_width = max(numerics.get('NUMEROV_HALF_WIDTH', 25.0), min(_cutoff(mu), 400.0))
    count = int(round(2 * half_width / step)) + 1
    return np.linspace(-half_width, half_width, count)


def hamiltonian_residual(ws: BoundStateWavefunction, epsilon: Optional[float] = None,
                         params: Optional[PotentialParams] = None,
                         grid: Optional[ArrayLike] = None) -> float:
    """
    ‖(−d²/dξ² + U − ε)ψ‖₂ / ‖ψ‖₂ par différences finies d'ordre 4 sur une
    grille uniforme en ξ.
    """
    epsilon = ws.epsilon if epsilon is None else epsilon
    params = ws.params if params is None else params
    if params.is_free:
        raise DomainError("C = 0 : aucun état lié, résidu non défini")

    xi = default_grid(ws.mu) if grid is None else np.asarray(grid, dtype=float)
    if xi.size < 5:
        raise DomainError("La grille doit contenir au moins 5 points")
    h = xi[1] - xi[0]
    if not np.allclose(np.diff(xi), h, rtol=1e-9, atol=0.0):
        raise DomainError("La grille doit être uniforme")

    psi = _evaluate_xi(ws, xi)
    second = (-psi[4:] + 16 * psi[3:-1] - 30 * psi[2:-2] + 16 * psi[1:-3] - psi[:-4]) / (12 * h * h)
    inner = psi[2:-2]
    residual = -second + (evaluate_dimensionless(params, xi[2:-2]) - epsilon) * inner
    return float(np.linalg.norm(residual) / np.linalg.norm(inner))
