"""
Valeurs propres de matrices tridiagonales symétriques.

Deux méthodes :
- 'lapack' : scipy.linalg.eigh_tridiagonal (stemr pour le spectre complet,
  bissection stebz pour une sélection d'indices) ;
- 'sturm' : bissection sur les suites de Sturm, implémentée ici et
  vectorisée sur les indices demandés. Sert d'oracle secondaire.

refine_eigenvalue (itération inverse avec décalage) fournit une troisième
vérification indépendante.
"""

import logging
from typing import Optional, Tuple

import numpy as np
from django.conf import settings
from numpy.linalg import LinAlgError
from scipy.linalg import eigh_tridiagonal, solve_banded

from hyperwave.core.exceptions import DomainError, EigenConvergenceError
from waveop.models import TridiagMatrix

logger = logging.getLogger(__name__)

_EPS = np.finfo(float).eps
_TINY = np.finfo(float).tiny

METHODS = ('lapack', 'sturm')


def _numerics():
    return getattr(settings, 'HYPERWAVE_NUMERICS', {})


def _check_selection(size: int, select: Optional[Tuple[int, int]]) -> Tuple[int, int]:
    if select is None:
        return 0, size - 1
    lo, hi = int(select[0]), int(select[1])
    if not (0 <= lo <= hi < size):
        raise DomainError(
            f"Sélection d'indices invalide ({lo}, {hi}) pour une matrice de taille {size}",
            {'select': [lo, hi], 'size': size}
        )
    return lo, hi


def sturm_count(diag: np.ndarray, off: np.ndarray, shifts: np.ndarray) -> np.ndarray:
    """
    Nombre de valeurs propres strictement inférieures à chaque décalage.

    Récurrence LDLᵀ : q_0 = d_0 − x, q_i = d_i − x − e_{i−1}²/q_{i−1}.
    """
    shifts = np.asarray(shifts, dtype=float)
    off2 = off * off
    pivmin = _TINY * max(1.0, float(np.max(off2)) if off2.size else 1.0)

    q = diag[0] - shifts
    q = np.where(np.abs(q) < pivmin, -pivmin, q)
    count = (q < 0).astype(np.int64)
    for i in range(1, diag.size):
        q = diag[i] - shifts - off2[i - 1] / q
        q = np.where(np.abs(q) < pivmin, -pivmin, q)
        count += q < 0
    return count


def _gershgorin(matrix: TridiagMatrix) -> Tuple[float, float]:
    radius = np.zeros_like(matrix.diag)
    radius[:-1] += np.abs(matrix.off)
    radius[1:] += np.abs(matrix.off)
    lower = float(np.min(matrix.diag - radius))
    upper = float(np.max(matrix.diag + radius))
    pad = 2 * _EPS * max(abs(lower), abs(upper)) + _TINY
    return lower - pad, upper + pad


def _sturm_bisection(matrix: TridiagMatrix, lo: int, hi: int, max_iter: int) -> np.ndarray:
    indices = np.arange(lo, hi + 1)
    lower, upper = _gershgorin(matrix)
    left = np.full(indices.size, lower)
    right = np.full(indices.size, upper)
    abstol = _EPS * matrix.norm()

    for _ in range(max_iter):
        width = right - left
        active = width > np.maximum(abstol, 2 * _EPS * np.maximum(np.abs(left), np.abs(right)))
        if not np.any(active):
            break
        mid = 0.5 * (left[active] + right[active])
        below = sturm_count(matrix.diag, matrix.off, mid) > indices[active]
        right[active] = np.where(below, mid, right[active])
        left[active] = np.where(below, left[active], mid)
    else:
        width = right - left
        failing = width > np.maximum(abstol, 2 * _EPS * np.maximum(np.abs(left), np.abs(right)))
        if np.any(failing):
            index = int(indices[np.argmax(failing)])
            logger.error(f"Bissection de Sturm non convergée pour l'indice {index}")
            raise EigenConvergenceError(
                f"Bissection non convergée après {max_iter} itérations", index=index
            )
    return 0.5 * (left + right)


def eigenvalues_tridiag(matrix: TridiagMatrix, select: Optional[Tuple[int, int]] = None,
                        method: str = 'lapack') -> np.ndarray:
    """
    Valeurs propres croissantes d'une matrice tridiagonale symétrique.

    Args:
        matrix: Matrice tridiagonale
        select: Intervalle d'indices (lo, hi) inclus, toutes si None
        method: 'lapack' ou 'sturm'

    Returns:
        np.ndarray: valeurs propres triées

    Raises:
        EigenConvergenceError: si le solveur ne converge pas
    """
    if method not in METHODS:
        raise DomainError(f"Méthode inconnue : {method!r} ({'|'.join(METHODS)})")
    lo, hi = _check_selection(matrix.size, select)
    numerics = _numerics()

    if method == 'sturm':
        return _sturm_bisection(matrix, lo, hi, int(numerics.get('EIGEN_MAX_ITER', 200)))

    try:
        if select is None:
            values = eigh_tridiagonal(matrix.diag, matrix.off, eigvals_only=True)
        else:
            values = eigh_tridiagonal(
                matrix.diag, matrix.off, eigvals_only=True,
                select='i', select_range=(lo, hi),
                lapack_driver='stebz', tol=numerics.get('EIGEN_ABSTOL', 2 * _TINY)
            )
    except LinAlgError as exc:
        logger.error(f"Échec du solveur tridiagonal (N={matrix.size}) : {exc}")
        raise EigenConvergenceError(
            f"Le solveur tridiagonal n'a pas convergé : {exc}", index=lo,
            details={'size': matrix.size}
        )

    return np.sort(np.asarray(values, dtype=float))


def extreme_eigenvalues(matrix: TridiagMatrix, count: int, lowest: bool,
                        method: str = 'lapack') -> np.ndarray:
    """
    Les `count` valeurs propres extrêmes, de l'extrémité vers l'intérieur.

    lowest=True : θ_0 <= θ_1 <= ... ; lowest=False : θ_{N-1} >= θ_{N-2} >= ...
    """
    count = min(int(count), matrix.size)
    if lowest:
        return eigenvalues_tridiag(matrix, (0, count - 1), method)
    values = eigenvalues_tridiag(matrix, (matrix.size - count, matrix.size - 1), method)
    return values[::-1]


def _matvec(matrix: TridiagMatrix, x: np.ndarray) -> np.ndarray:
    y = matrix.diag * x
    y[:-1] += matrix.off * x[1:]
    y[1:] += matrix.off * x[:-1]
    return y


def refine_eigenvalue(matrix: TridiagMatrix, shift: float, iterations: int = 4) -> float:
    """
    Itération inverse avec décalage fixe puis quotient de Rayleigh.

    Converge vers la valeur propre la plus proche de `shift`.
    """
    size = matrix.size
    x = np.ones(size) / np.sqrt(size)
    bands = np.zeros((3, size))
    bands[0, 1:] = matrix.off
    bands[2, :-1] = matrix.off

    sigma = float(shift)
    for _ in range(iterations):
        bands[1] = matrix.diag - sigma
        try:
            y = solve_banded((1, 1), bands, x)
        except LinAlgError:
            # décalage exactement sur une valeur propre
            sigma += _EPS * max(1.0, abs(sigma))
            continue
        x = y / np.linalg.norm(y)
    return float(x @ _matvec(matrix, x))
