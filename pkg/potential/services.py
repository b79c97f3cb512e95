"""
Services du potentiel : évaluation, extrema, classification et
échantillonnage sur grille.
"""

import logging
from typing import Tuple

import numpy as np
import pandas as pd
from numpy.typing import ArrayLike

from hyperwave.core.exceptions import UsageError
from .models import PotentialParams, PotentialKind, PotentialClass, Extremum

logger = logging.getLogger(__name__)


def evaluate_dimensionless(params: PotentialParams, xi: ArrayLike):
    """
    U(ξ) en coordonnée adimensionnée ξ = λx.

    1/cosh² est obtenu comme (1 − t)(1 + t) avec t = tanh ξ : aucun
    dépassement de capacité pour |ξ| grand.
    """
    t = np.tanh(np.asarray(xi, dtype=float))
    value = params.strength * (t + params.gamma) * (1.0 - t) * (1.0 + t)
    return value if value.ndim else float(value)


def evaluate(params: PotentialParams, x: ArrayLike):
    """
    Évalue U = V/E_0 au point x (unités de longueur).

    Args:
        params: Paramètres du potentiel
        x: Position(s)

    Returns:
        Valeur(s) adimensionnée(s) du potentiel
    """
    return evaluate_dimensionless(params, np.asarray(x, dtype=float) * params.lambda_scale)


def extrema(params: PotentialParams) -> Tuple[Extremum, Extremum]:
    """
    Retourne les extrema (x_+, x_-) donnés par y_± = −(γ ± √(γ²+3))/3.

    Un extremum dont y sort de (−1, 1) est marqué absent.
    """
    root = np.sqrt(params.gamma ** 2 + 3.0)
    result = []
    for sign in (1.0, -1.0):
        y = -(params.gamma + sign * root) / 3.0
        if abs(y) < 1.0:
            x = float(np.arctanh(y)) / params.lambda_scale
            value = params.strength * (y + params.gamma) * (1.0 - y * y)
            result.append(Extremum(y=y, x=x, value=float(value)))
        else:
            logger.debug(f"Extremum absent pour gamma={params.gamma} (y={y:.6g})")
            result.append(Extremum(y=y, x=None, value=None))
    return result[0], result[1]


def potential_minimum(params: PotentialParams) -> float:
    """
    Minimum adimensionné de U ; borne inférieure de toute énergie liée.
    """
    values = [e.value for e in extrema(params) if e.present]
    return float(min([0.0] + values))


def classify(params: PotentialParams) -> PotentialClass:
    """
    Classe le potentiel : onde simple si |γ| < 1, puits si γC < 0,
    barrière si γC > 0. C = 0 donne un puits dégénéré.
    """
    if params.is_free:
        return PotentialClass(kind=PotentialKind.WELL, degenerate=True)
    if abs(params.gamma) < 1.0:
        return PotentialClass(kind=PotentialKind.SINGLE_WAVE)
    if params.gamma * params.strength < 0:
        return PotentialClass(kind=PotentialKind.WELL)
    return PotentialClass(kind=PotentialKind.BARRIER)


def sample_grid(params: PotentialParams, x_min: float, x_max: float, count: int) -> pd.DataFrame:
    """
    Échantillonne U sur une grille uniforme (données de la figure du potentiel).

    Returns:
        pd.DataFrame: colonnes x et U
    """
    if not (np.isfinite(x_min) and np.isfinite(x_max)) or x_min >= x_max:
        raise UsageError(
            f"Intervalle invalide : x_min={x_min} doit être < x_max={x_max}",
            {'x_min': x_min, 'x_max': x_max}
        )
    if count < 2:
        raise UsageError(f"count doit être >= 2 (reçu {count})", {'count': count})

    x = np.linspace(x_min, x_max, int(count))
    x[0], x[-1] = x_min, x_max
    logger.info(f"Échantillonnage du potentiel sur {count} points dans [{x_min}, {x_max}]")
    return pd.DataFrame({'x': x, 'U': evaluate(params, x)})
