"""
Modèles du potentiel à onde simple hyperbolique
U(ξ) = C·(tanh ξ + γ)/cosh² ξ, avec ξ = λx et U = V/E_0.

Aucune persistance : ce sont des dataclasses immuables.
Les constantes dérivées de la forme générale (A = 0, B = γC, D = B − ε/2)
ne sont pas stockées.
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from hyperwave.core.exceptions import DomainError


@dataclass(frozen=True)
class PotentialParams:
    """
    Paramètres du potentiel.

    Args:
        strength: Force adimensionnée C (V_0 = E_0·C)
        gamma: Paramètre de forme γ
        lambda_scale: Inverse de longueur λ > 0 (n'affecte que les entrées/sorties)
    """

    strength: float
    gamma: float
    lambda_scale: float = 1.0

    def __post_init__(self):
        if not math.isfinite(self.strength):
            raise DomainError(f"Force C non finie : {self.strength}")
        if not math.isfinite(self.gamma):
            raise DomainError(f"Paramètre gamma non fini : {self.gamma}")
        if not (math.isfinite(self.lambda_scale) and self.lambda_scale > 0):
            raise DomainError(
                f"lambda doit être strictement positif (reçu {self.lambda_scale})",
                {'lambda_scale': self.lambda_scale}
            )

    @property
    def is_free(self) -> bool:
        return self.strength == 0.0

    def conjugate(self) -> 'PotentialParams':
        """Image par la transformation (C, γ, x) -> (−C, −γ, −x)."""
        return PotentialParams(-self.strength, -self.gamma, self.lambda_scale)


class PotentialKind(str, Enum):
    SINGLE_WAVE = 'single_wave'
    WELL = 'well'
    BARRIER = 'barrier'


@dataclass(frozen=True)
class PotentialClass:
    kind: PotentialKind
    degenerate: bool = False

    @property
    def label(self) -> str:
        return f"{self.kind.value} (nul)" if self.degenerate else self.kind.value


@dataclass(frozen=True)
class Extremum:
    """Extremum du potentiel ; absent quand y = tanh ξ sort de (−1, 1)."""

    y: float
    x: Optional[float]
    value: Optional[float]

    @property
    def present(self) -> bool:
        return self.x is not None
