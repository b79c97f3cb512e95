"""
Modèles de l'oracle d'intégration directe : grille en ξ, états liés Numerov,
points de diffusion et rapport de vérification CPγ.
"""

from dataclasses import dataclass, asdict
from typing import Any, Dict, Optional

import numpy as np
from django.conf import settings

from hyperwave.core.exceptions import GridPreconditionError

WAVEFUNCTION_TOLERANCE = 1e-8
# écart admis entre la méthode tridiagonale et Numerov (erreur O(h⁴) de la grille)
ORACLE_TOLERANCE = 1e-6


@dataclass(frozen=True)
class Grid1D:
    """
    Grille uniforme xi_min, xi_min + h, ..., xi_max (xi_min < 0 < xi_max).
    """

    xi_min: float
    xi_max: float
    step: float

    def __post_init__(self):
        if not self.step > 0:
            raise GridPreconditionError(f"Pas de grille invalide : h={self.step}", {'step': self.step})
        if not self.xi_min < 0 < self.xi_max:
            raise GridPreconditionError(
                f"La grille doit encadrer l'origine : [{self.xi_min}, {self.xi_max}]",
                {'xi_min': self.xi_min, 'xi_max': self.xi_max}
            )

    @classmethod
    def default(cls, mu: Optional[float] = None, step: Optional[float] = None,
                max_half_width: float = 200.0) -> 'Grid1D':
        """Boîte |ξ| <= max(NUMEROV_HALF_WIDTH, cutoff/μ), bornée par max_half_width."""
        numerics = getattr(settings, 'HYPERWAVE_NUMERICS', {})
        half_width = numerics.get('NUMEROV_HALF_WIDTH', 25.0)
        if mu:
            half_width = max(half_width, min(numerics.get('QUADRATURE_CUTOFF', 40.0) / mu, max_half_width))
        return cls(-half_width, half_width, step or numerics.get('NUMEROV_STEP', 1e-3))

    @property
    def size(self) -> int:
        return int(round((self.xi_max - self.xi_min) / self.step)) + 1

    def nodes(self) -> np.ndarray:
        return self.xi_min + self.step * np.arange(self.size)


@dataclass(frozen=True)
class NumerovState:
    index: int
    epsilon: float
    nodes: int


@dataclass(frozen=True)
class ScatterPoint:
    """Probabilités de réflexion R2 et de transmission T2 à l'énergie ε > 0."""

    epsilon: float
    R2: float
    T2: float

    @property
    def flux_error(self) -> float:
        return abs(self.R2 + self.T2 - 1.0)


@dataclass(frozen=True)
class VerificationReport:
    """
    Écarts entre (C, γ) et son image CPγ (−C, −γ), calculés par les deux
    méthodes.
    """

    strength: float
    gamma: float
    tolerance: float
    counts: Dict[str, int]
    max_energy_diff: float
    max_oracle_diff: float
    max_wavefunction_diff: float
    counts_match: bool

    @property
    def passed(self) -> bool:
        return (self.counts_match
                and self.max_energy_diff <= self.tolerance
                and self.max_oracle_diff <= ORACLE_TOLERANCE
                and self.max_wavefunction_diff <= WAVEFUNCTION_TOLERANCE)

    def to_dict(self) -> Dict[str, Any]:
        payload = asdict(self)
        payload['passed'] = self.passed
        return payload
