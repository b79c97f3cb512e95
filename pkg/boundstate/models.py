"""
Modèles des états liés : suite des coefficients P_n^μ(γ, C) et fonction
d'onde normalisée.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from potential.models import PotentialParams


@dataclass(frozen=True)
class CoefficientSequence:
    """
    Coefficients P_0..P_{N-1} avec P_0 = 1.

    stable_len (N*) est renseigné par select_truncation ; les termes au-delà
    sont instables. divergent signale des paramètres hors spectre.
    """

    mu: float
    gamma: float
    C: float
    values: np.ndarray
    stable_len: Optional[int] = None
    divergent: bool = False

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        values.setflags(write=False)
        object.__setattr__(self, 'values', values)

    @property
    def size(self) -> int:
        return int(self.values.size)

    @property
    def stable(self) -> np.ndarray:
        end = self.size if self.stable_len is None else self.stable_len
        return self.values[:end]


@dataclass(frozen=True)
class BoundStateWavefunction:
    """
    ψ(x) = ω·Σ_{m<N*} P_m φ_m(λx), normalisée sur x.
    """

    mu: float
    epsilon: float
    coeffs: CoefficientSequence
    omega: float
    params: PotentialParams

    @property
    def n_star(self) -> int:
        return int(self.coeffs.stable_len or self.coeffs.size)
