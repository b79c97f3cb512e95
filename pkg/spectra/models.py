"""
Résultats spectraux : spectre en paramètre C à énergie fixée, forces
critiques Ĉ_n(γ) et spectre d'énergie à (C, γ) fixés.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, Iterator, List

import numpy as np

from waveop.models import Branch


class Side(str, Enum):
    """Signe de la force C."""

    POSITIVE = 'positive'
    NEGATIVE = 'negative'

    @classmethod
    def of(cls, strength: float) -> 'Side':
        return cls.POSITIVE if strength > 0 else cls.NEGATIVE


def _frozen(values, dtype=float) -> np.ndarray:
    array = np.array(values, dtype=dtype)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class ParameterSpectrum:
    """
    Ensemble {C_k(ε, γ)} trié par ordre croissant.

    converged[i] indique que c_values[i] varie de moins de la tolérance
    relative quand la troncature passe de N à 2N.
    """

    epsilon: float
    gamma: float
    c_values: np.ndarray
    converged: np.ndarray
    truncation: int
    delta_mu: float = 0.0
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        object.__setattr__(self, 'c_values', _frozen(self.c_values))
        object.__setattr__(self, 'converged', _frozen(self.converged, dtype=bool))

    def accepted(self) -> np.ndarray:
        return self.c_values[self.converged]

    def side(self, side: Side) -> np.ndarray:
        """Valeurs convergées d'un côté, triées par |C| croissant."""
        values = self.accepted()
        if side == Side.POSITIVE:
            return values[values > 0]
        return values[values < 0][::-1]

    def rows(self) -> Iterator[Dict[str, Any]]:
        """Lignes epsilon, gamma, k, C (k = rang par |C| de son côté)."""
        ranks = {}
        for side in (Side.NEGATIVE, Side.POSITIVE):
            for k, value in enumerate(self.side(side)):
                ranks[float(value)] = k
        for value in self.accepted():
            yield {'epsilon': self.epsilon, 'gamma': self.gamma, 'k': ranks[float(value)], 'C': float(value)}


@dataclass(frozen=True)
class CriticalSet:
    """
    Forces critiques Ĉ_n(γ) des deux côtés, ordonnées par |Ĉ| croissant.
    Une branche divergente quand μ -> 0 apparaît comme Ĉ_0 = 0.
    """

    gamma: float
    c_hat_positive: np.ndarray
    c_hat_negative: np.ndarray
    n_max: int
    truncation: int
    delta: float
    diagnostics: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        object.__setattr__(self, 'c_hat_positive', _frozen(self.c_hat_positive))
        object.__setattr__(self, 'c_hat_negative', _frozen(self.c_hat_negative))

    def values(self, side: Side) -> np.ndarray:
        return self.c_hat_positive if side == Side.POSITIVE else self.c_hat_negative

    def rows(self) -> Iterator[Dict[str, Any]]:
        for side in (Side.POSITIVE, Side.NEGATIVE):
            for n, value in enumerate(self.values(side)):
                yield {'gamma': self.gamma, 'side': side.value, 'n': n, 'C_hat': float(value)}


@dataclass(frozen=True)
class EnergySpectrum:
    """Énergies liées ε_n < 0 (croissantes) et μ_n = √(−ε_n)."""

    C: float
    gamma: float
    energies: np.ndarray
    mu_values: np.ndarray = None

    def __post_init__(self):
        energies = _frozen(np.sort(np.asarray(self.energies, dtype=float)))
        object.__setattr__(self, 'energies', energies)
        object.__setattr__(self, 'mu_values', _frozen(np.sqrt(-energies)))

    @property
    def count(self) -> int:
        return int(self.energies.size)

    def rows(self) -> Iterator[Dict[str, Any]]:
        for n, (epsilon, mu) in enumerate(zip(self.energies, self.mu_values)):
            yield {'C': self.C, 'gamma': self.gamma, 'n': n, 'epsilon': float(epsilon), 'mu': float(mu)}


@dataclass(frozen=True)
class SpectralCurve:
    """Branche k d'un côté : C_k(ε) sur la grille d'énergie."""

    side: Side
    k: int
    epsilon: np.ndarray
    strength: np.ndarray


@dataclass(frozen=True)
class SpectralMap:
    gamma: float
    curves: List[SpectralCurve]

    def rows(self) -> Iterator[Dict[str, Any]]:
        for curve in self.curves:
            for epsilon, value in zip(curve.epsilon, curve.strength):
                yield {'gamma': self.gamma, 'side': curve.side.value, 'k': curve.k,
                       'epsilon': float(epsilon), 'C': float(value)}
