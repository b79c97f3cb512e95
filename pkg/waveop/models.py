"""
Modèles de l'opérateur d'onde : spécification de base et matrice
tridiagonale symétrique T_γ.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict

import numpy as np

from hyperwave.core.exceptions import DomainError


class Branch(str, Enum):
    """Choix ν = +μ (PLUS) ou ν = −μ (MINUS)."""

    PLUS = 'plus'
    MINUS = 'minus'


@dataclass(frozen=True)
class BasisSpec:
    """
    Paramètres de la base (μ, ν, branche), avec μ = √(−ε) pour un état lié.

    α = ν/2 et β = μ/2 sont dérivés.
    """

    mu: float
    branch: Branch = Branch.PLUS

    def __post_init__(self):
        if not math.isfinite(self.mu) or self.mu <= -1.0:
            raise DomainError(f"mu={self.mu} hors domaine (mu > -1 requis)", {'mu': self.mu})
        if self.branch == Branch.MINUS and self.mu >= 1.0:
            raise DomainError(
                f"La branche nu=-mu exige -1 < mu < 1 (reçu mu={self.mu})",
                {'mu': self.mu, 'branch': self.branch.value}
            )

    @classmethod
    def from_energy(cls, epsilon: float, branch: Branch = Branch.PLUS) -> 'BasisSpec':
        if not epsilon <= 0:
            raise DomainError(f"Énergie positive : epsilon={epsilon} (états liés uniquement)")
        return cls(mu=math.sqrt(-epsilon), branch=branch)

    @property
    def nu(self) -> float:
        return self.mu if self.branch == Branch.PLUS else -self.mu

    @property
    def alpha(self) -> float:
        return self.nu / 2.0

    @property
    def beta(self) -> float:
        return self.mu / 2.0


def _readonly(values) -> np.ndarray:
    array = np.array(values, dtype=float)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class TridiagMatrix:
    """
    Matrice tridiagonale symétrique stockée par sa diagonale et sa
    sur-diagonale. Les tableaux sont en lecture seule après construction.
    """

    diag: np.ndarray
    off: np.ndarray
    gamma: float = 0.0
    mu: float = 0.0
    branch: Branch = Branch.PLUS
    delta_mu: float = 0.0
    metadata: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        diag = _readonly(self.diag)
        off = _readonly(self.off)
        if diag.ndim != 1 or diag.size < 2:
            raise DomainError(f"Troncature invalide : N={diag.size} (N >= 2 requis)")
        if off.size != diag.size - 1:
            raise DomainError(
                f"Dimensions incohérentes : diag={diag.size}, off={off.size}"
            )
        if not (np.all(np.isfinite(diag)) and np.all(np.isfinite(off))):
            raise DomainError("La matrice contient des valeurs non finies")
        object.__setattr__(self, 'diag', diag)
        object.__setattr__(self, 'off', off)

    @property
    def size(self) -> int:
        return int(self.diag.size)

    def norm(self) -> float:
        """Norme infinie (majore le rayon spectral)."""
        row = np.abs(self.diag).copy()
        row[:-1] += np.abs(self.off)
        row[1:] += np.abs(self.off)
        return float(row.max())

    def to_dense(self) -> np.ndarray:
        return np.diag(self.diag) + np.diag(self.off, 1) + np.diag(self.off, -1)

    def to_dict(self) -> Dict[str, Any]:
        return {'diag': self.diag.tolist(), 'off': self.off.tolist()}
