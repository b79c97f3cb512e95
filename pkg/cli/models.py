"""
Configuration validée d'une exécution de la CLI.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Tuple


class Subcommand(str, Enum):
    POTENTIAL = 'potential'
    PSPEC = 'pspec'
    CRITICAL = 'critical'
    ESPEC = 'espec'
    COUNT = 'count'
    WAVEFUNCTION = 'wavefunction'
    SCATTER = 'scatter'
    VERIFY = 'verify'
    SMAP = 'smap'


class OutputFormat(str, Enum):
    CSV = 'csv'
    JSON = 'json'


@dataclass(frozen=True)
class RunConfig:
    """
    Paramètres d'une sous-commande après validation.

    Les valeurs laissées à None prennent les défauts de HYPERWAVE_NUMERICS
    dans les services.
    """

    subcommand: Subcommand
    gamma: float = 0.0
    strength: Optional[float] = None
    lambda_scale: float = 1.0
    N: Optional[int] = None
    delta: Optional[float] = None
    tol: Optional[float] = None
    value_range: Optional[Tuple[float, float]] = None
    count: Optional[int] = None
    output_format: OutputFormat = OutputFormat.CSV
    out: Optional[str] = None
    epsilon: Optional[float] = None
    branch: str = 'plus'
    n: int = 6
    eps_floor: Optional[float] = None
    state: int = 0
    branches: int = 4


@dataclass
class CommandResult:
    """
    Résultat d'une sous-commande : lignes tabulaires ou document JSON, plus
    d'éventuelles métadonnées publiées à côté.
    """

    rows: List[Dict[str, Any]] = field(default_factory=list)
    columns: List[str] = field(default_factory=list)
    document: Optional[Dict[str, Any]] = None
    sidecar: Optional[Dict[str, Any]] = None
    exit_status: int = 0
