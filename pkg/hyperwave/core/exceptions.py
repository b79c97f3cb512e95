"""
Hiérarchie d'exceptions partagée par toutes les applications.

Chaque classe porte un code (repris par cli.codes) et le statut de sortie
de la CLI : 2 pour une erreur d'usage ou de domaine, 1 pour un échec numérique.
"""

from typing import Any, Dict, Optional


class ErrorCodes:
    """
    Codes d'erreur personnalisés.
    """

    INTERNAL_ERROR = "INTERNAL_ERROR"
    DOMAIN_ERROR = "DOMAIN_ERROR"
    USAGE_ERROR = "USAGE_ERROR"
    DEGENERATE_BASIS = "DEGENERATE_BASIS"
    GRID_PRECONDITION = "GRID_PRECONDITION"
    NUMERIC_ERROR = "NUMERIC_ERROR"
    EIGEN_NO_CONVERGENCE = "EIGEN_NO_CONVERGENCE"
    BRANCH_TRACKING = "BRANCH_TRACKING"
    SERIES_DIVERGENCE = "SERIES_DIVERGENCE"
    QUADRATURE_FAILED = "QUADRATURE_FAILED"


class HyperwaveError(Exception):
    """Erreur de base du projet."""

    code = ErrorCodes.INTERNAL_ERROR
    exit_status = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details = details or {}

    def as_dict(self) -> Dict[str, Any]:
        payload = {'error': self.message, 'error_code': self.code}
        if self.details:
            payload['details'] = self.details
        return payload


class DomainError(HyperwaveError, ValueError):
    """Paramètre hors du domaine de validité d'une opération."""

    code = ErrorCodes.DOMAIN_ERROR
    exit_status = 2


class UsageError(DomainError):
    """Arguments de la ligne de commande invalides."""

    code = ErrorCodes.USAGE_ERROR


class DegenerateBasisError(DomainError):
    """a_n = 0 rencontré : la base est dégénérée (mu = 0)."""

    code = ErrorCodes.DEGENERATE_BASIS


class GridPreconditionError(DomainError):
    """Grille trop grossière ou trop étroite pour l'intégration directe."""

    code = ErrorCodes.GRID_PRECONDITION


class NumericError(HyperwaveError, ArithmeticError):
    """Échec numérique (non-convergence, instabilité)."""

    code = ErrorCodes.NUMERIC_ERROR
    exit_status = 1


class EigenConvergenceError(NumericError):
    """Le solveur tridiagonal n'a pas convergé."""

    code = ErrorCodes.EIGEN_NO_CONVERGENCE

    def __init__(self, message: str, index: Optional[int] = None, details=None):
        super().__init__(message, details)
        self.index = index
        if index is not None:
            self.details.setdefault('index', index)


class BranchTrackingError(NumericError):
    """Croisement ou ambiguïté lors du suivi des branches de valeurs propres."""

    code = ErrorCodes.BRANCH_TRACKING


class DivergenceError(NumericError):
    """Série de la fonction d'onde divergente (paramètres hors spectre)."""

    code = ErrorCodes.SERIES_DIVERGENCE


class QuadratureError(NumericError):
    """La quadrature adaptative n'a pas atteint la tolérance demandée."""

    code = ErrorCodes.QUADRATURE_FAILED
