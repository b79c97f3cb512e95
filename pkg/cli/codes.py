"""
Codes de sortie et messages de la ligne de commande.
Centralise la correspondance entre exceptions et statut de sortie.
"""

import logging
from typing import Any, Dict, Tuple

from hyperwave.core.exceptions import HyperwaveError, ErrorCodes

logger = logging.getLogger(__name__)


class ExitCodes:
    """
    Statuts de sortie du processus.
    """

    SUCCESS = 0
    NUMERIC_FAILURE = 1
    USAGE_ERROR = 2


class ResponseCodes(ErrorCodes):
    """
    Codes de réponse de la CLI (en plus des codes d'erreur partagés).
    """

    SUCCESS = "SUCCESS"
    OUTPUT_WRITTEN = "OUTPUT_WRITTEN"


class ResponseMessages:
    """
    Messages standardisés de la CLI.
    """

    SUCCESS = "Calcul terminé"
    OUTPUT_WRITTEN = "Résultat écrit dans {path}"
    SIDECAR_WRITTEN = "Métadonnées écrites dans {path}"
    INTERNAL_ERROR_MSG = "Erreur interne inattendue"


class CommandResponse:
    """
    Journalisation homogène des issues d'une sous-commande.
    """

    @staticmethod
    def success(subcommand: str, rows: int) -> int:
        logger.info(f"[{ResponseCodes.SUCCESS}] {ResponseMessages.SUCCESS} : {subcommand}, {rows} lignes")
        return ExitCodes.SUCCESS

    @staticmethod
    def error(exc: HyperwaveError) -> Tuple[int, Dict[str, Any]]:
        """
        Journalise une erreur du projet.

        Returns:
            Tuple[int, Dict]: Statut de sortie et description de l'erreur
        """
        logger.error(f"[{exc.code}] {exc.message}")
        return exc.exit_status, exc.as_dict()

    @staticmethod
    def handle_exception(exc: Exception, context: str = "") -> Tuple[int, Dict[str, Any]]:
        """
        Gère une exception quelconque : les erreurs du projet gardent leur
        statut, les autres sont des échecs internes (statut 1).
        """
        if isinstance(exc, HyperwaveError):
            return CommandResponse.error(exc)
        logger.exception(f"Erreur inattendue {context}: {exc}")
        return ExitCodes.NUMERIC_FAILURE, {
            'error': f"{ResponseMessages.INTERNAL_ERROR_MSG} : {exc}",
            'error_code': ResponseCodes.INTERNAL_ERROR,
        }
