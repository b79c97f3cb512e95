"""
Règles de validation des options par sous-commande.
"""

from typing import Any, Dict, List

from .models import Subcommand


class CommandFilters:
    """
    Options obligatoires et valeurs par défaut propres à chaque sous-commande.
    """

    REQUIRED_FIELDS = {
        Subcommand.POTENTIAL: ['strength'],
        Subcommand.PSPEC: ['epsilon'],
        Subcommand.CRITICAL: [],
        Subcommand.ESPEC: ['strength'],
        Subcommand.COUNT: ['strength'],
        Subcommand.WAVEFUNCTION: ['strength'],
        Subcommand.SCATTER: ['strength'],
        Subcommand.VERIFY: ['strength'],
        Subcommand.SMAP: [],
    }

    DEFAULT_RANGES = {
        Subcommand.POTENTIAL: (-6.0, 6.0),
        Subcommand.WAVEFUNCTION: (-10.0, 10.0),
        Subcommand.SCATTER: (0.01, 40.0),
        Subcommand.SMAP: (-1.0, -0.01),
    }

    DEFAULT_COUNTS = {
        Subcommand.POTENTIAL: 241,
        Subcommand.WAVEFUNCTION: 401,
        Subcommand.SCATTER: 200,
        Subcommand.SMAP: 100,
    }

    @staticmethod
    def missing_fields(subcommand: Subcommand, data: Dict[str, Any]) -> List[str]:
        """
        Liste les options obligatoires absentes pour la sous-commande.
        """
        return [name for name in CommandFilters.REQUIRED_FIELDS[subcommand] if data.get(name) is None]

    @staticmethod
    def range_errors(subcommand: Subcommand, data: Dict[str, Any]) -> List[str]:
        """
        Vérifie l'intervalle --range selon la sous-commande.

        Returns:
            List[str]: Erreurs lisibles (vide si l'intervalle est valide)
        """
        value_range = data.get('value_range')
        if value_range is None:
            return []
        low, high = value_range
        errors = []
        if not low < high:
            errors.append(f"--range : la borne basse doit être < la borne haute (reçu {low} {high})")
        if subcommand == Subcommand.SCATTER and low <= 0:
            errors.append(f"--range : la diffusion exige epsilon > 0 (reçu {low})")
        if subcommand == Subcommand.SMAP and high >= 0:
            errors.append(f"--range : la carte spectrale exige epsilon < 0 (reçu {high})")
        return errors

    @staticmethod
    def format_errors(errors: Dict[str, Any]) -> str:
        """
        Met en forme les erreurs d'un serializer DRF en une ligne par option.
        """
        lines = []
        for name, messages in errors.items():
            if isinstance(messages, (list, tuple)):
                messages = '; '.join(str(message) for message in messages)
            option = name if name == 'non_field_errors' else f"--{name.replace('_', '-')}"
            lines.append(f"{option} : {messages}")
        return ' | '.join(lines)
