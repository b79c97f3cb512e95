"""
Services partagés pour l'ensemble de l'application.
Contient les services communs utilisés par plusieurs modules.
"""

from .executor import ComputeExecutor

__all__ = ['ComputeExecutor']
