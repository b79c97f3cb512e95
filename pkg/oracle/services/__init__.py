"""
Package services de l'oracle.

Structure :
- numerov : états liés par tir de Numerov et comptage de nœuds
- scattering : coefficients de réflexion et de transmission
- verification : vérification croisée de la symétrie CPγ
"""

from .numerov import check_grid, numerov_bound_states, numerov_count, numerov_eigenfunction
from .scattering import transmission_reflection
from .verification import cpgamma_verify

__all__ = [
    'check_grid',
    'numerov_bound_states',
    'numerov_count',
    'numerov_eigenfunction',
    'transmission_reflection',
    'cpgamma_verify',
]
