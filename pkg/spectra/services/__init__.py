"""
Package services pour les spectres.

Structure :
- eigensolver : valeurs propres tridiagonales (lapack ou Sturm)
- parameter : spectre en paramètre C à énergie fixée
- critical : forces critiques Ĉ_n(γ) et comptage des états liés
- energy : inversion en énergie et carte spectrale
"""

from .eigensolver import eigenvalues_tridiag, extreme_eigenvalues, refine_eigenvalue, sturm_count
from .parameter import parameter_spectrum, side_eigenvalues
from .critical import critical_strengths, count_bound_states
from .energy import energy_spectrum, spectral_map

__all__ = [
    'eigenvalues_tridiag',
    'extreme_eigenvalues',
    'refine_eigenvalue',
    'sturm_count',
    'parameter_spectrum',
    'side_eigenvalues',
    'critical_strengths',
    'count_bound_states',
    'energy_spectrum',
    'spectral_map',
]
