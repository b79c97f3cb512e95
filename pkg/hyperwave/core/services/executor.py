"""
Service partagé d'exécution parallèle.
Utilisé par les modules spectra et oracle pour répartir les évaluations
indépendantes (points de grille, branches, états liés).
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Callable, Dict, Iterable, List, Optional, TypeVar
from django.conf import settings

logger = logging.getLogger(__name__)

T = TypeVar('T')
R = TypeVar('R')


class ComputeExecutor:
    """
    Pool de threads partagé, plafonné par HYPERWAVE_THREADS.

    numpy et LAPACK relâchent le GIL pendant les calculs lourds, d'où
    l'intérêt des threads. Les résultats sont toujours renvoyés dans
    l'ordre de soumission.
    """

    _instance = None

    def __new__(cls):
        """Singleton pour éviter les multiples pools."""
        if cls._instance is None:
            cls._instance = super().__new__(cls)
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return

        self.max_workers = max(1, int(getattr(settings, 'HYPERWAVE_THREADS', 1)))
        self.pool: Optional[ThreadPoolExecutor] = None
        self._initialize_pool()
        self._initialized = True

    def _initialize_pool(self) -> None:
        """
        Crée le pool si plus d'un thread est autorisé.
        """
        if self.max_workers == 1:
            logger.info("Exécution séquentielle (HYPERWAVE_THREADS=1)")
            return

        self.pool = ThreadPoolExecutor(
            max_workers=self.max_workers,
            thread_name_prefix='hyperwave'
        )
        logger.info(f"Pool de calcul initialisé avec {self.max_workers} threads")

    def map_ordered(self, func: Callable[[T], R], items: Iterable[T]) -> List[R]:
        """
        Applique func à chaque élément, éventuellement en parallèle.

        Args:
            func: Fonction pure à appliquer
            items: Éléments indépendants

        Returns:
            List: Résultats dans l'ordre des éléments
        """
        items = list(items)
        if self.pool is None or len(items) < 2:
            return [func(item) for item in items]
        return list(self.pool.map(func, items))

    @property
    def is_parallel(self) -> bool:
        return self.pool is not None

    def get_status(self) -> Dict[str, Any]:
        """
        Retourne le statut du service.
        """
        return {
            'parallel': self.is_parallel,
            'max_workers': self.max_workers,
        }

    @classmethod
    def reset(cls) -> None:
        """Ferme le pool courant (utilisé quand HYPERWAVE_THREADS change)."""
        if cls._instance is not None and cls._instance.pool is not None:
            cls._instance.pool.shutdown(wait=True)
        cls._instance = None
