"""
Configuration Django du projet hyperwave.

Projet sans surface HTTP : Django fournit le chargement de la configuration,
le registre des applications et les commandes de gestion (la CLI).
Les paramètres numériques sont centralisés dans HYPERWAVE_NUMERICS et
peuvent être surchargés par variables d'environnement (python-decouple).
"""

import os
from pathlib import Path
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Aucune requête signée : la clé n'est jamais utilisée, mais Django l'exige.
SECRET_KEY = config('HYPERWAVE_SECRET_KEY', default='hyperwave-cli-without-http-surface')

DEBUG = config('HYPERWAVE_DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'rest_framework',
    'hyperwave.core',
    'polyeval',
    'potential',
    'waveop',
    'spectra',
    'boundstate',
    'oracle',
    'cli',
]

# Aucune persistance : tous les résultats sont recalculés de façon déterministe.
DATABASES = {}

USE_TZ = True

# Données de référence (table des forces critiques, jeu de paires de l'oracle)
SAMPLE_DATA_DIR = BASE_DIR / 'sample_data'

# Configuration REST Framework (sérialisation JSON des sorties CLI)
REST_FRAMEWORK = {
    'DEFAULT_RENDERER_CLASSES': [
        'rest_framework.renderers.JSONRenderer',
    ],
    'COERCE_DECIMAL_TO_STRING': False,
}

# Parallélisme interne (pool de threads partagé)
HYPERWAVE_THREADS = config('HYPERWAVE_THREADS', default=os.cpu_count() or 1, cast=int)

# Paramètres numériques par défaut
HYPERWAVE_NUMERICS = {
    # Matrice T_gamma
    'TRUNCATION': config('HYPERWAVE_TRUNCATION', default=4000, cast=int),
    'TABLE_TRUNCATION': config('HYPERWAVE_TABLE_TRUNCATION', default=8000, cast=int),
    'DELTA_MU': config('HYPERWAVE_DELTA_MU', default=1e-7, cast=float),
    'RICHARDSON_TOL': 1e-10,
    'COUNT_LIMIT': 512,
    'THETA_CUTOFF': 1e-12,
    'CONVERGENCE_RTOL': 1e-8,
    # Valeurs propres
    'EIGEN_ABSTOL': 2 * 2.2250738585072014e-308,
    'EIGEN_MAX_ITER': 200,
    # Inversion en énergie
    'ENERGY_TOL': 1e-14,
    'ENERGY_SCAN_POINTS': 48,
    'ENERGY_INITIAL_BRANCHES': 4,
    # Série de la fonction d'onde
    'COEFFICIENT_TERMS': 400,
    'TRUNCATION_GROWTH_FACTOR': 10.0,
    'TRUNCATION_WINDOW': 5,
    'DIVERGENCE_TAIL_RATIO': 1e-4,
    'QUADRATURE_CUTOFF': 40.0,
    'QUADRATURE_RTOL': 1e-11,
    # Oracle Numerov
    'NUMEROV_STEP': config('HYPERWAVE_NUMEROV_STEP', default=1e-3, cast=float),
    'NUMEROV_HALF_WIDTH': 25.0,
    'NUMEROV_ENERGY_TOL': 1e-11,
    # Sorties
    'SERIALIZATION_DIGITS': 12,
}

# Journalisation : tout sur stderr, stdout ne transporte que les données.
LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '{asctime} {levelname} {name}: {message}',
            'style': '{',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'root': {
        'handlers': ['console'],
        'level': config('HYPERWAVE_LOG_LEVEL', default='WARNING'),
    },
}
