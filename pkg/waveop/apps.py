from django.apps import AppConfig


class WaveopConfig(AppConfig):
    name = 'waveop'
    verbose_name = "Opérateur d'onde tridiagonal"
