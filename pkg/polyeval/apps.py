from django.apps import AppConfig


class PolyevalConfig(AppConfig):
    name = 'polyeval'
    verbose_name = 'Fonctions spéciales'
