from django.apps import AppConfig


class PotentialConfig(AppConfig):
    name = 'potential'
    verbose_name = "Potentiel hyperbolique"
