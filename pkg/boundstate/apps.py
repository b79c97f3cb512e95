from django.apps import AppConfig


class BoundstateConfig(AppConfig):
    name = 'boundstate'
    verbose_name = "États liés"
