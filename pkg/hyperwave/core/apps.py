from django.apps import AppConfig


class CoreConfig(AppConfig):
    name = 'hyperwave.core'
    label = 'hyperwave_core'
