"""
Champs de sérialisation partagés par les sorties JSON.
"""

import math

from django.conf import settings
from rest_framework import serializers


def significant(value: float, digits: int = None) -> float:
    """Arrondit value à `digits` chiffres significatifs (12 par défaut)."""
    if digits is None:
        digits = getattr(settings, 'HYPERWAVE_NUMERICS', {}).get('SERIALIZATION_DIGITS', 12)
    value = float(value)
    if not math.isfinite(value):
        return value
    return float(f"{value:.{digits}g}")


class SignificantFloatField(serializers.FloatField):
    """
    FloatField dont la représentation est arrondie au même nombre de
    chiffres significatifs que la sortie CSV.
    """

    def to_representation(self, value):
        return significant(super().to_representation(value))
