from rest_framework import serializers

from hyperwave.core.serializers import SignificantFloatField


class PotentialSampleSerializer(serializers.Serializer):
    """
    Serializer d'un échantillon (x, U) de la grille du potentiel.
    """

    x = SignificantFloatField()
    U = SignificantFloatField()

