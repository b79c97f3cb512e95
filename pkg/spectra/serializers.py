from rest_framework import serializers

from hyperwave.core.serializers import SignificantFloatField


class ParameterSpectrumRowSerializer(serializers.Serializer):
    """
    Ligne du spectre en paramètre (epsilon, gamma, k, C).
    """

    epsilon = SignificantFloatField()
    gamma = SignificantFloatField()
    k = serializers.IntegerField()
    C = SignificantFloatField()


class CriticalRowSerializer(serializers.Serializer):
    gamma = SignificantFloatField()
    side = serializers.ChoiceField(choices=['positive', 'negative'])
    n = serializers.IntegerField()
    C_hat = SignificantFloatField()


class EnergyRowSerializer(serializers.Serializer):
    C = SignificantFloatField()
    gamma = SignificantFloatField()
    n = serializers.IntegerField()
    epsilon = SignificantFloatField()
    mu = SignificantFloatField()


class CountSerializer(serializers.Serializer):
    C = SignificantFloatField()
    gamma = SignificantFloatField()
    count = serializers.IntegerField()


class SpectralMapRowSerializer(serializers.Serializer):
    gamma = SignificantFloatField()
    side = serializers.ChoiceField(choices=['positive', 'negative'])
    k = serializers.IntegerField()
    epsilon = SignificantFloatField()
    C = SignificantFloatField()
