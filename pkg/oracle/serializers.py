from rest_framework import serializers

from hyperwave.core.serializers import SignificantFloatField


class ScatterPointSerializer(serializers.Serializer):
    """
    Ligne de la table de diffusion (epsilon, R2, T2).
    """

    epsilon = SignificantFloatField()
    R2 = SignificantFloatField()
    T2 = SignificantFloatField()


class VerificationReportSerializer(serializers.Serializer):
    """
    Rapport de vérification CPγ.
    """

    strength = SignificantFloatField()
    gamma = SignificantFloatField()
    tolerance = SignificantFloatField()
    counts = serializers.DictField(child=serializers.IntegerField())
    max_energy_diff = SignificantFloatField()
    max_oracle_diff = SignificantFloatField()
    max_wavefunction_diff = SignificantFloatField()
    counts_match = serializers.BooleanField()
    passed = serializers.BooleanField(read_only=True)
