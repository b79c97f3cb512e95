from rest_framework import serializers

from hyperwave.core.serializers import SignificantFloatField


class TridiagMatrixSerializer(serializers.Serializer):
    """
    Serializer de débogage de T_gamma : {"diag": [...], "off": [...]}.
    """

    gamma = SignificantFloatField()
    mu = SignificantFloatField()
    branch = serializers.CharField(source='branch.value')
    delta_mu = SignificantFloatField()
    size = serializers.IntegerField()
    diag = serializers.ListField(child=SignificantFloatField())
    off = serializers.ListField(child=SignificantFloatField())
