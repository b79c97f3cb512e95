from rest_framework import serializers

from hyperwave.core.serializers import SignificantFloatField


class WavefunctionSampleSerializer(serializers.Serializer):
    """
    Échantillon (x, ψ(x)) d'une fonction d'onde liée.
    """

    x = SignificantFloatField()
    psi = SignificantFloatField()


class WavefunctionSummarySerializer(serializers.Serializer):
    """
    Métadonnées publiées à côté des échantillons : énergie, μ, ω, N* et résidu.
    """

    C = SignificantFloatField()
    gamma = SignificantFloatField()
    lambda_scale = SignificantFloatField()
    state = serializers.IntegerField()
    epsilon = SignificantFloatField()
    mu = SignificantFloatField()
    omega = SignificantFloatField()
    N_star = serializers.IntegerField()
    residual = SignificantFloatField(allow_null=True)
