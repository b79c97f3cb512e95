from rest_framework import serializers

from hyperwave.core.exceptions import UsageError
from .filters import CommandFilters
from .models import RunConfig, Subcommand, OutputFormat


class RunConfigSerializer(serializers.Serializer):
    """
    Validation des options de la ligne de commande.
    """

    subcommand = serializers.ChoiceField(choices=[s.value for s in Subcommand])
    gamma = serializers.FloatField(default=0.0)
    strength = serializers.FloatField(required=False, allow_null=True)
    lambda_scale = serializers.FloatField(default=1.0)
    N = serializers.IntegerField(required=False, allow_null=True, min_value=2)
    delta = serializers.FloatField(required=False, allow_null=True)
    tol = serializers.FloatField(required=False, allow_null=True)
    value_range = serializers.ListField(
        child=serializers.FloatField(), min_length=2, max_length=2, required=False, allow_null=True
    )
    count = serializers.IntegerField(required=False, allow_null=True, min_value=2)
    output_format = serializers.ChoiceField(choices=[f.value for f in OutputFormat], default='csv')
    out = serializers.CharField(required=False, allow_null=True, allow_blank=False)
    epsilon = serializers.FloatField(required=False, allow_null=True)
    branch = serializers.ChoiceField(choices=['plus', 'minus'], default='plus')
    n = serializers.IntegerField(default=6, min_value=1)
    eps_floor = serializers.FloatField(required=False, allow_null=True)
    state = serializers.IntegerField(default=0, min_value=0)
    branches = serializers.IntegerField(default=4, min_value=1)

    def validate_lambda_scale(self, value):
        if not value > 0:
            raise serializers.ValidationError("lambda doit être > 0")
        return value

    def validate_delta(self, value):
        if value is not None and not value > 0:
            raise serializers.ValidationError("delta doit être > 0")
        return value

    def validate_tol(self, value):
        if value is not None and not value > 0:
            raise serializers.ValidationError("tol doit être > 0")
        return value

    def validate_epsilon(self, value):
        if value is not None and not value < 0:
            raise serializers.ValidationError("epsilon doit être < 0 pour un état lié")
        return value

    def validate(self, data):
        subcommand = Subcommand(data['subcommand'])
        errors = {}
        for name in CommandFilters.missing_fields(subcommand, data):
            errors[name] = f"option obligatoire pour '{subcommand.value}'"
        range_errors = CommandFilters.range_errors(subcommand, data)
        if range_errors:
            errors['value_range'] = range_errors
        if subcommand in (Subcommand.ESPEC, Subcommand.WAVEFUNCTION) \
                and data.get('strength') == 0:
            errors['strength'] = "C = 0 : le potentiel libre n'a pas d'état lié"
        if errors:
            raise serializers.ValidationError(errors)
        return data

    def to_config(self) -> RunConfig:
        """
        Valide les options et construit la RunConfig.

        Raises:
            UsageError: si une option viole sa précondition
        """
        if not self.is_valid():
            raise UsageError(
                f"Options invalides : {CommandFilters.format_errors(self.errors)}",
                {'field_errors': self.errors}
            )
        data = dict(self.validated_data)
        subcommand = Subcommand(data.pop('subcommand'))
        value_range = data.pop('value_range', None)
        return RunConfig(
            subcommand=subcommand,
            value_range=tuple(value_range) if value_range else CommandFilters.DEFAULT_RANGES.get(subcommand),
            output_format=OutputFormat(data.pop('output_format')),
            count=data.pop('count', None) or CommandFilters.DEFAULT_COUNTS.get(subcommand),
            **data,
        )
