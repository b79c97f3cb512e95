"""
Classe de base des sous-commandes hyperwave.
"""

from django.core.management.base import BaseCommand, CommandError

from cli.codes import CommandResponse, ExitCodes
from cli.serializers import RunConfigSerializer
from cli.services import run, publish


class HyperwaveCommand(BaseCommand):
    """
    Déclare les options communes, valide la configuration puis publie le
    résultat. Les sous-classes fixent `subcommand` et ajoutent leurs options
    propres dans add_extra_arguments.
    """

    subcommand = None

    def add_arguments(self, parser):
        parser.add_argument('--gamma', type=float, default=0.0, help="Paramètre de forme γ")
        parser.add_argument('--strength', type=float, help="Force adimensionnée C")
        parser.add_argument('--lambda', dest='lambda_scale', type=float, default=1.0,
                            help="Inverse de longueur λ (défaut 1)")
        parser.add_argument('--N', type=int, help="Troncature de la matrice tridiagonale")
        parser.add_argument('--delta', type=float, help="Régularisation en μ")
        parser.add_argument('--tol', type=float, help="Tolérance de la vérification")
        parser.add_argument('--range', dest='value_range', type=float, nargs=2, metavar=('LOW', 'HIGH'),
                            help="Intervalle échantillonné (x ou epsilon selon la sous-commande)")
        parser.add_argument('--count', type=int, help="Nombre de points de l'intervalle")
        parser.add_argument('--format', dest='output_format', choices=['csv', 'json'], default='csv')
        parser.add_argument('--out', help="Fichier de sortie (stdout par défaut)")
        self.add_extra_arguments(parser)

    def add_extra_arguments(self, parser):
        pass

    def handle(self, *args, **options):
        data = {name: options.get(name) for name in RunConfigSerializer().fields if name in options}
        data = {name: value for name, value in data.items() if value is not None}
        data['subcommand'] = self.subcommand

        try:
            config = RunConfigSerializer(data=data).to_config()
            result = run(config)
            status = publish(result, config, self.stdout, self.stderr)
        except Exception as exc:
            status, payload = CommandResponse.handle_exception(exc, f"dans '{self.subcommand}'")
            raise CommandError(payload['error'], returncode=status) from exc

        if status != ExitCodes.SUCCESS:
            raise CommandError(f"'{self.subcommand}' : échec de la vérification", returncode=status)
        CommandResponse.success(self.subcommand, len(result.rows))
