from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Énergies liées du potentiel (colonnes C,gamma,n,epsilon,mu)."
    subcommand = 'espec'

    def add_extra_arguments(self, parser):
        parser.add_argument('--eps-floor', dest='eps_floor', type=float,
                            help="Borne inférieure du balayage (minimum du potentiel par défaut)")
