from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Forces critiques Ĉ_n(γ) des deux côtés (colonnes gamma,side,n,C_hat)."
    subcommand = 'critical'

    def add_extra_arguments(self, parser):
        parser.add_argument('--n', type=int, default=6, help="Nombre de valeurs par côté")
