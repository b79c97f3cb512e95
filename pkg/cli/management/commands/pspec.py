from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Spectre en paramètre {C_k} à énergie fixée (colonnes epsilon,gamma,k,C)."
    subcommand = 'pspec'

    def add_extra_arguments(self, parser):
        parser.add_argument('--epsilon', type=float, help="Énergie adimensionnée (< 0)")
        parser.add_argument('--branch', choices=['plus', 'minus'], default='plus')
