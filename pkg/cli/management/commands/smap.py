from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Courbes C_k(ε) sur --range d'énergies négatives (colonnes gamma,side,k,epsilon,C)."
    subcommand = 'smap'

    def add_extra_arguments(self, parser):
        parser.add_argument('--branches', type=int, default=4, help="Branches par côté")
