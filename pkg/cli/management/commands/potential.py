from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Échantillonne U(x) sur --range (colonnes x,U)."
    subcommand = 'potential'
