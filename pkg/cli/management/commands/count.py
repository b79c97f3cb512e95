from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Nombre d'états liés (colonnes C,gamma,count)."
    subcommand = 'count'
