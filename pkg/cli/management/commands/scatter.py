from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = "Réflexion et transmission sur une grille d'énergies positives (colonnes epsilon,R2,T2)."
    subcommand = 'scatter'
