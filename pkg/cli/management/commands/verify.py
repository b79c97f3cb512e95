from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = (
        "Rapport JSON de la vérification CPγ : spectres et oracle Numerov pour "
        "(C, γ) et (−C, −γ). Statut 1 si la vérification échoue."
    )
    subcommand = 'verify'
