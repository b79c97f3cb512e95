from ._base import HyperwaveCommand


class Command(HyperwaveCommand):
    help = (
        "Échantillons de la fonction d'onde liée (colonnes x,psi) ; les métadonnées "
        "mu, omega, N_star et residual vont dans <out>.meta.json ou sur stderr."
    )
    subcommand = 'wavefunction'

    def add_extra_arguments(self, parser):
        parser.add_argument('--state', type=int, default=0, help="Indice de l'état (0 = fondamental)")
        parser.add_argument('--eps-floor', dest='eps_floor', type=float)
