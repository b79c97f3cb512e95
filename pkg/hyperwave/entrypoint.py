"""Point d'entrée de la commande `hyperwave` (équivalent de manage.py)."""
import os
import sys


def main(argv=None):
    """Exécute une sous-commande hyperwave (`hyperwave critical --gamma 0.2`, ...)."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hyperwave.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Django est introuvable : installer les dépendances du projet "
            "(poetry install ou pip install -r requirements.txt)."
        ) from exc
    execute_from_command_line(argv if argv is not None else sys.argv)


if __name__ == '__main__':
    main()
