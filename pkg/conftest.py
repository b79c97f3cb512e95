import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'hyperwave.settings')
django.setup()
