"""Configure Django for pytest, as manage.py does for `manage.py test`."""

import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "eqcoh.settings")
django.setup()
