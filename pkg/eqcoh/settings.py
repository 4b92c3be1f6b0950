"""
Django settings for the eqcoh project.

The project has no web surface: Django provides configuration, logging,
management commands and the test runner for the cohomology engine.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/6.0/ref/settings/
"""

import os
from pathlib import Path

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Batch-only project: the key is never used for signing anything.
SECRET_KEY = os.environ.get('EQCOH_SECRET_KEY', 'eqcoh-batch-only-not-secret')

DEBUG = False

ALLOWED_HOSTS = []


# Application definition

INSTALLED_APPS = [
    'cohomology',
]

# No persistent storage.
DATABASES = {}


# Engine configuration

def _env_int(name, default):
    raw = os.environ.get(name, '').strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        return default


# Worker pool cap for the golden suite and batch runs.
EQCOH_THREADS = max(1, _env_int('EQCOH_THREADS', os.cpu_count() or 1))

EQCOH_GOLDEN_FILE = BASE_DIR / 'cohomology' / 'goldens.yaml'

# Seed for every randomized property check.
EQCOH_RANDOM_SEED = _env_int('EQCOH_SEED', 20240917)

EQCOH_SAMPLES = {
    'kostant_conjugator': _env_int('EQCOH_SAMPLES_KOSTANT', 200),
    'unipotent_conjugator': _env_int('EQCOH_SAMPLES_UNIPOTENT', 100),
    'flatness': _env_int('EQCOH_SAMPLES_FLATNESS', 20),
}


# Logging: diagnostics go to stderr, stdout carries command output only.

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'stderr': {
            'class': 'logging.StreamHandler',
            'stream': 'ext://sys.stderr',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'cohomology': {
            'handlers': ['stderr'],
            'level': os.environ.get('EQCOH_LOG_LEVEL', 'WARNING').upper(),
            'propagate': False,
        },
    },
}


LANGUAGE_CODE = 'en-us'

TIME_ZONE = 'UTC'

USE_I18N = False

USE_TZ = True
