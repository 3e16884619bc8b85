# qwnlab/settings.py
from pathlib import Path

import dj_database_url
from decouple import config

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# SECURITY WARNING: keep the secret key used in production secret!
SECRET_KEY = config('SECRET_KEY', default='qwnlab-local-secret-key-change-me')

DEBUG = config('DEBUG', default=False, cast=bool)

ALLOWED_HOSTS = []

# Application definition
INSTALLED_APPS = [
    'django.contrib.contenttypes',

    # Local apps
    'calculus.apps.CalculusConfig',
    'verification.apps.VerificationConfig',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'DIRS': [],
        'APP_DIRS': True,
        'OPTIONS': {
            'context_processors': [],
        },
    },
]

# Stored verification runs
DATABASES = {
    'default': dj_database_url.config(
        default=config('DATABASE_URL', default=f"sqlite:///{BASE_DIR / 'db.sqlite3'}"),
    ),
}

# Internationalization
LANGUAGE_CODE = 'en-us'
TIME_ZONE = 'UTC'
USE_I18N = False
USE_TZ = True

# Default primary key field type
DEFAULT_AUTO_FIELD = 'django.db.models.BigAutoField'

LOG_LEVEL = config('LOG_LEVEL', default='WARNING')

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(asctime)s %(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'calculus': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
        },
        'verification': {
            'handlers': ['console'],
            'level': LOG_LEVEL,
        },
    },
}

# Calculus and verification defaults (overridable through QWNLAB_* variables)
QWNLAB = {
    'DEFAULT_TOLERANCE': config('QWNLAB_DEFAULT_TOLERANCE', default=1e-10, cast=float),
    'DEFAULT_GUARD': config('QWNLAB_DEFAULT_GUARD', default=4, cast=int),
    'DEFAULT_M_MAX': config('QWNLAB_DEFAULT_M_MAX', default=4, cast=int),
    'DEFAULT_ORBIT_CAP': config('QWNLAB_DEFAULT_ORBIT_CAP', default=8, cast=int),
    'DEFAULT_SAMPLES': config('QWNLAB_DEFAULT_SAMPLES', default=20, cast=int),
    'DERIVATIVE_CAP': config('QWNLAB_DERIVATIVE_CAP', default=6, cast=int),
    'CLOSURE_MAX_ROUNDS': config('QWNLAB_CLOSURE_MAX_ROUNDS', default=12, cast=int),
    'SUITE_JOBS': config('QWNLAB_SUITE_JOBS', default=1, cast=int),
    'DEFAULT_THETA_GRID': [-0.3, -0.1, 0.1, 0.3],
}
