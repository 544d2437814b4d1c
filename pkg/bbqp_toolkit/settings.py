"""
Stand-alone settings for the ``bbqp`` console script and the test runner.

Host projects that install ``bbqp_toolkit`` as an app use their own settings
and may override any ``BBQP_*`` value below.
"""

SECRET_KEY = 'bbqp-toolkit-not-secret'

INSTALLED_APPS = [
    'bbqp_toolkit',
]

TEMPLATES = [
    {
        'BACKEND': 'django.template.backends.django.DjangoTemplates',
        'APP_DIRS': True,
        'OPTIONS': {
            'autoescape': False,
        },
    },
]

USE_TZ = True

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'plain': {
            'format': '%(levelname)s %(name)s: %(message)s',
        },
    },
    'handlers': {
        'console': {
            'class': 'logging.StreamHandler',
            'formatter': 'plain',
        },
    },
    'loggers': {
        'bbqp_toolkit': {
            'handlers': ['console'],
            'level': 'WARNING',
        },
    },
}

BBQP_ORACLE_CAP = 30
BBQP_ORACLE_GATHER_BITS = 22
BBQP_NEIGHBORHOOD_CAP = 2 ** 24
BBQP_ENUM_CAP = 24
BBQP_MAX_PADDED_DIM = 4096
BBQP_FRACTIONAL_TOLERANCE = 1e-9
BBQP_ALTERNATING_ITERS = None
BBQP_LOCAL_SEARCH_ITERS = 1000
