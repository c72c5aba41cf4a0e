"""
Django settings for the wavespace project.

The project has no web surface; Django hosts the management commands, the
settings layer and the logging configuration.
"""

import os
import warnings

import environ

from django.utils.crypto import get_random_string


BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

chars = 'abcdefghijklmnopqrstuvwxyz0123456789!@#%^&*(-_=+)'
secret_key = get_random_string(50, chars)
if 'SECRET_KEY' not in os.environ:
    warnings.warn('SECRET_KEY should be added to Environment Variables. Random key will be used instead.')

env = environ.Env(  # set default values and casting
    DEBUG=(bool, False),
    SECRET_KEY=(str, secret_key),
    LOG_LEVEL=(str, 'WARNING'),
    WAVESPACE_HALF_WIDTH=(float, 6.0),
    WAVESPACE_NODES_1D=(int, 2048),
    WAVESPACE_NODES_2D=(int, 256),
    WAVESPACE_NODES_ND=(int, 48),
    WAVESPACE_VERDICT_TOL=(float, 1e-10),
    WAVESPACE_PINV_TOL=(float, 1e-12),
    WAVESPACE_FEASIBILITY_TOL=(float, 1e-8),
    WAVESPACE_NORMALIZATION_TOL=(float, 1e-8),
    WAVESPACE_RESCALE_TOL=(float, 1e-3),
    WAVESPACE_MAX_GROUP_ORDER=(int, 64),
    WAVESPACE_MAX_PRODUCT_ORDER=(int, 256),
    WAVESPACE_DECOMPOSITION_SEED=(int, 0),
    WAVESPACE_MAX_GRID_ROWS=(int, 1000000),
)

WAVESPACE_CONFIG = {
    'quadrature': {
        'half_width': env('WAVESPACE_HALF_WIDTH'),
        # nodes per axis, keyed by window dimension; higher dimensions use 'nd'
        'nodes': {1: env('WAVESPACE_NODES_1D'), 2: env('WAVESPACE_NODES_2D'), 'nd': env('WAVESPACE_NODES_ND')},
        # complex products held in memory per STFT batch
        'chunk_elements': 2 ** 19,
    },
    'phase_space': {
        'half_width': 6.0,
        'step': 0.1,
    },
    'tolerances': {
        'verdict': env('WAVESPACE_VERDICT_TOL'),
        'pinv': env('WAVESPACE_PINV_TOL'),
        'feasibility': env('WAVESPACE_FEASIBILITY_TOL'),
        'normalization': env('WAVESPACE_NORMALIZATION_TOL'),
        'rescale': env('WAVESPACE_RESCALE_TOL'),
        'representation': 1e-10,
        'principal_angle': 1e-9,
        'intertwiner': 1e-9,
        'rank_one': 1e-10,
        'heisenberg_relative': 1e-6,
    },
    'spacing_search': {
        'r_max': 8.0,
        'step': 0.05,
        'angular_step': 3.141592653589793 / 64,
    },
    'groups': {
        'max_order': env('WAVESPACE_MAX_GROUP_ORDER'),
        'max_product_order': env('WAVESPACE_MAX_PRODUCT_ORDER'),
        'heisenberg_primes': (2, 3, 5),
        'decomposition_seed': env('WAVESPACE_DECOMPOSITION_SEED'),
        'decomposition_attempts': 5,
    },
    'heisenberg': {
        'tau_nodes_per_m': 8,
        'allowed_m': (-4, -3, -2, -1, 1, 2, 3, 4),
    },
    'csv_digits': 17,
    'max_grid_rows': env('WAVESPACE_MAX_GRID_ROWS'),
}

SECRET_KEY = env('SECRET_KEY')

DEBUG = env('DEBUG')

ALLOWED_HOSTS = []

INSTALLED_APPS = (
    'wavespace',
)

DATABASES = {}

USE_TZ = True

TIME_ZONE = 'UTC'


# Logging

LOGGING = {
    'version': 1,
    'disable_existing_loggers': False,
    'formatters': {
        'verbose': {
            'format': '%(levelname)s %(asctime)s %(module)s '
                      '%(process)d %(thread)d %(message)s'
        },
    },
    'handlers': {
        'console': {
            'level': 'DEBUG',
            'class': 'logging.StreamHandler',
            'formatter': 'verbose'
        }
    },
    'loggers': {
        'wavespace': {
            'level': env('LOG_LEVEL'),
            'propagate': True,
        },
        '': {
            'level': 'WARNING',
            'handlers': ['console'],
        },
    },
}
