"""
Django settings for rkhs_douglas project.

The project has no database, URLs or middleware; Django provides settings,
logging configuration and the management command runner.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/5.2/ref/settings/
"""

from pathlib import Path
import environ


# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# Initialize environ
env = environ.Env(
    DEBUG=(bool, False),
    LOG_LEVEL=(str, None),
)

# Read .env file
environ.Env.read_env(BASE_DIR / ".env")


# Django refuses to start without a secret key; nothing here is signed.
SECRET_KEY = env("SECRET_KEY", default="rkhs-douglas-local")

DEBUG = env.bool("DEBUG", default=False)


# Application definition

INSTALLED_APPS = [
    "analysis.apps.AnalysisConfig",
]

DATABASES = {}

USE_TZ = True


# Logging configuration
# https://docs.djangoproject.com/en/5.2/topics/logging/

# Reports go to stdout; every log line goes to stderr
log_level = env("LOG_LEVEL", default="DEBUG" if DEBUG else "INFO")

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "verbose": {
            "format": "{levelname} {asctime} {module} {process:d} {message}",
            "style": "{",
        },
        "simple": {
            "format": "{levelname} {asctime} {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "verbose" if DEBUG else "simple",
        },
    },
    "root": {
        "handlers": ["console"],
        "level": log_level,
    },
    "loggers": {
        "django": {
            "handlers": ["console"],
            "level": "WARNING",
            "propagate": False,
        },
        "analysis": {
            "handlers": ["console"],
            "level": log_level,
            "propagate": False,
        },
        "analysis.services": {
            "handlers": ["console"],
            "level": log_level,
            "propagate": False,
        },
    },
}


# Numerical defaults; command flags and config files override these
RKHS_CONFIG = {
    "default_seed": env.int("RKHS_DOUGLAS_SEED", default=0),
    "default_format": env("RKHS_DEFAULT_FORMAT", default="json"),
    "psd_tolerance": env.float("RKHS_PSD_TOLERANCE", default=1e-10),
    "rank_tolerance": env.float("RKHS_RANK_TOLERANCE", default=1e-10),
    "point_margin": env.float("RKHS_POINT_MARGIN", default=1e-12),
    "torus_grid": env.int("RKHS_TORUS_GRID", default=256),
    "search_grid": env.int("RKHS_SEARCH_GRID", default=32),
    "search_max_evaluations": env.int("RKHS_SEARCH_MAX_EVALUATIONS", default=200),
    "workers": env.int("RKHS_WORKERS", default=1),
}
