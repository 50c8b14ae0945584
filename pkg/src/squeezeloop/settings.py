"""
Django settings for the squeezeloop project.

squeezeloop is a batch tool: it has no database, no URLs and no templates.
Django provides the management-command CLI, form validation of experiment
configs, JSON encoding and logging configuration.

Numerical defaults are read from the environment (a `.env` file next to
`manage.py` is picked up through python-dotenv) and collected in the
`SQUEEZELOOP` dict below.

For the full list of settings and their values, see
https://docs.djangoproject.com/en/4.2/ref/settings/
"""

from pathlib import Path
import os
from dotenv import load_dotenv

# load environment variables from .env file
load_dotenv()

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

# nothing here signs cookies or sessions, the key only satisfies Django's checks
SECRET_KEY = os.environ.get("SECRET_KEY", "squeezeloop-batch-tool")

DEBUG = os.environ.get("DEBUG", "False").lower() == "true"

ALLOWED_HOSTS = []

INSTALLED_APPS = [
    "holonomy",
]

# artifacts are flat CSV/JSON files, there is no persistence layer
DATABASES = {}

TIME_ZONE = "UTC"

USE_TZ = True

SQUEEZELOOP = {
    "GRID_SIZE": int(os.environ.get("SQUEEZELOOP_GRID_SIZE", "4096")),
    "FOCK_DIM": int(os.environ.get("SQUEEZELOOP_FOCK_DIM", "64")),
    "FD_STEP": float(os.environ.get("SQUEEZELOOP_FD_STEP", "1e-3")),
    "STEPS_PER_EDGE": int(os.environ.get("SQUEEZELOOP_STEPS_PER_EDGE", "400")),
    "SEED": int(os.environ.get("SQUEEZELOOP_SEED", "1234")),
    "WORKERS": int(os.environ.get("SQUEEZELOOP_WORKERS", "1")),
}

# stdout carries the artifacts, so every log record goes to stderr
LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "plain": {
            "format": "{levelname} {name}: {message}",
            "style": "{",
        },
    },
    "handlers": {
        "console": {
            "class": "logging.StreamHandler",
            "stream": "ext://sys.stderr",
            "formatter": "plain",
        },
    },
    "loggers": {
        "holonomy": {
            "handlers": ["console"],
            "level": os.environ.get("SQUEEZELOOP_LOG_LEVEL", "WARNING").upper(),
            "propagate": False,
        },
    },
}
