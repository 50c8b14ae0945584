import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "squeezeloop.settings")
django.setup()
