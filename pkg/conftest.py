import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "rkhs_douglas.settings")
django.setup()
