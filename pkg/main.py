"""
Console entry point: ``rkhs-douglas <command> [options]``.

Equivalent to ``python manage.py rkhs <command> [options]``.
"""

import os
import sys


def main(argv=None):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "rkhs_douglas.settings")

    import django
    from django.core.management import call_command
    from django.core.management.base import CommandError

    django.setup()
    try:
        call_command("rkhs", *(sys.argv[1:] if argv is None else argv))
    except CommandError as e:
        sys.stderr.write(f"error: {e}\n")
        return e.returncode
    return 0


if __name__ == "__main__":
    sys.exit(main())
