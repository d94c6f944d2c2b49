"""
Management command running the RKHS analyses.

    python manage.py rkhs np-test --kernel sandwich_disk --points pts.csv --base 0
    python manage.py rkhs verify-identity --space bergman --n 3 --degree 12
    python manage.py rkhs growth-report --n-max 3 --format csv

Exit status: 0 when a verdict was computed, 64 for unreadable input or
invalid options, 65 for domain errors, 2 when --expect-pass is set and the
verdict did not pass.
"""

import logging
import sys

from django.core.management.base import BaseCommand, CommandError, CommandParser

from analysis.services.config import COMMANDS, RUN_CONFIG_FIELDS
from analysis.services.exceptions import ConfigError, ParseError, RKHSError
from analysis.services.reports import write_atomic
from analysis.services.runner import RunService

logger = logging.getLogger(__name__)

EXIT_EXPECTATION_FAILED = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class RunParser(CommandParser):
    """CommandParser whose usage errors exit with EXIT_USAGE"""

    def error(self, message):
        if self.called_from_command_line:
            self.print_usage(sys.stderr)
            self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")
        raise CommandError(f"Error: {message}", returncode=EXIT_USAGE)


class Command(BaseCommand):
    help = "Complete Pick tests, Douglas factorization and shift identity checks"

    def create_parser(self, prog_name, subcommand, **kwargs):
        parser = super().create_parser(prog_name, subcommand, **kwargs)
        # BaseCommand always builds a plain CommandParser
        parser.__class__ = RunParser
        return parser

    def add_arguments(self, parser):
        parser.add_argument(
            "command",
            choices=list(COMMANDS),
            help="; ".join(f"{name}: {text}" for name, text in COMMANDS.items()),
        )
        for name, definition in RUN_CONFIG_FIELDS.items():
            if name == "expect_pass":
                continue
            help_text = definition.description or None
            if definition.choices:
                help_text = f"One of {', '.join(definition.choices)}"
            parser.add_argument(f"--{name.replace('_', '-')}", dest=name, help=help_text)
        parser.add_argument(
            "--expect-pass",
            dest="expect_pass",
            action="store_true",
            default=None,
            help="Exit with status 2 when the verdict does not pass",
        )
        parser.add_argument("--config", dest="config", help="JSON file of options")

    def handle(self, *args, **options):
        command = options["command"]
        flags = {name: options.get(name) for name in RUN_CONFIG_FIELDS}
        service = RunService()

        try:
            run_config = service.build_config(command, flags, options.get("config"))
            report = service.run(run_config)
            content = report.render(run_config.format)
            if run_config.output:
                write_atomic(content, run_config.output)
            else:
                self.stdout.write(content, ending="")
        except (ParseError, ConfigError) as e:
            logger.error(f"{command}: {e}")
            raise CommandError(str(e), returncode=EXIT_USAGE)
        except RKHSError as e:
            logger.error(f"{command}: {e}")
            raise CommandError(str(e), returncode=EXIT_DATA)

        if run_config.expect_pass and not report.passed:
            raise CommandError(
                f"{command} did not pass (see report)",
                returncode=EXIT_EXPECTATION_FAILED,
            )
