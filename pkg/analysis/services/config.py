"""
Run configuration schema and validation.

Each option has a FieldDefinition; values arrive as strings from the command
line, as JSON values from a config file, or from settings.RKHS_CONFIG, and
are coerced to the declared type. Precedence, lowest first: field defaults,
RKHS_CONFIG, config file, explicit flags.
"""

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple
import logging

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

FORMATS = ("json", "csv", "text")

COMMANDS: Dict[str, str] = {
    "np-test": "Schur-complement complete Pick test at a base point",
    "np-oracle": "Coefficient test of a diagonal kernel's reciprocal series",
    "gram": "Gram matrix of a kernel on a point set",
    "douglas-solve": "Minimal-norm solution of A X = B with certificates",
    "corona-check": "Kernel-compressed test of M_Phi M_Phi* >= M_Psi M_Psi*",
    "verify-identity": "Exact shift identity on a truncated model, for one N or N..n_max",
    "counterexample": "Bidisk counterexample certificates for one N",
    "growth-report": "Norm lower bounds and achieved norms for N = 1..n_max",
    "falsify": "Seeded random search for a non-PSD Schur matrix",
    "dominance": "Ordering scale * k_upper - k_lower on a point set",
}


@dataclass
class FieldDefinition:
    """Definition of a run configuration option"""

    field_type: type
    default: Any = None
    description: str = ""
    choices: Optional[Tuple[str, ...]] = None
    minimum: Optional[float] = None
    positive: bool = False
    setting: Optional[str] = None


RUN_CONFIG_FIELDS: Dict[str, FieldDefinition] = {
    "kernel": FieldDefinition(str, description="Builtin name, JSON file or inline JSON"),
    "upper": FieldDefinition(str, description="Second kernel for dominance"),
    "points": FieldDefinition(str, description="Point CSV file"),
    "random_points": FieldDefinition(int, minimum=1, description="Sample K seeded points"),
    "base": FieldDefinition(str, description="Base point, comma-separated (default origin)"),
    "tolerance": FieldDefinition(
        float, default=1e-10, positive=True, setting="psd_tolerance",
        description="PSD tolerance (relative)",
    ),
    "rank_tolerance": FieldDefinition(
        float, default=1e-10, positive=True, setting="rank_tolerance",
        description="Relative singular value cutoff",
    ),
    "seed": FieldDefinition(int, default=0, minimum=0, setting="default_seed"),
    "output": FieldDefinition(str, description="Report path (stdout when absent)"),
    "format": FieldDefinition(str, default="json", choices=FORMATS, setting="default_format"),
    "expect_pass": FieldDefinition(bool, default=False),
    "matrices": FieldDefinition(str, description="JSON file with matrices A and B"),
    "multipliers": FieldDefinition(str, description="JSON file with polynomial matrices phi and psi"),
    "space": FieldDefinition(str, choices=("bergman", "bidisk", "ball")),
    "n": FieldDefinition(int, minimum=1),
    "degree": FieldDefinition(int, minimum=1, description="Truncation degree D (default N + 8)"),
    "n_max": FieldDefinition(int, minimum=1, description="Largest N (verify-identity checks N..n_max)"),
    "degree_bound": FieldDefinition(int, minimum=1),
    "grid": FieldDefinition(int, default=256, minimum=1, setting="torus_grid"),
    "search_grid": FieldDefinition(int, default=32, minimum=1, setting="search_grid"),
    "max_evaluations": FieldDefinition(
        int, default=200, minimum=0, setting="search_max_evaluations"
    ),
    "order": FieldDefinition(int, default=12, minimum=0),
    "trials": FieldDefinition(int, default=50, minimum=1),
    "size": FieldDefinition(int, default=8, minimum=1),
    "scale": FieldDefinition(str, default="1", description="Rational dominance scale"),
    "solution": FieldDefinition(str, description="Polynomial matrix JSON to check as a solution"),
    "workers": FieldDefinition(int, default=1, minimum=1, setting="workers"),
}

POINT_SOURCES = ("points", "random_points")

# Options each command cannot run without; a tuple means "one of"
COMMAND_REQUIREMENTS: Dict[str, List[Any]] = {
    "np-test": ["kernel", POINT_SOURCES],
    "np-oracle": ["kernel"],
    "gram": ["kernel", POINT_SOURCES],
    "douglas-solve": ["matrices"],
    "corona-check": ["kernel", "multipliers", POINT_SOURCES],
    "verify-identity": ["space", "n"],
    "counterexample": ["n"],
    "growth-report": ["n_max"],
    "falsify": ["kernel"],
    "dominance": ["kernel", "upper", POINT_SOURCES],
}


@dataclass(frozen=True)
class RunConfig:
    """Validated options for one command run"""

    command: str
    options: Dict[str, Any] = field(default_factory=dict)

    def get(self, name: str) -> Any:
        return self.options.get(name)

    def __getattr__(self, name: str) -> Any:
        options = self.__dict__.get("options", {})
        if name in RUN_CONFIG_FIELDS:
            return options.get(name)
        raise AttributeError(name)

    @property
    def scale_fraction(self) -> Fraction:
        return Fraction(self.options["scale"])

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        return {"command": data["command"], **data["options"]}


def _coerce(name: str, value: Any, definition: FieldDefinition) -> Any:
    """Coerce a raw value to the field type"""
    if value is None:
        return None
    try:
        if definition.field_type is bool:
            if isinstance(value, bool):
                return value
            if isinstance(value, str):
                lowered = value.lower()
                if lowered in ("true", "yes", "1"):
                    return True
                if lowered in ("false", "no", "0"):
                    return False
            raise ValueError(value)
        if definition.field_type is int:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(value)
            return int(value)
        if definition.field_type is float:
            if isinstance(value, bool):
                raise ValueError(value)
            return float(value)
        if definition.field_type is str:
            return str(value)
    except (TypeError, ValueError):
        raise ConfigError(
            f"Option '{name}' has invalid value {value!r}. "
            f"Expected {definition.field_type.__name__}"
        )
    return value


def _check(name: str, value: Any, definition: FieldDefinition):
    if value is None:
        return
    if definition.choices and value not in definition.choices:
        raise ConfigError(
            f"Option '{name}' must be one of {', '.join(definition.choices)}, got {value!r}"
        )
    if definition.positive and not value > 0:
        raise ConfigError(f"Option '{name}' must be > 0, got {value}")
    if definition.minimum is not None and value < definition.minimum:
        raise ConfigError(f"Option '{name}' must be >= {definition.minimum}, got {value}")


def validate_run_config(
    command: str,
    flags: Optional[Mapping[str, Any]] = None,
    settings_config: Optional[Mapping[str, Any]] = None,
    file_config: Optional[Mapping[str, Any]] = None,
) -> RunConfig:
    """
    Merge option sources and validate them for a command.

    Args:
        command: Command name
        flags: Explicit command-line values (None means not given)
        settings_config: settings.RKHS_CONFIG
        file_config: Options from a JSON config file

    Returns:
        RunConfig with every field present (None for unset options)

    Raises:
        ConfigError: On unknown commands or options, bad values, or missing requirements
    """
    if command not in COMMANDS:
        raise ConfigError(
            f"Unknown command '{command}'. Available: {', '.join(COMMANDS)}"
        )
    flags = {k: v for k, v in (flags or {}).items() if v is not None}
    settings_config = settings_config or {}
    file_config = dict(file_config or {})
    file_config.pop("command", None)

    unknown = sorted(set(flags) - set(RUN_CONFIG_FIELDS)) + sorted(
        set(file_config) - set(RUN_CONFIG_FIELDS)
    )
    if unknown:
        raise ConfigError(f"Unknown options: {', '.join(unknown)}")

    options: Dict[str, Any] = {}
    for name, definition in RUN_CONFIG_FIELDS.items():
        value = definition.default
        if definition.setting and settings_config.get(definition.setting) is not None:
            value = settings_config[definition.setting]
        if name in file_config:
            value = file_config[name]
        if name in flags:
            value = flags[name]
        value = _coerce(name, value, definition)
        _check(name, value, definition)
        options[name] = value

    try:
        Fraction(options["scale"])
    except (TypeError, ValueError, ZeroDivisionError):
        raise ConfigError(f"Option 'scale' must be rational, got {options['scale']!r}")

    missing = []
    for requirement in COMMAND_REQUIREMENTS[command]:
        if isinstance(requirement, tuple):
            if all(options.get(name) is None for name in requirement):
                missing.append(" or ".join(f"--{n.replace('_', '-')}" for n in requirement))
        elif options.get(requirement) is None:
            missing.append(f"--{requirement.replace('_', '-')}")
    if missing:
        raise ConfigError(f"Command '{command}' requires {', '.join(missing)}")

    if command == "verify-identity":
        if options["n_max"] is not None and options["n_max"] < options["n"]:
            raise ConfigError(
                f"Option 'n_max' must be >= n ({options['n']}), got {options['n_max']}"
            )
        # A range keeps degree unset so each N truncates at its own N + 8
        if options["degree"] is None and options["n_max"] is None:
            options["degree"] = options["n"] + 8

    logger.debug(f"Validated config for {command}: {options}")
    return RunConfig(command=command, options=options)


def list_commands() -> List[str]:
    """Get list of all available commands"""
    return list(COMMANDS.keys())
