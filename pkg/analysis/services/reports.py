"""
Report serialization and atomic writes.

Reports carry no timestamps, so rerunning a command with the same config and
seed reproduces the report byte for byte.
"""

import csv
import io
import json
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union
import logging

import numpy as np

from .exceptions import ConfigError

logger = logging.getLogger(__name__)

Table = Tuple[Sequence[str], Sequence[Sequence[Any]]]


def to_jsonable(value: Any) -> Any:
    """
    Convert report values to JSON types.

    Fractions become "p/q" (or "p"), complex numbers [re, im], numpy
    scalars and arrays their Python equivalents.
    """
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return float(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        return [value.real, value.imag]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    raise TypeError(f"Cannot serialize {type(value).__name__} in a report")


def format_cell(value: Any) -> str:
    """CSV/text cell: exact rationals as p/q, complex as re+imj"""
    if isinstance(value, (bool, np.bool_)):
        return "true" if bool(value) else "false"
    if value is None:
        return ""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (complex, np.complexfloating)):
        value = complex(value)
        if value.imag == 0:
            return repr(value.real)
        return repr(value).strip("()")
    if isinstance(value, (float, np.floating)):
        return repr(float(value))
    if isinstance(value, (dict, list, tuple)):
        return json.dumps(to_jsonable(value), sort_keys=True)
    return str(value)


@dataclass
class Report:
    """
    A command's outcome, ready to render.

    ``table`` is the CSV layout for commands with a natural table; others
    fall back to a key,value summary of ``result``. ``text_lines`` are extra
    lines appended to the text rendering.
    """

    command: str
    config: Dict[str, Any]
    tool_version: str
    seed: Optional[int]
    result: Dict[str, Any]
    passed: bool = True
    table: Optional[Table] = None
    text_lines: List[str] = field(default_factory=list)

    def document(self) -> Dict[str, Any]:
        return {
            "command": self.command,
            "config": self.config,
            "tool_version": self.tool_version,
            "seed": self.seed,
            "result": self.result,
        }

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return render_json(self.document())
        if fmt == "csv":
            return render_csv(self.table or summary_table(self.result))
        if fmt == "text":
            return render_text(self)
        raise ConfigError(f"Unknown report format '{fmt}'")


def render_json(document: Dict[str, Any]) -> str:
    return json.dumps(to_jsonable(document), sort_keys=True, indent=2) + "\n"


def summary_table(result: Dict[str, Any]) -> Table:
    rows = [(key, result[key]) for key in sorted(result)]
    return ("key", "value"), rows


def render_csv(table: Table) -> str:
    header, rows = table
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_cell(v) for v in row])
    return buffer.getvalue()


def render_text(report: Report) -> str:
    lines = [
        f"command: {report.command}",
        f"tool_version: {report.tool_version}",
        f"seed: {report.seed}",
    ]
    for key in sorted(report.result):
        value = report.result[key]
        if isinstance(value, (dict, list, tuple)):
            continue
        lines.append(f"{key}: {format_cell(value)}")
    lines.extend(report.text_lines)
    return "\n".join(lines) + "\n"


def write_atomic(content: str, output: Union[str, Path]) -> Path:
    """
    Write content through a temporary file in the target directory, then
    rename it into place.
    """
    target = Path(output)
    directory = target.parent if str(target.parent) else Path(".")
    directory.mkdir(parents=True, exist_ok=True)
    handle, temporary = tempfile.mkstemp(dir=directory, prefix=f".{target.name}.", suffix=".tmp")
    try:
        with os.fdopen(handle, "w", encoding="utf-8", newline="") as stream:
            stream.write(content)
            stream.flush()
            os.fsync(stream.fileno())
        os.replace(temporary, target)
    except BaseException:
        if os.path.exists(temporary):
            os.unlink(temporary)
        raise
    logger.info(f"Report written to {target}")
    return target
