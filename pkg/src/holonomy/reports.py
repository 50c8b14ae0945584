"""
Artifact rendering for the experiment commands.

- JSON documents: artifact version, command, resolved config, optional
  timestamp and results, encoded with DjangoJSONEncoder
- CSV documents: "# key=value" metadata lines, a header row and data rows,
  floats at 17 significant digits
- Config files: flat dotenv key=value files read with python-dotenv
"""

import csv
import io
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

from django.core.serializers.json import DjangoJSONEncoder
from dotenv import dotenv_values

from squeezeloop import ARTIFACT_VERSION

from .exceptions import DomainError
from .su2 import QubitGate

logger = logging.getLogger(__name__)


@dataclass
class Artifact:
    """
    Output of one command run, renderable as JSON or CSV.

    `results` is the JSON payload; `header` and `rows` are the tabular view
    used for CSV, with `metadata` written as extra comment lines. A set
    `failure` message makes the command exit 1 after the artifact is written.
    """

    command: str
    config: dict
    results: dict
    header: list[str]
    rows: list[list]
    metadata: dict = field(default_factory=dict)
    failure: str | None = None


def format_value(value) -> str:
    """CSV cell text: floats with 17 significant digits, booleans as true/false."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def complex_pair(value: complex) -> list[float]:
    value = complex(value)
    return [value.real, value.imag]


def gate_entries(gate: QubitGate) -> list[list[list[float]]]:
    """Gate entries as nested [real, imag] pairs."""
    return [[complex_pair(entry) for entry in row] for row in gate.entries]


def render_json(artifact: Artifact, generated_at=None) -> str:
    document = {
        "artifact_version": ARTIFACT_VERSION,
        "command": artifact.command,
        "config": artifact.config,
    }
    if generated_at is not None:
        document["generated_at"] = generated_at
    document["results"] = artifact.results
    return json.dumps(document, cls=DjangoJSONEncoder, indent=2) + "\n"


def render_csv(artifact: Artifact, generated_at=None) -> str:
    buffer = io.StringIO()
    buffer.write(f"# artifact_version={ARTIFACT_VERSION}\n")
    buffer.write(f"# command={artifact.command}\n")
    if generated_at is not None:
        buffer.write(f"# generated_at={generated_at.isoformat()}\n")
    config = json.dumps(artifact.config, cls=DjangoJSONEncoder, sort_keys=True)
    buffer.write(f"# config={config}\n")
    for key, value in artifact.metadata.items():
        buffer.write(f"# {key}={format_value(value)}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(artifact.header)
    for row in artifact.rows:
        writer.writerow([format_value(value) for value in row])
    return buffer.getvalue()


def render(artifact: Artifact, output_format: str, generated_at=None) -> str:
    if output_format == "csv":
        return render_csv(artifact, generated_at)
    return render_json(artifact, generated_at)


def read_config_file(path: str) -> dict[str, str]:
    """
    Read a flat key=value experiment config.

    Raises:
        DomainError: If the file does not exist or a key has no value
    """
    config_path = Path(path)
    if not config_path.is_file():
        raise DomainError(f"Config file not found: {path}")
    values = dotenv_values(config_path)
    missing = [key for key, value in values.items() if value is None]
    if missing:
        raise DomainError(f"Config keys without a value: {', '.join(missing)}")
    logger.debug(f"Read {len(values)} config keys from {path}")
    return dict(values)


def _config_text(value) -> str:
    if isinstance(value, (list, tuple)):
        return ",".join(_config_text(item) for item in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render_config_file(config: dict) -> str:
    """Resolved config as key=value lines; None values are left out."""
    lines = [f"{key}={_config_text(value)}" for key, value in config.items() if value is not None]
    return "\n".join(lines) + "\n"


def write_text(path: str, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8", newline="")
