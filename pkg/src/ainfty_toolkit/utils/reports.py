import json
from pathlib import Path
from typing import Any, Dict, Optional

from pydantic import BaseModel

EXIT_OK, EXIT_FAILED, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3


class Report(BaseModel):
    schema_version: int
    verb: str
    options: Dict[str, Any]
    passed: bool
    exit_code: int
    sections: Dict[str, Any] = {}
    error: Optional[str] = None


def to_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json", exclude_none=True), indent=2, sort_keys=True,
                      ensure_ascii=False, default=str)


def _lines(value: Any, indent: int = 0):
    pad = "  " * indent
    if isinstance(value, dict):
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                yield f"{pad}{key}:"
                yield from _lines(item, indent + 1)
            else:
                yield f"{pad}{key}: {item}"
    elif isinstance(value, list):
        for item in value:
            if isinstance(item, (dict, list)):
                yield f"{pad}-"
                yield from _lines(item, indent + 1)
            else:
                yield f"{pad}- {item}"
    else:
        yield f"{pad}{value}"


def to_text(report: Report) -> str:
    status = "PASS" if report.passed else "FAIL"
    head = [f"{report.verb}: {status} (exit {report.exit_code})"]
    if report.error:
        head.append(f"error: {report.error}")
    return "\n".join(head + list(_lines(report.sections))) + "\n"


def render(report: Report, output_format: str) -> str:
    return to_json(report) + "\n" if output_format == "json" else to_text(report)


def write_report(report: Report, path: Path):
    """Always JSON on disk."""
    path.write_text(to_json(report) + "\n", encoding="utf-8")
