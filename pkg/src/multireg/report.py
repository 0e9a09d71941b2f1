"""Text and JSON rendering of command results."""

import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from multireg.model.region import SemigroupRegion
from multireg.model.vector import format_vector


@dataclass
class Report:
    command: str
    data: dict[str, object] = field(default_factory=dict)
    # an UNKNOWN, window-marked or uncertified answer is present
    undecided: bool = False
    # a golden diff or self-test check failed
    failed: bool = False

    def add(self, key: str, value: object) -> None:
        self.data[key] = value

    def render(self, output_format: str = "text") -> str:
        if output_format == "json":
            return json.dumps(
                {
                    "command": self.command,
                    "undecided": self.undecided,
                    "failed": self.failed,
                    **to_jsonable(self.data),
                },
                indent=2,
                ensure_ascii=False,
            )
        lines = [f"== {self.command} =="]
        lines.extend(format_text(self.data))
        if self.undecided:
            lines.append("note: some answers are undecided or uncertified")
        if self.failed:
            lines.append("note: some checks failed")
        return "\n".join(lines)


def to_jsonable(value: object) -> object:
    if isinstance(value, float) and math.isinf(value):
        return "inf" if value > 0 else "-inf"
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, SemigroupRegion):
        return value.to_dict()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, frozenset, set)):
        items = sorted(value) if isinstance(value, (frozenset, set)) else value
        return [to_jsonable(v) for v in items]
    return value


def _is_vector(value: object) -> bool:
    return isinstance(value, (list, tuple)) and bool(value) and all(
        isinstance(x, int) and not isinstance(x, bool) for x in value
    )


def _scalar(value: object) -> str:
    value = to_jsonable(value)
    if _is_vector(value):
        return format_vector(tuple(value))
    if isinstance(value, list) and all(_is_vector(v) for v in value):
        return " ".join(format_vector(tuple(v)) for v in value) or "(none)"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if value is None:
        return "-"
    return str(value)


def format_text(data: object, indent: int = 0) -> list[str]:
    pad = "  " * indent
    data = to_jsonable(data)
    lines: list[str] = []
    if isinstance(data, dict):
        for key, value in data.items():
            if isinstance(value, dict) or (
                isinstance(value, list)
                and value
                and not all(_is_vector(v) for v in value)
                and not _is_vector(value)
            ):
                lines.append(f"{pad}{key}:")
                lines.extend(format_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(data, list):
        for item in data:
            if isinstance(item, (dict, list)) and not _is_vector(item):
                if isinstance(item, list) and all(_is_vector(v) for v in item):
                    lines.append(f"{pad}- {_scalar(item)}")
                    continue
                lines.append(f"{pad}-")
                lines.extend(format_text(item, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(item)}")
    else:
        lines.append(f"{pad}{_scalar(data)}")
    return lines
