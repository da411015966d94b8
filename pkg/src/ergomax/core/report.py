"""
ergomax Run Reports
The machine-readable record every CLI command emits.
"""

import json
import math
from datetime import datetime, timezone
from pathlib import Path
from typing import Any

from pydantic import BaseModel, Field


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat()


def encode_extended(value: Any) -> Any:
    """Recursively replace non-finite floats with JSON-safe strings."""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "+inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {k: encode_extended(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [encode_extended(v) for v in value]
    return value


class RunReport(BaseModel):
    """
    One command invocation: echo of the parsed inputs, the validated results
    payload, the tolerance table in force and a timestamp.
    """

    command: str
    inputs: dict[str, Any] = Field(default_factory=dict)
    results: dict[str, Any] = Field(default_factory=dict)
    tolerances: dict[str, float] = Field(default_factory=dict)
    timestamp: str = Field(default_factory=_now_iso)

    def to_dict(self) -> dict:
        return encode_extended(self.model_dump(mode="python"))

    def to_json(self) -> str:
        """Deterministic JSON: identical inputs give identical bytes apart from the timestamp."""
        return json.dumps(self.to_dict(), indent=2, allow_nan=False)

    def save(self, path: Path) -> str:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8") as f:
            f.write(self.to_json() + "\n")
        return str(path)
