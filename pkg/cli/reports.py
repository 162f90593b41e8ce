"""Rendering of command reports as sorted JSON or as pandas tables.

This module turns whatever a command returns (pydantic models, values with ``to_json``,
plain dictionaries) into a JSON payload, and renders that payload either as
byte-stable JSON or as human-readable tables.
"""

import json
import logging
from typing import Any, Optional

import pandas as pd
from pydantic import BaseModel

logger = logging.getLogger(__name__)


class TranslationReport(BaseModel):
    """Report of a theory-to-theory translation."""

    direction: str
    input: str
    input_classification: dict
    translated: str
    translated_classification: dict
    flattened: Optional[str] = None
    flattened_classification: Optional[dict] = None
    expanded: Optional[str] = None
    expanded_classification: Optional[dict] = None
    definitions: list[dict] = []


def to_payload(report: Any) -> Any:
    """Convert a command result into JSON-compatible data.

    Args:
        report: Pydantic model, object with ``to_json``, mapping, sequence or scalar

    Returns:
        Any: Data accepted by ``json.dumps``
    """
    if isinstance(report, BaseModel):
        return report.model_dump(mode="json")
    if hasattr(report, "to_json"):
        return report.to_json()
    if isinstance(report, dict):
        return {str(k): to_payload(v) for k, v in report.items()}
    if isinstance(report, (list, tuple)):
        return [to_payload(v) for v in report]
    if isinstance(report, (str, int, float, bool)) or report is None:
        return report
    return str(report)


def render_json(payload: Any) -> str:
    return json.dumps(payload, sort_keys=True, indent=2)


def _cell(value: Any) -> Any:
    if isinstance(value, (dict, list)):
        return json.dumps(value, sort_keys=True)
    return value


def _table(rows: list) -> str:
    if rows and all(isinstance(r, dict) for r in rows):
        df = pd.DataFrame([{k: _cell(v) for k, v in sorted(r.items())} for r in rows])
    else:
        df = pd.DataFrame({"value": [_cell(r) for r in rows]})
    return df.to_string(index=False)


def render_pretty(payload: Any) -> str:
    """Scalars as ``key: value`` lines, lists as tables, nested objects indented."""
    if not isinstance(payload, dict):
        return _table(payload) if isinstance(payload, list) else str(payload)
    scalars = {k: v for k, v in payload.items() if not isinstance(v, (dict, list))}
    lines = []
    if scalars:
        frame = pd.DataFrame({"field": list(scalars), "value": [str(v) for v in scalars.values()]})
        lines.append(frame.sort_values("field").to_string(index=False, header=False))
    for key in sorted(k for k in payload if k not in scalars):
        value = payload[key]
        lines.append("")
        lines.append(f"[{key}]")
        if isinstance(value, list):
            lines.append(_table(value) if value else "(none)")
        else:
            lines.append(render_pretty(value))
    return "\n".join(lines)


def render(report: Any, pretty: bool = False) -> str:
    payload = to_payload(report)
    return render_pretty(payload) if pretty else render_json(payload)
