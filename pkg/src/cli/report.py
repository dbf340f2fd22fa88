"""
Report payloads and rendering.

JSON output is sorted and rounded to 12 significant digits so a fixed
document, flag set and seed always give the same bytes.
"""

import json
from typing import Any, Dict, List

import numpy as np

from src.cli.document import encode_label
from src.core.morphisms import Morphism
from src.core.objects import ObjectHandle
from src.core.outcome import DecompositionOutcome
from src.lawcheck.laws import LawReport
from src.schemas import LawSummary, Report


def real(x: float) -> float:
    out = float(f"{float(x):.12g}")
    return 0.0 if out == 0 else out


def pair(z: complex) -> List[float]:
    return [real(z.real), real(z.imag)]


def vector_payload(v) -> List[List[float]]:
    return [pair(complex(z)) for z in np.asarray(v).reshape(-1)]


def object_payload(a: ObjectHandle) -> Dict[str, Any]:
    out: Dict[str, Any] = {"elements": [encode_label(x) for x in a.labels]} if a.is_set else {"dim": a.dim}
    if a.name:
        out["name"] = a.name
    return out


def morphism_payload(f: Morphism) -> Dict[str, Any]:
    out = {"dom": object_payload(f.dom), "cod": object_payload(f.cod)}
    if f.is_table:
        out["table"] = {encode_label(x): encode_label(y) for x, y in zip(f.dom.labels, f.table)}
    else:
        out["matrix"] = [[pair(z) for z in row] for row in f.matrix]
    return out


def _jsonable(value):
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, (bool, str)) or value is None:
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return real(value)
    if isinstance(value, (complex, np.complexfloating)):
        return pair(value)
    return str(value)


def outcome_fields(f: Morphism, outcome: DecompositionOutcome) -> Dict[str, Any]:
    """verdict, values and witnesses of a decomposition report."""
    witnesses: Dict[str, Any] = {}
    values = _jsonable(outcome.details)
    if outcome.factors is not None:
        witnesses["first"], witnesses["second"] = (morphism_payload(m) for m in outcome.factors)
        if outcome.witness_isos is not None:
            witnesses["dom_iso"], witnesses["cod_iso"] = (morphism_payload(m) for m in outcome.witness_isos)
        values["replay_deviation"] = real(outcome.replay_deviation(f))
    return {"verdict": outcome.verdict.value, "values": values, "witnesses": witnesses}


def law_summary(report: LawReport) -> LawSummary:
    first = report.failures[0].model_dump() if report.failures else None
    if first is not None and first["deviation"] is not None:
        first["deviation"] = real(first["deviation"])
    return LawSummary(
        law_id=report.law_id.value,
        trials=report.trials,
        passed=report.passed,
        failures=len(report.failures),
        max_deviation=None if report.max_deviation is None else real(report.max_deviation),
        first_failure=first,
    )


def to_json(report: Report) -> str:
    return json.dumps(report.model_dump(mode="json", exclude_none=True), indent=2,
                      sort_keys=True, ensure_ascii=False) + "\n"


def from_json(text: str) -> Report:
    return Report.model_validate_json(text)


def to_text(report: Report) -> str:
    lines = [f"command: {report.command}", f"instance: {report.instance}"]
    for key in ("morphism", "policy", "mode", "verdict", "passed", "seed"):
        value = getattr(report, key)
        if value is not None:
            lines.append(f"{key}: {value}")
    lines.append(f"tolerance: {report.tolerance:g}")
    for key in sorted(report.values):
        lines.append(f"{key}: {json.dumps(report.values[key], ensure_ascii=False)}")
    for key in sorted(report.witnesses):
        lines.append(f"witness {key}: {json.dumps(report.witnesses[key], sort_keys=True, ensure_ascii=False)}")
    for law in report.laws:
        status = "pass" if law.passed else f"FAIL ({law.failures} failure(s))"
        lines.append(f"law {law.law_id}: {status}, {law.trials} trial(s), max deviation {law.max_deviation}")
    if report.timing_ms is not None:
        lines.append(f"timing_ms: {report.timing_ms:.3f}")
    lines.append(f"exit: {report.exit_code}")
    return "\n".join(lines) + "\n"
