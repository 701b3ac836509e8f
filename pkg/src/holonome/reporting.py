"""Deterministic JSON / CSV serialization for reports and figure data.

Byte determinism is part of the contract: keys are emitted sorted, floats
with 17 significant digits (enough to round-trip a double exactly), LF line
endings, no locale dependence and no timestamps in payload bodies.
"""

from __future__ import annotations

import json

import numpy as np

TOOL_VERSION = "0.1.0"

AUDIT_CONSISTENCY_TOL = 1e-8


def format_float(x: float) -> str:
    return f"{float(x):.17g}"


def _emit(value) -> str:
    if isinstance(value, dict):
        items = sorted(value.items(), key=lambda kv: kv[0])
        inner = ",".join(f"{json.dumps(str(k))}:{_emit(v)}" for k, v in items)
        return "{" + inner + "}"
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(_emit(v) for v in value) + "]"
    if isinstance(value, bool) or value is None:
        return json.dumps(value)
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(value)
    if isinstance(value, (complex, np.complexfloating)):
        return _emit({"re": float(value.real), "im": float(value.imag)})
    if isinstance(value, np.ndarray):
        return _emit(value.tolist())
    if isinstance(value, str):
        return json.dumps(value)
    raise TypeError(f"cannot serialize {type(value)!r}")


def dumps_report(report: dict) -> str:
    return _emit(report) + "\n"


def matrix_payload(m) -> dict:
    m = np.asarray(m, dtype=complex)
    return {"real": m.real.tolist(), "imag": m.imag.tolist()}


def build_report(kind: str, inputs: dict, outputs: dict) -> dict:
    return {
        "kind": kind,
        "inputs": inputs,
        "outputs": outputs,
        "tool_version": TOOL_VERSION,
        "deterministic": True,
    }


def csv_lines(header, rows):
    """Render rows with the exact header; ints bare, floats at 17 digits."""
    lines = [",".join(header)]
    for row in rows:
        cells = []
        for cell in row:
            if isinstance(cell, (int, np.integer)) and not isinstance(cell, bool):
                cells.append(str(int(cell)))
            elif isinstance(cell, (float, np.floating)):
                cells.append(format_float(cell))
            else:
                cells.append(str(cell))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def emit_csv(path, header, rows):
    with open(path, "w", newline="\n") as fh:
        fh.write(csv_lines(header, rows))


def parse_csv(text: str):
    """Round-trip parser for emitted CSVs: header plus typed rows."""
    lines = text.strip("\n").split("\n")
    header = lines[0].split(",")
    rows = []
    for line in lines[1:]:
        cells = []
        for cell in line.split(","):
            try:
                cells.append(int(cell))
            except ValueError:
                cells.append(float(cell))
        rows.append(tuple(cells))
    return header, rows


def audit_payload(fact) -> dict:
    """JSON payload for a two-qubit factorization audit."""
    g1_exact, g2_exact = fact.invariants_exact
    g1_ctrl, g2_ctrl = fact.invariants_controlled
    verdict = "consistent" if fact.discrepancy < AUDIT_CONSISTENCY_TOL else "inconsistent"
    return {
        "coupling_j": fact.loop.coupling_j,
        "controlled_phase_angle": 2.0 * fact.loop.coupling_j,
        "discrepancy": fact.discrepancy,
        "verdict": verdict,
        "invariants_exact": {"g1": complex(g1_exact), "g2": g2_exact},
        "invariants_controlled": {"g1": complex(g1_ctrl), "g2": g2_ctrl},
        "invariants_distance": fact.invariants_distance,
        "invariants_match": fact.invariants_match,
        "gamma_exact": matrix_payload(fact.gamma_exact),
        "paper_factorization": matrix_payload(fact.paper_factorization),
    }
