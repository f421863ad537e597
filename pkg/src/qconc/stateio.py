"""JSON serialization for states, measurement records, and report headers.

Two interchangeable state payloads are supported: an explicit complex
matrix, {"matrix": [[{"re": .., "im": ..} x4] x4]}, and a Bloch payload,
{"bloch": {"p": [..], "s": [..], "pi": [[..]]}}. Readers accept either;
writers emit whichever the caller built. All dumps are canonical (sorted
keys, fixed indentation, trailing newline) so that a fixed seed and fixed
flags give byte-identical files.
"""

from __future__ import annotations

import json
from importlib import metadata

import numpy as np

from .errors import InvalidState
from .measurement import MeasurementRecord
from .qstate import BlochDecomposition, DensityOperator, assemble

TOOL_NAME = "qconc"

try:
    TOOL_VERSION = metadata.version(TOOL_NAME)
except metadata.PackageNotFoundError:  # pragma: no cover - source checkout
    TOOL_VERSION = "0.1.0"


def canonical_dumps(payload) -> str:
    """Deterministic JSON text: sorted keys, two-space indent, final newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def report_header(seed=None, tolerance=None, samples=None) -> dict:
    """Provenance block embedded in every emitted report."""
    header = {"tool": TOOL_NAME, "version": TOOL_VERSION}
    if seed is not None:
        header["seed"] = int(seed)
    if tolerance is not None:
        header["tolerance"] = float(tolerance)
    if samples is not None:
        header["samples"] = int(samples)
    return header


# ---------------------------------------------------------------------------
# states
# ---------------------------------------------------------------------------


def _complex_entry(value: complex) -> dict:
    return {"re": float(value.real), "im": float(value.imag)}


def state_to_dict(rho: DensityOperator) -> dict:
    return {
        "matrix": [[_complex_entry(v) for v in row] for row in rho.matrix]
    }


def bloch_to_dict(bloch: BlochDecomposition) -> dict:
    return {
        "bloch": {
            "p": [float(v) for v in bloch.p],
            "s": [float(v) for v in bloch.s],
            "pi": [[float(v) for v in row] for row in bloch.pi],
        }
    }


def _matrix_from_payload(payload) -> DensityOperator:
    try:
        m = np.array(
            [[complex(e["re"], e["im"]) for e in row] for row in payload],
            dtype=complex,
        )
    except (TypeError, KeyError, ValueError) as exc:
        raise InvalidState(f"malformed matrix payload: {exc}") from exc
    return DensityOperator(m)


def _bloch_from_payload(payload) -> DensityOperator:
    try:
        bloch = BlochDecomposition(
            p=np.asarray(payload["p"], dtype=float),
            s=np.asarray(payload["s"], dtype=float),
            pi=np.asarray(payload["pi"], dtype=float),
        )
    except (TypeError, KeyError, ValueError) as exc:
        raise InvalidState(f"malformed bloch payload: {exc}") from exc
    return assemble(bloch)


def state_from_dict(payload: dict) -> DensityOperator:
    """Parse either state payload form into a validated density operator."""
    if not isinstance(payload, dict):
        raise InvalidState("state payload must be a JSON object")
    if "matrix" in payload:
        return _matrix_from_payload(payload["matrix"])
    if "bloch" in payload:
        return _bloch_from_payload(payload["bloch"])
    raise InvalidState("state payload needs a 'matrix' or 'bloch' field")


def write_state(path, rho: DensityOperator) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps(state_to_dict(rho)))


def read_state(path) -> DensityOperator:
    with open(path, encoding="utf-8") as fh:
        return state_from_dict(json.load(fh))


# ---------------------------------------------------------------------------
# measurement records
# ---------------------------------------------------------------------------


def record_to_dict(record: MeasurementRecord) -> dict:
    payload = {
        "obs": list(record.observable),
        "expectation": float(record.expectation),
    }
    if record.shots is not None:
        payload["shots"] = int(record.shots)
        payload["std_error"] = float(record.std_error)
    return payload


def record_from_dict(payload: dict) -> MeasurementRecord:
    try:
        obs = tuple(payload["obs"])
        return MeasurementRecord(
            observable=obs,
            expectation=float(payload["expectation"]),
            shots=int(payload["shots"]) if "shots" in payload else None,
            std_error=(
                float(payload["std_error"]) if "std_error" in payload else None
            ),
        )
    except (TypeError, KeyError, ValueError) as exc:
        raise InvalidState(f"malformed measurement record: {exc}") from exc


def write_records(path, records) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(canonical_dumps([record_to_dict(r) for r in records]))


def read_records(path) -> list[MeasurementRecord]:
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    if not isinstance(payload, list):
        raise InvalidState("measurement batch must be a JSON array")
    return [record_from_dict(item) for item in payload]
