"""File formats: distributions, states, marginal sets, reports and curves.

Distribution: ``{"probs": [0.6, 0.4]}`` (any order; canonicalized on load).
State: ``{"dims": [2, 2], "matrix": [[[re, im], ...], ...]}``, row-major.
Marginal set: ``{"marginals": [<state>, ...]}``.
All numbers are written with 9 significant digits.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path
from typing import IO, Sequence

import numpy as np

from .composite import CompositeReport
from .majorization import canonicalize
from .qstate import DensityMatrix, validate

SIG_DIGITS = 9
NOISE_FLOOR = 1e-12
FIG1_HEADER = ("p_b", "C_classical", "C_separable", "C_entangled")


class FormatError(ValueError):
    """A document does not follow the expected layout."""


def fmt(x: float) -> float:
    """Round to 9 significant digits; magnitudes below 1e-12 print as 0."""
    x = float(x)
    if abs(x) < NOISE_FLOOR:
        return 0.0
    x = float(f"{x:.{SIG_DIGITS}g}")
    return x + 0.0


def _read_json(path) -> dict:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise FormatError(f"{path}: {exc}") from exc
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: top level must be an object")
    return doc


def distribution_from_doc(doc: dict) -> np.ndarray:
    if "probs" not in doc or not isinstance(doc["probs"], list):
        raise FormatError('distribution needs a "probs" list')
    try:
        return canonicalize(doc["probs"])
    except (TypeError, ValueError) as exc:
        raise FormatError(str(exc)) from exc


def distribution_to_doc(v: Sequence[float]) -> dict:
    return {"probs": [fmt(x) for x in v]}


def load_distribution(path) -> np.ndarray:
    return distribution_from_doc(_read_json(path))


def state_to_doc(rho: DensityMatrix) -> dict:
    m = rho.matrix
    return {
        "dims": list(rho.dims),
        "matrix": [[[fmt(z.real), fmt(z.imag)] for z in row] for row in m],
    }


def state_from_doc(doc: dict) -> DensityMatrix:
    try:
        dims = [int(d) for d in doc["dims"]]
        raw = np.asarray(doc["matrix"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"bad state document: {exc}") from exc
    if raw.ndim != 3 or raw.shape[2] != 2 or raw.shape[0] != raw.shape[1]:
        raise FormatError(f"matrix entries must be [re, im] pairs in a square array, got {raw.shape}")
    try:
        return validate(raw[..., 0] + 1j * raw[..., 1], dims)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def load_state(path) -> DensityMatrix:
    return state_from_doc(_read_json(path))


def save_state(rho: DensityMatrix, path) -> None:
    Path(path).write_text(json.dumps(state_to_doc(rho)) + "\n")


def load_marginals(path) -> list[DensityMatrix]:
    doc = _read_json(path)
    if not isinstance(doc.get("marginals"), list):
        raise FormatError('marginal set needs a "marginals" list')
    return [state_from_doc(d) for d in doc["marginals"]]


def marginals_to_doc(states: Sequence[DensityMatrix]) -> dict:
    return {"marginals": [state_to_doc(s) for s in states]}


def report_to_doc(report: CompositeReport) -> dict:
    doc = {
        "spectrum": [fmt(x) for x in report.spectrum],
        "marginal_spectra": [[fmt(x) for x in s] for s in report.marginal_spectra],
        "correlation_bits": fmt(report.correlation_bits),
        "is_classical": bool(report.is_classical),
    }
    if report.two_qubit_ppt is not None:
        doc["two_qubit_ppt"] = bool(report.two_qubit_ppt)
    if report.gram_offdiag_max is not None:
        doc["gram_offdiag_max"] = fmt(report.gram_offdiag_max)
    for key, value in report.extras.items():
        doc[key] = fmt(value) if isinstance(value, float) else value
    return doc


def write_fig1_csv(rows: np.ndarray, out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(FIG1_HEADER)
    for row in rows:
        writer.writerow([f"{fmt(x):.{SIG_DIGITS}g}" for x in row])


def read_fig1_csv(path) -> np.ndarray:
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != FIG1_HEADER:
            raise FormatError(f"unexpected header {header}")
        return np.array([[float(x) for x in row] for row in reader])
