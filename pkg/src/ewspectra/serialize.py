"""JSON forms of spectra, matrices, orderings, and certificates.

All numeric output is printed with 12 significant digits, and identical
inputs serialize byte-identically (insertion-ordered keys, no whitespace
variation).
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

import numpy as np

from .feasibility import PairingCertificate, PsdCertificate
from .linalg import BipartiteOperator
from .orderings import OrderingMap
from .spectra import Spectrum


def round12(value: float) -> float:
    return float(f"{float(value):.12g}")


def _clean(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return round12(obj)
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    return obj


def dumps(obj: Any) -> str:
    """Deterministic JSON with 12-significant-digit floats."""
    return json.dumps(_clean(obj), separators=(", ", ": "))


def spectrum_to_obj(s: Spectrum) -> dict:
    return {"m": s.m, "n": s.n, "values": list(s.values)}


def spectrum_from_obj(obj: dict) -> Spectrum:
    return Spectrum(np.asarray(obj["values"], dtype=float), (int(obj["m"]), int(obj["n"])))


def operator_to_obj(op: BipartiteOperator) -> dict:
    entries = [[[z.real, z.imag] for z in row] for row in op.entries]
    return {"m": op.m, "n": op.n, "entries": entries}


def operator_from_obj(obj: dict) -> BipartiteOperator:
    raw = obj["entries"]
    rows = []
    for row in raw:
        out = []
        for cell in row:
            if isinstance(cell, (list, tuple)):
                out.append(complex(cell[0], cell[1]))
            else:
                out.append(complex(cell))
        rows.append(out)
    return BipartiteOperator(np.asarray(rows, dtype=complex), (int(obj["m"]), int(obj["n"])))


def real_matrix_to_obj(mat: np.ndarray) -> list:
    return [list(row) for row in np.asarray(mat, dtype=float)]


def ordering_to_obj(ordm: OrderingMap) -> dict:
    return {
        "order": [list(p) for p in ordm.order],
        "witness": [str(Fraction(a)) for a in ordm.witness],
    }


def certificate_to_obj(cert: PsdCertificate | PairingCertificate) -> dict:
    if isinstance(cert, PsdCertificate):
        return {"kind": "psd", "Ys": [real_matrix_to_obj(y) for y in cert.ys]}
    return {
        "kind": "pairing",
        "lambda": list(cert.lam.values),
        "value": cert.pairing_value,
    }
