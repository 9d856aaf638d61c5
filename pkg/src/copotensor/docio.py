"""JSON document formats: tensors in, certificates out.

Rational values travel as strings ("p/q" or a decimal literal) so that exact
paths never pass through floats.  Certificates carry the input tensor's
digest so a later `verify` run can re-check a witness with no access to the
producing run's state.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from numbers import Rational
from typing import Any

from .tensor import Scalar, SymTensor, SymTensorBuilder

TOOL_VERSION = "0.1.0"


class DocumentError(ValueError):
    """Malformed tensor or certificate document."""


def parse_scalar(value: Any) -> Scalar:
    if isinstance(value, bool):
        raise DocumentError(f"bad scalar: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as exc:
            raise DocumentError(f"bad rational string {value!r}") from exc
    raise DocumentError(f"bad scalar: {value!r}")


def emit_scalar(value: Scalar) -> str:
    if isinstance(value, Rational):
        f = Fraction(value)
        return str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
    return repr(float(value))


def parse_tensor(text: str) -> SymTensor:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("tensor document must be a JSON object")
    try:
        n = int(doc["n"])
        d = int(doc["d"])
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError("document needs integer fields 'n' and 'd'") from exc
    default = parse_scalar(doc.get("default", 0))
    builder = SymTensorBuilder(n, d, default)
    seen: set[tuple[int, ...]] = set()
    for entry in doc.get("entries", []):
        try:
            idx = tuple(int(i) for i in entry["idx"])
            val = parse_scalar(entry["val"])
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"bad entry {entry!r}") from exc
        if len(idx) != d:
            raise DocumentError(f"index {idx} has length {len(idx)}, expected {d}")
        if any(not 1 <= i <= n for i in idx):
            raise DocumentError(f"index {idx} out of range 1..{n}")
        if tuple(sorted(idx)) != idx:
            raise DocumentError(f"index {idx} is not sorted non-decreasing")
        if idx in seen:
            raise DocumentError(f"duplicate canonical index {idx}")
        seen.add(idx)
        builder.set(idx, val)
    return builder.build()


def emit_tensor(A: SymTensor, name: str | None = None) -> str:
    doc: dict[str, Any] = {"n": A.n, "d": A.d}
    if name:
        doc["name"] = name
    doc["default"] = emit_scalar(A.default)
    doc["entries"] = [{"idx": list(k), "val": emit_scalar(v)}
                      for k, v in sorted(A.entries.items())]
    return json.dumps(doc, indent=2)


def tensor_digest(A: SymTensor) -> str:
    """sha256 over a canonical serialization; stable across entry order and
    across storing vs defaulting equal values."""
    parts = [f"n={A.n}", f"d={A.d}", f"default={emit_scalar(A.default)}"]
    for key, v in sorted(A.entries.items()):
        if v != A.default:
            parts.append(f"{','.join(map(str, key))}:{emit_scalar(v)}")
    return hashlib.sha256("|".join(parts).encode()).hexdigest()


def certificate_document(verdict: str, method: str, *,
                         level: int | None = None,
                         depth: int | None = None,
                         witness: tuple[Scalar, ...] | None = None,
                         witness_value: Scalar | None = None,
                         stats: dict[str, Any] | None = None,
                         tensor: SymTensor) -> dict[str, Any]:
    doc: dict[str, Any] = {
        "verdict": verdict,
        "method": method,
        "tool_version": TOOL_VERSION,
        "input_digest": tensor_digest(tensor),
    }
    if level is not None:
        doc["level"] = level
    if depth is not None:
        doc["depth"] = depth
    if witness is not None:
        doc["witness"] = {"point": [emit_scalar(c) for c in witness]}
        if witness_value is not None:
            doc["witness"]["value"] = emit_scalar(witness_value)
    if stats:
        doc["stats"] = stats
    return doc


def load_certificate(text: str) -> dict[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"malformed JSON: {exc}") from exc
    if not isinstance(doc, dict) or "verdict" not in doc or "input_digest" not in doc:
        raise DocumentError("not a certificate document")
    return doc
