"""Canonical JSON serialization for findings and summaries.

Findings files must be byte-identical across reruns and across worker
counts, so records are serialized with sorted keys and a fixed float
rendering (17 significant digits, enough to round-trip doubles).  The
writer is hand-rolled because the stdlib encoder does not let float
formatting be pinned down.
"""

from __future__ import annotations

import json
import math


def _canonical(obj, out: list) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool):
        out.append("true" if obj else "false")
    elif isinstance(obj, int):
        out.append(str(obj))
    elif isinstance(obj, float):
        if not math.isfinite(obj):
            raise ValueError("non-finite float in report: %r" % (obj,))
        out.append(format(obj, ".17g"))
    elif isinstance(obj, str):
        out.append(json.dumps(obj, ensure_ascii=True))
    elif isinstance(obj, dict):
        out.append("{")
        first = True
        for key in sorted(obj, key=str):
            if not first:
                out.append(",")
            first = False
            out.append(json.dumps(str(key), ensure_ascii=True))
            out.append(":")
            _canonical(obj[key], out)
        out.append("}")
    elif isinstance(obj, (list, tuple)):
        out.append("[")
        for i, item in enumerate(obj):
            if i:
                out.append(",")
            _canonical(item, out)
        out.append("]")
    else:
        raise TypeError("cannot canonically serialize %r" % type(obj))


def canonical_dumps(obj) -> str:
    """Serialize to a canonical single-line JSON string."""
    parts: list = []
    _canonical(obj, parts)
    return "".join(parts)


def write_ndjson(path: str, records) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for rec in records:
            fh.write(canonical_dumps(rec))
            fh.write("\n")


def read_ndjson(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return [json.loads(line) for line in fh if line.strip()]
