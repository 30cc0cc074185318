"""Point-set file format: one JSON object, UTF-8, newline-terminated.

Keys in fixed order: p, k, modulus, n, r, s, points.  The field is always
identified by (p, k) plus the canonical modulus; coordinates are canonical
integer encodings; points are sorted ascending lexicographically; r and s
are null when the file does not advertise parameters.  No floats anywhere,
so byte-identical round-trips are guaranteed.
"""

from __future__ import annotations

import json

from .errors import ParameterError
from .gf import FieldSpec, make_field
from .projgeom import PointSet, normalize


def pointset_to_json_bytes(X: PointSet, r=None, s=None) -> bytes:
    if not isinstance(X.field, FieldSpec):
        raise ParameterError("only flat GF(p^k) point sets serialize; "
                             "rebuild extension-field sets over the flat field first")
    doc = {
        "p": X.field.p,
        "k": X.field.k,
        "modulus": list(X.field.modulus),
        "n": X.n,
        "r": r,
        "s": s,
        "points": [list(pt) for pt in X.points],
    }
    return (json.dumps(doc, separators=(",", ":")) + "\n").encode("utf-8")


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ParameterError(message)


def pointset_from_json_bytes(data: bytes):
    """Parse and fully validate a point-set file.

    Returns (PointSet, r, s) with r, s possibly None.  Any deviation from
    the format contract (wrong modulus, unsorted or unnormalized points,
    out-of-range encodings) raises ParameterError.
    """
    try:
        doc = json.loads(data.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ParameterError(f"not a point-set file: {exc}") from exc
    _require(isinstance(doc, dict), "top level must be a JSON object")
    for key in ("p", "k", "modulus", "n", "r", "s", "points"):
        _require(key in doc, f"missing key {key!r}")
    p, k, n = doc["p"], doc["k"], doc["n"]
    _require(isinstance(p, int) and isinstance(k, int), "p and k must be integers")
    field = make_field(p, k)
    _require(list(field.modulus) == doc["modulus"],
             f"modulus {doc['modulus']} is not the canonical modulus "
             f"{list(field.modulus)} for GF({p}^{k})")
    _require(isinstance(n, int) and n >= 1, "n must be an integer >= 1")
    for name in ("r", "s"):
        _require(doc[name] is None or (isinstance(doc[name], int) and doc[name] >= 0),
                 f"{name} must be null or a nonnegative integer")
    pts = doc["points"]
    _require(isinstance(pts, list), "points must be a list")
    seen = []
    for pt in pts:
        _require(isinstance(pt, list) and len(pt) == n + 1,
                 f"each point needs {n + 1} coordinates")
        _require(all(isinstance(c, int) and 0 <= c < field.order for c in pt),
                 f"coordinates must be encodings in [0, {field.order})")
        tpt = tuple(pt)
        _require(any(pt), "the zero vector is not a projective point")
        _require(normalize(field, tpt) == tpt, f"point {tpt} is not normalized")
        seen.append(tpt)
    _require(seen == sorted(set(seen)), "points must be strictly ascending")
    X = PointSet.from_normalized(field, n, tuple(seen))
    return X, doc["r"], doc["s"]
