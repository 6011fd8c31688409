"""Instance JSON reading and writing.

Schema::

    {"dim": 2,
     "norm": {"kind": "euclidean"} | {"kind": "linf"}
             | {"kind": "polygon", "vertices": [[x, y], ...]},
     "red": [{"point": [...], "radius": r}, ...],
     "blue": [[...], ...],
     "lambda": 1.0}
"""

from __future__ import annotations

import json
import math
from numbers import Real

from .density import Instance
from .geometry import Homothet, Kind, NormBody


class InstanceFormatError(ValueError):
    """Raised for malformed instance documents; the message names the offending key."""


def _reject_constant(name):
    raise InstanceFormatError(f"non-finite number {name} is not allowed")


def _number(x, key):
    if isinstance(x, bool) or not isinstance(x, Real) or not math.isfinite(x):
        raise InstanceFormatError(f"'{key}' must be a finite number, got {x!r}")
    return float(x)


def _coords(x, key, dim):
    if not isinstance(x, list) or len(x) != dim:
        raise InstanceFormatError(f"'{key}' must be a list of {dim} numbers, got {x!r}")
    return tuple(_number(c, key) for c in x)


def _check_keys(doc, allowed, where):
    if not isinstance(doc, dict):
        raise InstanceFormatError(f"'{where}' must be an object")
    extra = sorted(set(doc) - set(allowed))
    if extra:
        raise InstanceFormatError(f"unknown key '{extra[0]}' in {where}")
    missing = [k for k in allowed if k not in doc]
    if missing:
        raise InstanceFormatError(f"missing key '{missing[0]}' in {where}")


def body_to_json(body: NormBody) -> dict:
    if body.kind is Kind.POLYGON:
        return {"kind": "polygon", "vertices": [list(v) for v in body.vertices]}
    return {"kind": body.kind.value}


def body_from_json(doc, dim: int) -> NormBody:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise InstanceFormatError("'norm' must be an object with a 'kind'")
    kind = doc["kind"]
    if kind in ("euclidean", "linf"):
        _check_keys(doc, ("kind",), "norm")
        return NormBody(Kind(kind), dim)
    if kind == "polygon":
        _check_keys(doc, ("kind", "vertices"), "norm")
        if dim != 2:
            raise InstanceFormatError("'norm': polygon bodies require dim 2")
        if not isinstance(doc["vertices"], list):
            raise InstanceFormatError("'vertices' must be a list of points")
        verts = [_coords(v, "vertices", 2) for v in doc["vertices"]]
        try:
            return NormBody.polygon(verts)
        except ValueError as exc:
            raise InstanceFormatError(f"'vertices': {exc}") from None
    raise InstanceFormatError(f"'kind' must be euclidean, linf or polygon, got {kind!r}")


def instance_to_json(inst: Instance) -> dict:
    return {
        "dim": inst.dim,
        "norm": body_to_json(inst.body),
        "red": [{"point": list(r.center), "radius": r.ratio} for r in inst.red],
        "blue": [list(b) for b in inst.blue],
        "lambda": inst.lam,
    }


def instance_from_json(doc) -> Instance:
    _check_keys(doc, ("dim", "norm", "red", "blue", "lambda"), "instance")
    dim = doc["dim"]
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise InstanceFormatError(f"'dim' must be a positive integer, got {dim!r}")
    body = body_from_json(doc["norm"], dim)
    if not isinstance(doc["red"], list) or not doc["red"]:
        raise InstanceFormatError("'red' must be a nonempty list")
    red = []
    for item in doc["red"]:
        _check_keys(item, ("point", "radius"), "red")
        radius = _number(item["radius"], "radius")
        if radius <= 0:
            raise InstanceFormatError(f"'radius' must be positive, got {radius}")
        red.append(Homothet(_coords(item["point"], "point", dim), radius))
    if not isinstance(doc["blue"], list):
        raise InstanceFormatError("'blue' must be a list")
    blue = tuple(_coords(b, "blue", dim) for b in doc["blue"])
    lam = _number(doc["lambda"], "lambda")
    if lam <= 0:
        raise InstanceFormatError(f"'lambda' must be positive, got {lam}")
    return Instance(body, tuple(red), blue, lam)


def loads(text: str) -> Instance:
    try:
        doc = json.loads(text, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from None
    return instance_from_json(doc)


def dumps(inst: Instance, indent: int | None = None) -> str:
    # json writes floats with repr, which round-trips doubles
    return json.dumps(instance_to_json(inst), indent=indent)


def load(path) -> Instance:
    with open(path) as fh:
        return loads(fh.read())


def dump(inst: Instance, path, indent: int | None = 1):
    with open(path, "w") as fh:
        fh.write(dumps(inst, indent))
        fh.write("\n")
