"""JSON file formats for curves, driving functions, weldings, reports and pleated planes."""
from __future__ import annotations

import json
import os
import tempfile

import numpy as np
from jsonschema import Draft202012Validator
from jsonschema.exceptions import best_match

from .curves import CurvePolyline, DrivingFunction, ValidationError
from .weld import WeldingSamples

_NUM = {"type": "number"}
_NUMS = {"type": "array", "items": _NUM}
_POINT = {"oneOf": [{"type": "array", "items": _NUM, "minItems": 2, "maxItems": 2},
                    {"const": "inf"}]}

SCHEMAS = {
    "curve": {
        "type": "object", "required": ["points"],
        "properties": {"closed": {"type": "boolean"},
                       "points": {"type": "array", "items": _POINT, "minItems": 2},
                       "marks": {"type": "array", "items": {"type": "integer", "minimum": 0}}},
    },
    "driving": {
        "type": "object", "required": ["times", "values"],
        "properties": {"times": {**_NUMS, "minItems": 2}, "values": {**_NUMS, "minItems": 2}},
    },
    "welding": {
        "type": "object", "required": ["theta", "image"],
        "properties": {"theta": {**_NUMS, "minItems": 3}, "image": {**_NUMS, "minItems": 3},
                       "breakpoints": {"type": "object", "required": ["x", "y"],
                                       "properties": {"x": _NUMS, "y": _NUMS}}},
    },
    "points": {
        "type": "object", "required": ["points"],
        "properties": {"points": {"type": "array", "items": _POINT, "minItems": 2}},
    },
    "constraints": {
        "type": "object", "required": ["x", "y"],
        "properties": {"x": {**_NUMS, "minItems": 3}, "y": {**_NUMS, "minItems": 3}},
    },
}


class SchemaError(ValidationError):
    def __init__(self, pointer, msg):
        super().__init__(f"{pointer or '/'}: {msg}")
        self.pointer = pointer


def _pointer(path):
    return "".join(f"/{p}" for p in path)


def validate(doc, kind):
    err = best_match(Draft202012Validator(SCHEMAS[kind]).iter_errors(doc))
    if err is not None:
        raise SchemaError(_pointer(err.absolute_path), err.message)
    return doc


def _index_error(field, e):
    """Re-raise a constructor error against the field it concerns."""
    msg = str(e)
    idx = msg.rsplit("index ", 1)[-1] if "index " in msg else None
    ptr = f"/{field}" + (f"/{idx.split()[0]}" if idx and idx.split()[0].isdigit() else "")
    raise SchemaError(ptr, msg) from None


# ------------------------------------------------------------------ encode --

def _enc_points(p):
    return ["inf" if not np.isfinite(z) else [float(z.real), float(z.imag)] for z in p]


def _dec_points(items):
    return np.array([complex(np.inf) if v == "inf" else complex(v[0], v[1]) for v in items])


def curve_to_dict(c: CurvePolyline):
    return {"closed": bool(c.closed), "points": _enc_points(c.points), "marks": list(c.marks)}


def curve_from_dict(d) -> CurvePolyline:
    validate(d, "curve")
    try:
        return CurvePolyline(_dec_points(d["points"]), bool(d.get("closed", False)),
                             tuple(d.get("marks", ())))
    except ValidationError as e:
        _index_error("marks" if "mark" in str(e) else "points", e)


def driving_to_dict(w: DrivingFunction):
    return {"times": w.times.tolist(), "values": w.values.tolist()}


def driving_from_dict(d) -> DrivingFunction:
    validate(d, "driving")
    try:
        return DrivingFunction(np.array(d["times"], float), np.array(d["values"], float))
    except ValidationError as e:
        _index_error("times" if "times" in str(e) or "time" in str(e) else "values", e)


def welding_to_dict(w: WeldingSamples):
    d = {"theta": w.theta.tolist(), "image": w.image.tolist()}
    if w.has_breakpoints:
        d["breakpoints"] = {"x": w.x.tolist(), "y": w.y.tolist()}
    return d


def welding_from_dict(d) -> WeldingSamples:
    validate(d, "welding")
    bp = d.get("breakpoints")
    try:
        return WeldingSamples(np.array(d["theta"], float), np.array(d["image"], float),
                              None if bp is None else np.array(bp["x"], float),
                              None if bp is None else np.array(bp["y"], float))
    except ValidationError as e:
        _index_error("theta" if "theta" in str(e) else "image", e)


def points_from_dict(d):
    validate(d, "points")
    return _dec_points(d["points"])


def constraints_from_dict(d):
    validate(d, "constraints")
    return np.array(d["x"], float), np.array(d["y"], float)


# -------------------------------------------------------------------- files --

def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as e:
        raise SchemaError("", f"malformed JSON in {path}: {e}") from None
    except OSError as e:
        raise ValidationError(f"cannot read {path}: {e.strerror}") from None


def write_text(path, text):
    """Write via a temporary file in the same directory and an atomic rename."""
    path = os.fspath(path)
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json(path, doc):
    write_text(path, json.dumps(doc, indent=1, allow_nan=False) + "\n")


_READERS = {"curve": curve_from_dict, "driving": driving_from_dict,
            "welding": welding_from_dict, "points": points_from_dict,
            "constraints": constraints_from_dict}


def load(path, kind):
    """Read and validate a file of the given kind."""
    return _READERS[kind](read_json(path))


def save(path, obj):
    if isinstance(obj, CurvePolyline):
        doc = curve_to_dict(obj)
    elif isinstance(obj, DrivingFunction):
        doc = driving_to_dict(obj)
    elif isinstance(obj, WeldingSamples):
        doc = welding_to_dict(obj)
    elif hasattr(obj, "to_dict"):
        doc = obj.to_dict()
    else:
        doc = obj
    write_json(path, doc)


def svg_polyline(polys, size=400, margin=10):
    """Flat SVG of finite polylines [(points, closed), ...], y axis up."""
    fin = np.concatenate([p[np.isfinite(p)] for p, _ in polys])
    lo = np.array([fin.real.min(), fin.imag.min()])
    hi = np.array([fin.real.max(), fin.imag.max()])
    s = (size - 2 * margin) / max((hi - lo).max(), 1e-300)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}">']
    for p, closed in polys:
        p = p[np.isfinite(p)]
        xs = margin + s * (p.real - lo[0])
        ys = size - margin - s * (p.imag - lo[1])
        pts = " ".join(f"{a:.3f},{b:.3f}" for a, b in zip(xs, ys))
        tag = "polygon" if closed else "polyline"
        out.append(f'<{tag} fill="none" stroke="black" stroke-width="1" points="{pts}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
