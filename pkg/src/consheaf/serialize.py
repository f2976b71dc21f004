"""JSON documents for barcodes, representations, circle sheaves and germ-lab inputs.

Rationals are strings ``"p/q"`` (integers are accepted), infinities are
``"inf"``/``"-inf"``, the field is ``{"p": 2}`` or ``{"q": "rational"}``.
Every loader validates against the schemas below before building objects.
"""
from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .circle import CircleSheaf, CyclicRep, cyclic_arrows, make_circle_sheaf
from .errors import MalformedInput
from .germ.compose import IndicatorComplex
from .germ.fourier import ConicSheaf1D
from .germ.polytope import PolyCell
from .intervals import GradedBarcode, Interval, to_ext
from .linalg import make_field
from .zigzag import ZigzagRep

SCHEMA_VERSION = "1.0"

_RATIONAL = {"anyOf": [{"type": "string", "pattern": r"^\s*[+-]?\d+(/\d+)?\s*$"}, {"type": "integer"}]}
_EXT_RATIONAL = {"anyOf": [_RATIONAL, {"type": "string", "enum": ["inf", "-inf", "+inf"]}]}
_FIELD = {
    "oneOf": [
        {"type": "object", "properties": {"p": {"type": "integer", "minimum": 2}}, "required": ["p"], "additionalProperties": False},
        {"type": "object", "properties": {"q": {"const": "rational"}}, "required": ["q"], "additionalProperties": False},
    ]
}
_ENDPOINT = {
    "type": "object",
    "properties": {"value": _EXT_RATIONAL, "closed": {"type": "boolean"}},
    "required": ["value"],
    "additionalProperties": False,
}
_INTERVAL = {
    "anyOf": [
        {"type": "string"},
        {"type": "object", "properties": {"left": _ENDPOINT, "right": _ENDPOINT}, "required": ["left", "right"], "additionalProperties": False},
    ]
}
_BAR = {
    "type": "object",
    "properties": {
        "interval": _INTERVAL,
        "degree": {"type": "integer"},
        "multiplicity": {"type": "integer", "minimum": 1},
    },
    "required": ["interval"],
    "additionalProperties": False,
}
_MATRIX = {"type": "array", "items": {"type": "array", "items": _RATIONAL}}

BARCODE_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "GradedBarcode",
    "type": "object",
    "properties": {"field": _FIELD, "bars": {"type": "array", "items": _BAR}, "schema_version": {"type": "string"}},
    "required": ["bars"],
}

ZIGZAG_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "ZigzagRep",
    "type": "object",
    "properties": {
        "field": _FIELD,
        "points": {"type": "array", "items": _RATIONAL},
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "maps": {"type": "array", "items": {"type": "array", "items": _MATRIX, "minItems": 2, "maxItems": 2}},
        "schema_version": {"type": "string"},
    },
    "required": ["points", "dims", "maps"],
}

CYCLIC_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "CyclicRep",
    "type": "object",
    "properties": {
        "field": _FIELD,
        "circumference": _RATIONAL,
        "points": {"type": "array", "items": _RATIONAL, "minItems": 1},
        "dims": {"type": "array", "items": {"type": "integer", "minimum": 0}},
        "maps": {"type": "array", "items": _MATRIX},
        "schema_version": {"type": "string"},
    },
    "required": ["points", "dims", "maps"],
}

CIRCLE_SHEAF_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "CircleSheaf",
    "type": "object",
    "properties": {
        "field": _FIELD,
        "circumference": _RATIONAL,
        "bars": {"type": "array", "items": _BAR},
        "monodromy": {"type": "object", "patternProperties": {r"^-?\d+$": _MATRIX}, "additionalProperties": False},
        "schema_version": {"type": "string"},
    },
    "required": ["bars"],
}

_INEQ = {
    "type": "object",
    "properties": {"coeffs": {"type": "array", "items": _RATIONAL}, "rhs": _RATIONAL, "strict": {"type": "boolean"}},
    "required": ["coeffs", "rhs"],
    "additionalProperties": False,
}
CELL_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "PolyCell",
    "anyOf": [
        {"type": "array", "items": _INEQ, "minItems": 1},
        {"type": "object", "properties": {"dim": {"type": "integer", "minimum": 0}, "ineqs": {"type": "array", "items": _INEQ}}, "required": ["dim", "ineqs"]},
    ],
}
INDICATOR_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "IndicatorComplex",
    "type": "object",
    "properties": {
        "dim": {"type": "integer", "minimum": 0},
        "terms": {
            "type": "array",
            "items": {
                "type": "object",
                "properties": {
                    "cell": {"type": "array", "items": _INEQ},
                    "degree": {"type": "integer"},
                    "multiplicity": {"type": "integer", "minimum": 0},
                },
                "required": ["cell"],
                "additionalProperties": False,
            },
        },
        "schema_version": {"type": "string"},
    },
    "required": ["dim", "terms"],
}
_GRADED_DIMS = {"type": "object", "patternProperties": {r"^-?\d+$": {"type": "integer", "minimum": 0}}, "additionalProperties": False}
CONIC_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "ConicSheaf1D",
    "anyOf": [
        {
            "type": "object",
            "properties": {
                "field": _FIELD,
                "E_minus": _GRADED_DIMS,
                "E_zero": _GRADED_DIMS,
                "E_plus": _GRADED_DIMS,
                "rho_minus": {"type": "object", "patternProperties": {r"^-?\d+$": _MATRIX}},
                "rho_plus": {"type": "object", "patternProperties": {r"^-?\d+$": _MATRIX}},
            },
            "required": ["E_minus", "E_zero", "E_plus"],
        },
        BARCODE_SCHEMA,
    ],
}

SCHEMAS = {
    "barcode": BARCODE_SCHEMA,
    "zigzag": ZIGZAG_SCHEMA,
    "cyclic": CYCLIC_SCHEMA,
    "circle_sheaf": CIRCLE_SHEAF_SCHEMA,
    "cell": CELL_SCHEMA,
    "indicator": INDICATOR_SCHEMA,
    "conic": CONIC_SCHEMA,
}


def validate(doc, kind):
    try:
        jsonschema.validate(doc, SCHEMAS[kind])
    except jsonschema.ValidationError as exc:
        path = "/".join(str(p) for p in exc.absolute_path) or "<root>"
        raise MalformedInput(f"{kind} document invalid at {path}: {exc.message}") from None


def _field(doc, default):
    return make_field(doc.get("field", default))


def _bars(items):
    out = []
    for b in items:
        I = Interval.from_json(b["interval"])
        out.append((I, int(b.get("degree", 0)), int(b.get("multiplicity", 1))))
    return out


def barcode_from_json(doc, field=2) -> GradedBarcode:
    validate(doc, "barcode")
    return GradedBarcode(_bars(doc["bars"]), _field(doc, field))


def zigzag_from_json(doc, field=2) -> ZigzagRep:
    validate(doc, "zigzag")
    F = _field(doc, field)
    dims = doc["dims"]
    points = [to_ext(p) for p in doc["points"]]
    n = len(points)
    if len(dims) != 2 * n + 1 or len(doc["maps"]) != n:
        raise MalformedInput(f"{n} points need {2 * n + 1} dims and {n} map pairs")
    maps = []
    for i, (L, R) in enumerate(doc["maps"]):
        s = dims[2 * i + 1]
        maps.append((F.asarray(L, (dims[2 * i], s)), F.asarray(R, (dims[2 * i + 2], s))))
    return ZigzagRep(F, points, dims, maps=maps)


def cyclic_from_json(doc, field=2, circumference=1) -> CyclicRep:
    validate(doc, "cyclic")
    F = _field(doc, field)
    C = Fraction(doc.get("circumference", circumference))
    dims = doc["dims"]
    n = len(doc["points"])
    if len(dims) != 2 * n or len(doc["maps"]) != 2 * n:
        raise MalformedInput(f"{n} points need {2 * n} dims and {2 * n} maps")
    mats = [F.asarray(M, (dims[t], dims[s])) for (s, t), M in zip(cyclic_arrows(n), doc["maps"])]
    return CyclicRep(F, C, [Fraction(p) for p in doc["points"]], dims, mats)


def circle_sheaf_from_json(doc, field=2, circumference=1) -> CircleSheaf:
    validate(doc, "circle_sheaf")
    F = _field(doc, field)
    local = {}
    for d, M in doc.get("monodromy", {}).items():
        r = len(M)
        local[int(d)] = F.asarray(M, (r, r))
    return make_circle_sheaf(doc.get("circumference", circumference), _bars(doc["bars"]), local, F)


def cell_from_json(doc) -> PolyCell:
    validate(doc, "cell")
    return PolyCell.from_json(doc)


def indicator_from_json(doc) -> IndicatorComplex:
    validate(doc, "indicator")
    return IndicatorComplex.from_json(doc)


def conic_from_json(doc, field=2) -> ConicSheaf1D:
    validate(doc, "conic")
    if "bars" in doc:
        return ConicSheaf1D.from_barcode(barcode_from_json(doc, field))
    F = _field(doc, field)

    def g(key):
        return {int(k): v for k, v in doc.get(key, {}).items()}

    return ConicSheaf1D.from_data(F, g("E_minus"), g("E_zero"), g("E_plus"), g("rho_minus"), g("rho_plus"))


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def report(command, result) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "result": result}


def load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"{path}: not valid JSON ({exc.msg} at line {exc.lineno})") from None
    except OSError as exc:
        raise MalformedInput(f"{path}: {exc.strerror}") from None
