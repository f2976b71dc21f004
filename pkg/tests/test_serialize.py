import json

import pytest

from consheaf import GF2, GF3, MalformedInput, circle, serialize, zigzag
from consheaf.germ import ball_kernel

from conftest import bc


def test_barcode_roundtrip():
    F = bc("[0,1)", ("(-inf,2]", 3, 2), field=3)
    assert serialize.barcode_from_json(F.to_json()) == F


def test_barcode_default_field():
    F = serialize.barcode_from_json({"bars": [{"interval": "[0,1)"}]}, field=3)
    assert F.field == GF3


def test_zigzag_roundtrip(rng):
    for _ in range(10):
        rep = zigzag.random_zigzag(GF3, rng, max_total=12)
        doc = json.loads(json.dumps(rep.to_json()))
        back = serialize.zigzag_from_json(doc)
        assert back.dims == rep.dims
        assert zigzag.gabriel_decompose(back) == zigzag.gabriel_decompose(rep)


def test_cyclic_roundtrip(rng):
    for _ in range(10):
        rep = circle.random_cyclic_rep(GF2, rng, max_points=3, C=2)
        back = serialize.cyclic_from_json(json.loads(json.dumps(rep.to_json())))
        assert circle.decompose_circle(back) == circle.decompose_circle(rep)


def test_circle_sheaf_roundtrip(rng):
    cs = circle.decompose_circle(circle.random_cyclic_rep(GF2, rng, C=2))
    assert serialize.circle_sheaf_from_json(cs.to_json()) == cs


def test_indicator_roundtrip():
    K = ball_kernel(1, shift=1)
    assert serialize.indicator_from_json(K.to_json()) == K


def test_invalid_documents_name_the_path():
    with pytest.raises(MalformedInput, match="bars/0"):
        serialize.barcode_from_json({"bars": [{"interval": "[0,1)", "degree": "x"}]})
    with pytest.raises(MalformedInput):
        serialize.zigzag_from_json({"points": [0], "dims": [1, 1], "maps": []})


def test_dumps_is_deterministic():
    F = bc("[0,1)", "(2,3]")
    assert serialize.dumps(F.to_json()) == serialize.dumps(bc("(2,3]", "[0,1)").to_json())


def test_published_schemas_match(tmp_path):
    from pathlib import Path

    root = Path(__file__).resolve().parents[1] / "docs" / "schemas"
    for name, schema in serialize.SCHEMAS.items():
        assert json.loads((root / f"{name}.schema.json").read_text()) == schema
