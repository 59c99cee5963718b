import json

import pytest

from hopfkit.datafile import dump_reduced, dump_yd, load_datum, parse_datum
from hopfkit.datum import tilde, to_reduced, validate_linking
from hopfkit.errors import InvalidDatum, ParseError
from hopfkit.presets import preset


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "A2-two-parameter", "A1xA1-G-counterexample"])
def test_reduced_round_trip(name):
    red = preset(name)
    obj = dump_reduced(red)
    back = parse_datum(json.loads(json.dumps(obj))).reduced
    assert dump_reduced(back) == obj
    assert back.cartan.a == red.cartan.a


def test_yd_round_trip():
    yd, lam = tilde(preset("A2"))
    obj = dump_yd(yd, lam)
    loaded = parse_datum(json.loads(json.dumps(obj)))
    assert loaded.kind == "yd"
    assert loaded.linking == lam
    assert validate_linking(loaded.yd, loaded.linking).perfect
    red = to_reduced(loaded.yd, loaded.linking)
    assert red.theta == 2 and red.cartan.a == preset("A2").cartan.a


def test_load_from_disk(tmp_path):
    path = tmp_path / "a1.json"
    path.write_text(json.dumps(dump_reduced(preset("A1"))))
    assert load_datum(path).reduced.theta == 1


@pytest.mark.parametrize("obj,exc", [
    ([], InvalidDatum),
    ({"parameters": ["q"]}, InvalidDatum),
    ({"parameters": ["q"], "group_rank": 0}, InvalidDatum),
    ({"parameters": ["q"], "group_rank": 1, "theta": 2, "chi": [["q"]]}, InvalidDatum),
    ({"parameters": ["q"], "group_rank": 1, "theta": 1, "chi": [["q"]], "g": [[1]], "lambda": [[1, 3, "1"]]},
     InvalidDatum),
    ({"parameters": ["q"], "group_rank": 1, "theta": 1, "chi": [["q +"]], "g": [[1]]}, ParseError),
])
def test_invalid(obj, exc):
    with pytest.raises(exc):
        parse_datum(obj)


def test_bad_json(tmp_path):
    path = tmp_path / "x.json"
    path.write_text("{")
    with pytest.raises(ParseError):
        load_datum(path)
    with pytest.raises(InvalidDatum):
        load_datum(tmp_path / "missing.json")
