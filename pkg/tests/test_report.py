import json
from fractions import Fraction

from hypothesis import given
from hypothesis import strategies as st

from grassmann_ontic.report import ExperimentReport

from conftest import rationals


def _report(**kw):
    base = dict(
        experiment="blowtorch",
        model="grassmann",
        inputs={"state": "stab +x", "tuple": [Fraction(1), Fraction(0)]},
        outputs={"T1": [Fraction(1, 3), Fraction(-2, 7)], "flag": True},
        verdict="non-contextual",
    )
    base.update(kw)
    return ExperimentReport(**base)


def test_rationals_as_num_den():
    rec = json.loads(_report().to_json())
    assert rec["outputs"]["T1"][1] == {"num": -2, "den": 7}
    assert rec["outputs"]["flag"] is True
    assert "wall_time" not in rec


def test_roundtrip():
    r = _report(witness={"first": [Fraction(1, 2)]})
    assert ExperimentReport.from_json(r.to_json()) == r
    assert ExperimentReport.from_dict(r.to_dict()) == r


def test_wall_time_optional():
    r = _report(wall_time=0.25)
    assert json.loads(r.to_json())["wall_time"] == 0.25
    assert ExperimentReport.from_json(r.to_json()).wall_time == 0.25
    assert "wall time" in r.to_table()


def test_table():
    text = _report().to_table()
    assert text.startswith("experiment: blowtorch\n")
    assert "1/3" in text and "verdict:    non-contextual" in text


@given(st.dictionaries(st.text(min_size=1, max_size=5), rationals(-5, 5, 50), max_size=8))
def test_roundtrip_random(outputs):
    r = ExperimentReport("x", outputs=outputs)
    assert ExperimentReport.from_json(r.to_json()).outputs == outputs
