import json
import random
from fractions import Fraction

import pytest

from grassmann_ontic import checks, harness, sampling
from grassmann_ontic.cli import main
from grassmann_ontic.serialize import decode

HALF = Fraction(1, 2)
ZEROS = [0] * 6


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def record(capsys, *argv):
    code, out, err = run(capsys, *argv)
    assert code == 0, err
    return decode(json.loads(out))


class TestBlowtorch:
    def test_grassmann_stabilizer(self, capsys):
        rec = record(capsys, "blowtorch", "--model", "grassmann", "--state", "stab +z")
        assert rec["outputs"]["T1"] == rec["outputs"]["T2"] == ZEROS
        assert rec["verdict"] == "non-contextual"
        assert rec["inputs"]["tuple"] == [0, 0, 1, 0, 0, 0]

    def test_grassmann_mixed_unchanged(self, capsys):
        rec = record(capsys, "blowtorch", "--model", "grassmann", "--state", "mixed")
        assert rec["outputs"]["T1"] == rec["outputs"]["T2"] == rec["inputs"]["tuple"] == ZEROS

    def test_eight_state(self, capsys):
        rec = record(capsys, "blowtorch", "--model", "eight-state", "--state", "atom +++")
        assert rec["verdict"] == "contextual"
        assert rec["witness"] == "atom +++"
        assert rec["outputs"]["T1_support"] == ["+++", "+--", "-+-", "--+"]
        assert rec["outputs"]["T2_support"] == ["++-", "+-+", "-++", "---"]

    def test_eight_state_stabilizer_input(self, capsys):
        rec = record(capsys, "blowtorch", "--model", "eight-state", "--state", "stab -y")
        assert set(rec["inputs"]["distribution"].values()) == {0, Fraction(1, 4)}

    def test_componentwise(self, capsys):
        rec = record(capsys, "blowtorch", "--model", "grassmann-componentwise", "--state", "stab +x")
        assert rec["verdict"] == "contextual"

    def test_bloch_input(self, capsys):
        rec = record(capsys, "blowtorch", "--model", "grassmann", "--state", "bloch 1/3,-1/3,1/3")
        assert rec["outputs"]["T1_symbol"] == "1/2"


class TestFamilies:
    def test_three_state(self, capsys):
        rec = record(capsys, "families", "--model", "three-state")
        out = rec["outputs"]
        assert out["count"] == 2 and out["single_convex_set"] is False
        assert rec["witness"]["first"] == [1, 0, 0, 0]
        assert rec["witness"]["second"] == [0, 1, 0, 0]
        assert rec["witness"]["constrained_midpoint"] == [0, 0, HALF, HALF]

    def test_grassmann(self, capsys):
        rec = record(capsys, "families", "--model", "grassmann")
        assert rec["outputs"]["count"] == 8
        assert rec["outputs"]["common"] == [[0] * 6 + [HALF] * 6]
        assert rec["verdict"] == "not convex"

    @pytest.mark.parametrize("model", ["grassmann-pairs", "three-state-pairs"])
    def test_pairs_convex(self, capsys, model):
        rec = record(capsys, "families", "--model", model)
        assert rec["verdict"] == "single convex set" and rec["witness"] is None

    def test_system_file(self, capsys, tmp_path):
        path = tmp_path / "sys.txt"
        path.write_text("atoms a b\nnormalize all\nP(a) = max(P(a), P(b))\n")
        rec = record(capsys, "families", "--system", str(path))
        assert rec["outputs"]["count"] == 1
        assert rec["outputs"]["families"][0]["ranges"] == {"a": [HALF, 1]}

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "families", "--system", str(tmp_path / "nope.txt"))
        assert code == 2 and "cannot read" in err

    def test_infeasible_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("atoms a\nP(a) = 2\n")
        code, _, err = run(capsys, "families", "--system", str(path))
        assert code == 2

    def test_parse_error_file(self, capsys, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("atoms a\nP(q) = 1\n")
        code, _, err = run(capsys, "families", "--system", str(path))
        assert code == 2 and "line 2" in err


class TestEvolve:
    def test_hadamard(self, capsys):
        rec = record(capsys, "evolve", "--gates", "H", "--state", "bloch 1/3,-2/3,2/3")
        assert rec["outputs"]["final"]["bloch"] == [Fraction(2, 3), Fraction(2, 3), Fraction(1, 3)]

    def test_empty_word(self, capsys):
        rec = record(capsys, "evolve", "--gates", "", "--state", "stab -y")
        assert rec["outputs"]["steps"] == []
        assert rec["outputs"]["final"] == rec["inputs"]["initial"]

    def test_hh_identity_on_random_states(self):
        for b in (sampling.random_bloch(random.Random(k)) for k in range(100)):
            spec = "bloch " + ",".join(str(v) for v in b)
            rep = harness.cmd_evolve("H H", spec)
            assert rep.outputs["final"]["bloch"] == list(b)
            assert len(rep.outputs["steps"]) == 2

    def test_blowtorch_tokens(self, capsys):
        rec = record(capsys, "evolve", "--gates", "X T2", "--state", "stab +x")
        assert rec["outputs"]["final"]["tuple"] == ZEROS

    def test_bad_token(self, capsys):
        code, _, err = run(capsys, "evolve", "--gates", "X S", "--state", "mixed")
        assert code == 2 and "bad gate token" in err


class TestMeasure:
    def test_eigenstate(self, capsys):
        rec = record(capsys, "measure", "--state", "stab +x", "--pauli", "X")
        assert (rec["outputs"]["plus"], rec["outputs"]["minus"]) == (1, 0)

    def test_mixed(self, capsys):
        rec = record(capsys, "measure", "--state", "mixed", "--pauli", "y")
        assert (rec["outputs"]["plus"], rec["outputs"]["minus"]) == (HALF, HALF)

    def test_cross_axis(self, capsys):
        rec = record(capsys, "measure", "--state", "stab +z", "--pauli", "X")
        assert (rec["outputs"]["plus"], rec["outputs"]["minus"]) == (HALF, HALF)


def test_regions(capsys):
    rec = record(capsys, "regions", "--state", "stab +x")
    regions = rec["outputs"]["regions"]
    assert regions["(1,1,1,0,0,0)"] == Fraction(1, 4)
    assert regions["W1"] == 1 and regions["Y1"] == 0 and regions["Y2"] == HALF


class TestCheck:
    def test_passes(self, capsys):
        code, out, _ = run(capsys, "check", "--sweep", "5")
        rec = json.loads(out)
        assert code == 0 and rec["verdict"] == "pass"
        assert set(rec["outputs"]) == set(checks.SUITES)
        assert all(v["failed"] == 0 and v["checks"] > 0 for v in rec["outputs"].values())

    def test_seed_changes_nothing_but_cases(self, capsys):
        a = record(capsys, "check", "--sweep", "5", "--seed", "1")
        b = record(capsys, "check", "--sweep", "5", "--seed", "2")
        assert a["verdict"] == b["verdict"] == "pass"
        assert a["inputs"]["seed"] != b["inputs"]["seed"]

    def test_failure_exit_code(self, capsys, monkeypatch):
        def broken(rng, sweep):
            raise AssertionError("forced")

        monkeypatch.setitem(checks.SUITES, "weyl_qubit", checks.SUITES["weyl_qubit"] + [broken])
        code, out, _ = run(capsys, "check", "--sweep", "2")
        assert code == 1
        assert json.loads(out)["verdict"] == "fail"


class TestOutput:
    def test_byte_stable(self, capsys):
        argv = ("families", "--model", "grassmann")
        _, first, _ = run(capsys, *argv)
        _, second, _ = run(capsys, *argv)
        assert first == second

    def test_table(self, capsys):
        code, out, _ = run(capsys, "measure", "--state", "stab +z", "--pauli", "Z", "--table")
        assert code == 0
        assert out.startswith("experiment: measure")
        assert "plus" in out

    def test_timing(self, capsys):
        _, out, _ = run(capsys, "measure", "--state", "mixed", "--pauli", "Z", "--timing")
        assert json.loads(out)["wall_time"] >= 0

    @pytest.mark.parametrize(
        "argv",
        [
            ("blowtorch", "--model", "grassmann", "--state", "bloch 1,1,0"),
            ("blowtorch", "--model", "grassmann", "--state", "bloch 0.5,0,0"),
            ("blowtorch", "--model", "grassmann", "--state", "stab +w"),
            ("blowtorch", "--model", "eight-state", "--state", "bloch 1,0,0"),
            ("blowtorch", "--model", "eight-state", "--state", "atom ++"),
            ("measure", "--state", "hello", "--pauli", "X"),
        ],
    )
    def test_usage_errors(self, capsys, argv):
        code, out, err = run(capsys, *argv)
        assert code == 2 and out == "" and "error" in err

    def test_argparse_errors_exit_two(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["blowtorch", "--model", "nope", "--state", "mixed"])
        assert exc.value.code == 2
