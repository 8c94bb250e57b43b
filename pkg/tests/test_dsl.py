from fractions import Fraction

import pytest

from grassmann_ontic import models
from grassmann_ontic.dsl import DSLError, parse_system, to_dsl
from grassmann_ontic.ontic import Atom, enumerate_families


def test_three_state_parses():
    sys = parse_system(models.THREE_STATE_DSL)
    assert sys.name == "three-state"
    assert sys.atoms == ("W", "X", "Y", "Z")
    assert len(sys.linear) == 1 and len(sys.minmax) == 2
    assert str(sys.minmax[0]) == "P((W | Y) | (X | Y)) = max(P(W | Y), P(X | Y))"


def test_coefficients_and_constants():
    sys = parse_system("atoms a b c\n2/3*P(a) - P(b) + 1 = P(c) + 1/2")
    (c,) = sys.linear
    assert c.rhs == Fraction(-1, 2)
    assert [k for k, _ in c.terms] == [Fraction(2, 3), -1, -1]


def test_precedence_and_unicode():
    sys = parse_system("atoms a b c\nregion R = a ∪ b ∩ c\nregion S = ~a ∖ b\nnormalize R | S")
    (r,) = sys.normalization
    # & binds tighter, so R = a; S = c
    assert r.evaluate(sys.atoms) == {"a", "c"}


def test_comments_and_blank_lines():
    sys = parse_system("# header\n\natoms a b  # two atoms\nnormalize all\n")
    assert sys.atoms == ("a", "b")
    assert len(sys.normalization) == 1


@pytest.mark.parametrize(
    "text, line",
    [
        ("atoms a\nP(b) = 1", 2),
        ("atoms a b\nP(a) = max(P(a))", 2),
        ("atoms a\n\nregion = a", 3),
        ("atoms a\nP(a) = 1 1", 2),
        ("atoms a\n2*P(a) = max(P(a), P(a))", 2),
        ("atoms all", 1),
        ("atoms a\nregion a = a", 2),
        ("atoms a\nP(a) = 0.5", 2),
        ("atoms a\n1 = 1", 2),
    ],
)
def test_errors_carry_line_numbers(text, line):
    with pytest.raises(DSLError) as exc:
        parse_system(text)
    assert exc.value.line == line
    assert f"line {line}" in str(exc.value)


def test_no_atoms():
    with pytest.raises(DSLError):
        parse_system("# nothing\n")


@pytest.mark.parametrize("text", [models.THREE_STATE_DSL, models.GRASSMANN_DSL, models.GRASSMANN_PAIRS_DSL])
def test_roundtrip(text):
    sys = parse_system(text)
    again = parse_system(to_dsl(sys))
    assert again.atoms == sys.atoms
    assert again.linear_rows == sys.linear_rows
    assert [str(c) for c in again.minmax] == [str(c) for c in sys.minmax]
    assert enumerate_families(again) == enumerate_families(sys)


def test_regions_expand_to_atoms():
    sys = parse_system("atoms a b\nregion R = a | b\nP(R) = 1")
    assert sys.linear[0].terms[0][1].evaluate(sys.atoms) == {"a", "b"}
    assert isinstance(parse_system("atoms a\nP(a) = 1").linear[0].terms[0][1], Atom)
