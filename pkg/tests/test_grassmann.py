from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from grassmann_ontic import clifford
from grassmann_ontic.grassmann import (
    I,
    ONE,
    ZERO,
    ExactComplex,
    GrassmannElement,
    ParseError,
    add,
    canonicalize,
    coefficient,
    conjugate,
    multiply,
    parse,
    render,
    scale,
    substitute_generators,
    xi,
)

import oracles
from conftest import elements, generator_words

HALF = Fraction(1, 2)
p, q, r = xi("p"), xi("q"), xi("r")


class TestCanonicalize:
    def test_swap_gives_sign(self):
        assert canonicalize(["q", "p"]) == (("p", "q"), -1)

    def test_already_canonical(self):
        assert canonicalize(["p"]) == (("p",), 1)

    def test_repeat_is_zero(self):
        assert canonicalize(["r", "q", "r"]) is None

    def test_three_cycle_is_even(self):
        assert canonicalize("rpq") == (("p", "q", "r"), 1)
        assert canonicalize("rqp") == (("p", "q", "r"), -1)

    @given(generator_words)
    def test_sign_matches_permutation_parity(self, word):
        res = canonicalize(word)
        if len(set(word)) < len(word):
            assert res is None
            return
        mono, sign = res
        inversions = sum(1 for i in range(len(word)) for j in range(i + 1, len(word)) if word[i] > word[j])
        assert mono == tuple(sorted(word))
        assert sign == (-1) ** inversions


class TestMultiply:
    def test_canonical_order(self):
        assert multiply(p, q) == GrassmannElement({"pq": 1})

    def test_reversed_order(self):
        assert multiply(q, p) == GrassmannElement({"pq": -1})
        assert coefficient(q * p, "pq") == -1

    def test_nilpotent_square(self):
        one_p = ONE + p
        assert one_p * one_p == ONE + 2 * p

    @pytest.mark.parametrize("a", "pqr")
    @pytest.mark.parametrize("b", "pqr")
    def test_anticommutation(self, a, b):
        assert xi(a) * xi(b) + xi(b) * xi(a) == ZERO

    @settings(max_examples=60)
    @given(elements(), elements(), elements())
    def test_associative_and_bilinear(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c
        k = ExactComplex(Fraction(2, 3), Fraction(-1, 5))
        assert scale(k, a) * b == scale(k, a * b) == a * scale(k, b)

    @settings(max_examples=20, deadline=None)
    @given(elements(), elements())
    def test_matches_fermionic_matrix_product(self, a, b):
        lhs = oracles.as_matrix((a * b).terms)
        rhs = oracles.as_matrix(a.terms) * oracles.as_matrix(b.terms)
        assert (lhs - rhs).expand().is_zero_matrix


class TestAddScale:
    def test_cancellation_prunes(self):
        pq = GrassmannElement({"pq": 1})
        assert add(pq, -pq) == ZERO
        assert (pq - pq).terms == {}

    def test_scale_stabilizer(self):
        got = scale(HALF, ONE + GrassmannElement({"rq": I}))
        assert got == GrassmannElement({(): HALF, "rq": ExactComplex(0, HALF)})
        assert render(got) == "1/2 + 1/2*i*xi_r xi_q"

    def test_halves(self):
        assert add(GrassmannElement({(): HALF}), GrassmannElement({(): HALF})) == ONE


class TestSubstitute:
    def test_x_map_flips_pq(self):
        a = GrassmannElement({"pq": I})
        assert substitute_generators(a, clifford.named_map("X")) == GrassmannElement({"pq": -I})

    @given(elements())
    def test_identity_map(self, a):
        assert substitute_generators(a, clifford.identity_map()) == a

    def test_h_map_on_rq(self):
        # xi_r xi_q -> (-xi_r)(xi_p) = xi_p xi_r
        a = GrassmannElement({"rq": I})
        assert substitute_generators(a, clifford.named_map("H")) == GrassmannElement({"pr": I})

    def test_plain_mapping_accepted(self):
        m = {"p": ("q", 1), "q": ("p", 1), "r": ("r", -1)}
        assert substitute_generators(p * r, m) == -(q * r)

    @settings(max_examples=30)
    @given(elements(), elements(), st.sampled_from(clifford.GATES))
    def test_is_an_algebra_map(self, a, b, gate):
        m = clifford.named_map(gate)
        assert substitute_generators(a * b, m) == substitute_generators(a, m) * substitute_generators(b, m)


class TestCoefficient:
    def test_reordered_monomial(self):
        alpha = Fraction(-2, 7)
        rho = GrassmannElement({(): HALF, "rq": ExactComplex(0, alpha / 2)})
        assert coefficient(rho, ("q", "r")) == ExactComplex(0, -alpha / 2)
        assert coefficient(rho, "rq") == ExactComplex(0, alpha / 2)

    def test_zero_element(self):
        assert coefficient(ZERO, "pq") == 0

    def test_stabilizer(self):
        rho = GrassmannElement({(): HALF, "pq": ExactComplex(0, HALF)})
        assert coefficient(rho, "pq") == ExactComplex(0, HALF)

    def test_repeated_generator(self):
        assert coefficient(p, "pp") == 0


class TestConjugate:
    def test_quadratic_real_symbol(self):
        a = GrassmannElement({"rq": I})
        assert conjugate(a) == a

    def test_one(self):
        assert conjugate(ONE) == ONE

    def test_state_symbol_is_real(self):
        rho = GrassmannElement(
            {(): HALF, "rq": ExactComplex(0, Fraction(1, 6)), "pq": ExactComplex(0, Fraction(-1, 4)), "pr": I / 8}
        )
        assert conjugate(rho) == rho

    @settings(max_examples=60)
    @given(elements(), elements())
    def test_involutive_antiautomorphism(self, a, b):
        assert conjugate(conjugate(a)) == a
        assert conjugate(a * b) == conjugate(b) * conjugate(a)


class TestText:
    def test_render_zero(self):
        assert render(ZERO) == "0"

    def test_parse_juxtaposition_and_unicode_minus(self):
        got = parse("1/2 − 1/3*i*xi_p xi_q + xi_r xi_q")
        assert got == GrassmannElement({(): HALF, "pq": ExactComplex(0, Fraction(-1, 3)), "rq": 1})

    def test_parse_parenthesised_coefficient(self):
        assert parse("(1 + 2*i)*xi_p") == GrassmannElement({"p": ExactComplex(1, 2)})

    @pytest.mark.parametrize("bad", ["xi_s", "1/", "(xi_p", "xi_p +", "2.5"])
    def test_parse_errors(self, bad):
        with pytest.raises(ParseError):
            parse(bad)

    @settings(max_examples=60)
    @given(elements())
    def test_roundtrip(self, a):
        assert parse(render(a)) == a


class TestExactComplex:
    def test_rejects_float(self):
        with pytest.raises(TypeError):
            ExactComplex(0.5)

    def test_arithmetic(self):
        z = ExactComplex(1, 2)
        assert z * z.conjugate() == 5
        assert (z / z) == 1
        assert I * I == -1
        with pytest.raises(ZeroDivisionError):
            z / 0
