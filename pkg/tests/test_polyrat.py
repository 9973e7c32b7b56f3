from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from bsol.polyrat import (
    ONE,
    ZERO,
    IntPoly,
    LaurentPoly,
    PolyParseError,
    RatFn,
    format_poly,
    parse_laurent,
    parse_poly,
    poly_divexact,
    poly_from_json,
    poly_gcd,
    poly_to_json,
    primitive_part,
    ratfn_from_json,
    ratfn_to_json,
    series_coeffs,
)

# small random polynomials for property tests
coeff_dicts = st.dictionaries(st.integers(0, 6), st.integers(-9, 9), max_size=5)
polys = coeff_dicts.map(IntPoly)
laurent_dicts = st.dictionaries(st.integers(-4, 4), st.integers(-9, 9), max_size=5)
laurents = laurent_dicts.map(LaurentPoly)


class TestPolyBasics:
    def test_zero_and_degree(self):
        assert ZERO.is_zero()
        assert ZERO.degree == -1
        assert IntPoly({3: 2, 0: -1}).degree == 3
        assert IntPoly({3: 2, 0: -1}).leading == 2

    def test_zero_coeffs_dropped(self):
        p = IntPoly({2: 0, 1: 5})
        assert p.coeffs == {1: 5}

    def test_negative_exponent_rejected(self):
        with pytest.raises(ValueError):
            IntPoly({-1: 1})
        LaurentPoly({-1: 1})  # fine

    def test_eval(self):
        p = parse_poly("x^2 - 3x + 1")
        assert p(0) == 1
        assert p(2) == -1
        assert p(Fraction(1, 2)) == Fraction(-1, 4)

    def test_int_mixing(self):
        p = parse_poly("x + 1")
        assert p + 1 == parse_poly("x + 2")
        assert 1 - p == parse_poly("-x")
        assert 3 * p == parse_poly("3x + 3")
        assert p**0 == ONE

    def test_laurent_shift(self):
        p = LaurentPoly({1: 2, 0: 1})
        assert p.shift(-1) == LaurentPoly({0: 2, -1: 1})
        assert p.shift(-1).shift(1) == p

    def test_to_intpoly_guard(self):
        with pytest.raises(ValueError):
            LaurentPoly({-1: 1}).to_intpoly()
        assert LaurentPoly({2: 3}).to_intpoly() == IntPoly({2: 3})


class TestPolyRingProperties:
    @given(polys, polys, polys)
    def test_add_mul_distribute(self, a, b, c):
        assert a * (b + c) == a * b + a * c

    @given(polys, polys)
    def test_mul_commutes(self, a, b):
        assert a * b == b * a

    @given(polys)
    def test_neg_cancels(self, a):
        assert (a + (-a)).is_zero()

    @given(laurents, laurents)
    def test_laurent_mul_commutes(self, a, b):
        assert a * b == b * a

    @given(polys, st.integers(0, 4))
    def test_pow_matches_repeated_mul(self, a, n):
        expect = ONE
        for _ in range(n):
            expect = expect * a
        assert a**n == expect


class TestDivisionAndGcd:
    def test_divexact(self):
        a = parse_poly("x^2 - 1")
        b = parse_poly("x - 1")
        assert poly_divexact(a, b) == parse_poly("x + 1")

    def test_divexact_rejects_remainder(self):
        with pytest.raises(ValueError):
            poly_divexact(parse_poly("x^2 + 1"), parse_poly("x - 1"))

    def test_divexact_rejects_fractional(self):
        with pytest.raises(ValueError):
            poly_divexact(parse_poly("x"), parse_poly("2x"))
        assert poly_divexact(parse_poly("2x"), parse_poly("2")) == parse_poly("x")

    def test_primitive_part(self):
        assert primitive_part(parse_poly("-4x^2 + 6")) == parse_poly("2x^2 - 3")
        assert primitive_part(ZERO) == ZERO

    def test_gcd_known(self):
        a = parse_poly("x^2 - 1")
        b = parse_poly("x^2 - 2x + 1")
        assert poly_gcd(a, b) == parse_poly("x - 1")
        assert poly_gcd(a, ZERO) == parse_poly("x^2 - 1")
        assert poly_gcd(ZERO, ZERO) == ZERO

    @given(polys, polys, polys)
    def test_gcd_divides_products(self, a, b, g):
        # g*a and g*b share at least primitive_part(g) as a factor
        if g.is_zero():
            return
        d = poly_gcd(g * a, g * b)
        if d.is_zero():
            return
        assert poly_divexact(d, poly_gcd(d, primitive_part(g))) is not None
        # and the gcd must divide both inputs exactly
        if not (g * a).is_zero():
            poly_divexact(g * a, d)
        if not (g * b).is_zero():
            poly_divexact(g * b, d)


class TestRatFn:
    def test_reduction(self):
        f = RatFn(parse_poly("x^2 - 1"), parse_poly("x - 1"))
        assert f.num == parse_poly("x + 1")
        assert f.den == ONE
        assert f.is_polynomial()

    def test_joint_primitivity(self):
        f = RatFn(parse_poly("2x + 2"), parse_poly("4"))
        assert f.num == parse_poly("x + 1")
        assert f.den == parse_poly("2")

    def test_den_sign(self):
        f = RatFn(parse_poly("x"), parse_poly("-x + 1"))
        assert f.den.leading > 0
        assert f == RatFn(parse_poly("-x"), parse_poly("x - 1"))

    def test_zero(self):
        f = RatFn(ZERO, parse_poly("x - 5"))
        assert f.is_zero()
        assert f.den == ONE

    def test_arith(self):
        x = RatFn(parse_poly("x"))
        one = RatFn(ONE)
        f = one / (one - x) - one / (one + x)
        # 2x / (1 - x^2)
        assert f == RatFn(parse_poly("2x"), parse_poly("-x^2 + 1"))
        assert f * (one - x * x) == RatFn(parse_poly("2x"))

    @given(coeff_dicts, coeff_dicts, coeff_dicts)
    def test_field_identities(self, da, db, dc):
        a, b, c = RatFn(IntPoly(da)), RatFn(IntPoly(db)), RatFn(IntPoly(dc))
        assert a * (b + c) == a * b + a * c
        if not b.is_zero():
            assert (a / b) * b == a

    def test_immutable(self):
        f = RatFn(ONE)
        with pytest.raises(AttributeError):
            f.num = ZERO


class TestSeries:
    def test_geometric(self):
        f = RatFn(ONE, parse_poly("-x + 1"))
        assert series_coeffs(f, 5) == [1, 1, 1, 1, 1, 1]

    def test_pole_rejected(self):
        with pytest.raises(ValueError):
            series_coeffs(RatFn(ONE, parse_poly("x")), 3)

    def test_staircase_limit_series(self):
        # (1-x)^2 / (x^2 - 3x + 1) expands as 1 + x + 3x^2 + 8x^3 + 21x^4 + ...
        f = RatFn(parse_poly("x^2 - 2x + 1"), parse_poly("x^2 - 3x + 1"))
        assert series_coeffs(f, 4) == [1, 1, 3, 8, 21]

    def test_two_cycle_limit_series(self):
        f = RatFn(parse_poly("3x^3 - 4x^2 - x + 2"), parse_poly("x^3 - 3x^2 - x + 1"))
        assert series_coeffs(f, 3) == [2, 1, 3, 7]

    @given(coeff_dicts, st.integers(1, 9))
    def test_series_times_den_recovers_num(self, dn, d0):
        num = IntPoly(dn)
        den = IntPoly({0: d0, 1: -2, 3: 1})
        f = RatFn(num, den)
        m = max(8, f.num.degree + f.den.degree + 2)
        cs = series_coeffs(f, m)
        # multiply the truncated series back by den and compare low terms
        for k in range(m - f.den.degree + 1):
            acc = Fraction(0)
            for i, di in f.den.coeffs.items():
                if 0 <= k - i <= m:
                    acc += di * cs[k - i]
            assert acc == f.num.coeff(k)


class TestFormatParse:
    def test_format_examples(self):
        assert format_poly(parse_poly("6x^4 + 4x^3 + x^2 - 1")) == "6x^4 + 4x^3 + x^2 - 1"
        assert format_poly(ZERO) == "0"
        assert format_poly(IntPoly({1: -1})) == "-x"
        assert format_poly(IntPoly({0: 5})) == "5"
        assert format_poly(LaurentPoly({-2: 3, 0: 4})) == "4 + 3x^-2"

    def test_parse_variants(self):
        assert parse_poly("2*x^3") == IntPoly({3: 2})
        assert parse_poly("x^2+x^2") == IntPoly({2: 2})
        assert parse_poly("  -x + 1 ") == IntPoly({1: -1, 0: 1})
        assert parse_poly("x^2 − 1") == IntPoly({2: 1, 0: -1})
        assert parse_laurent("2 + x^-1") == LaurentPoly({0: 2, -1: 1})

    def test_parse_errors(self):
        for bad in ["", "x +", "^2", "x^", "2 2", "y"]:
            with pytest.raises(PolyParseError):
                parse_poly(bad)
        with pytest.raises(PolyParseError):
            parse_poly("x^-1")

    @given(polys)
    def test_roundtrip_text(self, p):
        assert parse_poly(format_poly(p)) == p

    @given(laurents)
    def test_roundtrip_text_laurent(self, p):
        assert parse_laurent(format_poly(p)) == p

    @given(polys)
    def test_roundtrip_json(self, p):
        assert poly_from_json(poly_to_json(p)) == p

    def test_ratfn_json(self):
        f = RatFn(parse_poly("x^2 - 2x + 1"), parse_poly("x^2 - 3x + 1"))
        assert ratfn_from_json(ratfn_to_json(f)) == f
