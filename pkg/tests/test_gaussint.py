import itertools

import pytest
from hypothesis import given, strategies as st

from pncgauss.gaussint import (
    GInt,
    UNITS,
    associates,
    bezout,
    canonical_associate,
    div_rem,
    divides,
    format_gint,
    gcd,
    inverse_mod,
    is_gaussian_prime,
    norm,
    parse_gint,
)

small = st.integers(-60, 60)
gints = st.builds(GInt, small, small)
nonzero = gints.filter(bool)


def G(s):
    return parse_gint(s)


def brute_gcd(a: GInt, b: GInt) -> GInt:
    bound = max(norm(a), norm(b))
    r = int(bound ** 0.5) + 1
    best = GInt(1)
    for x, y in itertools.product(range(-r, r + 1), repeat=2):
        d = GInt(x, y)
        if d and norm(d) > norm(best) and divides(d, a) and divides(d, b):
            best = d
    return canonical_associate(best)


def brute_is_prime(a: GInt) -> bool:
    n = norm(a)
    if n < 2:
        return False
    r = int(n ** 0.5) + 1
    for x, y in itertools.product(range(-r, r + 1), repeat=2):
        d = GInt(x, y)
        if 2 <= norm(d) < n and divides(d, a):
            return False
    return True


class TestExamples:
    def test_norm(self):
        assert norm(GInt(0)) == 0
        assert norm(G("1+2i")) == 5
        assert norm(GInt(3)) == 9

    def test_associates(self):
        assert associates(GInt(1)) == {GInt(1), GInt(-1), GInt(0, 1), GInt(0, -1)}
        assert associates(GInt(0)) == {GInt(0)}
        assert associates(G("2+i")) == {G("2+i"), G("-2-i"), G("-1+2i"), G("1-2i")}

    def test_canonical_associate(self):
        assert canonical_associate(G("-1+2i")) == G("2+i")
        assert canonical_associate(G("1-i")) == G("1+i")
        assert canonical_associate(GInt(5)) == GInt(5)
        assert canonical_associate(GInt(0)) == GInt(0)

    def test_div_rem(self):
        assert div_rem(GInt(5), G("2+i")) == (G("2-i"), GInt(0))
        a = G("7-3i")
        assert div_rem(a, GInt(1)) == (a, GInt(0))
        quot, rem = div_rem(G("1+i"), GInt(2))
        assert quot * 2 + rem == G("1+i") and norm(rem) <= 2
        # both components of (1+i)/2 are exact halves, rounded toward -inf
        assert quot == GInt(0) and rem == G("1+i")

    def test_div_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            div_rem(GInt(1), GInt(0))

    def test_gcd(self):
        a = G("3-4i")
        assert gcd(GInt(0), a) == canonical_associate(a)
        assert gcd(GInt(1), G("-1-i")) == GInt(1)
        assert gcd(G("2+2i"), GInt(2)) == GInt(2) == brute_gcd(G("2+2i"), GInt(2))
        with pytest.raises(ValueError):
            gcd(GInt(0), GInt(0))

    def test_bezout(self):
        a = G("3+4i")
        x, y, g = bezout(a, GInt(0))
        assert y == 0 and g == canonical_associate(a) and x * a == g
        x, y, g = bezout(GInt(1), G("-1-i"))
        assert g == 1 and x + G("-1-i") * y == 1
        x, y, g = bezout(G("2+i"), G("2-i"))
        assert g == 1 and G("2+i") * x + G("2-i") * y == 1

    def test_is_gaussian_prime(self):
        assert not is_gaussian_prime(GInt(2))
        assert is_gaussian_prime(GInt(3))
        assert is_gaussian_prime(G("4+i"))
        assert is_gaussian_prime(G("1+i"))
        assert not is_gaussian_prime(GInt(5))
        assert is_gaussian_prime(GInt(0, 7))

    def test_inverse_mod(self):
        assert inverse_mod(GInt(1), GInt(3)) == 1
        assert inverse_mod(GInt(0, 1), G("2+i")) == G("-i")
        r = inverse_mod(G("1+i"), GInt(3))
        candidates = [GInt(a, b) for a in (-1, 0, 1) for b in (-1, 0, 1) if (a, b) != (0, 0)]
        assert [c for c in candidates if divides(GInt(3), G("1+i") * c - 1)] == [r]
        with pytest.raises(ZeroDivisionError):
            inverse_mod(GInt(3), GInt(3))
        with pytest.raises(ValueError):
            inverse_mod(GInt(1), GInt(2))


class TestTextFormat:
    @pytest.mark.parametrize("text,value", [
        ("2+i", GInt(2, 1)), ("-1-2i", GInt(-1, -2)), ("7", GInt(7)), ("3i", GInt(0, 3)),
        ("-i", GInt(0, -1)), ("i", GInt(0, 1)), ("1+1i", GInt(1, 1)), ("0", GInt(0)),
    ])
    def test_parse(self, text, value):
        assert parse_gint(text) == value

    @pytest.mark.parametrize("text", ["", "i2", "1+2", "2i+1", "1.5", "1++i", "x"])
    def test_parse_rejects(self, text):
        with pytest.raises(ValueError):
            parse_gint(text)

    @given(gints)
    def test_round_trip(self, a):
        assert parse_gint(format_gint(a)) == a

    def test_json(self):
        assert GInt(-1, 2).to_json() == [-1, 2]
        assert GInt.of([3, -4]) == GInt(3, -4)


def test_overflow_is_loud():
    big = GInt(1 << 40, 0)
    with pytest.raises(OverflowError):
        big * big
    with pytest.raises(OverflowError):
        GInt(1 << 63)


def test_immutable():
    a = GInt(1, 2)
    with pytest.raises(AttributeError):
        a.re = 5


@given(gints, gints)
def test_norm_multiplicative(a, b):
    assert norm(a * b) == norm(a) * norm(b)


@given(gints, nonzero)
def test_div_rem_bound(a, b):
    quot, rem = div_rem(a, b)
    assert quot * b + rem == a
    assert 2 * norm(rem) <= norm(b)


@given(gints, gints)
def test_gcd_divides_and_symmetric(a, b):
    if not a and not b:
        return
    g = gcd(a, b)
    assert divides(g, a) and divides(g, b)
    assert g == gcd(b, a)
    assert g == canonical_associate(g)


@given(st.builds(GInt, st.integers(-12, 12), st.integers(-12, 12)),
       st.builds(GInt, st.integers(-12, 12), st.integers(-12, 12)))
def test_gcd_matches_divisor_enumeration(a, b):
    if not a and not b:
        return
    assert gcd(a, b) == brute_gcd(a, b)


@given(gints, gints)
def test_bezout_identity(a, b):
    if not a and not b:
        return
    x, y, g = bezout(a, b)
    assert a * x + b * y == g == gcd(a, b)


def test_primality_matches_trial_division_small_box():
    for x, y in itertools.product(range(-14, 15), repeat=2):
        a = GInt(x, y)
        assert is_gaussian_prime(a) == brute_is_prime(a), a


@given(st.builds(GInt, st.integers(-70, 70), st.integers(-70, 70)).filter(lambda a: norm(a) <= 10000))
def test_primality_matches_trial_division(a):
    assert is_gaussian_prime(a) == brute_is_prime(a)


@pytest.mark.parametrize("q", ["1+i", "2+i", "1+2i", "3", "3+2i", "4+i", "7"])
def test_inverse_for_every_residue(q):
    from pncgauss.residue import build_field, field_mul

    f = build_field(q)
    for a in f.nonzero:
        assert field_mul(a, inverse_mod(a, f.q), f) == 1


def test_units_are_units():
    assert all(norm(u) == 1 for u in UNITS)
