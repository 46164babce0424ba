"""Exact Gaussian-integer arithmetic.

All values are immutable :class:`GInt` instances.  Python integers never wrap,
so the overflow policy is enforced explicitly: every constructed value must fit
in a signed 64-bit machine word, otherwise :class:`OverflowError` is raised.
"""

from __future__ import annotations

import operator
import re

_LIMIT = 1 << 63


def _check(x: int) -> int:
    if not -_LIMIT <= x < _LIMIT:
        raise OverflowError(f"Gaussian integer component {x} exceeds 64-bit range")
    return x


class GInt:
    """A Gaussian integer ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re: int = 0, im: int = 0):
        object.__setattr__(self, "re", _check(operator.index(re)))
        object.__setattr__(self, "im", _check(operator.index(im)))

    def __setattr__(self, name, value):
        raise AttributeError("GInt is immutable")

    @classmethod
    def of(cls, value) -> "GInt":
        """Coerce an int, GInt, (re, im) pair or text literal."""
        if isinstance(value, GInt):
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a Gaussian integer")
        if isinstance(value, int):
            return cls(value, 0)
        if isinstance(value, str):
            return parse_gint(value)
        if isinstance(value, (tuple, list)) and len(value) == 2:
            return cls(int(value[0]), int(value[1]))
        raise TypeError(f"cannot convert {value!r} to GInt")

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GInt(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GInt(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return GInt(self.re * other.re - self.im * other.im,
                    self.re * other.im + self.im * other.re)

    __rmul__ = __mul__

    def __neg__(self):
        return GInt(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self) -> "GInt":
        return GInt(self.re, -self.im)

    def __complex__(self) -> complex:
        return complex(self.re, self.im)

    def __bool__(self) -> bool:
        return bool(self.re or self.im)

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GInt({self.re}, {self.im})"

    def __str__(self):
        return format_gint(self)

    def to_json(self) -> list[int]:
        return [self.re, self.im]

    def key(self) -> tuple[int, int, int]:
        """Deterministic sort key (norm, re, im)."""
        return (norm(self), self.re, self.im)


def _coerce(value):
    if isinstance(value, GInt):
        return value
    if isinstance(value, int) and not isinstance(value, bool):
        return GInt(value, 0)
    return NotImplemented


ZERO = GInt(0, 0)
ONE = GInt(1, 0)
I = GInt(0, 1)
UNITS = (GInt(1, 0), GInt(0, 1), GInt(-1, 0), GInt(0, -1))


def norm(a: GInt) -> int:
    a = GInt.of(a)
    return _check(a.re * a.re + a.im * a.im)


def associates(a: GInt) -> set[GInt]:
    a = GInt.of(a)
    return {u * a for u in UNITS}


def canonical_associate(a: GInt) -> GInt:
    """The associate with re > 0 and im >= 0 (0 maps to 0)."""
    a = GInt.of(a)
    return a * canonical_unit(a)


def canonical_unit(a: GInt) -> GInt:
    """Unit u such that u*a is the canonical associate of a (1 for a = 0)."""
    for u in UNITS:
        b = u * a
        if b.re > 0 and b.im >= 0:
            return u
    return ONE


def _round_half_down(num: int, den: int) -> int:
    # nearest integer to num/den (den > 0), exact halves go toward -inf
    return (2 * num + den - 1) // (2 * den)


def div_rem(a: GInt, b: GInt) -> tuple[GInt, GInt]:
    a, b = GInt.of(a), GInt.of(b)
    if not b:
        raise ZeroDivisionError("Gaussian division by zero")
    n = norm(b)
    t = a * b.conj()
    quot = GInt(_round_half_down(t.re, n), _round_half_down(t.im, n))
    return quot, a - quot * b


def divides(d: GInt, a: GInt) -> bool:
    return not div_rem(a, d)[1]


def exact_div(a: GInt, d: GInt) -> GInt:
    quot, rem = div_rem(a, d)
    if rem:
        raise ValueError(f"{d} does not divide {a}")
    return quot


def gcd(a: GInt, b: GInt) -> GInt:
    a, b = GInt.of(a), GInt.of(b)
    if not a and not b:
        raise ValueError("gcd(0, 0) is undefined")
    while b:
        a, b = b, div_rem(a, b)[1]
    return canonical_associate(a)


def bezout(a: GInt, b: GInt) -> tuple[GInt, GInt, GInt]:
    """Return (x, y, g) with a*x + b*y = g = gcd(a, b).

    The sign convention is ``+``; callers needing ``a*x - b*y`` negate y.
    """
    a, b = GInt.of(a), GInt.of(b)
    if not a and not b:
        raise ValueError("bezout(0, 0) is undefined")
    r0, r1 = a, b
    x0, x1 = ONE, ZERO
    y0, y1 = ZERO, ONE
    while r1:
        quot, rem = div_rem(r0, r1)
        r0, r1 = r1, rem
        x0, x1 = x1, x0 - quot * x1
        y0, y1 = y1, y0 - quot * y1
    u = canonical_unit(r0)
    return x0 * u, y0 * u, r0 * u


def is_rational_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def is_gaussian_prime(a: GInt) -> bool:
    a = GInt.of(a)
    if is_rational_prime(norm(a)):
        return True
    if a.re == 0 or a.im == 0:
        p = abs(a.re + a.im)
        return p % 4 == 3 and is_rational_prime(p)
    return False


def inverse_mod(a: GInt, q: GInt) -> GInt:
    """Inverse of a modulo the Gaussian prime q, as a canonical representative."""
    from .residue import build_field, reduce  # local import: residue depends on us

    a, q = GInt.of(a), GInt.of(q)
    if not is_gaussian_prime(q):
        raise ValueError(f"{q} is not a Gaussian prime")
    x, _, g = bezout(a, q)
    if g != ONE:
        raise ZeroDivisionError(f"{a} is not invertible modulo {q}")
    return reduce(x, build_field(q))


_TERM = re.compile(r"\s*([+-]?)\s*(\d*)\s*(i?)\s*")


def parse_gint(text: str) -> GInt:
    """Parse ``a+bi``, ``a-bi``, ``a``, ``bi``, ``i``, ``-i`` forms."""
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty Gaussian integer literal")
    re_part = im_part = 0
    seen_re = seen_im = False
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"malformed Gaussian integer literal: {text!r}")
        sign, digits, unit = m.groups()
        if pos > 0 and not sign:
            raise ValueError(f"malformed Gaussian integer literal: {text!r}")
        if not digits and not unit:
            raise ValueError(f"malformed Gaussian integer literal: {text!r}")
        value = int(digits) if digits else 1
        if sign == "-":
            value = -value
        if unit:
            if seen_im:
                raise ValueError(f"malformed Gaussian integer literal: {text!r}")
            im_part, seen_im = value, True
        else:
            if seen_re or seen_im:
                raise ValueError(f"malformed Gaussian integer literal: {text!r}")
            re_part, seen_re = value, True
        pos = m.end()
    return GInt(re_part, im_part)


def format_gint(a: GInt) -> str:
    if a.im == 0:
        return str(a.re)
    if a.im == 1:
        im = "i"
    elif a.im == -1:
        im = "-i"
    else:
        im = f"{a.im}i"
    if a.re == 0:
        return im
    return f"{a.re}{im if im.startswith('-') else '+' + im}"
