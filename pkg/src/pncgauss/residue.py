"""Residue fields Z[i]/q with minimal-magnitude representatives."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from .gaussint import GInt, ONE, ZERO, div_rem, inverse_mod, is_gaussian_prime, norm


@dataclass(frozen=True, eq=False)
class ResidueField:
    q: GInt
    elements: tuple[GInt, ...]
    mu: float
    _index: dict = dc_field(repr=False, default_factory=dict)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def nonzero(self) -> tuple[GInt, ...]:
        return self.elements[1:]

    def __contains__(self, w) -> bool:
        return GInt.of(w) in self._index

    def index(self, w: GInt) -> int:
        return self._index[GInt.of(w)]

    def __eq__(self, other):
        return isinstance(other, ResidueField) and other.q == self.q

    def __hash__(self):
        return hash(("ResidueField", self.q))

    def __repr__(self):
        return f"ResidueField(q={self.q}, order={self.order})"


def _inside(w: GInt, q: GInt, n: int) -> bool | None:
    """Strict membership in the rotated square; None when w sits on its boundary."""
    x = q.re * w.re + q.im * w.im
    y = -q.im * w.re + q.re * w.im
    if 2 * abs(x) == n or 2 * abs(y) == n:
        return None
    return 2 * abs(x) < n and 2 * abs(y) < n


def basis_coords(w: GInt, q: GInt) -> tuple[Fraction, Fraction, int]:
    """Rotated coordinates of w, scaled by |q|.

    Returns ``(X, Y, n)`` where the true coordinates are ``X/|q|`` and
    ``Y/|q|`` and ``n = norm(q)``.  Keeping the factor |q| out of the result
    avoids irrational numbers; the membership test |w^x| < |q|/2 becomes
    ``|X| < n/2``.
    """
    w, q = GInt.of(w), GInt.of(q)
    if not q:
        raise ZeroDivisionError("basis of q = 0 is undefined")
    n = norm(q)
    return (Fraction(q.re * w.re + q.im * w.im), Fraction(-q.im * w.re + q.re * w.im), n)


@lru_cache(maxsize=None)
def _build(q: GInt) -> ResidueField:
    n = norm(q)
    if n == 2:
        elems = [ZERO, ONE]
    else:
        bound = math.isqrt(n) + 1
        elems = []
        for a in range(-bound, bound + 1):
            for b in range(-bound, bound + 1):
                w = GInt(a, b)
                inside = _inside(w, q, n)
                if inside is None:
                    raise AssertionError(f"lattice point {w} lies on the boundary for q={q}")
                if inside:
                    elems.append(w)
    elems.sort(key=GInt.key)
    if len(elems) != n:
        raise AssertionError(f"found {len(elems)} representatives for q={q}, expected {n}")
    mu = math.sqrt(sum(norm(w) for w in elems) / n)
    return ResidueField(q, tuple(elems), mu, {w: k for k, w in enumerate(elems)})


def build_field(q) -> ResidueField:
    q = GInt.of(q)
    if not is_gaussian_prime(q):
        raise ValueError("q is not a Gaussian prime")
    return _build(q)


def reduce(w, field: ResidueField) -> GInt:
    """The representative of w's congruence class."""
    w = GInt.of(w)
    q = field.q
    if norm(q) == 2:
        return ONE if (w.re + w.im) % 2 else ZERO
    # For odd norm, nearest-integer division lands exactly in the rotated
    # square (its edges hold no lattice point), so the remainder is the
    # representative.
    r = div_rem(w, q)[1]
    if r not in field._index:
        raise AssertionError(f"reduction of {w} mod {q} left the representative set")
    return r


def field_add(a, b, field: ResidueField) -> GInt:
    return reduce(GInt.of(a) + GInt.of(b), field)


def field_sub(a, b, field: ResidueField) -> GInt:
    return reduce(GInt.of(a) - GInt.of(b), field)


def field_mul(a, b, field: ResidueField) -> GInt:
    return reduce(GInt.of(a) * GInt.of(b), field)


def field_neg(a, field: ResidueField) -> GInt:
    return reduce(-GInt.of(a), field)


def field_inv(a, field: ResidueField) -> GInt:
    a = reduce(a, field)
    if not a:
        raise ZeroDivisionError("zero has no inverse")
    return inverse_mod(a, field.q)
