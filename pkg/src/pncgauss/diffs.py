"""Difference pairs, characteristic differences, Q-sets and the convex region G_q.

Pairs are stored in the (dA, dB) order throughout.  The Q-set literature
uses the swapped order (kappa, tau) = (-dB, dA); :func:`in_Qq` accepts that
order and converts at the boundary.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

from .gain import ChannelGain
from .gaussint import GInt, ONE, ZERO, canonical_unit, exact_div, gcd, norm
from .residue import ResidueField


@dataclass(frozen=True)
class DifferencePair:
    dA: GInt
    dB: GInt
    distance_valid: bool
    nc_valid: bool


@dataclass(frozen=True)
class CharDifference:
    dA: GInt
    dB: GInt

    @property
    def generator(self) -> ChannelGain:
        """eta° = -dB/dA (infinity when dA = 0)."""
        return ChannelGain.ratio(-self.dB, self.dA)

    @property
    def trivial(self) -> bool:
        return not self.dA or not self.dB

    def key(self):
        return (norm(self.dA), norm(self.dB), self.dA.re, self.dA.im, self.dB.re, self.dB.im)

    def to_json(self):
        return [self.dA.to_json(), self.dB.to_json()]

    def __str__(self):
        return f"({self.dA}, {self.dB})"


def normalize_pair(dA: GInt, dB: GInt) -> tuple[GInt, GInt]:
    """Scale by the unit that makes the first nonzero component canonical."""
    u = canonical_unit(dA if dA else dB)
    return dA * u, dB * u


def char_difference(dA, dB) -> CharDifference:
    """Normalize an arbitrary coprime pair into a CharDifference (no validity check)."""
    dA, dB = GInt.of(dA), GInt.of(dB)
    if gcd(dA, dB) != ONE:
        raise ValueError(f"({dA}, {dB}) is not coprime")
    return CharDifference(*normalize_pair(dA, dB))


@lru_cache(maxsize=None)
def component_differences(field: ResidueField) -> frozenset[GInt]:
    return frozenset(a - b for a in field.elements for b in field.elements)


def sorted_lambda(field: ResidueField) -> list[GInt]:
    return sorted(component_differences(field), key=GInt.key)


@lru_cache(maxsize=None)
def difference_set(field: ResidueField) -> tuple[DifferencePair, ...]:
    """Delta, brute-forced from ordered pairs of distinct joint symbols.

    Each distinct (dA, dB) value is reported once.
    """
    seen: set[tuple[GInt, GInt]] = set()
    els = field.elements
    for wa, va in product(els, repeat=2):
        for wb, vb in product(els, repeat=2):
            if (wa, va) != (wb, vb):
                seen.add((wa - wb, va - vb))
    return tuple(
        DifferencePair(a, b, True, bool(a) and bool(b))
        for a, b in sorted(seen, key=lambda p: (p[0].key(), p[1].key()))
    )


def difference_pairs(field: ResidueField) -> list[tuple[GInt, GInt]]:
    """Delta via the product structure Lambda x Lambda minus (0, 0)."""
    lam = sorted_lambda(field)
    return [(a, b) for a in lam for b in lam if a or b]


def is_distance_valid(dA, dB, field: ResidueField) -> bool:
    lam = component_differences(field)
    dA, dB = GInt.of(dA), GInt.of(dB)
    return (dA or dB) and dA in lam and dB in lam


@lru_cache(maxsize=None)
def characteristic_set(field: ResidueField) -> tuple[CharDifference, ...]:
    out = set()
    for a, b in difference_pairs(field):
        if gcd(a, b) == ONE:
            out.add(CharDifference(*normalize_pair(a, b)))
    return tuple(sorted(out, key=CharDifference.key))


@lru_cache(maxsize=None)
def _char_lookup(field: ResidueField) -> frozenset[CharDifference]:
    return frozenset(characteristic_set(field))


def reduce_pair(dA, dB) -> CharDifference:
    """Divide out the gcd and normalize the unit."""
    dA, dB = GInt.of(dA), GInt.of(dB)
    g = gcd(dA, dB)
    return CharDifference(*normalize_pair(exact_div(dA, g), exact_div(dB, g)))


def in_Q_delta(dA, dB, field: ResidueField) -> bool:
    """Q-set membership for a pair given in (dA, dB) order."""
    dA, dB = GInt.of(dA), GInt.of(dB)
    if not dA and not dB:
        raise ValueError("(0, 0) is not in any Q-set")
    return reduce_pair(dA, dB) in _char_lookup(field)


def in_Qq(k, t, field: ResidueField) -> bool:
    """Q-set membership for (kappa, tau) = (-dB, dA)."""
    k, t = GInt.of(k), GInt.of(t)
    return in_Q_delta(t, -k, field)


def kappa_tau(cd: CharDifference) -> tuple[GInt, GInt]:
    return -cd.dB, cd.dA


# convex region ----------------------------------------------------------------

def _cross(o: GInt, a: GInt, b: GInt) -> int:
    return (a.re - o.re) * (b.im - o.im) - (a.im - o.im) * (b.re - o.re)


def convex_hull(points) -> list[GInt]:
    """Counter-clockwise hull without collinear points (monotone chain)."""
    pts = sorted(set(points), key=lambda p: (p.re, p.im))
    if len(pts) <= 2:
        return pts

    def half(seq):
        chain: list[GInt] = []
        for p in seq:
            while len(chain) >= 2 and _cross(chain[-2], chain[-1], p) <= 0:
                chain.pop()
            chain.append(p)
        return chain

    lower, upper = half(pts), half(reversed(pts))
    return lower[:-1] + upper[:-1]


@lru_cache(maxsize=None)
def region_hull(field: ResidueField) -> tuple[GInt, ...]:
    return tuple(convex_hull(component_differences(field)))


def convex_region_contains(g, field: ResidueField) -> bool:
    """Exact membership of g in the closed convex hull of Lambda."""
    g = GInt.of(g)
    hull = region_hull(field)
    if len(hull) == 1:
        return g == hull[0]
    if len(hull) == 2:
        a, b = hull
        if _cross(a, b, g) != 0:
            return False
        return min(a.re, b.re) <= g.re <= max(a.re, b.re) and min(a.im, b.im) <= g.im <= max(a.im, b.im)
    return all(_cross(hull[k], hull[(k + 1) % len(hull)], g) >= 0 for k in range(len(hull)))


def lattice_points_in_region(field: ResidueField) -> set[GInt]:
    hull = region_hull(field)
    lo_re, hi_re = min(p.re for p in hull), max(p.re for p in hull)
    lo_im, hi_im = min(p.im for p in hull), max(p.im for p in hull)
    return {
        GInt(a, b)
        for a in range(lo_re, hi_re + 1)
        for b in range(lo_im, hi_im + 1)
        if convex_region_contains(GInt(a, b), field)
    }


# validity bounds ----------------------------------------------------------------

@dataclass(frozen=True)
class BoundsReport:
    q: GInt
    q_re: int
    bound: int
    max_norm: int
    boundary_count: int
    necessary_ok: bool
    sufficient_ok: bool
    missing: tuple[GInt, ...]

    @property
    def ok(self) -> bool:
        return self.necessary_ok and self.sufficient_ok


def validity_bounds_check(field: ResidueField) -> BoundsReport:
    """Check the necessary norm bound and the sufficient |delta| < |q| condition on Lambda.

    The bound 2*norm(q) - 4*qR + 2 is evaluated with q rotated/reflected so
    that qR is its larger absolute component (qR = q for real q).
    """
    q = field.q
    n = norm(q)
    q_re = max(abs(q.re), abs(q.im))
    bound = 2 * n - 4 * q_re + 2
    lam = component_differences(field)
    norms = [norm(d) for d in lam]
    r = 0
    while r * r < n:
        r += 1
    missing = tuple(
        sorted(
            (GInt(a, b) for a in range(-r, r + 1) for b in range(-r, r + 1)
             if 0 < a * a + b * b < n and GInt(a, b) not in lam),
            key=GInt.key,
        )
    )
    return BoundsReport(
        q=q,
        q_re=q_re,
        bound=bound,
        max_norm=max(norms),
        boundary_count=sum(1 for v in norms if v == bound),
        necessary_ok=max(norms) <= bound,
        sufficient_ok=not missing,
        missing=missing,
    )


TRIVIAL_ZERO = CharDifference(ONE, ZERO)
TRIVIAL_INF = CharDifference(ZERO, ONE)
