"""Distance landscape over the channel-gain plane.

The brute-force quantities here (``d_min`` over the full difference set,
``optimal_mapping_bruteforce``) are deliberately naive; they serve as the
oracle for the Voronoi fast path.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .diffs import (
    CharDifference,
    characteristic_set,
    difference_pairs,
    normalize_pair,
    sorted_lambda,
)
from .gain import ChannelGain, as_complex
from .gaussint import GInt, I, norm
from .mapping import NcMapping, canonical_mappings, mapping_from_cluster
from .residue import ResidueField, field_mul, reduce

__all__ = [
    "ChannelGain",
    "pair_distance",
    "l_min",
    "d_min",
    "d_min_many",
    "optimal_mapping_bruteforce",
    "optimal_dmin_many",
    "l_min_full",
    "zero_lmin_gains",
    "symmetric_gains",
    "in_octant",
    "optimal_mapping_at_gain",
    "dmin_at_gain",
    "dmin_determining_at_gain",
    "normalized_distance_norm",
]


def pair_distance(eta, dA, dB) -> float:
    """|eta*dA + dB|."""
    return abs(as_complex(eta) * complex(GInt.of(dA)) + complex(GInt.of(dB)))


# cached numeric tables --------------------------------------------------------

@dataclass(frozen=True)
class _CharTable:
    chars: tuple[CharDifference, ...]
    a: np.ndarray
    b: np.ndarray


@lru_cache(maxsize=None)
def char_table(field: ResidueField) -> _CharTable:
    chars = characteristic_set(field)
    return _CharTable(
        chars,
        np.array([complex(c.dA) for c in chars]),
        np.array([complex(c.dB) for c in chars]),
    )


@dataclass(frozen=True)
class _DeltaTable:
    pairs: tuple[tuple[GInt, GInt], ...]
    a: np.ndarray
    b: np.ndarray
    ra: np.ndarray  # field index of reduce(dA)
    rb: np.ndarray


@lru_cache(maxsize=None)
def delta_table(field: ResidueField) -> _DeltaTable:
    pairs = tuple(difference_pairs(field))
    red = {d: field.index(reduce(d, field)) for d in sorted_lambda(field)}
    return _DeltaTable(
        pairs,
        np.array([complex(p[0]) for p in pairs]),
        np.array([complex(p[1]) for p in pairs]),
        np.array([red[p[0]] for p in pairs]),
        np.array([red[p[1]] for p in pairs]),
    )


@lru_cache(maxsize=None)
def _mul_table(field: ResidueField) -> np.ndarray:
    els = field.elements
    return np.array([[field.index(field_mul(x, y, field)) for y in els] for x in els])


@lru_cache(maxsize=None)
def unclustered_mask(field: ResidueField, m: NcMapping) -> np.ndarray:
    """Boolean mask over the difference table: True where m does NOT cluster."""
    t = delta_table(field)
    mul = _mul_table(field)
    neg = np.array([field.index(reduce(-w, field)) for w in field.elements])
    ia, ib = field.index(m.alpha), field.index(m.beta)
    return mul[ib][t.rb] != neg[mul[ia][t.ra]]


# l_min / d_min ------------------------------------------------------------------

def l_min(eta, field: ResidueField) -> tuple[float, CharDifference]:
    z = as_complex(eta)
    t = char_table(field)
    d = np.abs(t.a * z + t.b)
    k = int(np.argmin(d))
    return float(d[k]), t.chars[k]


def l_min_full(eta, field: ResidueField) -> float:
    """l_min scanning every difference pair (oracle for the characteristic reduction)."""
    z = as_complex(eta)
    t = delta_table(field)
    return float(np.min(np.abs(t.a * z + t.b)))


def d_min(eta, m: NcMapping, field: ResidueField) -> float:
    z = as_complex(eta)
    t = delta_table(field)
    mask = unclustered_mask(field, m)
    return float(np.min(np.abs(t.a[mask] * z + t.b[mask])))


def d_min_many(etas: np.ndarray, m: NcMapping, field: ResidueField, chunk: int = 2048) -> np.ndarray:
    """Vectorized :func:`d_min` over an array of finite gains."""
    etas = np.asarray(etas, dtype=complex).ravel()
    t = delta_table(field)
    mask = unclustered_mask(field, m)
    a, b = t.a[mask], t.b[mask]
    out = np.empty(etas.shape, dtype=float)
    for s in range(0, etas.size, chunk):
        e = etas[s:s + chunk]
        out[s:s + chunk] = np.min(np.abs(e[:, None] * a[None, :] + b[None, :]), axis=1)
    return out


def optimal_mapping_bruteforce(eta, field: ResidueField) -> tuple[NcMapping, float]:
    best_m, best = None, -1.0
    for m in canonical_mappings(field):
        v = d_min(eta, m, field)
        if v > best:
            best_m, best = m, v
    return best_m, best


def optimal_dmin_many(etas: np.ndarray, field: ResidueField) -> np.ndarray:
    """max over canonical mappings of d_min, for each gain."""
    etas = np.asarray(etas, dtype=complex).ravel()
    best = np.zeros(etas.shape)
    for m in canonical_mappings(field):
        best = np.maximum(best, d_min_many(etas, m, field))
    return best


# zero-l_min gains ---------------------------------------------------------------

def zero_lmin_gains(field: ResidueField, window_radius: float) -> list[tuple[ChannelGain, CharDifference]]:
    """Every eta° = -dB/dA with |eta°| <= radius, plus 0 and infinity."""
    if window_radius <= 0:
        raise ValueError("window radius must be positive")
    out: list[tuple[ChannelGain, CharDifference]] = []
    r2 = window_radius * window_radius
    for cd in characteristic_set(field):
        if cd.dA and norm(cd.dB) > r2 * norm(cd.dA):
            continue
        g = cd.generator
        if any(g.same_point(h) for h, _ in out):
            raise AssertionError(f"duplicate zero-l_min gain for {cd}")
        out.append((g, cd))
    return out


def in_octant(cd: CharDifference) -> bool:
    """True when the generator lies in the closed first octant 0 <= arg <= pi/4 (finite, nonzero)."""
    if cd.trivial:
        return False
    z = -cd.dB * cd.dA.conj()  # same argument as -dB/dA
    return z.im >= 0 and z.im <= z.re


_TRANSFORMS = (
    lambda a, b: (a.conj(), I * b.conj()),      # i * conj(eta)
    lambda a, b: (a, I * b),                    # i * eta
    lambda a, b: (a.conj(), -b.conj()),         # -conj(eta)
    lambda a, b: (a, -b),                       # -eta
    lambda a, b: (a.conj(), -I * b.conj()),     # -i * conj(eta)
    lambda a, b: (a, -I * b),                   # -i * eta
    lambda a, b: (a.conj(), b.conj()),          # conj(eta)
)


def symmetric_gains(eta0: ChannelGain | None, cd: CharDifference) -> list[tuple[ChannelGain, CharDifference]]:
    """The seven octant images of a zero-l_min gain and their characteristic differences.

    ``eta0`` must be the generator of ``cd`` (None means "use cd.generator").
    The closed octant is accepted so that gains on the real axis and the
    diagonal can be expanded as well; for those some images coincide.
    """
    if not in_octant(cd):
        raise ValueError(f"generator of {cd} is not in the first octant")
    if eta0 is not None and not eta0.same_point(cd.generator) and not (
        eta0.exact is None and abs(eta0.value - cd.generator.value) < 1e-12
    ):
        raise ValueError("eta0 is not the generator of cd")
    out = []
    for t in _TRANSFORMS:
        a, b = t(cd.dA, cd.dB)
        c = CharDifference(*normalize_pair(a, b))
        out.append((c.generator, c))
    return out


# closed forms at zero-l_min gains -------------------------------------------------

def optimal_mapping_at_gain(cd: CharDifference, field: ResidueField) -> NcMapping:
    if cd.trivial:
        raise ValueError("trivial gains have no clustering mapping")
    return mapping_from_cluster(cd.dA, cd.dB, field)


def dmin_at_gain(cd: CharDifference) -> float:
    if cd.trivial:
        return 0.0
    return 1.0 / math.sqrt(norm(cd.dA))


def normalized_distance_norm(c1: CharDifference, c2: CharDifference) -> int:
    """norm(Xi) with Xi = dB1*dA2 - dA1*dB2."""
    return norm(c1.dB * c2.dA - c1.dA * c2.dB)


def dmin_determining_at_gain(cd: CharDifference, field: ResidueField) -> list[CharDifference]:
    """All characteristic differences at normalized distance 1 from cd."""
    if cd.trivial:
        raise ValueError("trivial gains are not covered")
    return [c for c in characteristic_set(field) if normalized_distance_norm(cd, c) == 1]
