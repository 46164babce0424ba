"""Weighted Voronoi partition of the channel-gain plane.

Generators are the characteristic differences; the weighted distance from a
generator (dA, dB) to eta is |dA*eta + dB|.  Adjacency of two cells is decided
exactly from Gaussian-integer arithmetic (the Q-criteria), with a numerical
geometric oracle kept alongside for cross-checking.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .diffs import CharDifference, characteristic_set, in_Q_delta
from .gain import as_complex
from .gaussint import UNITS, exact_div, norm
from .mapping import NcMapping, clusters
from .metrics import char_table, l_min, normalized_distance_norm, optimal_mapping_at_gain
from .residue import ResidueField, build_field, reduce

EDGE_TOL = 1e-9
ORACLE_MARGIN = 1e-7
SINGULAR_TOL = 1e-12


@dataclass(frozen=True)
class VoronoiCell:
    generator: CharDifference
    optimal_mapping: NcMapping | None
    adjacent: frozenset[CharDifference]

    def contains(self, eta, field: ResidueField) -> bool:
        """True when eta is in the closed cell (ties count as membership)."""
        value = weighted_distance(self.generator, eta)
        return value <= l_min(eta, field)[0] + EDGE_TOL


def weighted_distance(cd: CharDifference, eta) -> float:
    return abs(complex(cd.dA) * as_complex(eta) + complex(cd.dB))


def locate(eta, field: ResidueField) -> tuple[CharDifference, bool]:
    """(cell generator, on_edge) for a finite gain."""
    t = char_table(field)
    d = np.abs(t.a * as_complex(eta) + t.b)
    k = int(np.argmin(d))
    second = np.partition(d, 1)[1] if d.size > 1 else math.inf
    return t.chars[k], bool(second - d[k] <= EDGE_TOL)


def cell_of(eta, field: ResidueField) -> CharDifference:
    return locate(eta, field)[0]


# edge geometry ------------------------------------------------------------------

@dataclass(frozen=True)
class Circle:
    center: complex
    radius: float

    def points(self, n: int) -> np.ndarray:
        t = np.linspace(0.0, 2 * np.pi, n, endpoint=False)
        return self.center + self.radius * np.exp(1j * t)


@dataclass(frozen=True)
class Line:
    """The line {point + s*direction : s real}; direction has unit modulus."""

    point: complex
    direction: complex

    def slope_intercept(self) -> tuple[float, float] | None:
        """(slope, intercept) of Im = slope*Re + intercept; None for vertical lines."""
        if abs(self.direction.real) < 1e-15:
            return None
        slope = self.direction.imag / self.direction.real
        return slope, self.point.imag - slope * self.point.real

    def points(self, n: int, radius: float) -> np.ndarray:
        """n samples of the chord inside |eta| <= radius (empty if it misses)."""
        s0 = -(self.point * self.direction.conjugate()).real
        foot = self.point + s0 * self.direction
        h2 = radius * radius - abs(foot) ** 2
        if h2 < 0:
            return np.empty(0, dtype=complex)
        h = math.sqrt(h2)
        return foot + np.linspace(-h, h, n) * self.direction


def _bisector_coeffs(ci: CharDifference, cj: CharDifference) -> tuple[float, complex, float]:
    """(A, M, C) with |a eta + b|^2 - |c eta + d|^2 = A|eta|^2 + 2 Re(eta M) + C."""
    a, b, c, d = complex(ci.dA), complex(ci.dB), complex(cj.dA), complex(cj.dB)
    A = abs(a) ** 2 - abs(c) ** 2
    M = a * b.conjugate() - c * d.conjugate()
    C = abs(b) ** 2 - abs(d) ** 2
    return A, M, C


def _check_pair(ci: CharDifference, cj: CharDifference) -> None:
    if ci == cj:
        raise ValueError(f"{ci} and {cj} are associates")


def edge_descriptor(ci: CharDifference, cj: CharDifference) -> Circle | Line:
    """Locus of gains equidistant (in weighted distance) from two generators."""
    _check_pair(ci, cj)
    A, M, C = _bisector_coeffs(ci, cj)
    if A == 0:
        # 2 Re(eta M) + C = 0: normal direction conj(M)
        if M == 0:
            raise ValueError("degenerate edge")
        nrm = M.conjugate() / abs(M)
        point = -C / (2 * abs(M)) * nrm
        return Line(point, 1j * nrm)
    center = -M.conjugate() / A
    r2 = abs(center) ** 2 - C / A
    return Circle(center, math.sqrt(max(r2, 0.0)))


def _intersect(e1: tuple[float, complex, float], e2: tuple[float, complex, float]) -> list[complex]:
    """Common points of two generalized circles A|z|^2 + 2Re(zM) + C = 0."""
    A1, M1, C1 = e1
    A2, M2, C2 = e2
    if A1 == 0:
        line, quad = e1, e2
    elif A2 == 0:
        line, quad = e2, e1
    else:
        line = (0.0, A2 * M1 - A1 * M2, A2 * C1 - A1 * C2)
        quad = e1
    _, L, CL = line
    if abs(L) < 1e-14:
        return []
    u = L.conjugate() / abs(L)  # Re(z L) = |L| Re(z conj(u)) ... parametrize z = p + s*i*u
    p = -CL / (2 * abs(L)) * u
    v = 1j * u
    Aq, Mq, Cq = quad
    # Aq|p + s v|^2 + 2 Re((p + s v) Mq) + Cq = 0
    qa = Aq
    qb = 2 * Aq * (p * v.conjugate()).real + 2 * (v * Mq).real
    qc = Aq * abs(p) ** 2 + 2 * (p * Mq).real + Cq
    if abs(qa) < 1e-14:
        if abs(qb) < 1e-14:
            return []
        return [p - qc / qb * v]
    disc = qb * qb - 4 * qa * qc
    if disc < 0:
        if disc > -1e-9 * max(1.0, qb * qb):
            disc = 0.0
        else:
            return []
    r = math.sqrt(disc)
    return [p + (-qb + r) / (2 * qa) * v, p + (-qb - r) / (2 * qa) * v]


# adjacency ------------------------------------------------------------------------

def adjacent(ci: CharDifference, cj: CharDifference, field: ResidueField) -> bool:
    """Exact cell adjacency from the Q-criteria, evaluated in (dA, dB) order."""
    _check_pair(ci, cj)
    xi = ci.dB * cj.dA - ci.dA * cj.dB
    nx = norm(xi)
    if nx in (1, 2):
        return any(
            not in_Q_delta(ci.dA + e * cj.dA, ci.dB + e * cj.dB, field) for e in UNITS
        )
    if nx == 5:
        if norm(field.q) == 5:
            # Normalized distance sqrt(5) pairs are never adjacent when |q| = sqrt(5).
            return False
        mod = build_field(xi)
        hits = [
            e for e in UNITS
            if not reduce(ci.dA + e * cj.dA, mod) and not reduce(ci.dB + e * cj.dB, mod)
        ]
        if len(hits) != 1:
            raise AssertionError(f"expected one unit for {ci}, {cj}, found {len(hits)}")
        e = hits[0]
        phi = exact_div(ci.dA + e * cj.dA, xi)
        psi = exact_div(ci.dB + e * cj.dB, xi)
        return not in_Q_delta(phi, psi, field)
    return False


@lru_cache(maxsize=None)
def adjacency_table(field: ResidueField) -> dict[CharDifference, frozenset[CharDifference]]:
    chars = characteristic_set(field)
    nbrs: dict[CharDifference, set[CharDifference]] = {c: set() for c in chars}
    for i, ci in enumerate(chars):
        for cj in chars[i + 1:]:
            if adjacent(ci, cj, field):
                nbrs[ci].add(cj)
                nbrs[cj].add(ci)
    return {c: frozenset(s) for c, s in nbrs.items()}


def voronoi_cell(cd: CharDifference, field: ResidueField) -> VoronoiCell:
    m = None if cd.trivial else optimal_mapping_at_gain(cd, field)
    return VoronoiCell(cd, m, adjacency_table(field)[cd])


def _window_radius(field: ResidueField) -> float:
    # Beyond this modulus the (0, 1) generator is strictly nearest.
    return 2.0 + max(abs(complex(c.dB)) for c in characteristic_set(field))


def adjacency_oracle(ci: CharDifference, cj: CharDifference, field: ResidueField,
                     samples: int = 2000) -> bool:
    """Geometric adjacency test: is some point of the common edge unobstructed?

    Candidates are dense samples of the edge plus every exact crossing of the
    edge with the bisector between ci and any third generator, so cells that
    meet only at a vertex are still detected.
    """
    _check_pair(ci, cj)
    t = char_table(field)
    radius = _window_radius(field)
    edge = edge_descriptor(ci, cj)
    pts = [edge.points(samples) if isinstance(edge, Circle) else edge.points(samples, radius)]
    e_ij = _bisector_coeffs(ci, cj)
    extra = []
    for ck in t.chars:
        if ck == ci or ck == cj:
            continue
        extra.extend(_intersect(e_ij, _bisector_coeffs(ci, ck)))
    pts.append(np.array(extra, dtype=complex))
    z = np.concatenate(pts)
    z = z[np.abs(z) <= radius]
    if z.size == 0:
        return False
    w = np.abs(t.a[:, None] * z[None, :] + t.b[:, None])
    wi = np.abs(complex(ci.dA) * z + complex(ci.dB))
    wj = np.abs(complex(cj.dA) * z + complex(cj.dB))
    idx = [k for k, c in enumerate(t.chars) if c != ci and c != cj]
    others = w[idx].min(axis=0)
    ok = (np.abs(wi - wj) <= ORACLE_MARGIN) & (others >= np.maximum(wi, wj) - ORACLE_MARGIN)
    return bool(ok.any())


# d_min via the Voronoi structure ------------------------------------------------------

def _singular_extras(g: CharDifference, field: ResidueField) -> list[CharDifference]:
    m = optimal_mapping_at_gain(g, field)
    return [
        c for c in characteristic_set(field)
        if c != g and normalized_distance_norm(g, c) == 1 and not clusters(m, c.dA, c.dB, field)
    ]


def rocd_dmin(eta, field: ResidueField) -> tuple[float, CharDifference]:
    """d_min under the optimal mapping, from the cell's adjacent generators."""
    z = as_complex(eta)
    g = cell_of(z, field)
    if g.trivial:
        return l_min(z, field)
    cands = set(adjacency_table(field)[g])
    if weighted_distance(g, z) <= SINGULAR_TOL:
        cands.update(_singular_extras(g, field))
    best = min(sorted(cands, key=CharDifference.key), key=lambda c: weighted_distance(c, z))
    return weighted_distance(best, z), best


@dataclass(frozen=True)
class SurfaceGrid:
    eta: np.ndarray       # complex, shape (resolution, resolution), rows = imaginary part
    value: np.ndarray
    generator: list       # CharDifference per point (row-major)
    on_edge: np.ndarray

    def rows(self):
        flat_eta = self.eta.ravel()
        flat_val = self.value.ravel()
        flat_edge = self.on_edge.ravel()
        for k, cd in enumerate(self.generator):
            yield flat_eta[k], float(flat_val[k]), cd, bool(flat_edge[k])


def _cells_many(z: np.ndarray, field: ResidueField) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    t = char_table(field)
    w = np.abs(t.a[:, None] * z[None, :] + t.b[:, None])
    k = np.argmin(w, axis=0)
    part = np.partition(w, 1, axis=0)
    on_edge = (part[1] - part[0]) <= EDGE_TOL
    return w, k, on_edge


def rocd_dmin_many(z: np.ndarray, field: ResidueField) -> tuple[np.ndarray, list, np.ndarray]:
    """Vectorized rocd_dmin: (values, determining generators, on_edge flags)."""
    z = np.asarray(z, dtype=complex).ravel()
    t = char_table(field)
    index = {c: k for k, c in enumerate(t.chars)}
    w, cell, on_edge = _cells_many(z, field)
    values = np.empty(z.size)
    det = [None] * z.size
    adj = adjacency_table(field)
    for g_idx in np.unique(cell):
        g = t.chars[g_idx]
        sel = np.nonzero(cell == g_idx)[0]
        if g.trivial:
            cand = np.arange(len(t.chars))
        else:
            cand = np.array(sorted(index[c] for c in adj[g]))
        sub = w[np.ix_(cand, sel)]
        best = np.argmin(sub, axis=0)
        values[sel] = sub[best, np.arange(sel.size)]
        for s, b in zip(sel, best):
            det[s] = t.chars[cand[b]]
        if not g.trivial:
            singular = sel[w[g_idx, sel] <= SINGULAR_TOL]
            for s in singular:
                v, d = rocd_dmin(z[s], field)
                values[s], det[s] = v, d
    return values, det, on_edge


def sample_surface(field: ResidueField, window: tuple[float, float, float, float],
                   resolution: int, which: str = "lmin") -> SurfaceGrid:
    """Evaluate l_min or d_min on a resolution x resolution grid.

    ``window`` is (re_min, re_max, im_min, im_max); rows run over the imaginary
    axis, columns over the real axis.
    """
    if resolution < 2:
        raise ValueError("resolution must be at least 2")
    x0, x1, y0, y1 = window
    if not (x1 > x0 and y1 > y0):
        raise ValueError("degenerate window")
    xs = np.linspace(x0, x1, resolution)
    ys = np.linspace(y0, y1, resolution)
    eta = xs[None, :] + 1j * ys[:, None]
    z = eta.ravel()
    if which == "lmin":
        t = char_table(field)
        w, cell, on_edge = _cells_many(z, field)
        values = w[cell, np.arange(z.size)]
        gens = [t.chars[k] for k in cell]
    elif which == "dmin":
        values, gens, on_edge = rocd_dmin_many(z, field)
    else:
        raise ValueError("which must be 'lmin' or 'dmin'")
    return SurfaceGrid(eta, values.reshape(eta.shape), gens, on_edge.reshape(eta.shape))


def polar_octant_grid(n: int, radius: float) -> np.ndarray:
    """n x n polar grid over 0 <= theta <= pi/4, 0 < |eta| <= radius."""
    r = np.linspace(radius / n, radius, n)
    th = np.linspace(0.0, np.pi / 4, n)
    return (r[:, None] * np.exp(1j * th[None, :])).ravel()


__all__ = [
    "VoronoiCell", "Circle", "Line", "SurfaceGrid",
    "weighted_distance", "cell_of", "locate", "edge_descriptor", "adjacent",
    "adjacency_oracle", "adjacency_table", "voronoi_cell", "rocd_dmin", "rocd_dmin_many",
    "sample_surface", "polar_octant_grid",
]
