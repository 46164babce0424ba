"""Monte-Carlo simulation of the relay uplink: y = sqrt(P)/mu (hA wA + hB wB) + z.

Trials are drawn in fixed-size blocks.  Block ``k`` uses its own generator
seeded from ``SeedSequence([seed, k])``, so results do not depend on how
blocks are spread over worker threads.  The joint ML decision is computed once
per trial and shared by every mapping under comparison (common random numbers).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .gaussint import GInt
from .mapping import NcMapping, canonical_mappings, canonicalize, nc_map
from .metrics import d_min, optimal_mapping_at_gain, optimal_mapping_bruteforce
from .residue import ResidueField
from .voronoi import cell_of

BLOCK = 1 << 16
N0 = 1.0


@dataclass(frozen=True)
class ChannelConfig:
    field: ResidueField
    hA: complex
    hB: complex
    snr_db: float

    def __post_init__(self):
        if self.hB == 0:
            raise ValueError("hB must be nonzero")

    @property
    def eta(self) -> complex:
        return complex(self.hA) / complex(self.hB)

    @property
    def power(self) -> float:
        return 10.0 ** (self.snr_db / 10.0)

    def constellation(self) -> np.ndarray:
        """Noiseless received points, indexed [iA * order + iB]."""
        w = np.array([complex(e) for e in self.field.elements])
        scale = math.sqrt(self.power) / self.field.mu
        return (scale * (self.hA * w[:, None] + self.hB * w[None, :])).ravel()


@dataclass(frozen=True)
class SerEstimate:
    trials: int
    errors: int

    @property
    def ser(self) -> float:
        return self.errors / self.trials

    @property
    def half_width_95(self) -> float:
        p = self.ser
        return 1.96 * math.sqrt(p * (1.0 - p) / self.trials)

    @property
    def sigma(self) -> float:
        return math.sqrt(self.ser * (1.0 - self.ser) / self.trials)

    def to_json(self) -> dict:
        return {"trials": self.trials, "errors": self.errors, "ser": self.ser,
                "ci95": self.half_width_95}


def modulate(w, field: ResidueField) -> complex:
    w = GInt.of(w)
    if w not in field:
        raise ValueError(f"{w} is not an element of Z[i]/{field.q}")
    return complex(w) / field.mu


def _nc_table(m: NcMapping, field: ResidueField) -> np.ndarray:
    """NC-symbol index for every joint-symbol index."""
    return np.array([field.index(nc_map(m, a, b, field))
                     for a in field.elements for b in field.elements])


def _ml_joint(y: np.ndarray, points: np.ndarray) -> np.ndarray:
    # argmin returns the first minimum, i.e. the smallest joint-symbol index.
    rows = max(1, (1 << 22) // max(points.size, 1))
    out = np.empty(y.size, dtype=np.int64)
    for s in range(0, y.size, rows):
        out[s:s + rows] = np.argmin(np.abs(y[s:s + rows, None] - points[None, :]), axis=1)
    return out


def decode_nc(y: complex, config: ChannelConfig, m: NcMapping) -> GInt:
    field = config.field
    k = int(_ml_joint(np.array([complex(y)]), config.constellation())[0])
    a, b = divmod(k, field.order)
    return nc_map(m, field.elements[a], field.elements[b], field)


def _workers() -> int:
    env = os.environ.get("PNC_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def _run_block(config: ChannelConfig, tables: list[np.ndarray], seed: int, block: int,
               size: int) -> list[int]:
    rng = np.random.default_rng(np.random.SeedSequence([seed, block]))
    n = config.field.order
    ia = rng.integers(0, n, size)
    ib = rng.integers(0, n, size)
    noise = rng.standard_normal((2, size)) * math.sqrt(N0 / 2)
    sent = ia * n + ib
    y = config.constellation()[sent] + noise[0] + 1j * noise[1]
    got = _ml_joint(y, config.constellation())
    return [int(np.count_nonzero(t[got] != t[sent])) for t in tables]


def _simulate(config: ChannelConfig, mappings: list[NcMapping], trials: int,
              seed: int) -> list[SerEstimate]:
    if trials < 1:
        raise ValueError("trials must be at least 1")
    tables = [_nc_table(m, config.field) for m in mappings]
    blocks = [(k, min(BLOCK, trials - k * BLOCK)) for k in range(math.ceil(trials / BLOCK))]
    workers = min(_workers(), len(blocks))
    if workers <= 1:
        counts = [_run_block(config, tables, seed, k, s) for k, s in blocks]
    else:
        with ThreadPoolExecutor(workers) as pool:
            counts = list(pool.map(lambda b: _run_block(config, tables, seed, *b), blocks))
    totals = np.sum(np.array(counts, dtype=np.int64), axis=0)
    return [SerEstimate(trials, int(e)) for e in totals]


def estimate_ser(config: ChannelConfig, m: NcMapping, trials: int, seed: int) -> SerEstimate:
    return _simulate(config, [m], trials, seed)[0]


def voronoi_optimal_mapping(config: ChannelConfig) -> NcMapping:
    """Clustering mapping of the cell containing eta.

    Inside a trivial cell every mapping has d_min = l_min; the brute-force
    argmax is used there so a concrete mapping is still returned.
    """
    field = config.field
    g = cell_of(config.eta, field)
    if g.trivial:
        return optimal_mapping_bruteforce(config.eta, field)[0]
    return optimal_mapping_at_gain(g, field)


@dataclass(frozen=True)
class ComparisonRow:
    mapping: NcMapping
    estimate: SerEstimate
    dmin: float
    voronoi_optimal: bool
    dmin_argmax: bool


def compare_mappings(config: ChannelConfig, trials: int, seed: int) -> list[ComparisonRow]:
    """Every canonical mapping on the same random draws, flagged by optimality."""
    field = config.field
    maps = canonical_mappings(field)
    best = canonicalize(voronoi_optimal_mapping(config), field)
    argmax = optimal_mapping_bruteforce(config.eta, field)[0]
    ests = _simulate(config, maps, trials, seed)
    return [
        ComparisonRow(m, e, d_min(config.eta, m, field), m == best, m == argmax)
        for m, e in zip(maps, ests)
    ]
