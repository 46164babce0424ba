"""Oracle suites that check the theory against brute force for one field."""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from itertools import combinations, product

import numpy as np

from .diffs import (
    characteristic_set,
    component_differences,
    lattice_points_in_region,
    validity_bounds_check,
)
from .gaussint import UNITS, GInt, norm
from .mapping import (
    NcMapping,
    canonical_mappings,
    clustered_set,
    clusters,
    cosets,
    isomorphic,
    nc_map,
    recover_partner,
)
from .metrics import (
    d_min,
    d_min_many,
    dmin_at_gain,
    dmin_determining_at_gain,
    in_octant,
    l_min,
    normalized_distance_norm,
    optimal_dmin_many,
    optimal_mapping_at_gain,
    optimal_mapping_bruteforce,
    symmetric_gains,
    zero_lmin_gains,
)
from .residue import ResidueField, field_add, field_inv, field_mul, reduce
from .voronoi import (
    _cells_many,
    adjacency_oracle,
    adjacency_table,
    adjacent,
    char_table,
    polar_octant_grid,
    rocd_dmin_many,
)

TOL = 1e-9
SUITES = (
    "field-axioms", "cosets", "theorem1", "theorem2", "theorem3", "theorem4",
    "qcriteria", "symmetry", "convex", "lemma-bounds",
)


@dataclass
class SuiteReport:
    suite: str
    q: GInt
    status: str = "PASS"          # PASS, FAIL or SKIP
    details: dict = dc_field(default_factory=dict)
    failures: list[str] = dc_field(default_factory=list)

    def fail(self, msg: str) -> None:
        self.status = "FAIL"
        if len(self.failures) < 20:
            self.failures.append(msg)

    @property
    def passed(self) -> bool:
        return self.status != "FAIL"

    def to_json(self) -> dict:
        return {"suite": self.suite, "q": self.q.to_json(), "status": self.status,
                "details": self.details, "failures": self.failures}


def _all_mappings(field: ResidueField) -> list[NcMapping]:
    return [NcMapping(a, b) for a in field.nonzero for b in field.nonzero]


def check_field_axioms(field: ResidueField) -> SuiteReport:
    rep = SuiteReport("field-axioms", field.q)
    q, n, els = field.q, norm(field.q), field.elements
    rep.details["order"] = len(els)
    if len(els) != n:
        rep.fail(f"{len(els)} elements, expected {n}")
    if reduce(0, field) != 0 or GInt(0) not in field:
        rep.fail("0 is not a representative")
    if len({reduce(e, field) for e in els}) != n or any(reduce(e, field) != e for e in els):
        rep.fail("representatives are not pairwise incongruent")
    # minimal magnitude inside each congruence class (scan a window of shifts)
    for e in els:
        for a, b in product(range(-2, 3), repeat=2):
            other = e + GInt(a, b) * q
            if norm(other) < norm(e):
                rep.fail(f"{other} is smaller than representative {e}")
    if n >= 5:
        r = int(n ** 0.5) + 1
        for a, b in product(range(-r, r + 1), repeat=2):
            w = GInt(a, b)
            if 4 * norm(w) < n and w not in field:
                rep.fail(f"{w} has norm < norm(q)/4 but is not a representative")
    rng = random.Random(0)
    if n <= 25:
        triples = product(els, repeat=3)
    else:
        triples = ((rng.choice(els), rng.choice(els), rng.choice(els)) for _ in range(20000))
    for a, b, c in triples:
        if field_mul(field_mul(a, b, field), c, field) != field_mul(a, field_mul(b, c, field), field):
            rep.fail(f"multiplication not associative at {a},{b},{c}")
        if field_add(field_add(a, b, field), c, field) != field_add(a, field_add(b, c, field), field):
            rep.fail(f"addition not associative at {a},{b},{c}")
        if field_mul(a, field_add(b, c, field), field) != field_add(
                field_mul(a, b, field), field_mul(a, c, field), field):
            rep.fail(f"distributivity fails at {a},{b},{c}")
    for a in field.nonzero:
        if field_mul(a, field_inv(a, field), field) != 1:
            rep.fail(f"bad inverse for {a}")
    return rep


def check_cosets(field: ResidueField) -> SuiteReport:
    rep = SuiteReport("cosets", field.q)
    n = field.order
    canon = canonical_mappings(field)
    rep.details["canonical_mappings"] = len(canon)
    rep.details["classes"] = n
    pairs = [(a, b) for a in field.elements for b in field.elements]
    for m in canon:
        part = cosets(m, field)
        if len(part.classes) != n or any(len(mem) != n for _, mem in part.classes):
            rep.fail(f"{m}: wrong coset sizes")
        members = [p for _, mem in part.classes for p in mem]
        if sorted(members, key=str) != sorted(pairs, key=str):
            rep.fail(f"{m}: classes do not partition the joint symbols")
        cl = clustered_set(m, field)
        if len(cl) != n:
            rep.fail(f"{m}: clustered set has {len(cl)} pairs")
        for da, db in pairs:
            if clusters(m, da, db, field) != ((da, db) in cl):
                rep.fail(f"{m}: clustering predicate disagrees at ({da},{db})")
        for _, mem in part.classes:
            base = mem[0]
            shifted = {(reduce(base[0] + x, field), reduce(base[1] + y, field)) for x, y in cl}
            if shifted != set(mem):
                rep.fail(f"{m}: class of {base} is not a coset of the clustered set")
        for a, b in pairs:
            w = nc_map(m, a, b, field)
            if recover_partner(w, m, a, "A", field) != b or recover_partner(w, m, b, "B", field) != a:
                rep.fail(f"{m}: recovery fails at ({a},{b})")
    # isomorphism: every mapping against every canonical form (three tests must agree)
    partitions = {m: cosets(m, field).unlabeled() for m in canon}
    for m in _all_mappings(field):
        hits = [c for c in canon if isomorphic(m, c, field)]
        if len(hits) != 1:
            rep.fail(f"{m} is isomorphic to {len(hits)} canonical mappings")
        elif cosets(m, field).unlabeled() != partitions[hits[0]]:
            rep.fail(f"{m}: partition differs from its canonical form")
    return rep


def _nontrivial_gains(field: ResidueField, radius: float):
    return [(g, cd) for g, cd in zero_lmin_gains(field, radius) if not cd.trivial]


def check_theorem1(field: ResidueField, radius: float = 3.0) -> SuiteReport:
    rep = SuiteReport("theorem1", field.q)
    gains = _nontrivial_gains(field, radius)
    rep.details["gains"] = len(gains)
    for g, cd in gains:
        m = optimal_mapping_at_gain(cd, field)
        if not clusters(m, cd.dA, cd.dB, field):
            rep.fail(f"{cd}: clustering mapping does not cluster it")
        _, best = optimal_mapping_bruteforce(g.value, field)
        got = d_min(g.value, m, field)
        if abs(best - got) > TOL:
            rep.fail(f"{cd}: clustering-mapping d_min {got} below optimum {best}")
    return rep


def check_theorem2(field: ResidueField, radius: float = 3.0) -> SuiteReport:
    rep = SuiteReport("theorem2", field.q)
    gains = _nontrivial_gains(field, radius)
    rep.details["gains"] = len(gains)
    worst = 0.0
    for g, cd in gains:
        m = optimal_mapping_at_gain(cd, field)
        got = d_min(g.value, m, field)
        worst = max(worst, abs(got - dmin_at_gain(cd)))
        if abs(got - dmin_at_gain(cd)) > TOL:
            rep.fail(f"{cd}: d_min {got} != {dmin_at_gain(cd)}")
        det = dmin_determining_at_gain(cd, field)
        if not det:
            rep.fail(f"{cd}: no normalized-distance-1 partner")
        if any(clusters(m, c.dA, c.dB, field) for c in det):
            rep.fail(f"{cd}: a normalized-distance-1 partner is clustered")
    for m in canonical_mappings(field):
        if d_min(0j, m, field) != 0.0:
            rep.fail(f"{m}: d_min at eta = 0 is not zero")
    rep.details["max_abs_error"] = worst
    return rep


def _grid(n: int, radius: float) -> np.ndarray:
    return polar_octant_grid(n, radius)


def check_theorem3(field: ResidueField, n: int = 100, radius: float = 2.0) -> SuiteReport:
    rep = SuiteReport("theorem3", field.q)
    z = _grid(n, radius)
    t = char_table(field)
    _, cell, on_edge = _cells_many(z, field)
    opt = optimal_dmin_many(z, field)
    worst = 0.0
    for k in np.unique(cell):
        g = t.chars[k]
        sel = np.nonzero((cell == k) & ~on_edge)[0]
        if sel.size == 0:
            continue
        if g.trivial:
            # any mapping is optimal in a trivial cell: optimum equals l_min
            lm = np.array([l_min(x, field)[0] for x in z[sel]])
            err = np.abs(opt[sel] - lm)
        else:
            err = np.abs(d_min_many(z[sel], optimal_mapping_at_gain(g, field), field) - opt[sel])
        worst = max(worst, float(err.max()))
    rep.details.update(points=int(z.size), edge_points=int(on_edge.sum()), max_abs_error=worst)
    if worst > TOL:
        rep.fail(f"cell mapping misses the optimum by {worst}")
    return rep


def check_theorem4(field: ResidueField, n: int = 100, radius: float = 2.0) -> SuiteReport:
    rep = SuiteReport("theorem4", field.q)
    z = _grid(n, radius)
    vals, _, on_edge = rocd_dmin_many(z, field)
    opt = optimal_dmin_many(z, field)
    err = np.abs(vals - opt)
    worst = float(err[~on_edge].max()) if (~on_edge).any() else 0.0
    rep.details.update(points=int(z.size), edge_points=int(on_edge.sum()), max_abs_error=worst,
                       max_abs_error_on_edges=float(err[on_edge].max()) if on_edge.any() else 0.0)
    if worst > TOL:
        rep.fail(f"fast-path d_min deviates by {worst}")
    return rep


def check_qcriteria(field: ResidueField, max_pairs: int = 6000, samples: int = 2000) -> SuiteReport:
    rep = SuiteReport("qcriteria", field.q)
    chars = characteristic_set(field)
    pairs = list(combinations(chars, 2))
    if len(pairs) > max_pairs:
        # Too many pairs for the geometric oracle: keep a deterministic sample of
        # pairs at small normalized distance, where adjacency is possible.
        close = [p for p in pairs if normalized_distance_norm(*p) <= 5] if len(chars) < 3000 else []
        rng = random.Random(1)
        pairs = rng.sample(close, min(len(close), 200)) if close else []
        rep.details["sampled"] = True
    adj_count = 0
    for a, b in pairs:
        x = adjacent(a, b, field)
        adj_count += x
        if x != adjacency_oracle(a, b, field, samples):
            rep.fail(f"{a} vs {b}: criteria say {x}, geometry disagrees")
    rep.details.update(pairs=len(pairs), adjacent_pairs=adj_count)
    # no single mapping clusters both members of an adjacent pair
    if len(chars) <= 2000:
        table = adjacency_table(field)
        for a in chars:
            if a.trivial:
                continue
            m = optimal_mapping_at_gain(a, field)
            for b in table[a]:
                if not b.trivial and clusters(m, b.dA, b.dB, field):
                    rep.fail(f"adjacent {a} and {b} share a clustering mapping")
    return rep


def _symmetric(field: ResidueField) -> bool:
    lam = component_differences(field)
    return all(u * d in lam and d.conj() in lam for d in lam for u in UNITS)


def check_symmetry(field: ResidueField, radius: float = 2.0) -> SuiteReport:
    rep = SuiteReport("symmetry", field.q)
    if not _symmetric(field):
        rep.status = "SKIP"
        rep.details["reason"] = "difference set is not closed under units and conjugation"
        return rep
    gains = [(g, cd) for g, cd in zero_lmin_gains(field, radius) if not cd.trivial]
    direct = {cd for _, cd in gains}
    expanded = set()
    for g, cd in gains:
        if in_octant(cd):
            expanded.add(cd)
            for g2, cd2 in symmetric_gains(g, cd):
                if abs(abs(g2.value) - abs(g.value)) > 1e-12:
                    rep.fail(f"image of {cd} changes |eta|")
                if abs(complex(cd2.dA) * g2.value + complex(cd2.dB)) > 1e-12:
                    rep.fail(f"image {cd2} does not vanish at its gain")
                expanded.add(cd2)
    if expanded != direct:
        rep.fail(f"octant expansion gives {len(expanded)} gains, direct enumeration {len(direct)}")
    rep.details["gains"] = len(direct)
    rng = np.random.default_rng(7)
    images = (
        lambda e: 1j * e.conjugate(), lambda e: 1j * e, lambda e: -e.conjugate(), lambda e: -e,
        lambda e: -1j * e.conjugate(), lambda e: -1j * e, lambda e: e.conjugate(),
    )
    for _ in range(200):
        r, th = radius * rng.random(), np.pi / 4 * rng.random()
        eta = complex(r * np.cos(th), r * np.sin(th))
        base = l_min(eta, field)[0]
        for f in images:
            if abs(l_min(f(eta), field)[0] - base) > TOL:
                rep.fail(f"l_min not symmetric at {eta}")
    return rep


def check_convex(field: ResidueField) -> SuiteReport:
    rep = SuiteReport("convex", field.q)
    lam = set(component_differences(field))
    inside = lattice_points_in_region(field)
    rep.details.update(lambda_size=len(lam), region_points=len(inside))
    if inside != lam:
        rep.fail(f"region has {len(inside - lam)} extra and {len(lam - inside)} missing points")
    return rep


def check_lemma_bounds(field: ResidueField) -> SuiteReport:
    rep = SuiteReport("lemma-bounds", field.q)
    r = validity_bounds_check(field)
    rep.details.update(bound=r.bound, max_norm=r.max_norm, boundary_count=r.boundary_count)
    if not r.necessary_ok:
        rep.fail(f"component norm {r.max_norm} exceeds bound {r.bound}")
    if norm(field.q) < 5:
        rep.details["sufficient_condition"] = "not applicable for norm(q) < 5"
    elif not r.sufficient_ok:
        rep.fail(f"missing small differences: {[str(d) for d in r.missing]}")
    return rep


_RUNNERS = {
    "field-axioms": check_field_axioms,
    "cosets": check_cosets,
    "theorem1": check_theorem1,
    "theorem2": check_theorem2,
    "theorem3": check_theorem3,
    "theorem4": check_theorem4,
    "qcriteria": check_qcriteria,
    "symmetry": check_symmetry,
    "convex": check_convex,
    "lemma-bounds": check_lemma_bounds,
}


def verify(field: ResidueField, suite: str) -> list[SuiteReport]:
    if suite == "all":
        return [_RUNNERS[s](field) for s in SUITES]
    if suite not in _RUNNERS:
        raise ValueError(f"unknown suite {suite!r}")
    return [_RUNNERS[suite](field)]


__all__ = ["SUITES", "SuiteReport", "verify"] + [f.__name__ for f in _RUNNERS.values()]
