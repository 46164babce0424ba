import math

import numpy as np
import pytest

from pncgauss.diffs import CharDifference, char_difference, characteristic_set
from pncgauss.gaussint import GInt, parse_gint as G
from pncgauss.mapping import canonical_mappings
from pncgauss.metrics import d_min, l_min, optimal_dmin_many, optimal_mapping_at_gain
from pncgauss.residue import build_field
from pncgauss.voronoi import (
    Circle,
    Line,
    adjacency_oracle,
    adjacency_table,
    adjacent,
    cell_of,
    edge_descriptor,
    locate,
    polar_octant_grid,
    rocd_dmin,
    rocd_dmin_many,
    sample_surface,
    voronoi_cell,
    weighted_distance,
)

F3 = build_field(3)
F5 = build_field("2+i")
F2 = build_field("1+i")


def cd(a, b):
    return char_difference(G(a), G(b))


def test_cell_lookup():
    assert cell_of(0.52 + 0.48j, F3) == cd("1+i", "-i")
    assert cell_of(1 + 1j, F3) == cd("1", "-1-i")
    assert cell_of(0.01, F3) == CharDifference(GInt(1), GInt(0))
    assert cell_of(50j, F3) == CharDifference(GInt(0), GInt(1))
    g, edge = locate(0.52 + 0.48j, F3)
    assert not edge


def test_voronoi_cell_record():
    cell = voronoi_cell(cd("1+i", "-i"), F3)
    assert cell.optimal_mapping == optimal_mapping_at_gain(cd("1+i", "-i"), F3)
    assert cell.contains(0.5 + 0.5j, F3)
    assert not cell.contains(1 + 1j, F3)
    assert cell.adjacent == adjacency_table(F3)[cd("1+i", "-i")]
    assert voronoi_cell(CharDifference(GInt(1), GInt(0)), F3).optimal_mapping is None


@pytest.mark.parametrize("pair", [("1", "-1-i", "1+i", "-i"), ("1", "-1", "1", "0"), ("2+i", "-1-i", "1", "-1")])
def test_edge_points_are_equidistant(pair):
    ci, cj = cd(pair[0], pair[1]), cd(pair[2], pair[3])
    e = edge_descriptor(ci, cj)
    pts = e.points(64) if isinstance(e, Circle) else e.points(64, 3.0)
    for z in pts:
        assert weighted_distance(ci, z) == pytest.approx(weighted_distance(cj, z), abs=1e-9)


def test_equal_weight_edges_are_lines():
    e = edge_descriptor(cd("1", "-1"), cd("1", "-i"))
    assert isinstance(e, Line)
    assert isinstance(edge_descriptor(cd("1+i", "-i"), cd("1", "-1")), Circle)
    with pytest.raises(ValueError):
        edge_descriptor(cd("1", "-1"), cd("1", "-1"))


def test_adjacency_examples():
    f11 = build_field(11)
    # given as (kappa, tau) pairs; stored as (dA, dB) = (tau, -kappa)
    a = char_difference(G("1-10i"), -G("10+9i"))
    b = char_difference(G("1-9i"), -G("9+8i"))
    assert adjacent(a, b, f11)
    assert not adjacent(cd("1", "-1"), cd("1", "-1-i"), F3)
    table = adjacency_table(F3)
    for g, nbrs in table.items():
        assert g not in nbrs
        assert all(g in table[h] for h in nbrs)


@pytest.mark.parametrize("field", [F2, F5], ids=["1+i", "2+i"])
def test_adjacency_matches_geometric_oracle(field):
    cs = characteristic_set(field)
    for i, ci in enumerate(cs):
        for cj in cs[i + 1:]:
            assert adjacent(ci, cj, field) == adjacency_oracle(ci, cj, field), (ci, cj)


def test_adjacency_oracle_sampled_q3():
    rng = np.random.default_rng(5)
    cs = characteristic_set(F3)
    for _ in range(150):
        i, j = rng.choice(len(cs), 2, replace=False)
        assert adjacent(cs[i], cs[j], F3) == adjacency_oracle(cs[i], cs[j], F3)


def test_rocd_at_zero_lmin_gain():
    val, det = rocd_dmin((1 + 1j) / 2, F3)
    assert val == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    m = optimal_mapping_at_gain(cd("1+i", "-i"), F3)
    assert d_min((1 + 1j) / 2, m, F3) == pytest.approx(val, abs=1e-12)


def test_rocd_in_trivial_cell_equals_lmin():
    for eta in (0.05 + 0.02j, 0.1j, 40 + 3j):
        assert rocd_dmin(eta, F3)[0] == pytest.approx(l_min(eta, F3)[0])


@pytest.mark.parametrize("field", [F5, F3], ids=["2+i", "3"])
def test_rocd_matches_bruteforce(field):
    z = polar_octant_grid(30, 2.0)
    vals, _, _ = rocd_dmin_many(z, field)
    brute = optimal_dmin_many(z, field)
    assert np.max(np.abs(vals - brute)) < 1e-9


def test_rocd_many_matches_scalar():
    rng = np.random.default_rng(8)
    z = rng.uniform(-2, 2, 60) + 1j * rng.uniform(-2, 2, 60)
    vals, det, _ = rocd_dmin_many(z, F3)
    for k, eta in enumerate(z):
        v, d = rocd_dmin(eta, F3)
        assert vals[k] == pytest.approx(v, abs=1e-12)


def test_surface_grid_shape_and_bounds():
    grid = sample_surface(F3, (-2, 2, -2, 2), 41, "dmin")
    assert grid.value.shape == (41, 41)
    assert grid.eta[0, 0] == complex(-2, -2) and grid.eta[0, 1].real > -2
    lm = sample_surface(F3, (-2, 2, -2, 2), 41, "lmin")
    assert np.all(grid.value >= lm.value - 1e-12)
    assert lm.value.min() == 0.0
    rows = list(grid.rows())
    assert len(rows) == 41 * 41


def test_surface_rejects_bad_input():
    with pytest.raises(ValueError):
        sample_surface(F3, (0, 1, 0, 1), 1)
    with pytest.raises(ValueError):
        sample_surface(F3, (1, 0, 0, 1), 10)
    with pytest.raises(ValueError):
        sample_surface(F3, (0, 1, 0, 1), 10, "both")


def test_dmin_surface_upper_envelope():
    # the optimal mapping is never worse than any fixed mapping
    z = polar_octant_grid(15, 2.0)
    vals, _, _ = rocd_dmin_many(z, F5)
    for m in canonical_mappings(F5):
        fixed = np.array([d_min(e, m, F5) for e in z])
        assert np.all(vals >= fixed - 1e-12)
