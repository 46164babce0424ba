import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from pncgauss.diffs import CharDifference, char_difference, characteristic_set
from pncgauss.gain import ChannelGain
from pncgauss.gaussint import UNITS, GInt, parse_gint as G
from pncgauss.mapping import NcMapping, canonical_mappings, canonicalize, clusters, isomorphic
from pncgauss.metrics import (
    d_min,
    dmin_at_gain,
    dmin_determining_at_gain,
    in_octant,
    l_min,
    l_min_full,
    normalized_distance_norm,
    optimal_mapping_at_gain,
    optimal_mapping_bruteforce,
    pair_distance,
    symmetric_gains,
    zero_lmin_gains,
)
from pncgauss.residue import build_field

F3 = build_field(3)
F5 = build_field("2+i")
coords = st.floats(-3, 3, allow_nan=False)
etas = st.builds(complex, coords, coords)


def cd(a, b):
    return char_difference(G(a), G(b))


def test_pair_distance_examples():
    assert pair_distance(0.3 + 0.2j, 1, 0) == pytest.approx(abs(0.3 + 0.2j))
    assert pair_distance((1 + 1j) / 2, G("1+i"), G("-i")) == 0
    with pytest.raises(ValueError):
        pair_distance(ChannelGain.infinity(), 1, 1)


@given(etas)
def test_cone_identity_and_unit_invariance(eta):
    for a, b in ((G("1+2i"), G("-1")), (G("2"), G("1-i"))):
        d = pair_distance(eta, a, b)
        assert d == pytest.approx(abs(complex(a)) * abs(eta + complex(b) / complex(a)), abs=1e-12)
        for u in UNITS:
            assert pair_distance(eta, u * a, u * b) == pytest.approx(d, abs=1e-12)


def test_l_min_examples():
    assert l_min(1 + 1j, F3) == (0.0, cd("1", "-1-i"))
    assert l_min(1, F3) == (0.0, cd("1", "-1"))
    assert l_min(0.37 + 0.21j, F3)[0] == pytest.approx(l_min_full(0.37 + 0.21j, F3), abs=1e-15)


@pytest.mark.parametrize("field", [F5, F3], ids=["2+i", "3"])
def test_characteristic_reduction(field):
    rng = np.random.default_rng(3)
    for _ in range(1000):
        eta = complex(*rng.uniform(-3, 3, 2))
        assert l_min(eta, field)[0] == pytest.approx(l_min_full(eta, field), abs=1e-12)


def test_d_min_examples():
    eta = 1.1 + 1j
    m_good = canonicalize(NcMapping(GInt(0, 1), GInt(0, -1)), F5)
    m_bad = canonicalize(NcMapping(GInt(1), GInt(0, -1)), F5)
    assert d_min(eta, m_good, F5) > d_min(eta, m_bad, F5)
    for m in canonical_mappings(F3):
        assert d_min(0, m, F3) == 0


@settings(max_examples=60)
@given(etas)
def test_d_min_at_least_l_min(eta):
    lm = l_min(eta, F3)[0]
    for m in canonical_mappings(F3):
        assert d_min(eta, m, F3) >= lm - 1e-15


def test_optimal_mapping_bruteforce():
    m, v = optimal_mapping_bruteforce(1.1 + 1j, F5)
    assert m == canonicalize(NcMapping(GInt(0, 1), GInt(0, -1)), F5) == NcMapping(GInt(-1), GInt(1))
    m3, _ = optimal_mapping_bruteforce(1 + 1j, F3)
    assert m3 == optimal_mapping_at_gain(cd("1", "-1-i"), F3) == NcMapping(G("1+i"), GInt(1))
    # d_min depends only on the partition, not the representative
    for g in F5.nonzero:
        scaled = NcMapping(GInt(-1) * g, g)
        from pncgauss.residue import reduce
        scaled = NcMapping(reduce(scaled.alpha, F5), reduce(scaled.beta, F5))
        assert d_min(1.1 + 1j, scaled, F5) == pytest.approx(v)


def test_zero_lmin_gains_q3():
    gains = zero_lmin_gains(F3, 2)
    pairs = {c: g for g, c in gains}
    assert pairs[cd("1", "-1-i")].same_point(ChannelGain.ratio(G("1+i"), GInt(1)))
    assert pairs[cd("1+i", "-i")].same_point(ChannelGain.ratio(GInt(0, 1), G("1+i")))
    assert pairs[CharDifference(GInt(1), GInt(0))].same_point(ChannelGain.ratio(0, 1))
    assert pairs[CharDifference(GInt(0), GInt(1))].is_infinite
    for g, c in gains:
        if not g.is_infinite:
            assert abs(g.value) <= 2 + 1e-12
            assert pair_distance(g, c.dA, c.dB) < 1e-12
    with pytest.raises(ValueError):
        zero_lmin_gains(F3, 0)


def test_symmetric_gains():
    base = cd("1+i", "-i")
    images = symmetric_gains(base.generator, base)
    assert len(images) == 7
    conj = images[-1][1]
    assert conj == char_difference(G("1-i"), G("i"))
    for g, c in images:
        assert abs(g.value) == pytest.approx(abs(base.generator.value))
        assert pair_distance(g, c.dA, c.dB) < 1e-12
    with pytest.raises(ValueError):
        symmetric_gains(None, cd("1", "i"))   # eta = -i, outside the octant


def test_symmetry_reproduces_all_gains_q3():
    gains = [(g, c) for g, c in zero_lmin_gains(F3, 2) if not c.trivial]
    direct = {c for _, c in gains}
    expanded = set()
    for g, c in gains:
        if in_octant(c):
            expanded.add(c)
            expanded.update(c2 for _, c2 in symmetric_gains(g, c))
    assert expanded == direct


def test_l_min_octant_symmetry():
    rng = np.random.default_rng(11)
    maps = (lambda e: 1j * e.conjugate(), lambda e: 1j * e, lambda e: -e.conjugate(), lambda e: -e,
            lambda e: -1j * e.conjugate(), lambda e: -1j * e, lambda e: e.conjugate())
    for _ in range(200):
        r, th = 2 * rng.random(), math.pi / 4 * rng.random()
        eta = r * complex(math.cos(th), math.sin(th))
        base = l_min(eta, F3)[0]
        for f in maps:
            assert l_min(f(eta), F3)[0] == pytest.approx(base, abs=1e-12)


def test_clustering_mapping_at_gain():
    m = optimal_mapping_at_gain(cd("1+i", "-i"), F3)
    assert clusters(m, G("1+i"), G("-i"), F3)
    assert optimal_mapping_at_gain(cd("1", "-1"), F3) == NcMapping(GInt(1), GInt(1))
    with pytest.raises(ValueError):
        optimal_mapping_at_gain(CharDifference(GInt(1), GInt(0)), F3)


def test_clustering_mapping_matches_bruteforce_q5():
    for g, c in zero_lmin_gains(F5, 3):
        if c.trivial:
            continue
        m_bf, _ = optimal_mapping_bruteforce(g.value, F5)
        assert isomorphic(m_bf, optimal_mapping_at_gain(c, F5), F5)


def test_dmin_at_gain_values():
    assert dmin_at_gain(cd("1", "-1-i")) == 1
    assert dmin_at_gain(cd("1+i", "-i")) == pytest.approx(1 / math.sqrt(2), abs=1e-5)
    assert dmin_at_gain(CharDifference(GInt(1), GInt(0))) == 0


def test_dmin_determining():
    base = cd("1+i", "-i")
    det = set(dmin_determining_at_gain(base, F3))
    for a, b in (("1+2i", "-i"), ("2+i", "-1-i"), ("1+2i", "-2i"), ("2+i", "-1-2i")):
        assert cd(a, b) in det
    # listed with the others in one place, but its normalized distance is sqrt(2)
    assert normalized_distance_norm(base, cd("2+2i", "-1-2i")) == 2
    assert cd("2+2i", "-1-2i") not in det
    m = optimal_mapping_at_gain(base, F3)
    assert not any(clusters(m, c.dA, c.dB, F3) for c in det)
    with pytest.raises(ValueError):
        dmin_determining_at_gain(CharDifference(GInt(0), GInt(1)), F3)


@pytest.mark.parametrize("field", [F5, F3], ids=["2+i", "3"])
def test_dmin_determining_nonempty(field):
    for c in characteristic_set(field):
        if not c.trivial:
            assert dmin_determining_at_gain(c, field)


def test_weighted_and_euclidean_distance_relation():
    from pncgauss.voronoi import weighted_distance

    cs = [c for c in characteristic_set(F3) if not c.trivial]
    for ci in cs[:25]:
        for cj in cs:
            d_ij = abs(ci.generator.value - cj.generator.value)
            assert weighted_distance(cj, ci.generator) == pytest.approx(abs(complex(cj.dA)) * d_ij, abs=1e-12)
