import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from slitwave.analysis import (
    PatternSeries,
    compare_patterns,
    find_extrema,
    first_nulls,
    integrated_intensity,
    missing_orders,
    scan_pattern,
)
from slitwave.core import ScreenScan, SlitGeometry, ValidationError, WaveSpec
from slitwave.scenarios import get_scenario

LAMBDA = 6.328e-7
W = WaveSpec(LAMBDA)


def grating(n, c_prime=0.88e-4, d=2.64e-4):
    return SlitGeometry(0.88e-4, 3.52e-4, c_prime, d, n)


def classical(n, scan=None, d=2.64e-4):
    return scan_pattern("classical", grating(n, d=d), W, scan=scan)


def test_classical_peak_on_axis():
    s = classical(2)
    assert len(s.beta) == 4001
    assert s.beta[np.argmax(s.intensity)] == 0.0


def test_quantum_tiny_hole_is_dark():
    sc = get_scenario("fig8")
    s = scan_pattern("quantum", sc.geometry, sc.wave, scan=sc.scan)
    assert np.all(s.intensity < 1e-30 / sc.scan.R ** 2)


def test_quantum_grating_close_to_classical():
    sc = get_scenario("fig4a")
    scan = ScreenScan(beta_min=-0.01, beta_max=0.01, n_samples=801)
    q = scan_pattern("quantum", sc.geometry, sc.wave, scan=scan)
    c = scan_pattern("classical", sc.geometry, sc.wave, scan=scan)
    assert compare_patterns(q, c).rms < 0.05


@pytest.mark.parametrize("n", [2, 3, 5, 7])
def test_classical_secondary_structure(n):
    report = find_extrema(classical(n))
    assert report.gaps
    for gap in report.gaps:
        assert gap.secondary_maxima == n - 2
        assert gap.minima == n - 1
    assert report.secondary_maxima_per_gap == n - 2


def test_monotone_series_has_no_extrema():
    beta = np.linspace(0, 0.01, 200)
    s = PatternSeries(beta, np.exp(beta * 100), "classical",
                      dict(a=1e-4, d=0.0, n_slits=1, wavelength=LAMBDA))
    r = find_extrema(s)
    assert r.principal_maxima == [] and r.secondary_maxima == [] and r.minima == []


def test_reported_extrema_are_strict():
    s = classical(4)
    r = find_extrema(s)
    v = s.intensity
    for i, *_ in r.principal_maxima + r.secondary_maxima:
        assert v[i] > v[i - 1] and v[i] > v[i + 1]
    for i, *_ in r.minima:
        assert v[i] < v[i - 1] and v[i] < v[i + 1]


@settings(max_examples=20, deadline=None)
@given(st.floats(1e-20, 1e20))
def test_extrema_invariant_under_rescaling(scale):
    s = classical(3)
    r0, r1 = find_extrema(s), find_extrema(s.scaled(scale))
    assert [p[0] for p in r0.principal_maxima] == [p[0] for p in r1.principal_maxima]
    assert [p[0] for p in r0.secondary_maxima] == [p[0] for p in r1.secondary_maxima]
    assert [p[0] for p in r0.minima] == [p[0] for p in r1.minima]


@pytest.mark.parametrize("n", [2, 4])
def test_refinement_keeps_principal_count(n):
    orders = 11
    base = 64 * n * orders
    counts = []
    for k in (base, 2 * base, 4 * base):
        s = classical(n, ScreenScan(n_samples=k + 1))
        counts.append(len(find_extrema(s).principal_maxima))
    assert counts[0] == counts[1] == counts[2]


WIDE = ScreenScan(beta_min=-0.0165, beta_max=0.0165, n_samples=6601)


def test_classical_missing_orders():
    assert missing_orders(classical(2, WIDE), grating(2), W) == [4, 8]


@pytest.mark.parametrize("ratio", [2, 3, 4, 5])
def test_missing_orders_follow_pitch_ratio(ratio):
    a = 0.88e-4
    g = SlitGeometry(a, 3.52e-4, 0.0, (ratio - 1) * a, 3)
    s = scan_pattern("classical", g, W, scan=WIDE)
    j_max = int(math.sin(WIDE.beta_max) * g.pitch / LAMBDA)
    expected = [j for j in range(1, j_max + 1) if j % ratio == 0]
    assert missing_orders(s, g, W) == expected


def test_quantum_thick_double_slit_fills_missing_orders():
    sc = get_scenario("fig12-50c")
    s = scan_pattern("quantum", sc.geometry, sc.wave, scan=WIDE)
    assert missing_orders(s, sc.geometry, sc.wave) == []


def test_missing_orders_errors():
    with pytest.raises(ValidationError):
        missing_orders(classical(1), grating(1), W)
    narrow = ScreenScan(beta_min=-0.001, beta_max=0.001, n_samples=101)
    with pytest.raises(ValidationError, match="no grating orders"):
        missing_orders(classical(2, narrow), grating(2), W)


def test_compare_with_itself():
    s = classical(3)
    m = compare_patterns(s, s)
    assert m.rms == 0 and m.max_peak_offset == 0 and m.secondary_ratio == 1


def test_compare_distinct():
    assert compare_patterns(classical(2), classical(3)).rms > 0


def test_compare_grid_mismatch():
    with pytest.raises(ValidationError):
        compare_patterns(classical(2), classical(2, ScreenScan(n_samples=401)))


def test_series_validation():
    with pytest.raises(ValidationError):
        PatternSeries([0.0], [1.0], "classical")
    with pytest.raises(ValidationError):
        PatternSeries([0.0, 0.0], [1.0, 1.0], "classical")
    with pytest.raises(ValidationError):
        PatternSeries([0.0, 1.0], [1.0, -1.0], "classical")
    with pytest.raises(ValidationError):
        find_extrema(PatternSeries([0.0, 1.0], [1.0, 2.0], "classical", dict(a=1, d=0, n_slits=1, wavelength=1)))


def test_first_nulls_and_integral():
    s = scan_pattern("classical", SlitGeometry(1.76e-4, 4e-4, 0), W)
    lo, hi = first_nulls(s)
    assert hi == pytest.approx(LAMBDA / 1.76e-4, abs=5e-6)
    assert lo == pytest.approx(-LAMBDA / 1.76e-4, abs=5e-6)
    assert integrated_intensity(s) > 0


def test_longer_wavelength_lowers_integrated_intensity():
    totals = []
    for f in (10, 20, 50):
        sc = get_scenario(f"fig11-{f}lambda")
        s = scan_pattern("quantum", sc.geometry, sc.wave, scan=sc.scan)
        totals.append(integrated_intensity(s))
    assert totals[0] > totals[1] > totals[2]
