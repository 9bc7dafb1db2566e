import math

import numpy as np
import pytest

import integralgap as ig
from integralgap import planar
from integralgap.volume import cos_power_integral_recursive


def test_ball_volume_closed_forms():
    # diameter-1 ball volumes
    assert ig.ball_volume(ig.PNormSpace(2, 2.0)).value == pytest.approx(
        math.pi / 4, abs=1e-14)
    assert ig.ball_volume(ig.PNormSpace(3, 2.0)).value == pytest.approx(
        math.pi / 6, abs=1e-14)
    assert ig.ball_volume(ig.PNormSpace(4, 1.0)).value == pytest.approx(
        1.0 / 24.0, abs=1e-16)
    assert ig.ball_volume(ig.PNormSpace(7, math.inf)).value == 1.0
    # generic p against the Gamma formula written out by hand
    v = ig.ball_volume(ig.PNormSpace(2, 4.0)).value
    assert v == pytest.approx(math.gamma(1.25) ** 2 / math.gamma(1.5), abs=1e-14)


def test_cos_power_integral_against_reduction():
    for d in range(0, 9):
        for upper in (0.0, 0.3, math.pi / 6, math.pi / 2):
            a = ig.cos_power_integral(d, upper)
            b = cos_power_integral_recursive(d, upper)
            assert a == pytest.approx(b, abs=1e-12)


def test_cos_power_integral_validation():
    with pytest.raises(ig.ParameterError):
        ig.cos_power_integral(-1, 0.3)
    with pytest.raises(ig.InputError):
        ig.cos_power_integral(2, 2.0)


def test_euclidean_slice_d2_closed_form():
    # disc of radius 1/2 cut to width 1/2: sqrt(3)/8 + pi/12
    val = ig.euclidean_slice_volume(2).value
    assert val == pytest.approx(math.sqrt(3) / 8 + math.pi / 12, abs=1e-12)


def test_slice_volume_dispatch():
    assert ig.slice_volume(ig.PNormSpace(3, math.inf)).value == 0.5
    assert ig.slice_volume(ig.PNormSpace(2, 1.0)).value == pytest.approx(
        (1 - 0.25) / 2, abs=1e-14)
    assert ig.slice_volume(ig.PNormSpace(2, 2.0)).value == pytest.approx(
        ig.euclidean_slice_volume(2).value)


def test_manhattan_slice_conventions():
    # axis closed form, checked by Monte Carlo
    for d in (2, 3):
        closed = ig.manhattan_slice_volume(d, convention="axis").value
        assert closed == pytest.approx((1 - 2.0 ** (-d)) / math.factorial(d),
                                       abs=1e-14)
        comp = ig.slice_component(ig.PNormSpace(d, 1.0))
        est = ig.monte_carlo_volume(comp, 400_000, 9)
        assert abs(est.value - closed) < 4 * est.stderr
    assert ig.manhattan_slice_volume(2, convention="diagonal").value == 0.25
    with pytest.raises(ig.ParameterError):
        ig.manhattan_slice_volume(2, convention="bogus")


def test_diameter_width_bound_degenerates():
    for d in range(2, 7):
        full = ig.diameter_width_bound(d, 1.0, 1.0)
        assert full == pytest.approx(ig.ball_volume(ig.PNormSpace(d, 2.0)).value,
                                     abs=1e-12)
        half = ig.diameter_width_bound(d, 1.0, 0.5)
        assert half == pytest.approx(ig.euclidean_slice_volume(d).value,
                                     abs=1e-12)
    with pytest.raises(ig.InputError):
        ig.diameter_width_bound(2, 1.0, 2.0)


def test_monte_carlo_matches_gamma():
    for d, p in ((2, 1.5), (3, 3.0), (2, math.inf)):
        sp = ig.PNormSpace(d, p)
        comp = ig.ball(sp, [0.0] * d, 1.0)
        est = ig.monte_carlo_volume(comp, 300_000, 123)
        exact = ig.ball_volume(sp).value
        assert abs(est.value - exact) < 4 * est.stderr


def test_monte_carlo_deterministic():
    sp = ig.PNormSpace(2, 2.0)
    comp = ig.ball(sp, (0.0, 0.0), 1.0)
    a = ig.monte_carlo_volume(comp, 200_000, 7)
    b = ig.monte_carlo_volume(comp, 200_000, 7)
    assert a.value == b.value
    c = ig.monte_carlo_volume(comp, 200_000, 8)
    assert c.value != a.value


def test_monte_carlo_thread_invariance(monkeypatch):
    sp = ig.PNormSpace(2, 2.0)
    comp = ig.ball(sp, (0.0, 0.0), 1.0)
    base = ig.monte_carlo_volume(comp, 300_000, 5).value
    monkeypatch.setenv("INTEGRALGAP_THREADS", "4")
    assert ig.monte_carlo_volume(comp, 300_000, 5).value == base


def test_exact_area_full_disc():
    sp = ig.PNormSpace(2, 2.0)
    comp = ig.ball(sp, (0.3, 0.4), 1.0)
    assert ig.exact_area_2d(comp).value == pytest.approx(math.pi / 4, abs=1e-14)


def test_exact_area_slice():
    comp = ig.slice_component(ig.PNormSpace(2, 2.0))
    assert ig.exact_area_2d(comp).value == pytest.approx(
        math.sqrt(3) / 8 + math.pi / 12, abs=1e-13)


def test_exact_area_halfdisc():
    sp = ig.PNormSpace(2, 2.0)
    # slab wider than the disc on one side: kills nothing
    comp = ig.Component(sp, (0.0, 0.0), 1.0,
                        (ig.make_cut(sp, [1.0, 0.0], 0.6),))
    assert ig.exact_area_2d(comp).value == pytest.approx(math.pi / 4, abs=1e-12)


def test_exact_area_two_cuts_square():
    sp = ig.PNormSpace(2, 2.0)
    # two orthogonal narrow slabs: nearly a square of side 0.2
    comp = ig.Component(sp, (0.0, 0.0), 1.0,
                        (ig.make_cut(sp, [1.0, 0.0], 0.1),
                         ig.make_cut(sp, [0.0, 1.0], 0.1)))
    assert ig.exact_area_2d(comp).value == pytest.approx(0.04, abs=1e-12)


def test_exact_area_empty():
    sp = ig.PNormSpace(2, 2.0)
    far = ig.Component(sp, (0.0, 0.0), 1.0,
                       (ig.SlabCut((1.0, 0.0), 1e-12),))
    assert ig.exact_area_2d(far).value == pytest.approx(0.0, abs=1e-10)


def test_exact_area_agrees_with_mc():
    sp = ig.PNormSpace(2, 2.0)
    rng = np.random.default_rng(2)
    for trial in range(5):
        u = rng.normal(size=2)
        comp = ig.Component(sp, (0.0, 0.0), 1.0,
                            (ig.make_cut(sp, u, rng.uniform(0.05, 0.4)),))
        exact = ig.exact_area_2d(comp).value
        est = ig.monte_carlo_volume(comp, 400_000, 100 + trial)
        assert abs(est.value - exact) < 4 * est.stderr


def test_exact_area_requires_planar_euclidean():
    with pytest.raises(ig.UnsupportedError):
        ig.exact_area_2d(ig.ball(ig.PNormSpace(2, 1.0), (0, 0), 1.0))
    with pytest.raises(ig.UnsupportedError):
        ig.exact_area_2d(ig.ball(ig.PNormSpace(3, 2.0), (0, 0, 0), 1.0))


def test_arrangement_volume_sums_components():
    sp = ig.PNormSpace(2, 2.0)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0, 0), 1.0),
                              ig.ball(sp, (5, 0), 1.0)))
    assert ig.arrangement_volume(arr).value == pytest.approx(math.pi / 2,
                                                             abs=1e-12)


def test_svg_path_nonempty():
    comp = ig.slice_component(ig.PNormSpace(2, 2.0))
    path = planar.svg_path(comp, 100.0)
    assert path.startswith("M") and path.endswith("Z")
    assert "A" in path and "L" in path


def test_volume_estimate_invariants():
    with pytest.raises(ig.ParameterError):
        ig.VolumeEstimate(1.0, stderr=0.1, samples=0, method="closed_form")
    with pytest.raises(ig.ParameterError):
        ig.VolumeEstimate(1.0, stderr=0.1, samples=0, method="monte_carlo")
