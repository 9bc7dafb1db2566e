import math

import numpy as np
import pytest

import integralgap as ig


def unit_triangle(side=1.0):
    return ig.PointSet(2, ((0.0, 0.0), (side, 0.0),
                           (side / 2, side * math.sqrt(3) / 2)))


def test_point_set_validation():
    with pytest.raises(ig.InputError):
        ig.PointSet(2, ((0.0, 0.0), (1.0,)))


def test_distance_matrix():
    ps = unit_triangle()
    D = ps.distance_matrix()
    assert np.allclose(D, D.T)
    assert np.allclose(np.diag(D), 0.0)
    assert np.allclose(D[np.triu_indices(3, 1)], 1.0)


def test_odd_distance_verify_pass_and_fail():
    assert ig.odd_distance_verify(unit_triangle(), 1e-9) is None
    bad = ig.odd_distance_verify(unit_triangle(2.0), 1e-6)
    assert bad is not None and bad[2] == pytest.approx(2.0)
    # fewer than two points pass trivially
    assert ig.odd_distance_verify(ig.PointSet(2, ((0.0, 0.0),)), 1e-6) is None
    with pytest.raises(ig.ParameterError):
        ig.odd_distance_verify(unit_triangle(), 0.7)


def test_half_integral_centers_dilates():
    sp = ig.PNormSpace(2, 2.0)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0.0, 0.0), 0.5),
                              ig.ball(sp, (1.5, 0.0), 0.5)))
    ps, bad = ig.half_integral_centers(arr)
    assert bad is None
    assert ps.distance_matrix()[0, 1] == pytest.approx(3.0)
    assert ig.odd_distance_verify(ps, 1e-9) is None


def test_half_integral_centers_flags_off_grid():
    sp = ig.PNormSpace(2, 2.0)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0.0, 0.0), 0.5),
                              ig.ball(sp, (1.2, 0.0), 0.5)))
    ps, bad = ig.half_integral_centers(arr)
    assert ps is None
    assert bad[:2] == (0, 1)


def test_half_integral_centers_requires_plain_balls():
    sp = ig.PNormSpace(2, 2.0)
    arr = ig.Arrangement(sp, (ig.ball(sp, (0.0, 0.0), 0.9),))
    with pytest.raises(ig.ParameterError):
        ig.half_integral_centers(arr)


def test_cayley_menger_embeddable_triangle():
    D = np.array([[0.0, 1, 1], [1, 0, 1], [1, 1, 0.0]])
    ok, res = ig.cayley_menger_embeddable(D, 2)
    assert ok and res < 1e-8
    # a triangle needs two dimensions
    ok1, _ = ig.cayley_menger_embeddable(D, 1)
    assert not ok1


def test_cayley_menger_violates_triangle_inequality():
    D = np.array([[0.0, 1, 3], [1, 0, 1], [3, 1, 0.0]])
    ok, _ = ig.cayley_menger_embeddable(D, 2)
    assert not ok


def test_cayley_menger_flat_quad():
    # four collinear points at 0, 1, 2, 3: embeds in d=1 (and any d >= 1)
    x = np.array([0.0, 1.0, 2.0, 3.0])
    D = np.abs(x[:, None] - x[None, :])
    ok, res = ig.cayley_menger_embeddable(D, 1)
    assert ok
    ok2, res2 = ig.cayley_menger_embeddable(D, 2)
    assert ok2 and res2 < 1e-8


def test_cayley_menger_validation():
    with pytest.raises(ig.InputError):
        ig.cayley_menger_embeddable(np.array([[0.0, 1], [2, 0.0]]), 2)
    with pytest.raises(ig.InputError):
        ig.cayley_menger_embeddable(np.array([[0.0, 0], [0, 0.0]]), 2)


def test_reconstruct_roundtrip():
    rng = np.random.default_rng(4)
    X = rng.normal(size=(5, 3))
    D = np.linalg.norm(X[:, None] - X[None, :], axis=2)
    Y = ig.reconstruct_coordinates(D, 3)
    D2 = np.linalg.norm(Y[:, None] - Y[None, :], axis=2)
    assert np.allclose(D, D2, atol=1e-9)


def test_odd_set_search_tetrahedron():
    found = ig.odd_set_search(3, 4, 1)
    assert len(found) == 1
    D = found[0].distance_matrix()
    assert np.allclose(D[np.triu_indices(4, 1)], 1.0, atol=1e-9)


def test_odd_set_search_triangles():
    found = ig.odd_set_search(2, 3, 3)
    multisets = {tuple(sorted(np.round(
        ps.distance_matrix()[np.triu_indices(3, 1)]).astype(int)))
        for ps in found}
    assert (1, 1, 1) in multisets
    assert (3, 3, 3) in multisets
    # every returned set re-verifies
    for ps in found:
        assert ig.odd_distance_verify(ps, 1e-6) is None


def test_odd_set_search_rejections():
    with pytest.raises(ig.ParameterError):
        ig.odd_set_search(2, 5, 1)  # n > d + 2
    with pytest.raises(ig.ParameterError):
        ig.odd_set_search(2, 3, 4)  # even bound
    with pytest.raises(ig.ParameterError):
        ig.odd_set_search(2, 3, 101)  # over the cap
