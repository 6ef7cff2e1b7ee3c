import numpy as np
import pytest

from sduality.algebra import build_algebra
from sduality.duality import compute_duality
from sduality.instances import random_instance
from sduality.oracle import OracleUnavailable, compare_eta, is_etale, perturb, solve_numeric
from sduality.scalar import GF, QQ


def test_three_points():
    B = build_algebra(["x"], ["x^3 - x"], QQ)
    zs = sorted(z.point[0].real for z in solve_numeric(B))
    assert np.allclose(zs, [-1, 0, 1])
    report, details = compare_eta(B, compute_duality(B))
    assert report.passed and details["zeros"] == 3


def test_univariate_zeros_match_numpy_roots():
    B = build_algebra(["x"], ["x^5 - 3*x^4 + x - 7/3"], QQ)
    ours = np.sort_complex(np.array([z.point[0] for z in solve_numeric(B)]))
    ref = np.sort_complex(np.roots([1, -3, 0, 0, 1, -7 / 3]))
    assert np.allclose(ours, ref, atol=1e-10)


def test_not_etale():
    B = build_algebra(["x"], ["x^2"], QQ)
    assert not is_etale(B)
    with pytest.raises(OracleUnavailable, match="not etale"):
        solve_numeric(B)


def test_perturbed_double_point_recovers_hyperbolic_eta():
    B = build_algebra(["x"], ["x^2"], QQ)
    P, eps = perturb(B, seed=3)
    assert eps[0] != 0 and is_etale(P)
    D = compute_duality(P)
    assert D.eta.coords == [0, 1]
    report, _ = compare_eta(P, D, seed=3)
    assert report.passed


def test_prime_field_and_size_limits():
    with pytest.raises(OracleUnavailable):
        solve_numeric(build_algebra(["x"], ["x^3 - x"], GF(7)))
    with pytest.raises(OracleUnavailable, match="exceeds"):
        solve_numeric(build_algebra(["x"], ["x^31 - 1"], QQ))


def test_plane_conics():
    B = build_algebra(["x", "y"], ["x^2 + y^2 - 5", "x*y - 2"], QQ)
    zeros = solve_numeric(B, seed=4)
    pts = sorted((round(z.point[0].real), round(z.point[1].real)) for z in zeros)
    assert pts == [(-2, -1), (-1, -2), (1, 2), (2, 1)]
    assert max(z.residual for z in zeros) < 1e-12


@pytest.mark.parametrize("seed", range(8))
def test_random_etale_instances(seed):
    inst = random_instance(seed, QQ, family="dense", max_dim=8)
    B = inst.build()
    if not is_etale(B):
        B, _ = perturb(B, seed)
    report, details = compare_eta(B, compute_duality(B), seed=seed)
    assert report.passed, details


def test_wrong_eta_is_caught():
    B = build_algebra(["x", "y"], ["x^2 + y^2 - 5", "x*y - 2"], QQ)
    D = compute_duality(B)
    D.eta.coords[1] += 1
    report, _ = compare_eta(B, D)
    assert not report.passed
