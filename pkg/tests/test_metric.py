import numpy as np
import pytest

from finslercheck import jets
from finslercheck.errors import DegenerateMetric, DomainError
from finslercheck.metric import FamilyMetric, eval_F, fundamental_tensor, phi_integrand, spray_from_metric
from finslercheck.params import ParamSet
from finslercheck.sampling import SampleRegion, sample_points

from conftest import rel_err

REDUCED = ParamSet(c=0, c0="1/r^2")
# nondegenerate, positive definite on the sampled band below
CONVEX = ParamSet(c=-0.5, c0="2")
BAND = SampleRegion(r_min=0.8, r_max=1.5, count=25, seed=3)


def euclid(x, y):
    return jets.sqrt(y[0] * y[0] + y[1] * y[1])


def conformal_x1(x, y):
    return jets.exp(x[0]) * jets.sqrt(y[0] * y[0] + y[1] * y[1])


def cross_over_r2(x, y):
    return (x[0] * y[1] - x[1] * y[0]) / (x[0] * x[0] + x[1] * x[1])


def test_phi_integrand_examples():
    assert phi_integrand(REDUCED, 0.0, 1.0) == 0.0
    assert phi_integrand(REDUCED, 0.5, 1.0) == pytest.approx(-2 / 3, abs=1e-15)
    with pytest.raises(DomainError):
        phi_integrand(REDUCED, 1.0, 1.0)


def test_phi_integrand_reduces_for_any_c0():
    p = ParamSet(c=0, c0="3 + r")
    for t in (-0.7, 0.1, 0.4):
        assert phi_integrand(p, t, 1.3) == pytest.approx(-t / (1.69 - t * t), rel=1e-13)


def test_eval_F_examples():
    assert eval_F(REDUCED, (1, 0), (0, 1)).F == pytest.approx(1.0, abs=1e-8)
    assert eval_F(REDUCED, (3, 4), (0, 2)).F == pytest.approx(0.24, abs=1e-8)


def test_homogeneity(cone_points):
    for smp in cone_points[:15]:
        for lam in (2.0, 0.3):
            ly = (lam * smp.y[0], lam * smp.y[1])
            assert eval_F(CONVEX, smp.x, ly).F == pytest.approx(lam * eval_F(CONVEX, smp.x, smp.y).F, rel=1e-12)


def test_fundamental_tensor_examples():
    g = fundamental_tensor(euclid, (0.3, -1.2), (0.4, 2.0))
    assert np.allclose(g.matrix, np.eye(2), atol=1e-14) and g.det == pytest.approx(1.0)
    g = fundamental_tensor(cross_over_r2, (3, 4), (0, 2))
    assert abs(g.det) < 1e-15 and g.degenerate


def test_euler_identity():
    F = FamilyMetric(CONVEX)
    for smp in sample_points(BAND):
        g = fundamental_tensor(F, smp.x, smp.y)
        yv = np.array(smp.y)
        assert g.positive_definite
        assert yv @ g.matrix @ yv == pytest.approx(F(smp.x, smp.y) ** 2, rel=1e-8)


def test_metric_jets_against_fd():
    F = FamilyMetric(CONVEX)
    f = lambda x, y: F(x, y)  # noqa: E731
    multi = [(1, 0, 0, 0), (0, 1, 0, 0), (2, 0, 0, 0), (1, 1, 0, 0), (0, 2, 0, 0), (0, 0, 1, 0), (0, 0, 0, 1)]
    for smp in sample_points(BAND)[:10]:
        J = eval_F(CONVEX, smp.x, smp.y, with_jet=True).jet
        for m in multi:
            fd = jets.fd_oracle(f, (smp.x, smp.y), m)
            assert rel_err(J.deriv(m), fd, J.value) < 1e-6, (smp.index, m)


def test_r_jet_of_reduced_metric_is_exact():
    # F = cross / r^2 exactly, so every partial has a closed form
    (x1, x2), (y1, y2) = jets.lift((1.2, 0.5), (-0.3, 1.1), 2, 1)
    J = FamilyMetric(REDUCED)((x1, x2), (y1, y2))
    K = cross_over_r2((x1, x2), (y1, y2))
    assert np.allclose(J.coeffs, K.coeffs, atol=1e-8)


def test_spray_examples():
    assert spray_from_metric(euclid, (1.0, 2.0), (0.5, -1.0)) == pytest.approx((0, 0), abs=1e-14)
    y = (0.7, -1.3)
    G = spray_from_metric(conformal_x1, (0.2, 0.9), y)
    assert G == pytest.approx(((y[0] ** 2 - y[1] ** 2) / 2, y[0] * y[1]), rel=1e-12)
    with pytest.raises(DegenerateMetric):
        spray_from_metric(cross_over_r2, (3, 4), (0, 2))


def test_spray_two_homogeneous():
    F = FamilyMetric(CONVEX)
    for smp in sample_points(BAND)[:10]:
        G = np.array(spray_from_metric(F, smp.x, smp.y))
        G3 = np.array(spray_from_metric(F, smp.x, (3 * smp.y[0], 3 * smp.y[1])))
        assert np.allclose(G3, 9 * G, rtol=1e-8, atol=1e-8 * np.max(np.abs(G)))


def riemannian(x, y):
    a11 = 1 + x[0] * x[0]
    a12 = 0.3 * x[0] * x[1]
    a22 = jets.exp(0.5 * x[1])
    return jets.sqrt(a11 * y[0] * y[0] + 2 * a12 * y[0] * y[1] + a22 * y[1] * y[1])


@pytest.mark.parametrize("x", [(0.3, 0.8), (-1.1, 0.2), (0.5, -0.6)])
def test_riemannian_spray_is_quadratic(x, rng):
    # parallelogram law G(y+z) + G(y-z) = 2G(y) + 2G(z) holds iff G is quadratic in y
    G = lambda y: np.array(spray_from_metric(riemannian, x, y))  # noqa: E731
    for _ in range(5):
        y, z = rng.normal(size=2), rng.normal(size=2)
        lhs = G(y + z) + G(y - z)
        rhs = 2 * G(y) + 2 * G(z)
        assert np.max(np.abs(lhs - rhs)) <= 1e-8 * (1 + np.max(np.abs(rhs)))
    # and its third partials vanish
    for m in [(3, 0, 0, 0), (2, 1, 0, 0), (1, 2, 0, 0), (0, 3, 0, 0)]:
        for i in range(2):
            f = lambda xx, yy, i=i: spray_from_metric(riemannian, xx, yy)[i]  # noqa: E731
            assert abs(jets.fd_oracle(f, (x, (0.8, 0.4)), m)) < 1e-6


def test_family_metric_rejects_wrong_cone():
    from finslercheck.errors import OrientationViolation

    with pytest.raises(OrientationViolation):
        eval_F(REDUCED, (1, 0), (0, -1))
