import numpy as np
import pytest

from finslercheck import jets
from finslercheck.errors import CollinearInputs, ConfigError, DomainError, OrientationViolation
from finslercheck.params import ParamSet
from finslercheck.scalars import scalar_triple
from finslercheck.spray import (
    AnsatzSpray,
    FamilySpray,
    eval_PQ,
    extract_PQ,
    parse_override,
    quadratic_coeffs,
    spray_closed,
)

from conftest import rel_err

ZERO = ParamSet(c0="0", f1="0", f2="0", c1="0", c2="0")
UNIT = ParamSet(c0="1", f1="1", f2="1", c1="0", c2="0")


def test_eval_PQ_examples():
    v = eval_PQ(UNIT, 1.0, 0.0)
    assert (v.P, v.Q) == (1.0, 1.0)
    v = eval_PQ(ZERO, 1.3, 0.2)
    assert (v.P, v.Q) == (0.0, 0.0)
    v = eval_PQ(ParamSet(f1="1", f2="0"), 2.0, 1.0)
    assert (v.P, v.P_s, v.P_ss) == (1.0, 1.0, 0.0)
    with pytest.raises(DomainError):
        eval_PQ(UNIT, 1.0, 1.0)


def test_PQ_derivatives_against_fd():
    p = ParamSet(f1="1 + r", f2="2/r", c0="r", c1="0.5*r^2", c2="3 - r")
    r, s = 1.4, 0.6
    v = eval_PQ(p, r, s)
    for name, k in [("P", 0), ("Q", 1)]:
        f = lambda x, y, k=k: (eval_PQ(p, r, y[0]).P, eval_PQ(p, r, y[0]).Q)[k]  # noqa: E731
        for order in (1, 2, 3):
            if name == "P" and order == 3:
                continue
            got = getattr(v, name + "_" + "s" * order)
            fd = jets.fd_oracle(f, ((r, 0.0), (s, 0.0)), (order, 0, 0, 0))
            assert rel_err(got, fd, getattr(v, name)) < (1e-6 if order < 3 else 1e-4)


def test_spray_closed_examples():
    assert spray_closed(UNIT, (1, 0), (0, 1)) == spray_closed(UNIT, (1.0, 0.0), (0.0, 1.0))
    v = spray_closed(UNIT, (1, 0), (0, 1))
    assert (v.G1, v.G2) == pytest.approx((1.0, 1.0), abs=1e-15)
    v = spray_closed(ZERO, (0.4, 1.0), (-1, 0.3))
    assert (v.G1, v.G2) == (0.0, 0.0)
    with pytest.raises(OrientationViolation):
        spray_closed(UNIT, (1, 0), (0, -1))


def test_spray_two_homogeneous(random_paramsets, cone_points):
    for p in random_paramsets:
        for smp in cone_points[:10]:
            try:
                a = spray_closed(p, smp.x, smp.y)
            except DomainError:
                continue
            b = spray_closed(p, smp.x, (2 * smp.y[0], 2 * smp.y[1]))
            assert b.G1 == pytest.approx(4 * a.G1, rel=1e-12, abs=1e-12)
            assert b.G2 == pytest.approx(4 * a.G2, rel=1e-12, abs=1e-12)


def test_quadratic_coeffs_example():
    p = ParamSet(f1="1", f2="2", c0="3", c1="4", c2="5")
    q = quadratic_coeffs(p, (1, 0))
    assert q.monomials(0) == pytest.approx((9, 6, 3))
    assert q.monomials(1) == pytest.approx((0, 1, 2))
    assert np.all(quadratic_coeffs(ZERO, (0.3, 0.7)).coef == 0)


def test_quadratic_form_matches_closed_spray(random_paramsets, rng):
    for p in random_paramsets:
        x = rng.uniform(-2, 2, size=2)
        q = quadratic_coeffs(p, x)
        for _ in range(100):
            y = rng.normal(size=2)
            if x[0] * y[1] - x[1] * y[0] <= 0:
                y = -y
            try:
                v = spray_closed(p, x, y)
            except DomainError:
                continue
            got = q(y)
            scale = 1 + np.max(np.abs(q.coef)) * (y @ y)
            assert np.max(np.abs(got - [v.G1, v.G2])) <= 1e-12 * scale


def test_negative_cone_flips_blocks(rng):
    p = ParamSet(f1="1", f2="2", c0="3", c1="4", c2="5")
    x = (0.8, -0.3)
    neg = AnsatzSpray(lambda r, s: eval_PQ(p, r, s).P, lambda r, s: eval_PQ(p, r, s).Q, cone=-1)
    q = quadratic_coeffs(p, x, cone=-1)
    y = np.array([0.2, -1.0])
    assert q(y) == pytest.approx(neg(x, y), rel=1e-12)


def test_extract_round_trip(random_paramsets, cone_points):
    for p in random_paramsets:
        spray = FamilySpray(p)
        for smp in cone_points[:10]:
            try:
                want = eval_PQ(p, smp.triple.r, smp.triple.s)
            except DomainError:
                continue
            P, Q = extract_PQ(spray, smp.x, smp.y)
            assert rel_err(P, want.P, 1) < 1e-10 and rel_err(Q, want.Q, 1) < 1e-10


def test_extract_edge_cases():
    assert extract_PQ(lambda x, y: (0.0, 0.0), (1, 0), (0, 1)) == (0.0, 0.0)
    with pytest.raises(CollinearInputs):
        extract_PQ(lambda x, y: (0.0, 0.0), (1, 0), (2, 0))


def test_extract_depends_only_on_r_s():
    spray = FamilySpray(ParamSet(f1="r", f2="1/r", c0="2", c1="r", c2="-1"))
    x, y = (1.2, 0.5), (-0.4, 0.9)
    t = scalar_triple(x, y)
    a = 0.77
    rot = lambda v: (np.cos(a) * v[0] - np.sin(a) * v[1], np.sin(a) * v[0] + np.cos(a) * v[1])  # noqa: E731
    y2 = (3 * y[0], 3 * y[1])  # u changes, s does not
    PQ = extract_PQ(spray, x, y)
    for xx, yy in [(rot(x), rot(y)), (x, y2)]:
        assert scalar_triple(xx, yy).s == pytest.approx(t.s, rel=1e-14)
        assert extract_PQ(spray, xx, yy) == pytest.approx(PQ, rel=1e-12)


def test_override():
    e = parse_override("s^3/r^2, 0")
    base = FamilySpray(UNIT)
    pert = FamilySpray(UNIT, e)
    x, y = (1.0, 0.5), (-0.2, 1.0)
    t = scalar_triple(x, y)
    d = t.u**2 * t.s**3 / t.r**2
    assert pert(x, y)[0] == pytest.approx(base(x, y)[0] + d, rel=1e-14)
    for bad in ("s^3", "s, r, 1", "q, 0"):
        with pytest.raises(ConfigError):
            parse_override(bad)
