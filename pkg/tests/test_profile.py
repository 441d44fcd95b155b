import math
import random
from fractions import Fraction

import pytest

from flagke import bundle as bd, diagram, profile as pf, rootspace as rs
from flagke.errors import DomainError, UsageError


def point_orbit(m):
    return bd.admissible_data(diagram("A", m - 1, set()), 1, "left", ())


def a11_data(chi):
    return bd.admissible_data(diagram("A", 11, {3, 6}), 1, "left", chi)


def sample_profiles():
    return [
        (pf.metric_profile(a11_data((1, 1)), Fraction(1)), "a11 lam+"),
        (pf.metric_profile(a11_data((3, 4)), Fraction(-1)), "a11 lam-"),
        (pf.metric_profile(a11_data((2, 3)), Fraction(0)), "a11 lam0"),
        (pf.metric_profile(bd.admissible_data(diagram("B", 3, {1}), None, None, (2,)), Fraction(1)), "b3 m1"),
        (pf.metric_profile(bd.admissible_data(diagram("D", 4, {3}), 1, "left", (1,)), Fraction(2)), "d4 fork"),
    ]


def test_point_orbit_flat_profile():
    data = point_orbit(2)
    prof = pf.metric_profile(data, 0)
    kap = prof.kappa
    T = pf.t_of_f(prof, 4 * kap)
    for i in range(33):
        t = T * i / 32
        assert abs(pf.f_of_t(prof, t) - kap * t * t / 2) < 1e-9
    assert math.isinf(prof.f_sup)


def test_point_orbit_positive_profile():
    m = 2
    prof = pf.metric_profile(point_orbit(m), 1)
    kap = prof.kappa
    a, b = 2 * kap, -2.0 / (m + 1)
    t_max = math.pi / math.sqrt(-b)
    assert abs(pf.parameter_end(prof) - t_max) < 1e-6
    assert abs(prof.f_sup - kap * (m + 1)) < 1e-12
    for i in range(33):
        t = 0.97 * t_max * i / 32
        expected = -(a / b) * math.sin(math.sqrt(-b) * t / 2) ** 2
        assert abs(pf.f_of_t(prof, t) - expected) < 1e-9


def test_point_orbit_negative_profile():
    m = 3
    prof = pf.metric_profile(point_orbit(m), -1)
    kap = prof.kappa
    a, b = 2 * kap, 2.0 / (m + 1)
    T = pf.t_of_f(prof, 5 * kap)
    for i in range(33):
        t = T * i / 32
        expected = (a / b) * math.sinh(math.sqrt(b) * t / 2) ** 2
        assert abs(pf.f_of_t(prof, t) - expected) < 1e-9
    assert math.isinf(prof.f_sup)


def test_polynomial_p_point_orbit_is_monomial():
    for m in (2, 4):
        prof = pf.metric_profile(point_orbit(m), 1)
        q = pf.polynomial_p(prof)
        assert len(q) == m  # degree m-1
        assert all(c == 0 for c in q[:-1]) and q[-1] > 0
        assert prof.d == m - 1


def test_polynomial_p_structure():
    prof = pf.metric_profile(a11_data((1, 1)), Fraction(1))
    q = pf.polynomial_p(prof)
    n_roots = len(prof.pairs)
    import flagke.painted as pdm
    assert n_roots == len(pdm.r_m_plus(bd.flag_f(a11_data((1, 1)))))
    assert len(q) - 1 == n_roots
    d = prof.d
    assert all(c == 0 for c in q[:d]) and q[d] != 0
    assert d == 3 - 1


def test_polynomial_p_matches_pair_product():
    prof = pf.metric_profile(a11_data((1, 1)), Fraction(1))
    q_float = [float(c) for c in pf.polynomial_p(prof)]
    from flagke.poly import eval_float
    for f in (0.1, 0.4, 0.9):
        direct = 1.0
        for a, b in prof.pair_floats:
            direct *= a + f * b
        via_q = eval_float(q_float, f / prof.kappa)
        assert math.isclose(direct, via_q, rel_tol=1e-9)


def test_t_of_f_basics():
    prof = pf.metric_profile(a11_data((1, 1)), Fraction(1))
    assert pf.t_of_f(prof, 0.0) == 0.0
    grid = [prof.f_sup * s for s in (0.1, 0.25, 0.5, 0.75, 0.9)]
    ts = [pf.t_of_f(prof, f) for f in grid]
    assert all(t2 > t1 for t1, t2 in zip(ts, ts[1:]))
    with pytest.raises(DomainError):
        pf.t_of_f(prof, -0.1)
    with pytest.raises(DomainError):
        pf.t_of_f(prof, prof.f_sup * 1.01)


def test_inverse_round_trip():
    rng = random.Random(5)
    for prof, label in sample_profiles():
        hi = prof.f_sup * 0.95 if math.isfinite(prof.f_sup) else 5 * prof.kappa
        for _ in range(25):
            x = rng.uniform(1e-6, hi)
            t = pf.t_of_f(prof, x)
            assert abs(pf.f_of_t(prof, t) - x) < 1e-8 * max(1.0, x), label
        for s in (0.05, 0.3, 0.6, 0.9):
            t = s * pf.t_of_f(prof, hi)
            assert abs(pf.t_of_f(prof, pf.f_of_t(prof, t)) - t) < 1e-8, label


def test_f_of_t_domain_errors():
    prof = pf.metric_profile(point_orbit(2), 1)
    with pytest.raises(DomainError):
        pf.f_of_t(prof, -1.0)
    with pytest.raises(DomainError):
        pf.f_of_t(prof, pf.parameter_end(prof) * 1.01)


def test_ode_residual_small_everywhere():
    for prof, label in sample_profiles():
        hi = prof.f_sup * 0.9 if math.isfinite(prof.f_sup) else 4 * prof.kappa
        T = pf.t_of_f(prof, hi)
        for i in range(1, 10):
            assert abs(pf.ode_residual(prof, T * i / 10)) < 1e-8, label


def test_ode_constant_solution_identity():
    # f == kappa m / lambda solves the equation with zero derivatives
    for prof, _ in sample_profiles():
        lam = float(prof.lam)
        if lam == 0:
            continue
        f_const = prof.kappa * prof.m / lam
        assert 0.0 + 0.0 + lam * f_const - prof.kappa * prof.m == pytest.approx(0.0, abs=1e-15)


def test_f_dot_matches_finite_differences():
    for prof, label in sample_profiles():
        hi = prof.f_sup * 0.8 if math.isfinite(prof.f_sup) else 3 * prof.kappa
        T = pf.t_of_f(prof, hi)
        for s in (0.3, 0.7):
            t = s * T
            h = 1e-5 * T
            fd = (pf.f_of_t(prof, t + h) - pf.f_of_t(prof, t - h)) / (2 * h)
            an = pf.f_dot(prof, pf.f_of_t(prof, t))
            assert abs(fd - an) < 1e-5 * max(1.0, abs(an)), label


def test_f_ddot_matches_finite_differences_of_f_dot():
    for prof, label in sample_profiles():
        hi = prof.f_sup * 0.8 if math.isfinite(prof.f_sup) else 3 * prof.kappa
        T = pf.t_of_f(prof, hi)
        t = 0.5 * T
        h = 1e-5 * T
        fdot = lambda tt: pf.f_dot(prof, pf.f_of_t(prof, tt))  # noqa: E731
        fd = (fdot(t + h) - fdot(t - h)) / (2 * h)
        an = pf.f_ddot(prof, pf.f_of_t(prof, t))
        assert abs(fd - an) < 1e-4 * max(1.0, abs(an)), label


def test_verdiani_passes_on_admitted_data():
    for prof, label in sample_profiles():
        report = pf.verdiani_check(prof)
        assert report.passed, (label, report)
        assert report.d == prof.m - 1
        assert report.f_at_zero == 0.0
        assert report.relative_error < 1e-4
        assert abs(report.fdot_small) < 0.05 * prof.kappa


def test_verdiani_fails_on_perturbed_vanishing_order():
    base = pf.metric_profile(a11_data((1, 1)), Fraction(1))
    pairs = list(base.pairs)
    idx = next(i for i, (a, _) in enumerate(pairs) if a == 0)
    pairs[idx] = (Fraction(1), pairs[idx][1])
    perturbed = pf.MetricProfile(tuple(pairs), base.kappa_sq, base.m, base.lam)
    assert perturbed.d != perturbed.m - 1
    report = pf.verdiani_check(perturbed)
    assert not report.passed


def test_profile_rejects_chamber_violation():
    base = pf.metric_profile(a11_data((1, 1)), Fraction(1))
    pairs = list(base.pairs)
    pairs[0] = (Fraction(-1), pairs[0][1])
    with pytest.raises(DomainError):
        pf.MetricProfile(tuple(pairs), base.kappa_sq, base.m, base.lam)
    idx = next(i for i, (a, _) in enumerate(pairs) if a == 0)
    pairs[0] = base.pairs[0]
    pairs[idx] = (Fraction(0), Fraction(-1))
    with pytest.raises(DomainError):
        pf.MetricProfile(tuple(pairs), base.kappa_sq, base.m, base.lam)


def test_domain_end_cases():
    # turning point of the inner integral for positive lambda
    for m, lam in ((2, Fraction(1)), (3, Fraction(2))):
        prof = pf.metric_profile(point_orbit(m), lam)
        assert abs(pf.domain_end(prof) - prof.kappa * (m + 1) / float(lam)) < 1e-10
    # negative and zero lambda on ray-extending data: unbounded
    assert math.isinf(pf.domain_end(pf.metric_profile(a11_data((3, 4)), Fraction(-1))))
    assert math.isinf(pf.domain_end(pf.metric_profile(a11_data((2, 3)), Fraction(0))))
    # chamber exit: rank-one with a negative character coefficient
    data = bd.admissible_data(diagram("B", 3, {1}), None, None, (-1,))
    prof = pf.metric_profile(data, 1)
    assert prof.u_exit == 6
    assert pf.domain_end(prof) <= prof.kappa * 6 + 1e-12


def test_lambda_zero_custom_face_point():
    data = a11_data((2, 3))
    alg = data.s0.algebra
    z0 = 2 * rs.fundamental_weight(alg, 3) + 5 * rs.fundamental_weight(alg, 6)
    prof = pf.metric_profile(data, 0, z0=z0)
    assert prof.d == data.m - 1
    assert pf.verdiani_check(prof).passed
    with pytest.raises(DomainError):
        pf.metric_profile(data, 0, z0=-z0)
    with pytest.raises(UsageError):
        pf.metric_profile(data, 1, z0=z0)


def test_unadmitted_sign_rejected():
    with pytest.raises(DomainError):
        pf.metric_profile(a11_data((1, 1)), Fraction(-1))
    with pytest.raises(DomainError):
        pf.metric_profile(a11_data((1, 1)), Fraction(0))


def test_rank_one_profile_has_order_zero():
    data = bd.admissible_data(diagram("B", 3, {1}), None, None, (2,))
    prof = pf.metric_profile(data, 1)
    assert prof.d == 0 and prof.m == 1
    assert pf.verdiani_check(prof).passed
