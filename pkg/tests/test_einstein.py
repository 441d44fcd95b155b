import itertools
from fractions import Fraction

import pytest

from flagke import bundle as bd, diagram, einstein as es, painted as pd, rootspace as rs
from flagke.errors import DomainError, UsageError

from conftest import FAMILY_MIN_RANK, all_diagrams


def test_published_verdicts():
    dg = diagram("A", 11, {3, 6})
    v = es.classify(bd.admissible_data(dg, 1, "left", (2, 3)))
    assert v.lambda_zero.exists and v.lambda_zero.required_chi == (2, 3)
    # m = 6 string: 6 does not divide 9
    v6 = es.classify(bd.admissible_data(dg, 7, "left", (1, 1)))
    assert not v6.lambda_zero.exists and v6.lambda_zero.required_chi is None
    # central m = 4 string of A5 with n = (5, 5)
    v4 = es.classify(bd.admissible_data(diagram("A", 5, {1, 5}), 2, "left", (1, 1)))
    assert not v4.lambda_zero.exists
    # point singular orbit: every Einstein constant occurs
    vp = es.classify(bd.admissible_data(diagram("A", 3, set()), 1, "left", ()))
    assert vp.lambda_zero.exists and vp.lambda_pos.exists and vp.lambda_neg.exists
    assert vp.ray_extends


def test_strict_inequalities_m3():
    dg = diagram("A", 11, {3, 6})
    v = es.classify(bd.admissible_data(dg, 1, "left", (1, 1)))  # n/m = (2, 3)
    assert v.lambda_pos.exists and not v.lambda_neg.exists and not v.lambda_zero.exists
    v2 = es.classify(bd.admissible_data(dg, 1, "left", (3, 4)))
    assert v2.lambda_neg.exists and not v2.lambda_pos.exists
    assert v2.lambda_neg.complete
    # boundary value k_s+1 = n/m is in neither region
    v3 = es.classify(bd.admissible_data(dg, 1, "left", (2, 1)))
    assert not v3.lambda_pos.exists and not v3.lambda_neg.exists


def test_right_end_mirrors_left_with_negated_chi():
    for fam, minr in FAMILY_MIN_RANK.items():
        for rank in range(minr, 7):
            for dg in all_diagrams(fam, rank):
                p = len(dg.black)
                for info in bd.eligible_strings(dg):
                    for chi in itertools.product((-2, 0, 1), repeat=p):
                        right = es.classify(bd.AdmissibleData(dg, info, "right", chi))
                        left = es.classify(bd.AdmissibleData(dg, info, "left", tuple(-k for k in chi)))
                        assert right.lambda_zero.exists == left.lambda_zero.exists
                        assert right.lambda_pos.exists == left.lambda_pos.exists
                        assert right.lambda_neg.exists == left.lambda_neg.exists


def test_rank_one_verdicts():
    dg = diagram("B", 3, {1})  # n_1 = 5
    mk = lambda k: bd.admissible_data(dg, None, None, (k,))  # noqa: E731
    v5 = es.classify(mk(5))
    assert v5.lambda_zero.exists and not v5.lambda_pos.exists and not v5.lambda_neg.exists
    v2 = es.classify(mk(2))
    assert v2.lambda_pos.exists and not v2.lambda_neg.exists and not v2.lambda_zero.exists
    v8 = es.classify(mk(8))
    assert v8.lambda_neg.exists and v8.lambda_neg.complete and not v8.lambda_pos.exists


def test_rank_one_direction_forced_by_z0_positivity():
    # the side of n_j that admits each sign is pinned by beta_j(Z_0) > 0
    dg = diagram("B", 3, {1})
    beta1 = rs.simple_roots(dg.algebra)[0]
    z_pos = es.z0_form(bd.admissible_data(dg, None, None, (2,)), Fraction(1))
    assert rs.inner(beta1, z_pos) > 0
    z_neg = es.z0_form(bd.admissible_data(dg, None, None, (8,)), Fraction(-1))
    assert rs.inner(beta1, z_neg) > 0
    with pytest.raises(DomainError):
        es.z0_form(bd.admissible_data(dg, None, None, (8,)), Fraction(1))


def test_z0_form_published_example():
    dg = diagram("A", 11, {3, 6})
    data = bd.admissible_data(dg, 1, "left", (1, 1))
    z0 = es.z0_form(data, Fraction(1))
    alg = dg.algebra
    assert z0 == 3 * rs.fundamental_weight(alg, 3) + 6 * rs.fundamental_weight(alg, 6)


def test_z0_form_scaling_and_face_conditions():
    dg = diagram("A", 11, {3, 6})
    data = bd.admissible_data(dg, 1, "left", (1, 1))
    assert es.z0_form(data, Fraction(2)) == Fraction(1, 2) * es.z0_form(data, Fraction(1))
    z0 = es.z0_form(data, Fraction(1))
    simples = rs.simple_roots(dg.algebra)
    assert rs.inner(z0, simples[data.beta_node - 1]) == 0
    assert all(rs.inner(z0, simples[j - 1]) > 0 for j in data.black_nodes)
    with pytest.raises(UsageError):
        es.z0_form(data, Fraction(0))


def test_z0_face_point_default_witness():
    dg = diagram("A", 11, {3, 6})
    data = bd.admissible_data(dg, 1, "left", (2, 3))
    xi = es.z0_face_point(data)
    assert es.z0_is_face_point(data, xi)
    # any interior face point is accepted, e.g. an asymmetric one
    other = 2 * rs.fundamental_weight(dg.algebra, 3) + 5 * rs.fundamental_weight(dg.algebra, 6)
    assert es.z0_is_face_point(data, other)
    assert not es.z0_is_face_point(data, -xi)
    assert not es.z0_is_face_point(data, rs.fundamental_weight(dg.algebra, 1))


def test_point_orbit_z0_is_origin():
    data = bd.admissible_data(diagram("A", 2, set()), 1, "left", ())
    assert es.z0_form(data, Fraction(1)).is_zero()
    assert es.z0_face_point(data).is_zero()


def test_ray_extension():
    dg = diagram("A", 11, {3, 6})
    # lambda = 0: always a ray
    assert es.ray_extends(bd.admissible_data(dg, 1, "left", (2, 3)), 0)
    # admitted negative constants always extend
    assert es.ray_extends(bd.admissible_data(dg, 1, "left", (3, 4)), -1)
    # a vanishing coefficient next to the string blocks the ray
    data0 = bd.admissible_data(dg, 1, "left", (0, 1))
    assert es.classify(data0).lambda_pos.exists
    assert not es.ray_extends(data0, 1)


def test_neg_admitted_implies_ray_sweep():
    for fam, minr in FAMILY_MIN_RANK.items():
        for rank in range(minr, 6):
            for dg in all_diagrams(fam, rank):
                for info in bd.eligible_strings(dg):
                    numbers = pd.koszul(dg).numbers if dg.black else {}
                    for end in ("left", "right"):
                        sign = 1 if end == "left" else -1
                        chi = tuple(sign * (numbers[j] // info.m + 1) for j in sorted(dg.black))
                        data = bd.AdmissibleData(dg, info, end, chi)
                        v = es.classify(data)
                        assert v.lambda_neg.exists
                        assert v.ray_extends, (dg.key(), info.nodes, end)


def test_alg_cond_identity_small_sweep():
    # Koszul form of the flag = lambda Z_0 + kappa m Z^0 in dual coordinates
    lams = [Fraction(1), Fraction(-1), Fraction(2), Fraction(-2)]
    for fam, minr in FAMILY_MIN_RANK.items():
        for rank in range(minr, 5):
            for dg in all_diagrams(fam, rank):
                numbers = pd.koszul(dg).numbers if dg.black else {}
                for info in bd.eligible_strings(dg):
                    for end in ("left", "right"):
                        sign = 1 if end == "left" else -1
                        for lam in lams:
                            if lam > 0:
                                chi = tuple(-sign for _ in sorted(dg.black))
                            else:
                                chi = tuple(sign * (numbers[j] // info.m + 1) for j in sorted(dg.black))
                            data = bd.AdmissibleData(dg, info, end, chi)
                            xi_z0 = es.z0_form(data, lam)
                            xi0 = bd.kappa_z0_form(data)
                            sigma_f = pd.koszul(bd.flag_f(data)).sigma
                            assert sigma_f == lam * xi_z0 + data.m * xi0, (dg.key(), info.nodes, end, lam)


def test_alg_cond_identity_rank_one():
    dg = diagram("C", 3, {1, 3})
    data = bd.admissible_data(dg, None, None, (1, 2))
    for lam in (Fraction(1), Fraction(-3, 2)):
        if lam > 0 and not es.classify(data).lambda_pos.exists:
            continue
        xi_z0 = es.z0_form(data, lam) if (lam > 0) == es.classify(data).lambda_pos.exists else None
    v = es.classify(data)
    numbers = pd.koszul(dg).numbers
    # chi = (1, 2) with n = (n_1, n_3): lambda > 0 iff k_j < n_j
    assert v.lambda_pos.exists == all(k < numbers[j] for k, j in zip((1, 2), (1, 3)))
    lam = Fraction(1)
    xi_z0 = es.z0_form(data, lam)
    sigma = pd.koszul(dg).sigma
    assert sigma == lam * xi_z0 + bd.kappa_z0_form(data)


def test_z0_vanishing_set_is_exactly_the_string_block():
    # the initial vertex annihilates precisely m-1 complementary roots of the
    # flag: those supported on the string through beta
    for fam, minr in FAMILY_MIN_RANK.items():
        for rank in range(minr, 8):
            for dg in all_diagrams(fam, rank):
                numbers = pd.koszul(dg).numbers if dg.black else {}
                for info in bd.eligible_strings(dg):
                    for end in ("left", "right"):
                        sign = 1 if end == "left" else -1
                        chi = tuple(-sign for _ in sorted(dg.black))  # admits lambda > 0
                        data = bd.AdmissibleData(dg, info, end, chi)
                        z0 = es.z0_form(data, Fraction(1))
                        flag = bd.flag_f(data)
                        zeros = sum(1 for a in pd.r_m_plus(flag) if rs.inner(a, z0) == 0)
                        assert zeros == data.m - 1, (dg.key(), info.nodes, end)


def test_verdict_carries_scaled_z0():
    dg = diagram("A", 11, {3, 6})
    data = bd.admissible_data(dg, 1, "left", (1, 1))
    v = es.classify(data)
    assert v.xi_z0_times_lambda == es.z0_form(data, Fraction(1))
    assert str(v.lambda_pos.constraint[0]) == "k_3 < 2"
    assert str(v.lambda_neg.constraint[1]) == "k_6 > 3"
