import math

import pytest

import banachlab as bl


def test_norm_eval():
    l1 = bl.build_lp(2, 1.0)
    assert l1.norm([3.0, -4.0]) == pytest.approx(7.0, abs=1e-14)
    e = bl.build_euclid(3)
    assert e([1.0, 2.0, 2.0]) == pytest.approx(3.0, abs=1e-14)


def test_parse_and_catalog():
    x = bl.parse_space("catalog:arc2d(fig5)")
    assert x.dim == 2
    assert x.norm([2.0, 0.0]) == pytest.approx(1.0, abs=1e-12)
    assert len(bl.catalog_listing()) >= 8


def test_delta_uacs_euclid():
    e = bl.build_euclid(2)
    res = bl.Resolution(angles=1024, tuple_angles=128)
    est = bl.modulus(e, "delta_uacs", 1.0, res)
    target = 1.0 - math.sqrt(0.5)
    assert est["lo"] - 1e-9 <= target <= est["hi"] + 1e-9
    assert est["certified"]


def test_classify_square_fails_acs():
    sq = bl.build_lp(2, float("inf"))
    rep = bl.classify(sq, 1e-4, bl.Resolution(angles=1024, tuple_angles=128))
    assert rep["verdicts"]["rotund"] == "fails"
    assert rep["verdicts"]["smooth"] == "fails"
    assert rep["verdicts"]["acs"] == "fails"
    assert len(rep["flat_segments"]) == 4


def test_replay_62_exact():
    rep = bl.replay_example(62, 8)
    by_name = {c["name"]: c for c in rep["claims"]}
    assert by_name["norm(x_n + y_n) == 2"]["pass"]
    assert by_name["f(y_n) == 0"]["pass"]


def test_sum_and_uplus():
    comps = [bl.build_euclid(2), bl.build_euclid(2)]
    E = bl.build_absolute_lp(2, 2.0)
    s = bl.build_sum(comps, E)
    assert s.total_dim == 4
    # nested euclidean: the sum is the euclidean norm on R^4
    assert s.space.norm([3.0, 4.0, 0.0, 0.0]) == pytest.approx(5.0, abs=1e-12)
    value, feasible = bl.u_plus_violation(E, 0.01, 0.5, bl.Resolution(angles=512))
    assert feasible
    assert value < 0.5


def test_dual_space_involution():
    l1 = bl.build_lp(2, 1.0)
    res = bl.Resolution(angles=512, dual_points=4096)
    d = bl.dual_space(l1, res)
    # dual of l1 is linf (up to the tabulation defect)
    assert d.norm([1.0, 1.0]) == pytest.approx(1.0, abs=5e-3)
    assert d.norm([1.0, -0.3]) == pytest.approx(1.0, abs=5e-3)
