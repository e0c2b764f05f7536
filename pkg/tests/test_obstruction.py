from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from duncehat import obstruction as ob
from duncehat.obstruction import ModuliPoint, QuadricZ, ZOrderArc

Z = ob.z_quadric()


def test_projective_equality():
    assert ModuliPoint(1, 2, 3) == ModuliPoint(-2, -4, -6)
    assert ModuliPoint(1, 2, 3) != ModuliPoint(1, 2, 4)
    with pytest.raises(ValueError):
        ModuliPoint(0, 0, 0)


def test_oracle_sample():
    assert ob.tautological_image(2) == ModuliPoint(F(-1, 2), -1, 1)
    assert ob.z_contains(Z, ob.tautological_image(2))


def test_fitted_coefficients():
    assert Z.normalized() == (1, 1, -1)
    # Fitting on other samples gives the same conic.
    assert ob.z_quadric((F(1, 3), -7, 100)).normalized() == (1, 1, -1)


def test_coordinate_points_on_z():
    for p in ((1, 0, 0), (0, 1, 0), (0, 0, 1)):
        assert ob.z_contains(Z, ModuliPoint(*p))


def test_off_z():
    assert not ob.z_contains(QuadricZ(1, 1, -1), ModuliPoint(1, 1, 1))
    assert ob.trivializing_point(Z, ModuliPoint(1, 1, 1)) is None


def test_trivializing_point():
    assert ob.trivializing_point(Z, ob.tautological_image(5)) == 5
    with pytest.raises(ob.BoundaryPointError, match="boundary"):
        ob.trivializing_point(Z, ModuliPoint(0, 0, 1))


@settings(max_examples=100, deadline=None)
@given(st.fractions(max_denominator=50).filter(lambda x: x not in (0, 1)))
def test_round_trip(x):
    p = ob.tautological_image(x)
    assert ob.z_contains(Z, p)
    assert ob.trivializing_point(Z, p) == x


def test_bubble_order():
    assert [ob.bubble_order(q) for q in (-2, -1, 0)] == [-1, 0, 1]


@pytest.mark.parametrize("cid", ["1.1", "1.2", "2", "3.0", "3.1", "3.2"])
def test_tables_reproduce_arcs(cid):
    case = ob.CASES[cid]
    assert ob.compose_valuation(case).orders == case.arc == ob.case_valuations(cid).orders


def test_case_arcs():
    assert ob.case_valuations("2").orders == (3, 2, -2)
    for cid in ("1.1", "1.2", "3.0", "3.1", "3.2", "1.1L", "1.2Q"):
        assert ob.case_valuations(cid).orders == (-1, -1, 0)
    with pytest.raises(ob.NoDegenerationError):
        ob.case_valuations("0")
    with pytest.raises(ob.NoDegenerationError):
        ob.compose_valuation(ob.CASES["0"])


def test_case_one_gamma_is_bubble_order():
    assert ob.CASES["1.1"].gamma["p1"] == ob.bubble_order(-2)
    assert ob.CASES["1.2"].gamma["p2"] == ob.bubble_order(-2)


def test_incomplete_table():
    broken = ob.DegenerationCase("x", {"p1": 0}, {}, (0, 0, 0))
    with pytest.raises(ValueError, match="incomplete"):
        ob.compose_valuation(broken)


def test_limit_strata():
    s = ob.limit_stratum(ZOrderArc((-1, -1, 0)))
    assert s.point == ModuliPoint(1, 1, 0) and s.kind == "coordinate line" and s.lines == ("c=0",)
    s = ob.limit_stratum(ZOrderArc((3, 2, -2)))
    assert s.point == ModuliPoint(0, 0, 1) and s.kind == "coordinate point"
    assert ob.limit_stratum(ZOrderArc((0, 0, 0))).kind == "interior"


def test_orders():
    assert ob.t_order(ZOrderArc((3, 2, -2))) == 9
    assert ob.t_order(ZOrderArc((-1, -1, 0))) == 1
    assert ob.t_order(ZOrderArc((0, 0, 0))) == 0
    assert ob.z_order(ZOrderArc((3, 2, -2)), Z) == 4
    assert ob.z_order(ZOrderArc((-1, -1, 0)), Z) == 0
    assert ob.z_order(ZOrderArc((0, 0, 0)), Z) == 0


def test_z_order_with_coefficients():
    # Leading terms chosen on Z: a = -1/2, b = -1, c = 1 cancel at order 0.
    arc = ZOrderArc((0, 0, 0), ((F(-1, 2), 1), (-1,), (1,)))
    assert ob.z_order(arc, Z) == 1
    exact = ob.tautological_image(2).coords
    with pytest.raises(ob.ContainedInZError):
        ob.z_order(ZOrderArc((0, 0, 0), tuple((c,) for c in exact)), Z)


@settings(max_examples=100, deadline=None)
@given(st.tuples(*[st.integers(-6, 6)] * 3), st.integers(-5, 5))
def test_shift_invariance(v, k):
    arc = ZOrderArc(v)
    assert ob.t_order(arc) == ob.t_order(arc.shifted(k))
    assert ob.z_order(arc, Z) == ob.z_order(arc.shifted(k), Z)
    if ob.t_order(arc) >= 1 and ob.limit_stratum(arc).kind == "coordinate point":
        assert ob.z_order(arc, Z) <= ob.t_order(arc)


def test_bezout():
    v = ob.bezout_argument(4, 9, 2, 3)
    assert v.contradiction and v.forced == F(9, 2)
    assert v.trace[0] == "9/4·2 = 9/2 > 3"
    assert v.trace[-1] == "9/2·deg(C) > 3·deg(C): contradiction"
    assert not ob.bezout_argument(4, 9, 2, 5).contradiction
    assert not ob.bezout_argument(1, 1, 2, 3).contradiction
    assert all(not ob.bezout_argument(4, t, 2, 3).contradiction for t in range(1, 7))
    with pytest.raises(ValueError):
        ob.bezout_argument(0, 9, 2, 3)
