from math import gcd

import pytest
from hypothesis import assume, given, strategies as st

from strategies import cable_params, knot_exprs, surgery_slopes
from surgcalc.jsj import CableSpace, SeifertData, piece_to_dict
from surgcalc.knots import Cable, HypKnot, Sum, TorusKnot, normalize as normalize_expr, parse
from surgcalc.oracle import CablePattern, ComposingPattern, PatternSpace
from surgcalc.slopes import MERIDIAN, Slope, normalize
from surgcalc.surgery import (
    ClosedSfsFingerprint,
    HypFilled,
    LensLike,
    SfsFilled,
    SurgeryError,
    cable_reduce,
    filled_pattern_homology,
    filled_pattern_longitude,
    shape_equal,
    surger,
)


def test_cable_reduce_examples():
    assert cable_reduce(5, 2, Slope(29, 3)) == Slope(29, 12)
    assert cable_reduce(5, 2, Slope(7, 3)) is None
    assert cable_reduce(1, 2, Slope(3, 1)) == Slope(3, 4)


def test_reduction_to_torus_knot_fingerprint():
    res = surger(parse("C(5,2;T(3,2))"), Slope(29, 3))
    assert [(s.r, s.s, s.slope_before, s.slope_after) for s in res.reduction_trace] == [
        (5, 2, Slope(29, 3), Slope(29, 12))]
    assert res.t == 2
    assert res.surgered == ClosedSfsFingerprint((3, 2, 43), 29)
    assert res.h1_order == 29
    assert len(res.pieces) == 1


def test_filled_composing_space():
    res = surger(parse("Sum(T(3,2), T(5,2))"), Slope(7, 2))
    filled = res.surgered
    assert isinstance(filled, SfsFilled) and filled.base == "planar"
    assert filled.seifert.boundary_count == 2 and filled.seifert.cone_orders == (2,)
    assert [p.kind for p in res.survivors()] == ["torus_knot_exterior"] * 2


def test_filled_cable_space_with_hyperbolic_companion():
    res = surger(parse('C(5,2;Hyp("J"))'), Slope(7, 3))
    assert res.surgered.base == "disc"
    assert res.surgered.seifert.cone_orders == (2, 23)
    assert [piece_to_dict(p)["params"] for p in res.survivors()] == [{"label": "J", "cusp_count": 1}]


def test_lens_like_and_reducible_torus_fillings():
    assert surger(TorusKnot(3, 2), Slope(5, 1)).surgered == LensLike(5, 1)
    assert surger(TorusKnot(3, 2), Slope(6, 1)).surgered == LensLike(6, 0)
    assert surger(TorusKnot(3, 2), Slope(0, 1)).h1_order is None


def test_meridian_and_fibre_slope_rejected():
    with pytest.raises(SurgeryError):
        surger(TorusKnot(3, 2), MERIDIAN)
    with pytest.raises(SurgeryError, match="reducible"):
        surger(parse("C(5,2;Hyp(J))"), Slope(10, 1))


@pytest.mark.parametrize("q,guarantee", [(1, "unknown_submanifold"), (2, "unknown_submanifold"),
                                         (3, "hyperbolic_or_sfs"), (8, "hyperbolic_or_sfs"),
                                         (9, "hyperbolic_certain")])
def test_hyperbolic_guarantees(q, guarantee):
    res = surger(HypKnot("J"), normalize(1, q))
    assert res.surgered == HypFilled("J", normalize(1, q), guarantee, True)


def test_multi_cusp_pattern_is_certain_above_two():
    res = surger(parse("HypPat(L,w=1;T(3,2))"), Slope(1, 3))
    assert res.surgered.guarantee == "hyperbolic_certain" and not res.surgered.closed


def test_guarantee_uses_effective_slope_after_reduction():
    # |1*2*3 - 5| = 1, so the hyperbolic piece is filled along 5/9
    res = surger(Cable(2, 3, HypKnot("J")), Slope(5, 1))
    assert res.t == 3 and res.filling_slope == Slope(5, 9)
    assert res.surgered.guarantee == "hyperbolic_certain"


def test_warnings():
    assert surger(TorusKnot(3, 2), Slope(7, 1)).warnings
    assert surger(TorusKnot(3, 2), Slope(7, 2)).warnings
    assert surger(TorusKnot(3, 2), Slope(7, 3)).warnings == ()


def test_integral_slope_may_reduce_twice():
    # |1*3*2 - 7| = 1, then |4*1*2 - 7| = 1
    res = surger(parse("C(3,2;C(1,2;T(3,2)))"), Slope(7, 1))
    assert [s.slope_after for s in res.reduction_trace] == [Slope(7, 4), Slope(7, 16)]
    assert res.t == 4
    assert res.surgered == ClosedSfsFingerprint((2, 3, 89), 7)


def test_pattern_homology_examples():
    assert filled_pattern_homology(1, Slope(7, 3)) == (1, 1)
    assert filled_pattern_homology(2, Slope(6, 5)) == (1, 2)
    assert filled_pattern_homology(0, Slope(7, 3)) == (1, 7)
    assert filled_pattern_longitude(1, Slope(7, 3)) == Slope(7, 3)
    assert filled_pattern_longitude(2, Slope(6, 5)) == Slope(3, 10)
    assert filled_pattern_longitude(0, Slope(7, 3)) == MERIDIAN


def test_shape_equal_examples():
    filled = surger(Sum((TorusKnot(3, 2), TorusKnot(5, 2))), Slope(1, 3)).surgered.seifert
    assert shape_equal(filled, CableSpace(7, 3).seifert)
    assert shape_equal(SeifertData(1, (23, 2)), SeifertData(1, (2, 23)))
    assert not shape_equal(SeifertData(1, (23, 2)), SeifertData(1, (23, 3)))


# -- properties -----------------------------------------------------------------

@given(cable_params(), knot_exprs(), st.integers(-40, 40).filter(bool), st.sampled_from([1, -1]))
def test_cable_reduction_coherence(rs, j, q, sign):
    r, s = rs
    p = q * r * s + sign
    slope = normalize(p, q)
    direct = surger(Cable(r, s, j), slope)
    via = surger(j, normalize(p, q * s * s))
    assert direct.pieces == via.pieces
    assert direct.reduction_trace[0].slope_after.p == slope.p


@given(knot_exprs(), surgery_slopes())
def test_h1_order_and_trace_shape(e, slope):
    try:
        res = surger(e, slope)
    except SurgeryError:
        assume(False)
    assert res.h1_order == (abs(slope.p) or None)
    for step in res.reduction_trace:
        assert step.slope_after.p == step.slope_before.p
    if slope.q > 1:
        assert len(res.reduction_trace) <= 1


@given(knot_exprs(), surgery_slopes(min_q=3))
def test_filled_piece_cone_orders(e, slope):
    try:
        res = surger(e, slope)
    except SurgeryError:
        assume(False)
    node = normalize_expr(e)
    for _ in res.reduction_trace:
        node = node.companion
    eff_q = slope.q * res.t ** 2
    filled = res.surgered
    if isinstance(node, Sum):
        assert filled.seifert.cone_orders == (eff_q,)
    elif isinstance(node, Cable):
        assert sorted(filled.seifert.cone_orders) == sorted((abs(eff_q * node.r * node.s - slope.p), node.s))
        if not res.reduction_trace:
            assert abs(eff_q * node.r * node.s - slope.p) > 1


@given(st.integers(-50, 50), st.integers(1, 9), st.integers(2, 6), st.data())
def test_pattern_homology_matches_presentation(p, q, s, data):
    assume(gcd(p, q) == 1)
    r = data.draw(st.integers(-9, 9).filter(lambda r: gcd(r, s) == 1))
    slope = normalize(p, q)
    group = PatternSpace(CablePattern(r, s)).filled_h1(slope)
    rank, torsion = filled_pattern_homology(s, slope)
    assert group.free_rank == rank
    assert group.torsion_order == torsion


@given(surgery_slopes(max_q=9, max_p=60), st.integers(2, 5))
def test_composing_pattern_torsion_free(slope, n):
    group = PatternSpace(ComposingPattern(n)).filled_h1(slope)
    assert (group.free_rank, group.torsion_invariants) == (1, ())
