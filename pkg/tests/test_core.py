from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from multicurve.core import (
    BundleOnC,
    CurveContext,
    ExactSeqWitness,
    Invariants,
    QlfType,
    RigidSheaf,
    TorsionLengths,
    VectorBundleCn,
    additivity_check,
    alternating_sums,
    checked,
    classify_rigid,
    compare_slopes,
    first_graded,
    qlf_rank,
    rigid_invariants,
    rigid_type,
    rigid_V,
    second_graded,
    slope,
    star_sequence,
    total_invariants,
    vb_invariants,
)
from multicurve.errors import InvalidContext, InvalidInput, Overflow, ZeroRank

contexts = st.builds(
    CurveContext,
    n=st.integers(2, 6),
    g=st.integers(0, 5),
    l=st.integers(-6, -1),
)


@st.composite
def rigid_sheaves(draw, deg=30):
    ctx = draw(contexts)
    a = draw(st.integers(1, 6))
    k = draw(st.integers(1, ctx.n - 1))
    return RigidSheaf.from_degrees(
        ctx, a, k, draw(st.integers(-deg, deg)), draw(st.integers(-deg, deg))
    )


# -- context and value types --------------------------------------------------


@pytest.mark.parametrize("n,g,l", [(1, 0, -1), (0, 0, -1), (2, -1, -1), (2, 0, 0), (3, 1, 2)])
def test_context_rejects_degenerate_curves(n, g, l):
    with pytest.raises(InvalidContext):
        CurveContext(n, g, l)


def test_context_error_is_an_invalid_input():
    with pytest.raises(InvalidInput):
        CurveContext(2, 0, 0)


def test_slope_examples():
    ctx = CurveContext(2, 0, -1)
    assert slope(Invariants(2, ctx.l - 1)) == -1
    assert slope(Invariants(5, 0)) == 0
    with pytest.raises(ZeroRank):
        slope(Invariants(0, 3))


def test_zero_rank_is_a_zero_division():
    with pytest.raises(ZeroDivisionError):
        Invariants(0, 1).slope


def test_negative_rank_rejected():
    with pytest.raises(InvalidInput):
        Invariants(-1, 0)
    with pytest.raises(InvalidInput):
        BundleOnC(-2, 1)


def test_checked_bounds():
    assert checked(2**63 - 1) == 2**63 - 1
    assert checked(-(2**63)) == -(2**63)
    with pytest.raises(Overflow):
        checked(2**63)
    with pytest.raises(Overflow):
        checked(-(2**63) - 1)


def test_overflow_surfaces_from_formulas():
    ctx = CurveContext(2, 0, -1)
    s = RigidSheaf.from_degrees(ctx, 1, 1, 2**62, 2**62)
    with pytest.raises(Overflow):
        rigid_invariants(s)


@given(st.integers(1, 50), st.integers(-200, 200), st.integers(1, 20))
def test_slope_is_scale_covariant(R, D, c):
    assert slope(Invariants(c * R, c * D)) == slope(Invariants(R, D))


@given(st.integers(1, 40), st.integers(-99, 99), st.integers(1, 40), st.integers(-99, 99))
def test_compare_slopes_matches_fraction_order(r1, d1, r2, d2):
    a, b = Invariants(r1, d1), Invariants(r2, d2)
    fa, fb = Fraction(d1, r1), Fraction(d2, r2)
    assert compare_slopes(a, b) == (fa > fb) - (fa < fb)


def test_invariants_arithmetic():
    assert Invariants(1, 2) + Invariants(2, 3) == Invariants(3, 5)
    assert Invariants(3, 5) - Invariants(1, 2) == Invariants(2, 3)


def test_twist_adds_rank_times_degree():
    assert BundleOnC(3, 1).twist(2, -2) == BundleOnC(3, -11)


# -- quasi locally free types --------------------------------------------------


@pytest.mark.parametrize(
    "n,m,rank",
    [(3, (0, 0, 1), 3), (3, (1, 0, 1), 4), (5, (0, 1, 0, 0, 2), 12)],
)
def test_qlf_rank_examples(n, m, rank):
    assert qlf_rank(QlfType(CurveContext(n, 0, -1), m)) == rank


def test_qlf_type_validates_length_and_signs():
    ctx = CurveContext(3, 0, -1)
    with pytest.raises(InvalidInput):
        QlfType(ctx, (1, 1))
    with pytest.raises(InvalidInput):
        QlfType(ctx, (1, -1, 1))


@pytest.mark.parametrize(
    "m,kind,a,k",
    [
        ((0, 0, 0, 2), "locally_free", 2, 0),
        ((0, 1, 0, 3), "rigid", 3, 2),
        ((2, 0, 0, 1), "not_rigid", None, None),
        ((1, 1, 0, 1), "not_rigid", None, None),
        ((1, 0, 0, 0), "not_rigid", None, None),
    ],
)
def test_classify_rigid_examples(m, kind, a, k):
    cls = classify_rigid(QlfType(CurveContext(4, 0, -1), m))
    assert cls.kind == kind
    if a is not None:
        assert (cls.a, cls.k) == (a, k)


@given(st.integers(2, 7), st.integers(1, 6), st.data())
def test_classify_rigid_inverts_rank_division(n, a, data):
    k = data.draw(st.integers(1, n - 1))
    ty = rigid_type(CurveContext(n, 0, -1), a, k)
    R = qlf_rank(ty)
    assert R == a * n + k
    cls = classify_rigid(ty)
    assert cls.kind == "rigid"
    assert (cls.a, cls.k) == divmod(R, n)


# -- rigid sheaves -------------------------------------------------------------


def _rigid(n, l, a, k, eps, delta):
    return RigidSheaf.from_degrees(CurveContext(n, 0, l), a, k, eps, delta)


@pytest.mark.parametrize(
    "n,l,a,k,eps,delta,expected",
    [
        (2, -3, 1, 1, 0, 1, (3, -2)),
        (3, -1, 2, 2, 5, 1, (8, 4)),
    ],
)
def test_rigid_invariants_examples(n, l, a, k, eps, delta, expected):
    inv = rigid_invariants(_rigid(n, l, a, k, eps, delta))
    assert (inv.R, inv.Deg) == expected


@pytest.mark.parametrize("l", [-1, -2, -5])
def test_rigid_degree_free_case(l):
    assert rigid_invariants(_rigid(2, l, 1, 1, 0, 0)).Deg == l


def test_rigid_sheaf_rank_constraints():
    ctx = CurveContext(3, 0, -1)
    with pytest.raises(InvalidInput):
        RigidSheaf(ctx, 1, 1, BundleOnC(1, 0), BundleOnC(1, 0))
    with pytest.raises(InvalidInput):
        RigidSheaf.from_degrees(ctx, 1, 3, 0, 0)
    with pytest.raises(InvalidInput):
        RigidSheaf.from_degrees(ctx, 0, 1, 0, 0)


def test_rigid_V_examples():
    assert rigid_V(_rigid(2, -3, 1, 1, 0, 0)) == BundleOnC(2, 3)
    assert rigid_V(_rigid(4, -1, 1, 1, 2, 0)) == BundleOnC(2, 5)
    assert rigid_V(_rigid(5, -2, 2, 4, 7, 0)) == BundleOnC(3, 9)


def test_graded_examples():
    s = _rigid(2, -3, 1, 1, 0, 1)
    assert first_graded(s) == [BundleOnC(2, 0), BundleOnC(1, -2)]
    assert second_graded(s) == [BundleOnC(1, 1), BundleOnC(2, -3)]
    s = _rigid(3, -1, 1, 2, 4, 0)
    assert first_graded(s) == [BundleOnC(2, 4), BundleOnC(2, 2), BundleOnC(1, -2)]
    s = _rigid(3, -1, 1, 1, 0, 0)
    assert second_graded(s) == [BundleOnC(1, 0), BundleOnC(1, -1), BundleOnC(2, -2)]


def test_last_F_slot_when_k_is_n_minus_one():
    s = _rigid(4, -2, 3, 3, 1, 0)
    assert first_graded(s)[-1] == BundleOnC(3, 3 * 3 * -2)


def test_star_sequence_example():
    w = star_sequence(_rigid(2, -3, 1, 1, 0, 1))
    assert list(w.terms) == [Invariants(1, -2), Invariants(2, -3), Invariants(2, 0), Invariants(1, 1)]
    assert alternating_sums(w) == (0, 0)
    assert additivity_check(star_sequence(_rigid(3, -1, 2, 2, 1, 0)))


def test_additivity_examples():
    assert additivity_check(ExactSeqWitness((Invariants(1, 2), Invariants(3, 5), Invariants(2, 3))))
    assert not additivity_check(ExactSeqWitness((Invariants(1, 2), Invariants(3, 5), Invariants(2, 2))))
    with pytest.raises(InvalidInput):
        ExactSeqWitness((Invariants(1, 2), Invariants(1, 2)))


@given(rigid_sheaves())
def test_graded_lists_sum_to_rigid_invariants(s):
    inv = rigid_invariants(s)
    assert total_invariants(first_graded(s)) == inv
    assert total_invariants(second_graded(s)) == inv
    assert additivity_check(star_sequence(s))
    assert len(first_graded(s)) == s.ctx.n


@given(rigid_sheaves())
def test_rigid_rank_matches_its_type(s):
    ty = rigid_type(s.ctx, s.a, s.k)
    assert qlf_rank(ty) == rigid_invariants(s).R
    assert rigid_V(s).rank == s.a + 1


@given(rigid_sheaves())
def test_rigid_degree_closed_form_with_fractions(s):
    n, k, a, l = s.ctx.n, s.k, s.a, s.ctx.l
    exact = k * s.epsilon + (n - k) * s.delta + Fraction((n * (n - 1) * a + k * (k - 1)) * l, 2)
    assert exact.denominator == 1
    assert rigid_invariants(s).Deg == exact


# -- vector bundles and torsion ------------------------------------------------


@pytest.mark.parametrize(
    "n,l,r,delta,expected",
    [(3, -1, 2, 1, (6, -3)), (2, -2, 1, 0, (2, -2)), (2, -2, 3, 2, (6, -2))],
)
def test_vb_invariants_examples(n, l, r, delta, expected):
    inv = vb_invariants(VectorBundleCn(CurveContext(n, 0, l), BundleOnC(r, delta)))
    assert (inv.R, inv.Deg) == expected


@given(contexts, st.integers(1, 8), st.integers(-30, 30))
def test_vb_invariants_match_graded_sum(ctx, r, delta):
    v = VectorBundleCn(ctx, BundleOnC(r, delta))
    assert vb_invariants(v).Deg == sum(delta + r * i * ctx.l for i in range(ctx.n))
    assert total_invariants(v.graded()) == vb_invariants(v)


def test_torsion_lengths():
    ctx = CurveContext(3, 0, -1)
    assert TorsionLengths(ctx, (2, 1, 0)).total == 3
    with pytest.raises(InvalidInput):
        TorsionLengths(ctx, (1, 0))
    with pytest.raises(InvalidInput):
        TorsionLengths(ctx, (1, -1, 0))
