from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from basesize import bounds
from basesize.bounds import (
    BoundInputError,
    BoundResult,
    Inconclusive,
    fixed_space_dim,
    lower_bound_b0,
    q_value,
    upper_bound_b0,
    upper_bound_b1,
)
from basesize.classdata import ClassFusionRecord, load_shipped


def rec(g, h, kind="unipotent", order=0, long=False, excl=False, label=None):
    return ClassFusionRecord(
        group="G2",
        subgroup_label="test",
        class_label=label or f"({g},{h})",
        element_kind=kind,
        element_order=order,
        dim_class_in_G=g,
        dim_intersection_with_H=h,
        is_long_root=long,
        excludable_sembd=excl,
    )


# -- lower bound -------------------------------------------------------------

@pytest.mark.parametrize(
    "dim_g,dim_o,want", [(78, 40, 2), (52, 16, 4), (133, 27, 5), (14, 5, 3)]
)
def test_lower_bound_values(dim_g, dim_o, want):
    assert lower_bound_b0(dim_g, dim_o) == want


def test_lower_bound_rejects_nonpositive_quotient():
    with pytest.raises(BoundInputError):
        lower_bound_b0(10, 0)


@given(st.integers(1, 10**6), st.integers(1, 10**6))
def test_lower_bound_is_ceiling(dim_g, dim_o):
    c = lower_bound_b0(dim_g, dim_o)
    assert (c - 1) * dim_o < dim_g <= c * dim_o


# -- fixed point space dimension ---------------------------------------------

def test_fixed_space_dim_formula():
    assert fixed_space_dim(16, 6, 4) == 14


def test_fixed_space_dim_class_inside_H():
    assert fixed_space_dim(9, 7, 7) == 9


def test_fixed_space_dim_inconsistent_inputs():
    with pytest.raises(BoundInputError):
        fixed_space_dim(10, 12, 1)
    with pytest.raises(BoundInputError):
        fixed_space_dim(5, 3, 4)


# -- the criterion quantity --------------------------------------------------

def test_q_value_exact_rational():
    recs = [rec(6, 4, long=True), rec(10, 6)]
    assert q_value(recs, 3) == Fraction(1)
    assert q_value(recs, 4) == Fraction(8, 9)


def test_q_value_large_c_approaches_sup():
    recs = [rec(9, 5)]
    c = 10**6
    assert q_value(recs, c) == Fraction(c, c - 1) * Fraction(5, 9)
    assert q_value(recs, c) * Fraction(c - 1, c) == Fraction(5, 9)


def test_q_value_empty_is_an_error():
    with pytest.raises(BoundInputError):
        q_value([], 3)


@given(
    st.lists(
        st.tuples(st.integers(1, 200), st.integers(0, 200)).filter(lambda t: t[1] <= t[0]),
        min_size=1,
        max_size=8,
    ),
    st.integers(2, 40),
)
def test_q_value_cross_multiplication(pairs, c):
    recs = [rec(g, h) for g, h in pairs]
    q = q_value(recs, c)
    # the comparison against 1 is decided exactly by integer products
    assert (q < 1) == all(c * h < (c - 1) * g for g, h in pairs)


# -- generic upper bound -----------------------------------------------------

def g2_records():
    return list(load_shipped("g2_na2").records)


def test_b1_without_refinement():
    out = upper_bound_b1(g2_records(), long_root_refinement=False)
    assert isinstance(out, BoundResult)
    assert out.value == 4
    assert out.q_at_value < 1


def test_b1_with_long_root_refinement():
    out = upper_bound_b1(g2_records(), long_root_refinement=True)
    assert out.value == 3


def test_b1_f4_dataset():
    recs = list(load_shipped("f4_b4").records)
    assert upper_bound_b1(recs, True).value == 4
    assert upper_bound_b1(recs, False).value == 5


def test_refinement_never_hurts():
    for name in ("g2_na2", "f4_b4", "e6_f4", "e8_a1e7", "e7_a7_p2"):
        recs = list(load_shipped(name).records)
        off = upper_bound_b1(recs, False)
        on = upper_bound_b1(recs, True)
        assert isinstance(off, BoundResult) and isinstance(on, BoundResult)
        assert off.value >= on.value


def test_b1_inconclusive_on_ratio_one():
    out = upper_bound_b1([rec(5, 5)], long_root_refinement=False)
    assert isinstance(out, Inconclusive)
    assert out.sup_ratio == 1


def test_sembd_filter_flag():
    recs = [rec(10, 3), rec(8, 8, kind="semisimple", order=7, excl=True)]
    assert isinstance(upper_bound_b1(recs, False), Inconclusive)
    out = upper_bound_b1(recs, False, use_sembd_filter=True)
    assert isinstance(out, BoundResult) and out.value == 2


# -- connected upper bound ---------------------------------------------------

def test_b0_e7_characteristic_two_dataset():
    recs = list(load_shipped("e7_a7_p2").records)
    out = upper_bound_b0(recs, p=2)
    assert isinstance(out, BoundResult)
    assert out.value == 2


def test_b0_all_ratios_below_half():
    recs = [rec(10, 4), rec(12, 5, kind="semisimple", order=3)]
    assert upper_bound_b0(recs, p=2).value == 2


def test_b0_semisimple_equality_forces_three():
    recs = [rec(10, 4), rec(12, 6, kind="semisimple", order=3)]
    assert upper_bound_b0(recs, p=2).value == 3


def test_b0_needs_an_off_characteristic_prime():
    recs = [rec(10, 4), rec(12, 5, kind="semisimple", order=3)]
    out = upper_bound_b0(recs, p=3)  # the only semisimple family is r = p
    assert isinstance(out, Inconclusive)


def test_b0_unipotent_equality_is_tolerated():
    recs = [rec(10, 5), rec(12, 5, kind="semisimple", order=3)]
    assert upper_bound_b0(recs, p=2).value == 2


# -- sandwich consistency on shipped data ------------------------------------

def test_sandwich_g2():
    # dim G2 = 14, dim H = 8, true triple (3,3,3)
    lb = lower_bound_b0(14, 14 - 8)
    ub = upper_bound_b1(g2_records(), True).value
    assert lb <= 3 <= 3 <= ub == 3


def test_sandwich_e8():
    # dim E8 = 248, dim A1E7 = 136, true triple (3,3,3)
    recs = list(load_shipped("e8_a1e7").records)
    lb = lower_bound_b0(248, 248 - 136)
    ub = upper_bound_b1(recs, False).value
    assert lb == 3 and ub == 3


def test_sandwich_f4():
    # dim F4 = 52, dim B4 = 36, true triple (4,4,4)
    recs = list(load_shipped("f4_b4").records)
    lb = lower_bound_b0(52, 52 - 36)
    ub = upper_bound_b1(recs, True).value
    assert lb == 4 and ub == 4
