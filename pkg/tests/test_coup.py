from fractions import Fraction

import pytest

from conftest import ELEMENTS, element_pairs, load_coupling, load_element
from lieobs.ce import TModule, class_of, classes_equal, zero_class
from lieobs.coup import (
    combine,
    direct_sum_element,
    make_element,
    seeded_scalar_pairs,
    split_sum_class,
    uobs,
    verify_linearity,
)
from lieobs.errors import (
    BaseMismatch,
    CenterGrew,
    DimensionMismatch,
    NotIntertwining,
    NotInvertible,
    ReferenceMismatch,
    ScalarsBothZero,
)
from lieobs.lie import abelian
from lieobs.linalg import Matrix
from lieobs.obstruction import obstruction_class, validate_coupling

N = Matrix.from_rows([[0, 1], [0, 0]])
ZA = TModule(abelian(3), 2, (N, Matrix.zeros(2, 2), Matrix.zeros(2, 2)))


def test_identity_on_induced_module():
    c = load_coupling("t3_h3q_nontrivial")
    e = make_element(c, c.zmodule, Matrix.identity(2))
    assert uobs(e) == obstruction_class(c).cls


def test_scalar_on_trivial_module():
    c = load_coupling("t3_l58_nontrivial")
    ref = TModule.trivial(abelian(3), 2)
    e = make_element(c, ref, Matrix.identity(2).scale(2))
    assert uobs(e).coordinates == (-2, 0)


def test_swap_rejected_on_nilpotent_module():
    c = load_coupling("t3_h3q_nontrivial")
    with pytest.raises(NotIntertwining) as info:
        make_element(c, ZA, Matrix.from_rows([[0, 1], [1, 0]]))
    assert info.value.index == 0


def test_bad_shapes_and_singular_phi():
    c = load_coupling("t3_h3q_nontrivial")
    with pytest.raises(DimensionMismatch):
        make_element(c, TModule.trivial(abelian(3), 1), Matrix.identity(1))
    with pytest.raises(DimensionMismatch):
        make_element(c, TModule(abelian(2), 2, (N, N)), Matrix.identity(2))
    with pytest.raises(NotInvertible):
        make_element(c, ZA, Matrix.zeros(2, 2))


def test_small_base_zero_uobs():
    c = load_coupling("t2_h3_inner")
    e = make_element(c, c.zmodule, Matrix.identity(1))
    assert uobs(e).is_zero()


def test_centerless_fiber_needs_zero_dim_reference():
    c = load_coupling("t3_sl2_inner")
    ref = TModule.trivial(abelian(3), 0)
    e = make_element(c, ref, Matrix.zeros(0, 0))
    assert uobs(e).coordinates == ()


@pytest.mark.parametrize("name", ELEMENTS)
def test_uobs_is_pushforward_of_cocycle_class(name):
    e = load_element(name)
    u = obstruction_class(e.coupling).cocycle
    direct = class_of(u.map_values(e.phi, e.reference))
    assert classes_equal(uobs(e), direct)


def test_frozen_uobs():
    # [DERIVED] hand formula -2ab (times phi) for the h3 + Q family
    assert uobs(load_element("a_h3q_11")).coordinates == (-2,)
    assert uobs(load_element("a_h3q_13")).coordinates == (-12,)
    assert uobs(load_element("b_l58_swapped")).coordinates == (0, -2)


def test_combine_two_thirds():
    r = combine(load_element("a_h3q_11"), load_element("a_h3q_13"), Fraction(2, 3), -1)
    assert r.audit.class3.coordinates == (Fraction(32, 3),)
    assert r.audit.z0.dim == 2
    assert r.element.coupling.fiber.dim == 6


def test_combine_projection_case():
    c1, c0 = load_element("a_h3q_11"), load_element("a_abelian")
    r = combine(c1, c0, 1, 0)
    assert classes_equal(r.audit.class3, uobs(c1))


def test_combine_with_self_cancels():
    for name in ELEMENTS:
        c = load_element(name)
        assert combine(c, c, 1, -1).audit.class3.is_zero()


def test_center_grew_is_refused():
    # L5,8 modulo its center is abelian, so killing its whole center enlarges the center
    with pytest.raises(CenterGrew):
        combine(load_element("b_abelian"), load_element("b_l58"), 1, 0)


def test_combine_errors():
    a, b = load_element("a_h3q_11"), load_element("b_l58")
    with pytest.raises(ScalarsBothZero):
        combine(a, a, 0, 0)
    with pytest.raises(ReferenceMismatch):
        combine(a, b, 1, 1)
    other_base = validate_coupling(abelian(4), abelian(2), [Matrix.zeros(2, 2)] * 4)
    e = make_element(other_base, TModule.trivial(abelian(4), 2), Matrix.identity(2))
    with pytest.raises(BaseMismatch):
        combine(b, e, 1, 1)


def test_verify_linearity_examples():
    c1, c2 = load_element("a_h3q_11"), load_element("a_h3q_13")
    assert verify_linearity(c1, c2, []).passed
    report = verify_linearity(c1, c2, seeded_scalar_pairs(1, 4))
    assert report.passed and len(report.samples) == 4
    a = load_element("a_abelian")
    report = verify_linearity(a, a, [(1, 0), (0, 1)])
    assert report.passed
    assert [s.result.audit.class3 for s in report.samples] == [uobs(a), uobs(a)]


def test_verify_linearity_reports_refusals():
    report = verify_linearity(load_element("b_abelian"), load_element("b_l58"), [(1, 0), (1, 1)])
    assert not report.passed
    assert report.samples[0].error.startswith("CenterGrew")
    assert report.samples[1].passed


def test_seeded_pairs_are_reproducible_and_nonzero():
    pairs = seeded_scalar_pairs(7, 10)
    assert pairs == seeded_scalar_pairs(7, 10)
    assert all(a != 0 and b != 0 for a, b in pairs)


@pytest.mark.parametrize("pair", element_pairs())
def test_direct_sum_splits(pair):
    c1, c2 = (load_element(n) for n in pair)
    total = direct_sum_element(c1, c2)
    k1, k2 = split_sum_class(total, c1.reference)
    assert classes_equal(k1, uobs(c1)) and classes_equal(k2, uobs(c2))
    if uobs(c1).is_zero() and uobs(c2).is_zero():
        assert uobs(total).is_zero()


def test_zero_class_of_reference():
    assert zero_class(ZA, 3).coordinates == (0,)
