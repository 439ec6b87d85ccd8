from fractions import Fraction

import pytest

from qshuf.algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from qshuf.fields import SpecializedField
from qshuf.hopf import (
    check_membership,
    coproduct_component,
    delta_m,
    primitive_check,
)
from qshuf.laurent import SymLaurent
from qshuf.quiver import jordan
from qshuf.slopes import slope_basis

F0 = (Fraction(0),)


def make(seed=5):
    Q = jordan()
    field = SpecializedField(Q, seed)
    return Q, field, ShuffleAlgebra(Q, field)


def test_generator_components():
    Q, F, A = make()
    e = A.generator(PLUS, 0, 3)
    c1 = coproduct_component(A, e, ((1,), 3), ((0,), 0))
    assert c1.terms == {((), (3,), ()): F.one}
    c2 = coproduct_component(A, e, ((0,), 0), ((1,), 3))
    assert c2.terms == {(((0, 0),), (), (3,)): F.one}
    # the higher-mode dressing h_{0,2} (x) z^1
    c3 = coproduct_component(A, e, ((0,), 2), ((1,), 1))
    assert c3.terms == {(((0, 2),), (), (1,)): F.one}


def test_unit_component():
    Q, F, A = make()
    u = A.unit()
    c = coproduct_component(A, u, ((0,), 0), ((0,), 0))
    assert c.terms == {((), (), ()): F.one}


def test_delta_m_of_z0_is_primitive():
    Q, F, A = make()
    e0 = A.generator(PLUS, 0, 0)
    comps = dict(delta_m(A, e0, F0))
    assert comps[(1,)].terms == {((), (0,), ()): F.one}  # z^0 (x) 1
    assert comps[(0,)].terms == {(((0, 0),), (), (0,)): F.one}  # h (x) z^0
    assert primitive_check(A, e0, F0)


def test_delta_m_membership_gate():
    Q, F, A = make()
    bad = A.generator(PLUS, 0, 1)  # vdeg 1 != 0
    with pytest.raises(ValueError):
        delta_m(A, bad, F0)
    not_wheel = ShuffleElement(PLUS, SymLaurent((3,), {(0, 0, 0): F.one}))
    with pytest.raises(ValueError):
        check_membership(A, not_wheel, F0)


def test_slope_coproduct_on_basis_and_prop33():
    Q, F, A = make()
    sb = slope_basis(Q, F, F0, (2,))
    middles = []
    for b in sb.basis:
        el = ShuffleElement(PLUS, b)
        comps = dict(delta_m(A, el, F0))
        # legs of the middle term live in B_0|1 (x) B_0|1: pure zero-mode h_1
        mid = comps[(1,)]
        for (cartan, u, v) in mid.terms:
            assert all(p == 0 for _, p in cartan)
            assert u == (0,) and v == (0,)
        middles.append(mid)
        # every component with second-leg naive slope above 0 vanishes
        d = el.vdeg()
        for k in (1,):
            for e in range(1, 4):
                comp = coproduct_component(A, el, ((1,), d - e), ((1,), e))
                assert comp.is_zero()
    # exactly one primitive direction in B_0|2 (Jordan): one middle vanishes
    assert sorted(m.is_zero() for m in middles) == [False, True]


def test_decomposable_product_is_not_primitive():
    Q, F, A = make()
    e0 = A.generator(PLUS, 0, 0)
    prod = A.shuffle_product(e0, e0)
    assert not primitive_check(A, prod, F0)


def test_primitive_counts_diagnostic():
    Q, F, A = make()
    sb = slope_basis(Q, F, F0, (2,))
    count = sum(
        1 for b in sb.basis if primitive_check(A, ShuffleElement(PLUS, b), F0)
    )
    assert count == 1


def test_slope_coproduct_pairing_compatibility():
    # <a, b1 b2> = <Delta_m(a), b1 x b2> and its mirror on B_0 pieces, |n| <= 2
    from qshuf.hopf import delta_m_pairing_minus, delta_m_pairing_plus

    Q, F, A = make()
    p1 = slope_basis(Q, F, F0, (1,), PLUS).basis
    p2 = slope_basis(Q, F, F0, (2,), PLUS).basis
    m1 = slope_basis(Q, F, F0, (1,), MINUS).basis
    m2 = slope_basis(Q, F, F0, (2,), MINUS).basis
    for a in p2:
        lhs, rhs = delta_m_pairing_plus(
            A,
            ShuffleElement(PLUS, a),
            ShuffleElement(MINUS, m1[0]),
            ShuffleElement(MINUS, m1[0]),
            F0,
        )
        assert lhs == rhs
    for b in m2:
        lhs, rhs = delta_m_pairing_minus(
            A,
            ShuffleElement(PLUS, p1[0]),
            ShuffleElement(PLUS, p1[0]),
            ShuffleElement(MINUS, b),
            F0,
        )
        assert lhs == rhs
