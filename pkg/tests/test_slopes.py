from fractions import Fraction

import pytest

from qshuf.algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from qshuf.fields import SpecializedField
from qshuf.laurent import SymLaurent
from qshuf.quiver import Quiver, jordan, kronecker, loop_quiver
from qshuf.slopes import (
    ResourceCeiling,
    dot,
    edge_form,
    graded_character,
    has_slope_leq,
    naive_slope_leq,
    slope_basis,
    slope_dim,
)

F0 = Fraction(0)


def test_dot_and_edge_form():
    J = jordan()
    assert edge_form(J, (2,), (3,)) == 6
    assert dot((2,), (0,)) == 0 and edge_form(J, (2,), (0,)) == 0
    Q3 = Quiver(2, ((0, 1), (0, 1), (0, 1)))
    assert edge_form(Q3, (1, 0), (0, 1)) == 3
    assert edge_form(Q3, (0, 1), (1, 0)) == 0


def test_naive_slope():
    J = jordan()
    F = SpecializedField(J, 7)
    A = ShuffleAlgebra(J, F)
    for d in range(-2, 3):
        el = A.generator(PLUS, 0, d)
        for m1 in range(-2, 3):
            assert naive_slope_leq(el, (Fraction(m1),)) == (d <= m1)
    one = A.unit()
    assert naive_slope_leq(one, (F0,))
    # minus side: G = z^-1, m = 0: vdeg -1 >= 0 fails
    g = A.generator(MINUS, 0, -1)
    assert naive_slope_leq(g, (F0,)) is False


def test_has_slope_examples():
    J = jordan()
    F = SpecializedField(J, 7)
    good = ShuffleElement(PLUS, SymLaurent((2,), {(1, -1): F.one}))
    assert has_slope_leq(J, good, (F0,))
    bad = ShuffleElement(PLUS, SymLaurent((2,), {(2, -2): F.one}))
    assert not has_slope_leq(J, bad, (F0,))
    for d in range(-2, 3):
        el = ShuffleElement(PLUS, SymLaurent((1,), {(d,): F.one}))
        for m1 in range(-2, 3):
            assert has_slope_leq(J, el, (Fraction(m1),)) == (d <= m1)
    with pytest.raises(ValueError):
        has_slope_leq(J, ShuffleElement(PLUS, SymLaurent.zero((1,))), (F0,))


def test_slope_basis_examples():
    J = jordan()
    F = SpecializedField(J, 7)
    sb1 = slope_basis(J, F, (F0,), (1,))
    assert sb1.dim == 1 and sb1.basis[0].terms == {(0,): F.one}
    sb2 = slope_basis(J, F, (F0,), (2,))
    assert sb2.dim == 2
    K = kronecker(1)
    FK = SpecializedField(K, 7)
    sbk = slope_basis(K, FK, (F0, F0), (1, 1))
    assert sbk.dim == 2


def test_slope_basis_non_integral_vdeg_is_zero():
    J = jordan()
    F = SpecializedField(J, 7)
    assert slope_basis(J, F, (Fraction(1, 2),), (1,)).dim == 0
    assert slope_dim(J, F, (Fraction(1, 2),), (1,))[0] == 0
    # but at n=2 the half slope has integral total degree
    assert slope_dim(J, F, (Fraction(1, 2),), (2,))[0] >= 1


def test_basis_elements_satisfy_membership():
    J = jordan()
    F = SpecializedField(J, 7)
    A = ShuffleAlgebra(J, F)
    for n in (2, 3):
        sb = slope_basis(J, F, (F0,), (n,))
        for b in sb.basis:
            el = ShuffleElement(PLUS, b)
            assert naive_slope_leq(el, (F0,))
            assert has_slope_leq(J, el, (F0,))
            ok, _ = A.wheel_check(el)
            assert ok


def test_graded_character_jordan():
    J = jordan()
    F = SpecializedField(J, 7)
    g = graded_character(J, F, (F0,), (3,))
    assert [g.coeff((n,)) for n in range(4)] == [1, 1, 2, 3]


def test_unit_dim_and_non_integral_slope_column():
    J = jordan()
    F = SpecializedField(J, 7)
    g = graded_character(J, F, (Fraction(1, 2),), (1,))
    assert g.coeff((0,)) == 1
    assert g.coeff((1,)) == 0


def test_shift_equivariance():
    J = jordan()
    F = SpecializedField(J, 7)
    for n in (1, 2, 3):
        base = slope_dim(J, F, (F0,), (n,))[0]
        for k in (-1, 1):
            assert slope_dim(J, F, (Fraction(k),), (n,))[0] == base


def test_closure_under_product():
    J = jordan()
    F = SpecializedField(J, 7)
    A = ShuffleAlgebra(J, F)
    b1 = slope_basis(J, F, (F0,), (1,)).basis
    b2 = slope_basis(J, F, (F0,), (2,)).basis
    for a in b1:
        for b in b2:
            p = A.shuffle_product(ShuffleElement(PLUS, a), ShuffleElement(PLUS, b))
            assert has_slope_leq(J, p, (F0,))
            assert p.vdeg() == 0  # naive slope exactly 0


def test_seed_independence():
    Q = loop_quiver(2)
    dims = []
    for seed in (7, 8, 9):
        F = SpecializedField(Q, seed)
        dims.append([slope_dim(Q, F, (F0,), (n,))[0] for n in range(4)])
    assert dims[0] == dims[1] == dims[2]


def test_minus_side_dims_match_plus():
    J = jordan()
    F = SpecializedField(J, 7)
    for n in (1, 2, 3):
        dp = slope_basis(J, F, (F0,), (n,), PLUS).dim
        dm = slope_basis(J, F, (F0,), (n,), MINUS).dim
        assert dp == dm


def test_minus_side_membership():
    J = jordan()
    F = SpecializedField(J, 7)
    A = ShuffleAlgebra(J, F)
    sb = slope_basis(J, F, (F0,), (2,), MINUS)
    for b in sb.basis:
        el = ShuffleElement(MINUS, b)
        assert naive_slope_leq(el, (F0,))
        assert has_slope_leq(J, el, (F0,))
        ok, _ = A.wheel_check(el)
        assert ok


def test_resource_ceiling_fires():
    Q = loop_quiver(3)
    F = SpecializedField(Q, 7)
    with pytest.raises(ResourceCeiling):
        slope_dim(Q, F, (F0,), (5,), ceiling=10)
