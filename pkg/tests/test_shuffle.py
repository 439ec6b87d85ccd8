import random
from fractions import Fraction

from qshuf.algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from qshuf.fields import SpecializedField
from qshuf.laurent import SymLaurent
from qshuf.quiver import Quiver, jordan, kronecker, loop_quiver


def make(quiver, seed=7):
    field = SpecializedField(quiver, seed)
    return field, ShuffleAlgebra(quiver, field)


def test_zeta_jordan():
    F, A = make(jordan())
    q, t = F.q, F.t_edge(0)
    zf = A.zeta(0, 0)
    # (1 - x/q)(1/t - x)(1 - t/(qx)) over (1 - x)
    from qshuf.series import lp_many

    want = lp_many([{0: F.one, 1: -1 / q}, {0: 1 / t, 1: -F.one}, {0: F.one, -1: -t / q}], F.one)
    assert zf.numerator == want
    assert zf.denominator == {0: F.one, 1: -F.one}


def test_zeta_single_edge():
    F, A = make(kronecker(1))
    t, q = F.t_edge(0), F.q
    z12 = A.zeta(0, 1)
    assert z12.numerator == {0: 1 / t, 1: Fraction(-1)}
    assert z12.denominator == {0: F.one}
    z21 = A.zeta(1, 0)
    assert z21.numerator == {0: F.one, -1: -t / q}


def test_zeta_no_edges_between():
    Q = Quiver(2, ())
    F, A = make(Q)
    assert A.zeta(0, 1).numerator == {0: F.one}
    assert A.zeta(0, 1).denominator == {0: F.one}


def test_gamma_values():
    F, A = make(jordan())
    q, t = F.q, F.t_edge(0)
    assert A.gamma_const(0) == (1 / t - 1) * (1 - t / q) / (1 - 1 / q)

    F2, A2 = make(kronecker(1))
    assert A2.gamma_const(0) == 1 / (1 - 1 / F2.q)

    Q = Quiver(1, ((0, 0), (0, 0)))
    F3, A3 = make(Q)
    t0, t1, q3 = F3.t_edge(0), F3.t_edge(1), F3.q
    want = (1 / t0 - 1) * (1 - t0 / q3) * (1 / t1 - 1) * (1 - t1 / q3) / (1 - 1 / q3)
    assert A3.gamma_const(0) == want


def test_product_unit():
    F, A = make(jordan())
    e = A.generator(PLUS, 0, 2)
    assert A.shuffle_product(e, A.unit()).poly == e.poly
    assert A.shuffle_product(A.unit(), e).poly == e.poly


def test_product_no_loop_vertex():
    Q = Quiver(1, ())
    F, A = make(Q)
    e0 = A.generator(PLUS, 0, 0)
    p = A.shuffle_product(e0, e0)
    assert p.poly.terms == {(0, 0): 1 + 1 / F.q}


def test_product_single_edge_examples():
    F, A = make(kronecker(1))
    t, q = F.t_edge(0), F.q
    e1, e2 = A.generator(PLUS, 0, 0), A.generator(PLUS, 1, 0)
    p12 = A.shuffle_product(e1, e2)
    assert p12.poly.terms == {(0, 0): 1 / t, (1, -1): Fraction(-1)}
    p21 = A.shuffle_product(e2, e1)
    assert p21.poly.terms == {(0, 0): Fraction(1), (1, -1): -t / q}


def test_associativity_random_words():
    F, A = make(loop_quiver(2), seed=11)
    rng = random.Random(4)
    for _ in range(50):
        a = A.generator(PLUS, 0, rng.randint(-2, 2))
        b = A.generator(PLUS, 0, rng.randint(-2, 2))
        c = A.generator(PLUS, 0, rng.randint(-2, 2))
        lhs = A.shuffle_product(A.shuffle_product(a, b), c)
        rhs = A.shuffle_product(a, A.shuffle_product(b, c))
        assert lhs.poly == rhs.poly


def test_grading_additive():
    F, A = make(jordan())
    a = A.generator(PLUS, 0, 2)
    b = A.shuffle_product(A.generator(PLUS, 0, 1), A.generator(PLUS, 0, -1))
    p = A.shuffle_product(a, b)
    assert p.hdeg() == (3,)
    assert p.vdeg() == a.vdeg() + b.vdeg()
    fm = A.generator(MINUS, 0, 2)
    assert fm.hdeg() == (-1,) and fm.vdeg() == 2


def test_minus_side_is_opposite():
    F, A = make(jordan())
    f1 = A.generator(MINUS, 0, 1)
    f2 = A.generator(MINUS, 0, -2)
    p = A.shuffle_product(f1, f2)
    q = A.shuffle_product(
        ShuffleElement(PLUS, f2.poly), ShuffleElement(PLUS, f1.poly)
    )
    assert p.poly == q.poly


def test_wheel_trivial_small_shapes():
    F, A = make(jordan())
    e = A.generator(PLUS, 0, 0)
    ok, wit = A.wheel_check(A.shuffle_product(e, e))
    assert ok and wit is None


def test_wheel_constant_shape3_fails():
    F, A = make(jordan())
    c = ShuffleElement(PLUS, SymLaurent((3,), {(0, 0, 0): F.one}))
    ok, wit = A.wheel_check(c)
    assert not ok
    assert wit[0] == 0 and wit[1] in (1, 2)


def test_wheel_closure_product():
    F, A = make(jordan())
    e = A.generator(PLUS, 0, 0)
    p = A.product_many([e, e, e])
    ok, _ = A.wheel_check(p)
    assert ok


def test_wheel_both_patterns_tested_on_loops():
    # loops give two specializations per edge; both must appear
    F, A = make(jordan())
    subs = list(A.wheel_substitutions((3,)))
    assert {p for _, p, _ in subs} == {1, 2}


def test_tau_shift():
    F, A = make(jordan())
    e = A.generator(PLUS, 0, 2)
    assert A.tau_shift(e, (0,)).poly == e.poly
    assert A.tau_shift(e, (1,)).poly.terms == {(3,): F.one}
    # shape 2 homogeneous degree d goes to d + 2k
    p = A.shuffle_product(e, e)
    shifted = A.tau_shift(p, (3,))
    assert shifted.vdeg() == p.vdeg() + 6
    # composition and algebra-map property
    rng = random.Random(9)
    for _ in range(20):
        a = A.generator(PLUS, 0, rng.randint(-2, 2))
        b = A.generator(PLUS, 0, rng.randint(-2, 2))
        k, l = (rng.randint(-2, 2),), (rng.randint(-2, 2),)
        assert A.tau_shift(A.tau_shift(a, k), l).poly == A.tau_shift(a, tuple(x + y for x, y in zip(k, l))).poly
        lhs = A.tau_shift(A.shuffle_product(a, b), k)
        rhs = A.shuffle_product(A.tau_shift(a, k), A.tau_shift(b, k))
        assert lhs.poly == rhs.poly


def test_minus_tau_shift_negates():
    F, A = make(jordan())
    f = A.generator(MINUS, 0, 2)
    assert A.tau_shift(f, (1,)).poly.terms == {(1,): F.one}
