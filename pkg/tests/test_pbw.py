import random
from fractions import Fraction

from qshuf.algebra import PLUS, ShuffleAlgebra, ShuffleElement
from qshuf.fields import SpecializedField
from qshuf.hopf import GeneratorWord, bad_hinges, expand_word, naive_slope_r, pbw_decompose
from qshuf.quiver import jordan
from qshuf.slopes import slope_basis

M0 = (Fraction(0),)
TH = (Fraction(1),)


def make(seed=7):
    Q = jordan()
    field = SpecializedField(Q, seed)
    return Q, field, ShuffleAlgebra(Q, field)


def test_shape_one_single_factor():
    Q, F, A = make()
    for d in (-2, 0, 3):
        el = A.generator(PLUS, 0, d)
        terms = pbw_decompose(A, el, M0, TH)
        assert len(terms) == 1
        coeff, factors = terms[0]
        assert coeff == F.one
        assert factors == ((Fraction(d), el.poly),)


def test_e0_e1_splits():
    Q, F, A = make()
    el = A.shuffle_product(A.generator(PLUS, 0, 0), A.generator(PLUS, 0, 1))
    assert naive_slope_r(M0, TH, el.shape, el.vdeg()) == Fraction(1, 2)
    terms = pbw_decompose(A, el, M0, TH)
    for _, factors in terms:
        rs = [r for r, _ in factors]
        assert rs == sorted(set(rs))
    all_rs = {r for _, fs in terms for r, _ in fs}
    assert all_rs == {Fraction(0), Fraction(1)}


def test_slope_piece_elements_are_single_factors():
    Q, F, A = make()
    for b in slope_basis(Q, F, M0, (2,)).basis:
        el = ShuffleElement(PLUS, b)
        assert not bad_hinges(A, el, M0, TH)
        terms = pbw_decompose(A, el, M0, TH)
        assert terms == [(F.one, ((Fraction(0), b),))]


def test_round_trip_spanning_words():
    # remultiplication is asserted inside pbw_decompose; run a spanning family
    Q, F, A = make()
    count = 0
    for L in (1, 2):
        for ds in _sorted_tuples(L, -2, 2):
            el = expand_word(A, GeneratorWord(PLUS, tuple((0, d) for d in ds)))
            pbw_decompose(A, el, M0, TH)
            count += 1
    assert count >= 10


def test_round_trip_unsorted_words():
    Q, F, A = make()
    rng = random.Random(3)
    for _ in range(4):
        ds = [rng.randint(-2, 2) for _ in range(3)]
        el = expand_word(A, GeneratorWord(PLUS, tuple((0, d) for d in ds)))
        pbw_decompose(A, el, M0, TH)


def _sorted_tuples(length, lo, hi):
    if length == 0:
        yield ()
        return
    for first in range(lo, hi + 1):
        for rest in _sorted_tuples(length - 1, first, hi):
            yield (first,) + rest
