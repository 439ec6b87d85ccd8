import random
from fractions import Fraction

from qshuf.fields import (
    ExactRationalField,
    SpecializedField,
    multiplicatively_independent,
)
from qshuf.quiver import jordan, kronecker, loop_quiver


def test_field_axioms_inverses():
    F = SpecializedField(jordan(), seed=1)
    rng = random.Random(0)
    checked = 0
    while checked < 200:
        a = Fraction(rng.randint(-10**6, 10**6), rng.randint(1, 10**6))
        if a == 0:
            continue
        assert a * (1 / a) == 1
        checked += 1


def test_draws_are_deterministic_and_admissible():
    Q = loop_quiver(3)
    F1 = SpecializedField(Q, seed=42)
    F2 = SpecializedField(Q, seed=42)
    assert F1.q == F2.q and F1.t == F2.t
    assert F1.q not in (0, 1, -1)
    assert all(t != 0 for t in F1.t)
    assert multiplicatively_independent([F1.q, *F1.t])


def test_multiplicative_independence_rejects_relations():
    assert not multiplicatively_independent([Fraction(2), Fraction(4)])  # 2^2 = 4
    assert not multiplicatively_independent([Fraction(1)])
    assert not multiplicatively_independent([Fraction(2, 3), Fraction(3, 2)])
    assert multiplicatively_independent([Fraction(2), Fraction(3)])
    assert multiplicatively_independent([Fraction(2, 3), Fraction(5, 7), Fraction(11)])


def test_exact_and_specialized_agree_on_identities():
    Q = kronecker(2)
    EF = ExactRationalField(Q)
    SF = SpecializedField(Q, seed=3)
    rng = random.Random(5)
    for _ in range(50):
        aq = rng.randint(0, 3)
        bt = rng.randint(-2, 2)
        ct = rng.randint(0, 2)
        co = Fraction(rng.randint(-9, 9), rng.randint(1, 5))
        sym = (EF.q**aq * EF.t[0] ** bt + EF.from_fraction(co)) * EF.t[1] ** ct
        val = (SF.q**aq * SF.t[0] ** bt + co) * SF.t[1] ** ct
        assert EF.evaluate(sym, SF) == val


def test_exact_mode_field_ops():
    EF = ExactRationalField(jordan())
    x = (EF.q + EF.one) / EF.t[0]
    assert x * EF.t[0] == EF.q + EF.one
    assert EF.is_zero(x - x)
