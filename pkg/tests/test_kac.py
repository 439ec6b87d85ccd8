import pytest

from qshuf.gfenum import kac_bruteforce
from qshuf.kac import (
    TruncSeries,
    hua_kac_table,
    kac_exp_series,
    kac_hua,
    plethystic_exp,
)
from qshuf.quiver import Quiver, jordan, kronecker, loop_quiver


def test_jordan_kac_is_t():
    tab = hua_kac_table(jordan(), (5,))
    for n in range(1, 6):
        assert tab[(n,)].coefficients == [0, 1]
        assert tab[(n,)].at_one() == 1


def test_a2_kac_values():
    tab = hua_kac_table(kronecker(1), (2, 2))
    assert tab[(1, 1)].coefficients == [1]
    assert tab[(2, 1)].coefficients == []
    assert tab[(1, 0)].coefficients == [1]


def test_one_dimensional_reps_count_loops():
    for Q in (jordan(), loop_quiver(2), loop_quiver(3), kronecker(2)):
        tab = hua_kac_table(Q, tuple(1 for _ in range(Q.vertex_count)))
        for i in range(Q.vertex_count):
            vs = tuple(1 if j == i else 0 for j in range(Q.vertex_count))
            g = len(Q.loops_at(i))
            assert tab[vs].coefficients == [0] * g + [1]


def test_kac_nonnegative():
    for Q, box in [(loop_quiver(2), (4,)), (kronecker(3), (2, 2))]:
        tab = hua_kac_table(Q, box)
        for kp in tab.values():
            assert all(c >= 0 for c in kp.coefficients)


def test_hua_bound_guard():
    with pytest.raises(ValueError):
        kac_hua(jordan(), (7,))


def test_bruteforce_examples():
    assert kac_bruteforce(jordan(), (2,), [2]) == [2]
    assert kac_bruteforce(jordan(), (1,), [3]) == [3]
    assert kac_bruteforce(loop_quiver(2), (1,), [2]) == [4]
    assert kac_bruteforce(kronecker(1), (1, 1), [3]) == [1]


def test_bruteforce_refuses_big_inputs():
    with pytest.raises(ValueError):
        kac_bruteforce(jordan(), (2, ), [5])
    with pytest.raises(ValueError):
        kac_bruteforce(jordan(), (4,), [2])
    with pytest.raises(ValueError):
        kac_bruteforce(loop_quiver(3), (3,), [3])


def test_hua_bruteforce_agreement_sample():
    # the full sweep is acceptance criterion 3; a fast slice here
    for Q, ns in [(jordan(), [(2,), (3,)]), (kronecker(2), [(1, 1), (2, 1)])]:
        for n in ns:
            hua = kac_hua(Q, n)
            for q in (2, 3):
                assert kac_bruteforce(Q, n, [q])[0] == hua(q)


def test_bruteforce_gf4():
    hua = kac_hua(jordan(), (2,))
    assert kac_bruteforce(jordan(), (2,), [4])[0] == hua(4)


def test_exp_examples():
    assert plethystic_exp(TruncSeries((3,), {})).coeffs == {(0,): 1}
    e = plethystic_exp(TruncSeries((5,), {(1,): 1}))
    assert [e.coeff((k,)) for k in range(6)] == [1] * 6
    e2 = plethystic_exp(TruncSeries((2, 2), {(1, 0): 1, (0, 1): 1, (1, 1): 1}))
    assert e2.coeff((2, 2)) == 3


def test_exp_rejects_bad_input():
    with pytest.raises(ValueError):
        plethystic_exp(TruncSeries((2,), {(0,): 1}))
    with pytest.raises(ValueError):
        plethystic_exp(TruncSeries((2,), {(1,): -1}))


def test_exp_multiplicative_over_disjoint_vertices():
    # two-vertex edge-free quiver: Exp factors as the product of per-vertex Exps
    Q = Quiver(2, ())
    box = (3, 3)
    full = kac_exp_series(Q, box)
    j1 = kac_exp_series(Quiver(1, ()), (3,))
    for a in range(4):
        for b in range(4):
            assert full.coeff((a, b)) == j1.coeff((a,)) * j1.coeff((b,))


def test_exp_series_jordan_partition_numbers():
    rhs = kac_exp_series(jordan(), (5,))
    assert [rhs.coeff((n,)) for n in range(6)] == [1, 1, 2, 3, 5, 7]
