"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest tests/test_acceptance.py -v -s` to watch the lines appear;
the whole suite targets a half-hour desktop budget, dominated by the
conjecture reproduction sweep.
"""

import json
import random
import sys
from fractions import Fraction

import pytest

from qshuf.algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from qshuf.fields import SpecializedField
from qshuf.gfenum import kac_bruteforce
from qshuf.harness import conjecture_report
from qshuf.hopf import (
    GeneratorWord,
    bialgebra_check_minus,
    bialgebra_check_plus,
    dual_bases,
    expand_word,
    pair_elements,
    pair_poly_word,
    pbw_decompose,
    rprime_window_check,
)
from qshuf.kac import kac_hua
from qshuf.laurent import SymLaurent
from qshuf.quiver import jordan, kronecker, loop_quiver
from qshuf.slopes import slope_dim

M0 = (Fraction(0),)
TH = (Fraction(1),)
SEED = 7
TRIALS = 3


def _line(num: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"ACCEPTANCE {num:2d}: {status} - {detail}", file=sys.stderr)


def test_criterion_01_conjecture_reproduction():
    cases = [(loop_quiver(g), (5,), f"1 vertex, {g} loops, n<=5") for g in (1, 2, 3)]
    cases += [(kronecker(d), (3, 3), f"2 vertices, {d} edges, n<=(3,3)") for d in (1, 2, 3, 4)]
    ok = True
    details = []
    for quiver, box, label in cases:
        rep = conjecture_report(quiver, box, SEED, TRIALS, jobs=1)
        case_ok = rep["all_equal"] and rep["agreement"]
        if rep["capped"]:
            details.append(f"{label}: CAPPED at {sorted(rep['capped'])}")
        ok = ok and case_ok
        details.append(f"{label}: {'equal' if case_ok else 'MISMATCH'}")
    _line(1, ok, "; ".join(details))
    assert ok


def test_criterion_02_jordan_dimension_table():
    field = SpecializedField(jordan(), SEED)
    dims = [slope_dim(jordan(), field, M0, (n,))[0] for n in range(1, 6)]
    ok = dims == [1, 2, 3, 5, 7]
    _line(2, ok, f"dim B_0|n for n=1..5 = {dims} (want [1, 2, 3, 5, 7])")
    assert ok


def test_criterion_03_kac_oracle_equivalence():
    # every tested quiver at |n| <= 3, restricted to exhaustively enumerable cases
    cases = [
        (jordan(), [(1,), (2,), (3,)]),
        (loop_quiver(2), [(1,), (2,)]),
        (loop_quiver(3), [(1,), (2,)]),
        (kronecker(1), [(1, 0), (0, 1), (1, 1), (2, 1), (1, 2)]),
        (kronecker(2), [(1, 1), (2, 1), (1, 2)]),
        (kronecker(3), [(1, 1), (2, 1)]),
        (kronecker(4), [(1, 1), (2, 1)]),
    ]
    ok = True
    checked = 0
    for quiver, ns in cases:
        for n in ns:
            hua = kac_hua(quiver, n)
            got = kac_bruteforce(quiver, n, [2, 3])
            want = [hua(2), hua(3)]
            if got != want:
                ok = False
            checked += 1
    _line(3, ok, f"Hua == brute force at q in {{2,3}} on {checked} (quiver, n) cases")
    assert ok


def test_criterion_04_generator_pairing():
    ok = True
    checked = 0
    for quiver in (jordan(), kronecker(1)):
        field = SpecializedField(quiver, SEED)
        algebra = ShuffleAlgebra(quiver, field)
        nI = quiver.vertex_count
        for i in range(nI):
            gamma = algebra.gamma_const(i)
            for j in range(nI):
                for d in range(-3, 4):
                    for k in range(-3, 4):
                        got = pair_poly_word(
                            algebra,
                            algebra.generator(PLUS, i, d),
                            GeneratorWord(MINUS, ((j, k),)),
                        )
                        want = gamma if (i == j and d + k == 0) else field.zero
                        ok = ok and got == want
                        checked += 1
    _line(4, ok, f"<e_i,d, f_j,k> = delta gamma delta on {checked} instances (Jordan, A2)")
    assert ok


def test_criterion_05_wheel_closure():
    quiver = jordan()
    field = SpecializedField(quiver, SEED)
    algebra = ShuffleAlgebra(quiver, field)
    rng = random.Random(2024)
    ok = True
    for _ in range(100):
        length = rng.randint(1, 4)
        letters = tuple((0, rng.randint(-3, 3)) for _ in range(length))
        el = expand_word(algebra, GeneratorWord(PLUS, letters))
        passed, witness = algebra.wheel_check(el)
        if not passed:
            ok = False
            break
    _line(5, ok, "100 random generator-word expansions satisfy the wheel conditions")
    assert ok


def test_criterion_06_bialgebra_identity():
    rng = random.Random(99)
    ok = True
    count = 0
    for quiver in (jordan(), kronecker(1)):
        field = SpecializedField(quiver, 9)
        algebra = ShuffleAlgebra(quiver, field)
        nI = quiver.vertex_count
        for _ in range(8):  # 8 plus-side + 7 minus-side per quiver = 30 total
            L = rng.randint(2, 3)
            verts = [rng.randrange(nI) for _ in range(L)]
            eds = [rng.randint(-1, 2) for _ in range(L)]
            el = expand_word(algebra, GeneratorWord(PLUS, tuple(zip(verts, eds))))
            cut = rng.randint(1, L - 1)
            fverts = verts[:]
            rng.shuffle(fverts)
            fds = [rng.randint(-2, 1) for _ in range(L)]
            fds[-1] -= sum(eds) + sum(fds)
            w1 = GeneratorWord(MINUS, tuple(zip(fverts[:cut], fds[:cut])))
            w2 = GeneratorWord(MINUS, tuple(zip(fverts[cut:], fds[cut:])))
            lhs, rhs = bialgebra_check_plus(algebra, el, w1, w2)
            ok = ok and lhs == rhs
            count += 1
        for _ in range(7):
            L = rng.randint(2, 3)
            verts = [rng.randrange(nI) for _ in range(L)]
            fds = [rng.randint(-2, 1) for _ in range(L)]
            gel = expand_word(algebra, GeneratorWord(MINUS, tuple(zip(verts, fds))))
            cut = rng.randint(1, L - 1)
            everts = verts[:]
            rng.shuffle(everts)
            eds = [rng.randint(-1, 2) for _ in range(L)]
            eds[-1] -= sum(eds) + sum(fds)
            w1 = GeneratorWord(PLUS, tuple(zip(everts[:cut], eds[:cut])))
            w2 = GeneratorWord(PLUS, tuple(zip(everts[cut:], eds[cut:])))
            lhs, rhs = bialgebra_check_minus(algebra, w1, w2, gel)
            ok = ok and lhs == rhs
            count += 1
    _line(6, ok, f"pairing via concatenation == pairing via coproduct on {count} instances")
    assert ok


def test_criterion_07_pbw_round_trip():
    quiver = jordan()
    field = SpecializedField(quiver, SEED)
    algebra = ShuffleAlgebra(quiver, field)
    rng = random.Random(7)
    ok = True
    count = 0

    def run(letters):
        nonlocal ok, count
        el = expand_word(algebra, GeneratorWord(PLUS, tuple((0, d) for d in letters)))
        if el.is_zero():
            return
        # remultiplication and strict slope increase are asserted inside
        pbw_decompose(algebra, el, M0, TH)
        count += 1

    for d in range(-3, 4):
        run((d,))
    for d1 in range(-3, 4):
        for d2 in range(d1, 4):
            if abs(d1 + d2) <= 3:
                run((d1, d2))
    for d1 in range(-3, 4):
        for d2 in range(d1, 4):
            for d3 in range(d2, 4):
                if abs(d1 + d2 + d3) <= 3:
                    run((d1, d2, d3))
    for _ in range(6):  # a few unsorted orderings for good measure
        ds = [rng.randint(-3, 3) for _ in range(3)]
        if abs(sum(ds)) <= 3:
            run(tuple(ds))
    _line(7, ok, f"slope factorization round-trips on {count} spanning-family elements")
    assert ok and count >= 80


def test_criterion_08_slope_pairing_orthogonality():
    quiver = jordan()
    field = SpecializedField(quiver, SEED)
    algebra = ShuffleAlgebra(quiver, field)
    rng = random.Random(31)
    pieces1 = {r: dual_bases(algebra, (Fraction(r),), (1,)) for r in range(-3, 4)}
    pieces2 = {r: dual_bases(algebra, (Fraction(r),), (2,)) for r in range(-1, 2)}
    ok = True
    for trial in range(20):
        r1, r2 = sorted(rng.sample(range(-3, 4), 2))
        a = algebra.shuffle_product(
            ShuffleElement(PLUS, pieces1[r1].plus[0]),
            ShuffleElement(PLUS, pieces1[r2].plus[0]),
        )
        if trial % 2 == 0:
            b = algebra.shuffle_product(
                ShuffleElement(MINUS, pieces1[r1].minus[0]),
                ShuffleElement(MINUS, pieces1[r2].minus[0]),
            )
            want = field.one
        else:
            r3 = rng.choice([r for r in range(-3, 4) if r not in (r1, r2)])
            b = algebra.shuffle_product(
                ShuffleElement(MINUS, pieces1[r1].minus[0]),
                ShuffleElement(MINUS, pieces1[r3].minus[0]),
            )
            want = field.zero
        ok = ok and pair_elements(algebra, a, b) == want
    # shape-2 legs against shape-1 products of the same bidegree
    for r in (-1, 0, 1):
        db = pieces2[r]
        for s, aa in enumerate(db.plus):
            for t, bb in enumerate(db.minus):
                val = pair_elements(
                    algebra, ShuffleElement(PLUS, aa), ShuffleElement(MINUS, bb)
                )
                ok = ok and val == (field.one if s == t else field.zero)
    _line(8, ok, "20 random multi-slope ordered products pair blockwise-diagonally")
    assert ok


def test_criterion_09_rmatrix_window():
    quiver = jordan()
    field = SpecializedField(quiver, SEED)
    algebra = ShuffleAlgebra(quiver, field)
    rep = rprime_window_check(algebra, M0, TH, hbound=2, window=3)
    ok = rep["ok"] and rep["checks"]["shape_one_layer"]["ok"]
    # the shape-1 layer must literally be sum_d z^d (x) z^{-d}/gamma
    gamma = algebra.gamma_const(0)
    for d in range(-3, 4):
        db = dual_bases(algebra, (Fraction(d),), (1,))
        ok = ok and db.plus[0] == SymLaurent((1,), {(d,): field.one})
        ok = ok and db.minus[0] == SymLaurent((1,), {(-d,): field.one / gamma})
    _line(
        9,
        ok,
        f"window check hbound=2 window=3: {sum(v['ok'] for v in rep['checks'].values())}/3 "
        f"checks ok, {rep['discarded_out_of_window']} terms discarded",
    )
    assert ok


def test_criterion_10_determinism_across_jobs(tmp_path):
    from qshuf.cli import main

    qfile = tmp_path / "a2.json"
    qfile.write_text('{"vertices": 2, "edges": [[0, 1]]}')
    outputs = []
    for jobs in ("1", "4"):
        out = tmp_path / f"rep{jobs}.json"
        code = main(
            [
                "check-conjecture", "--quiver", str(qfile), "--upto", "2,2",
                "--seed", "7", "--trials", "3", "--jobs", jobs, "--out", str(out),
            ]
        )
        assert code == 0
        outputs.append(out.read_bytes())
    ok = outputs[0] == outputs[1]
    dims_outputs = []
    for jobs in ("1", "4"):
        out = tmp_path / f"dims{jobs}.json"
        code = main(
            [
                "dims", "--quiver", str(qfile), "--slope", "0,0", "--upto", "2,2",
                "--seed", "11", "--trials", "3", "--jobs", jobs, "--out", str(out),
            ]
        )
        assert code == 0
        dims_outputs.append(out.read_bytes())
    ok = ok and dims_outputs[0] == dims_outputs[1]
    _line(10, ok, "reports byte-identical across --jobs 1 vs 4")
    assert ok
