"""The Hopf pairing between the two halves, computed on words.

The iterated contour integrals become exact coefficient extraction: every
1/zeta factor is expanded as a power series in the small/large variable
ordering dictated by the formula, truncated at the order forced by the
polynomial operand's exponent range, and the total constant term is taken.
Generator normalization: <e_{i,d}, f_{j,k}> = delta_ij gamma_i delta_{d+k,0},
so a word of letters i_1..i_n carries the prefactor prod_a gamma_{i_a}.
"""

from __future__ import annotations

import itertools

from ..algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from ..fields import Scalar
from ..laurent import RawTable, SymLaurent, offsets_of
from .words import GeneratorWord, expand_word, express_in_words


def _letter_slots(shape: tuple[int, ...], letters) -> list[int]:
    """Assign each letter a distinct variable slot of its vertex (symmetry
    makes the choice immaterial)."""
    offs = offsets_of(shape)
    used = [0] * len(shape)
    slots = []
    for i, _ in letters:
        slots.append(offs[i] + used[i])
        used[i] += 1
    if tuple(used) != shape:
        raise ValueError("word letters do not match the element's shape")
    return slots


def _ct_extract(
    algebra: ShuffleAlgebra,
    table: RawTable,
    slots: list[int],
    letters,
) -> Scalar:
    """Total constant term of table * prod_{a<b} 1/zeta_{i_a i_b}(z_a/z_b),
    expanded with variable a innermost (|z_a| smallest among a, a+1, ...).

    Both pairing formulas reduce to this engine: the plus-side formula uses
    the letters in order, the minus-side formula uses them reversed.
    """
    F = algebra.field
    n = len(slots)
    for a in range(n):
        # eliminate variable slots[a]; its series partners are b > a
        series = [algebra.inv_zeta_series(letters[a][0], letters[b][0]) for b in range(a + 1, n)]
        mins = [s.order for s in series]
        min_total = sum(mins)
        va = slots[a]
        partners = slots[a + 1 :]
        nxt: RawTable = {}
        for exps, c in table.items():
            e = exps[va]
            # series powers w_b >= 0 add w_b to z_a's exponent and subtract
            # from z_b's; the constant term needs e + sum w_b = 0
            need = -e
            if need < 0:
                continue
            if need < min_total:
                continue
            if not series:
                if need == 0:
                    key = exps[:va] + (0,) + exps[va + 1 :]
                    s = nxt.get(key)
                    nxt[key] = c if s is None else s + c
                continue
            for ws in _bounded_compositions(need, mins):
                coeff = c
                dead = False
                for s, w in zip(series, ws):
                    sc = s.coeff(w)
                    if sc == 0:
                        dead = True
                        break
                    coeff = coeff * sc
                if dead:
                    continue
                ee = list(exps)
                ee[va] = 0
                for vb, w in zip(partners, ws):
                    ee[vb] -= w
                key = tuple(ee)
                s0 = nxt.get(key)
                nxt[key] = coeff if s0 is None else s0 + coeff
        table = {k: v for k, v in nxt.items() if v != 0}
        if not table:
            return F.zero
    total = F.zero
    for exps, c in table.items():
        if any(exps):
            raise AssertionError("nonconstant term survived full extraction")
        total = total + c
    return total


def _bounded_compositions(total: int, mins: list[int]):
    if not mins:
        if total == 0:
            yield ()
        return
    first_min = mins[0]
    rest_min = sum(mins[1:])
    for w in range(first_min, total - rest_min + 1):
        for tail in _bounded_compositions(total - w, mins[1:]):
            yield (w,) + tail


def _gamma_prefactor(algebra: ShuffleAlgebra, letters) -> Scalar:
    acc = algebra.field.one
    for i, _ in letters:
        acc = acc * algebra.gamma_const(i)
    return acc


def pair_poly_word(algebra: ShuffleAlgebra, F: ShuffleElement, word: GeneratorWord) -> Scalar:
    """<F, f_{i1,d1} * ... * f_{in,dn}> for a plus-side element F.

    Zero immediately unless the degrees are opposite.  The contour order is
    |z_1| << ... << |z_n|.
    """
    if F.side != PLUS or word.side != MINUS:
        raise ValueError("pair_poly_word takes a plus element and a minus word")
    zero = algebra.field.zero
    if F.is_zero():
        return zero
    shape = F.shape
    letters = word.letters
    if word.shape_for(len(shape)) != shape:
        return zero
    if F.vdeg() + word.vdeg() != 0:
        return zero
    slots = _letter_slots(shape, letters)
    table: RawTable = {}
    for exps, c in F.poly.expand_raw().items():
        e = list(exps)
        for (_, d), v in zip(letters, slots):
            e[v] += d
        key = tuple(e)
        s = table.get(key)
        table[key] = c if s is None else s + c
    val = _ct_extract(algebra, table, slots, letters)
    return val * _gamma_prefactor(algebra, letters)


def pair_word_poly(algebra: ShuffleAlgebra, word: GeneratorWord, G: ShuffleElement) -> Scalar:
    """<e_{i1,d1} * ... * e_{in,dn}, G> for a minus-side element G.

    The mirrored formula, contours ordered |z_1| >> ... >> |z_n|.
    """
    if G.side != MINUS or word.side != PLUS:
        raise ValueError("pair_word_poly takes a plus word and a minus element")
    zero = algebra.field.zero
    if G.is_zero():
        return zero
    shape = G.shape
    letters = word.letters
    if word.shape_for(len(shape)) != shape:
        return zero
    if G.vdeg() + word.vdeg() != 0:
        return zero
    slots = _letter_slots(shape, letters)
    table: RawTable = {}
    for exps, c in G.poly.expand_raw().items():
        e = list(exps)
        for (_, d), v in zip(letters, slots):
            e[v] += d
        key = tuple(e)
        s = table.get(key)
        table[key] = c if s is None else s + c
    # |z_1| >> ... >> |z_n|: z_n is smallest; reversing the letter order turns
    # prod_{a<b} zeta_{i_b i_a}(z_b/z_a) into the engine's expansion pattern.
    rev = list(reversed(range(len(letters))))
    val = _ct_extract(
        algebra,
        table,
        [slots[a] for a in rev],
        [letters[a] for a in rev],
    )
    return val * _gamma_prefactor(algebra, letters)


def pair_word_word(algebra: ShuffleAlgebra, eword: GeneratorWord, fword: GeneratorWord) -> Scalar:
    """Pair two words; route through the minus-side expansion."""
    return pair_poly_word(algebra, expand_word(algebra, eword), fword)


def pair_raw_plus_word(
    algebra: ShuffleAlgebra, raw: RawTable, shape: tuple[int, ...], word: GeneratorWord
) -> Scalar:
    """The (plus table, f-word) pairing extended linearly to raw tables.

    Used to contract single legs of coproduct components; the symmetric sum
    of the slices makes the slot convention immaterial for the total.
    """
    letters = word.letters
    if word.shape_for(len(shape)) != shape:
        return algebra.field.zero
    slots = _letter_slots(shape, letters)
    table: RawTable = {}
    for exps, c in raw.items():
        e = list(exps)
        for (_, d), v in zip(letters, slots):
            e[v] += d
        key = tuple(e)
        s = table.get(key)
        table[key] = c if s is None else s + c
    val = _ct_extract(algebra, table, slots, letters)
    return val * _gamma_prefactor(algebra, letters)


def pair_eword_raw_minus(
    algebra: ShuffleAlgebra, word: GeneratorWord, raw: RawTable, shape: tuple[int, ...]
) -> Scalar:
    """The (e-word, minus table) pairing extended linearly to raw tables."""
    letters = word.letters
    if word.shape_for(len(shape)) != shape:
        return algebra.field.zero
    slots = _letter_slots(shape, letters)
    table: RawTable = {}
    for exps, c in raw.items():
        e = list(exps)
        for (_, d), v in zip(letters, slots):
            e[v] += d
        key = tuple(e)
        s = table.get(key)
        table[key] = c if s is None else s + c
    rev = list(reversed(range(len(letters))))
    val = _ct_extract(
        algebra,
        table,
        [slots[a] for a in rev],
        [letters[a] for a in rev],
    )
    return val * _gamma_prefactor(algebra, letters)


def pair_elements(algebra: ShuffleAlgebra, F: ShuffleElement, G: ShuffleElement) -> Scalar:
    """<F, G> for a plus element and a minus element.

    Minus-side elements are routed through the word basis (the integral
    formulas are word-sided); F stays polynomial.
    """
    if F.side != PLUS or G.side != MINUS:
        raise ValueError("pair_elements takes (plus, minus)")
    total = algebra.field.zero
    if F.is_zero() or G.is_zero():
        return total
    for c, w in express_in_words(algebra, G):
        total = total + c * pair_poly_word(algebra, F, w)
    return total


# -- Cartan-mode pairings -------------------------------------------------------


def hh_mode_pair(algebra: ShuffleAlgebra, i: int, p: int, j: int, pp: int) -> Scalar:
    """<h_{i,p}, h_{j,-p'}> = delta_{p,p'} [x^p] zeta_{ij}(1/x)/zeta_{ji}(x)."""
    if p != pp:
        return algebra.field.zero
    return algebra.hh_series(i, j).coeff(p)


def pair_cartan_words(
    algebra: ShuffleAlgebra,
    plus_modes: tuple[tuple[int, int], ...],
    minus_modes: tuple[tuple[int, int], ...],
) -> Scalar:
    """<prod h_{i,+p}, prod h_{j,-p'}> via the group-like coproduct splitting."""
    zero = algebra.field.zero
    one = algebra.field.one

    def rec(plus: tuple[tuple[int, int], ...], minus: tuple[tuple[int, int], ...]) -> Scalar:
        if not plus:
            return one if all(p == 0 for _, p in minus) else zero
        (i, p), rest = plus[0], plus[1:]
        total = zero
        ranges = [range(0, q + 1) for _, q in minus]
        for vs in itertools.product(*ranges):
            if sum(vs) != p:
                continue
            coeff = one
            ok = True
            for (j, q), v in zip(minus, vs):
                c = algebra.hh_series(i, j).coeff(v)
                if c == 0:
                    ok = False
                    break
                coeff = coeff * c
            if not ok:
                continue
            remaining = tuple((j, q - v) for (j, q), v in zip(minus, vs))
            sub = rec(rest, remaining)
            if sub != 0:
                total = total + coeff * sub
        return total

    return rec(tuple(sorted(plus_modes)), tuple(sorted(minus_modes)))


# -- dressed pairings and the two-route bialgebra identities ---------------------


def _mode_shifted_minus(
    algebra: ShuffleAlgebra, G: ShuffleElement, multiset: tuple[tuple[int, int], ...]
) -> ShuffleElement:
    """Sum over distinct assignments of the per-vertex mode multiset to G's
    variables of z^pattern * G (symmetric by construction)."""
    shape = G.shape
    offs_modes: dict[int, list[int]] = {}
    for j, p in multiset:
        offs_modes.setdefault(j, []).append(p)
    from ..laurent import offsets_of as _offs, _distinct_perms, RawTable as _RT

    offs = _offs(shape)
    per_vertex_patterns = []
    for i, ni in enumerate(shape):
        modes = sorted(offs_modes.get(i, []))
        if len(modes) != ni:
            raise ValueError("mode multiset does not match shape")
        per_vertex_patterns.append(list(_distinct_perms(tuple(modes))))
    out: _RT = {}
    base = G.poly.expand_raw()
    for combo in itertools.product(*per_vertex_patterns):
        for exps, c in base.items():
            e = list(exps)
            for i, pat in enumerate(combo):
                for a, p in enumerate(pat):
                    e[offs[i] + a] += p
            key = tuple(e)
            s = out.get(key)
            out[key] = c if s is None else s + c
    poly = SymLaurent.from_raw(out, shape, check=False)
    return ShuffleElement(MINUS, poly)


def _mode_multisets(shape: tuple[int, ...], total: int):
    """Per-vertex mode multisets (one mode per variable) with given total."""

    def per_vertex(ni: int, tot: int):
        # non-increasing tuples of length ni summing to tot
        if ni == 0:
            if tot == 0:
                yield ()
            return
        for first in range(tot, -1, -1):
            for rest in _bounded_parts(tot - first, ni - 1, first):
                yield (first,) + rest

    def _bounded_parts(tot: int, parts: int, top: int):
        if parts == 0:
            if tot == 0:
                yield ()
            return
        for v in range(min(top, tot), -1, -1):
            for rest in _bounded_parts(tot - v, parts - 1, v):
                yield (v,) + rest

    nI = len(shape)

    def rec(i: int, remaining: int):
        if i == nI:
            if remaining == 0:
                yield ()
            return
        for t in range(remaining + 1):
            for mine in per_vertex(shape[i], t):
                for rest in rec(i + 1, remaining - t):
                    yield (mine,) + rest

    for combo in rec(0, total):
        flat = tuple(sorted((i, p) for i, pat in enumerate(combo) for p in pat))
        yield flat


def pair_dressed_plus_word(
    algebra: ShuffleAlgebra,
    cartan: tuple[tuple[int, int], ...],
    P: ShuffleElement,
    word: GeneratorWord,
) -> Scalar:
    """<(prod h_{i,+p}) * P, f-word> via mode-pattern splitting on the word side."""
    zero = algebra.field.zero
    weight = sum(p for _, p in cartan)
    G = expand_word(algebra, word)
    if G.is_zero():
        return zero
    shape = G.shape
    total = zero
    ewords = None
    for multiset in _mode_multisets(shape, weight):
        hh = pair_cartan_words(algebra, cartan, multiset)
        if hh == 0:
            continue
        shifted = _mode_shifted_minus(algebra, G, multiset)
        if ewords is None:
            ewords = express_in_words(algebra, P)
        acc = zero
        for c, ew in ewords:
            acc = acc + c * pair_word_poly(algebra, ew, shifted)
        total = total + hh * acc
    return total


def bialgebra_check_plus(
    algebra: ShuffleAlgebra, F: ShuffleElement, w1: GeneratorWord, w2: GeneratorWord
) -> tuple[Scalar, Scalar]:
    """Both sides of <F, b1 b2> = <Delta(F), b1 (x) b2> for f-words b1, b2.

    Route one: pairing against the concatenated word.  Route two: sum over
    coproduct components of products of pairings, handling the Cartan-dressed
    first legs mode by mode.
    """
    from .coproduct import coproduct_component

    concat = GeneratorWord(MINUS, w1.letters + w2.letters)
    lhs = pair_poly_word(algebra, F, concat)

    nI = algebra.quiver.vertex_count
    k1 = w1.shape_for(nI)
    d1 = -w1.vdeg()
    k2 = w2.shape_for(nI)
    d2 = -w2.vdeg()
    n = F.shape
    rhs = algebra.field.zero
    if tuple(a + b for a, b in zip(k1, k2)) != n or d1 + d2 != F.vdeg():
        return lhs, rhs
    comp = coproduct_component(algebra, F, (k1, d1), (k2, d2))
    # group by Cartan word; contract the second leg against w2, then pair the
    # dressed first leg against w1
    by_cartan: dict[tuple, dict] = {}
    for (cartan, u, v), c in comp.terms.items():
        by_cartan.setdefault(cartan, {}).setdefault(u, {})
        cell = by_cartan[cartan][u]
        cell[v] = cell.get(v, algebra.field.zero) + c
    for cartan, umap in by_cartan.items():
        util: dict[tuple, Scalar] = {}
        for u, vmap in umap.items():
            val = pair_raw_plus_word(algebra, vmap, k2, w2)
            if val != 0:
                util[u] = val
        if not util:
            continue
        Upoly = SymLaurent.from_raw(util, k1, check=False)
        if Upoly.is_zero():
            continue
        P = ShuffleElement(PLUS, Upoly)
        rhs = rhs + pair_dressed_plus_word(algebra, cartan, P, w1)
    return lhs, rhs


def bialgebra_check_minus(
    algebra: ShuffleAlgebra, w1: GeneratorWord, w2: GeneratorWord, G: ShuffleElement
) -> tuple[Scalar, Scalar]:
    """Both sides of <a1 a2, G> = <a1 (x) a2, Delta^op(G)> for e-words a1, a2.

    Only zero-mode Cartan dressings survive against pure words, so the
    component contraction has no dressed pairings here.
    """
    from .coproduct import coproduct_component

    concat = GeneratorWord(PLUS, w1.letters + w2.letters)
    lhs = pair_word_poly(algebra, concat, G)

    nI = algebra.quiver.vertex_count
    k1 = w1.shape_for(nI)
    d1 = -w1.vdeg()
    k2 = w2.shape_for(nI)
    d2 = -w2.vdeg()
    n = G.shape
    rhs = algebra.field.zero
    if tuple(a + b for a, b in zip(k1, k2)) != n or d1 + d2 != G.vdeg():
        return lhs, rhs
    # Delta(G) component with first leg (k2, d2) [pairs with a2] and second
    # leg (k1, d1) [pairs with a1]; minus-side modes dress the second leg.
    comp = coproduct_component(algebra, G, (k2, d2), (k1, d1))
    for (cartan, u, v), c in comp.terms.items():
        if any(p for _, p in cartan):
            continue
        val2 = pair_eword_raw_minus(algebra, w2, {u: algebra.field.one}, k2)
        if val2 == 0:
            continue
        val1 = pair_eword_raw_minus(algebra, w1, {v: algebra.field.one}, k1)
        if val1 == 0:
            continue
        rhs = rhs + c * val1 * val2
    return lhs, rhs
