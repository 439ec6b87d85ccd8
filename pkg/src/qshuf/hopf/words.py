"""Generator words and the expression of shuffle elements in the word basis.

A word is an ordered list of letters (vertex, degree) standing for the
product e_{i1,d1} * ... * e_{in,dn} (plus side) or the analogous f-word in
the opposite algebra.  Word expansions are the bridge between abstract
elements and the pairing formulas, which are word-sided.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..algebra import ShuffleAlgebra, ShuffleElement
from ..fields import Scalar
from ..laurent import SymLaurent
from ..linalg import solve_columns


@dataclass(frozen=True)
class GeneratorWord:
    side: str
    letters: tuple[tuple[int, int], ...]  # (vertex, degree) per letter

    def vdeg(self) -> int:
        return sum(d for _, d in self.letters)

    def shape_for(self, nvertices: int) -> tuple[int, ...]:
        shape = [0] * nvertices
        for i, _ in self.letters:
            shape[i] += 1
        return tuple(shape)


def expand_word(algebra: ShuffleAlgebra, word: GeneratorWord) -> ShuffleElement:
    """Left-to-right product of the letters (cached on the algebra)."""
    key = (word.side, word.letters)
    poly = algebra.word_cache.get(key)
    if poly is not None:
        return ShuffleElement(word.side, poly)
    if not word.letters:
        el = algebra.unit(word.side)
    else:
        el = algebra.generator(word.side, *word.letters[0])
        for j in range(1, len(word.letters)):
            pref = GeneratorWord(word.side, word.letters[: j + 1])
            cached = algebra.word_cache.get((word.side, pref.letters))
            if cached is not None:
                el = ShuffleElement(word.side, cached)
                continue
            el = algebra.shuffle_product(el, algebra.generator(word.side, *word.letters[j]))
            algebra.word_cache[(word.side, pref.letters)] = el.poly
    algebra.word_cache[key] = el.poly
    return el


DEFAULT_WINDOW_SLACK = 8


def express_in_words(
    algebra: ShuffleAlgebra, el: ShuffleElement, max_extra: int = DEFAULT_WINDOW_SLACK
) -> list[tuple[Scalar, GeneratorWord]]:
    """Write a homogeneous element as a combination of word expansions.

    The letter-degree window starts at the element's exponent support and
    grows until the linear system becomes solvable; generation by the
    degree-1 elements guarantees success, and the search aborts with a
    diagnostic beyond support + max_extra.
    """
    poly = el.poly
    if poly.is_zero():
        return []
    d = poly.vdeg()
    shape = poly.shape
    size = sum(shape)
    if size == 0:
        if d != 0:
            raise ValueError("non-trivial constant")
        return [(poly.terms[()], GeneratorWord(el.side, ()))]
    cache = getattr(algebra, "_express_cache", None)
    if cache is None:
        cache = {}
        algebra._express_cache = cache
    cache_key = (el.side, shape, tuple(sorted(poly.terms.items())))
    hit = cache.get(cache_key)
    if hit is not None:
        return hit
    lo, hi = poly.exponent_range()
    vertex_seqs = sorted(
        set(
            itertools.permutations(
                [i for i, ni in enumerate(shape) for _ in range(ni)]
            )
        )
    )
    for extra in range(0, max_extra + 1):
        dlo, dhi = lo - extra, hi + extra
        words: list[GeneratorWord] = []
        for seq in vertex_seqs:
            for degs in _compositions(d, size, dlo, dhi):
                words.append(GeneratorWord(el.side, tuple(zip(seq, degs))))
        columns = []
        for w in words:
            columns.append(expand_word(algebra, w).poly.terms)
        sol = solve_columns(columns, poly.terms, algebra.field.one)
        if sol is not None:
            out = [(c, words[j]) for j, c in sorted(sol.items()) if c != 0]
            # round-trip safety: re-expansion must reproduce the element
            acc = SymLaurent.zero(shape)
            for c, w in out:
                acc = acc + expand_word(algebra, w).poly.scale(c)
            if acc == poly:
                cache[cache_key] = out
                return out
        if extra == max_extra:
            break
    raise RuntimeError(
        f"element of bidegree ({shape}, {d}) not expressible within degree window "
        f"[{lo - max_extra}, {hi + max_extra}]"
    )


def _compositions(total: int, parts: int, lo: int, hi: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(lo, hi + 1):
        rest = total - first
        if rest < lo * (parts - 1) or rest > hi * (parts - 1):
            continue
        for tail in _compositions(rest, parts - 1, lo, hi):
            yield (first,) + tail
