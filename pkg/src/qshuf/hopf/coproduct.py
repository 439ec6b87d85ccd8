"""Graded components of the topological coproduct, and the slope coproduct.

A component of Delta(F) at a fixed bidegree split is a finite sum of
elementary tensors (Cartan word) * (first-leg monomial) x (second-leg
monomial): the h-series and the 1/zeta denominators are expanded exactly to
the finitely many orders that land in the requested bidegrees.

Plus side: Cartan modes dress the first leg, one mode h_{j,p>=0} per
second-leg variable.  Minus side: modes h_{i,-p} dress the second leg, one
per first-leg variable.  Total leg degrees include the mode degrees
(deg h_{i,+-p} = (0, +-p)).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..algebra import PLUS, ShuffleAlgebra, ShuffleElement
from ..fields import Scalar
from ..laurent import offsets_of
from ..series import SeriesExpansion, lp_substitute_inverse
from ..slopes import SlopeVector, dot, has_slope_leq

CartanWord = tuple[tuple[int, int], ...]  # sorted ((vertex, mode), ...)
TensorKey = tuple[CartanWord, tuple[int, ...], tuple[int, ...]]


@dataclass
class MixedTensor:
    """One graded component of the coproduct, as elementary tensors."""

    side: str
    shapes: tuple[tuple[int, ...], tuple[int, ...]]
    vdegs: tuple[int, int]
    terms: dict[TensorKey, Scalar]

    def is_zero(self) -> bool:
        return not self.terms

    def scale(self, c: Scalar) -> "MixedTensor":
        return MixedTensor(
            self.side, self.shapes, self.vdegs, {k: v * c for k, v in self.terms.items()}
        )

    def cartan_words(self) -> set[CartanWord]:
        return {k[0] for k in self.terms}

    def proportionality(self, other: "MixedTensor") -> Scalar | None:
        """gamma with self = gamma * other, or None if not proportional."""
        if self.shapes != other.shapes or self.vdegs != other.vdegs:
            return None
        if other.is_zero():
            return None
        key = next(iter(other.terms))
        if key not in self.terms:
            return None
        gamma = self.terms[key] / other.terms[key]
        if set(self.terms) != set(other.terms):
            return None
        for k, v in other.terms.items():
            if self.terms[k] != gamma * v:
                return None
        return gamma


def _inv_zeta_series_inf(algebra: ShuffleAlgebra, j: int, i: int) -> SeriesExpansion:
    """Series of 1/zeta_{ji}(1/y) around y = 0 (lowest order #_{ji})."""
    cache = getattr(algebra, "_inv_zeta_inf_cache", None)
    if cache is None:
        cache = {}
        algebra._inv_zeta_inf_cache = cache
    s = cache.get((j, i))
    if s is None:
        zf = algebra.zeta(j, i)
        s = SeriesExpansion(
            lp_substitute_inverse(zf.denominator), lp_substitute_inverse(zf.numerator)
        )
        cache[(j, i)] = s
    return s


def coproduct_component(
    algebra: ShuffleAlgebra,
    el: ShuffleElement,
    splitA: tuple[tuple[int, ...], int],
    splitB: tuple[tuple[int, ...], int],
) -> MixedTensor:
    """Exact component of Delta at first-leg bidegree splitA, second splitB."""
    nA, dA = tuple(splitA[0]), splitA[1]
    nB, dB = tuple(splitB[0]), splitB[1]
    n = el.shape
    if tuple(a + b for a, b in zip(nA, nB)) != n:
        raise ValueError("split shapes do not add up")
    d = el.vdeg()
    if dA + dB != d:
        raise ValueError("split degrees do not add up")
    offs = offsets_of(n)
    # first leg takes the first nA_i slots of each block
    first_slots = [offs[i] + a for i in range(len(n)) for a in range(nA[i])]
    second_slots = [offs[i] + a for i in range(len(n)) for a in range(nA[i], n[i])]
    first_vertex = [i for i in range(len(n)) for _ in range(nA[i])]
    second_vertex = [i for i in range(len(n)) for _ in range(nA[i], n[i])]
    plus = el.side == PLUS

    pair_series: list[SeriesExpansion] = []
    pair_mins: list[int] = []
    for r, ir in enumerate(first_vertex):
        for s, js in enumerate(second_vertex):
            if plus:
                ser = _inv_zeta_series_inf(algebra, js, ir)
            else:
                ser = algebra.inv_zeta_series(ir, js)
            pair_series.append(ser)
            pair_mins.append(ser.order)
    npairs = len(pair_series)
    nmodes = len(second_slots) if plus else len(first_slots)
    mode_vertex = second_vertex if plus else first_vertex

    terms: dict[TensorKey, Scalar] = {}
    for E, c in el.poly.expand_raw().items():
        u0 = [E[v] for v in first_slots]
        v0 = [E[v] for v in second_slots]
        alpha, beta = sum(u0), sum(v0)
        if plus:
            W = beta - dB  # total zeta-order plus total mode weight
        else:
            W = dA - alpha
        if W < 0 or W < sum(pair_mins):
            continue
        for ws in _compositions_with_mins(W, pair_mins + [0] * nmodes):
            wpairs = ws[:npairs]
            modes = ws[npairs:]
            coeff = c
            dead = False
            for ser, w in zip(pair_series, wpairs):
                sc = ser.coeff(w)
                if sc == 0:
                    dead = True
                    break
                coeff = coeff * sc
            if dead:
                continue
            u = list(u0)
            v = list(v0)
            idx = 0
            for r in range(len(first_slots)):
                for s in range(len(second_slots)):
                    w = wpairs[idx]
                    idx += 1
                    if w:
                        u[r] += w
                        v[s] -= w
            if plus:
                for s, p in enumerate(modes):
                    if p:
                        v[s] -= p
            else:
                for r, p in enumerate(modes):
                    if p:
                        u[r] += p
            cartan = tuple(sorted(zip(mode_vertex, modes)))
            key = (cartan, tuple(u), tuple(v))
            s0 = terms.get(key)
            s0 = coeff if s0 is None else s0 + coeff
            if s0 == 0:
                terms.pop(key, None)
            else:
                terms[key] = s0
    return MixedTensor(el.side, (nA, nB), (dA, dB), terms)


def _compositions_with_mins(total: int, mins: list[int]):
    if not mins:
        if total == 0:
            yield ()
        return
    rest_min = sum(mins[1:])
    for w in range(mins[0], total - rest_min + 1):
        for tail in _compositions_with_mins(total - w, mins[1:]):
            yield (w,) + tail


def check_membership(algebra: ShuffleAlgebra, el: ShuffleElement, m: SlopeVector) -> None:
    """Raise unless el belongs to the slope subalgebra's graded piece."""
    if el.is_zero():
        return
    d = el.vdeg()
    hd = el.hdeg()
    if Fraction(d) != dot(m, hd):
        raise ValueError(f"naive slope of ({hd},{d}) is not exactly {m}")
    if not has_slope_leq(algebra.quiver, el, m):
        raise ValueError("element fails the slope bound")
    ok, witness = algebra.wheel_check(el)
    if not ok:
        raise ValueError(f"element fails a wheel condition: {witness}")


def delta_m(
    algebra: ShuffleAlgebra, el: ShuffleElement, m: SlopeVector
) -> list[tuple[tuple[int, ...], MixedTensor]]:
    """Slope coproduct: the leading naive-slope components, h-dressed.

    Returns (k, component at bidegrees ((k, m.k), (n-k, m.(n-k)))) for every
    split with both leg degrees integral; the Cartan dressing must come out
    as pure zero modes (h_{n-k} on the plus side), which is asserted.
    """
    check_membership(algebra, el, m)
    if el.is_zero():
        return []
    n = el.shape
    sgn = 1 if el.side == PLUS else -1
    out = []
    import itertools

    for k in itertools.product(*(range(x + 1) for x in n)):
        nk = tuple(a - b for a, b in zip(n, k))
        dk = dot(m, k)
        if dk.denominator != 1:
            continue
        comp = coproduct_component(
            algebra, el, (k, sgn * int(dk)), (nk, sgn * int(dot(m, nk)))
        )
        for cartan in comp.cartan_words():
            if any(p != 0 for _, p in cartan):
                raise AssertionError(
                    f"slope coproduct component at split {k} carries a higher Cartan mode"
                )
        out.append((k, comp))
    return out


def primitive_check(algebra: ShuffleAlgebra, el: ShuffleElement, m: SlopeVector) -> bool:
    """True iff the slope coproduct has only the two extreme summands."""
    n = el.shape
    for k, comp in delta_m(algebra, el, m):
        if k == n or all(x == 0 for x in k):
            continue
        if not comp.is_zero():
            return False
    return True


def delta_m_pairing_plus(
    algebra: ShuffleAlgebra,
    a: ShuffleElement,
    b1: ShuffleElement,
    b2: ShuffleElement,
    m: SlopeVector,
):
    """Both sides of <a, b1 b2> = <Delta_m(a), b1 (x) b2> on slope pieces."""
    from .pairing import pair_cartan_words, pair_elements, pair_raw_plus_word
    from .words import express_in_words

    lhs = pair_elements(algebra, a, algebra.shuffle_product(b1, b2))
    k1, k2 = b1.shape, b2.shape
    n = a.shape
    rhs = algebra.field.zero
    if tuple(x + y for x, y in zip(k1, k2)) != n:
        return lhs, rhs
    comps = dict(delta_m(algebra, a, m))
    comp = comps.get(k1)
    if comp is None or comp.is_zero():
        return lhs, rhs
    nk = tuple(x - y for x, y in zip(n, k1))
    hh = pair_cartan_words(
        algebra,
        tuple((i, 0) for i in range(len(n)) for _ in range(nk[i])),
        tuple((j, 0) for j in range(len(n)) for _ in range(k1[j])),
    )
    w1 = express_in_words(algebra, b1)
    w2 = express_in_words(algebra, b2)
    for (cartan, u, v), c in comp.terms.items():
        s1 = algebra.field.zero
        for cw, w in w1:
            s1 = s1 + cw * pair_raw_plus_word(algebra, {u: algebra.field.one}, k1, w)
        if s1 == 0:
            continue
        s2 = algebra.field.zero
        for cw, w in w2:
            s2 = s2 + cw * pair_raw_plus_word(algebra, {v: algebra.field.one}, k2, w)
        rhs = rhs + c * s1 * s2
    return lhs, hh * rhs


def delta_m_pairing_minus(
    algebra: ShuffleAlgebra,
    a1: ShuffleElement,
    a2: ShuffleElement,
    b: ShuffleElement,
    m: SlopeVector,
):
    """Both sides of <a1 a2, b> = <a1 (x) a2, Delta_m^op(b)> on slope pieces."""
    from .pairing import pair_elements, pair_eword_raw_minus
    from .words import express_in_words

    lhs = pair_elements(algebra, algebra.shuffle_product(a1, a2), b)
    k1, k2 = a1.shape, a2.shape
    n = b.shape
    rhs = algebra.field.zero
    if tuple(x + y for x, y in zip(k1, k2)) != n:
        return lhs, rhs
    comps = dict(delta_m(algebra, b, m))
    comp = comps.get(k2)  # first leg of Delta(b) pairs with a2
    if comp is None or comp.is_zero():
        return lhs, rhs
    e1 = express_in_words(algebra, a1)
    e2 = express_in_words(algebra, a2)
    for (cartan, u, v), c in comp.terms.items():
        s2 = algebra.field.zero
        for cw, w in e2:
            s2 = s2 + cw * pair_eword_raw_minus(algebra, w, {u: algebra.field.one}, k2)
        if s2 == 0:
            continue
        s1 = algebra.field.zero
        for cw, w in e1:
            s1 = s1 + cw * pair_eword_raw_minus(algebra, w, {v: algebra.field.one}, k1)
        rhs = rhs + c * s1 * s2
    return lhs, rhs
