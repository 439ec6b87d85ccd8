"""The shuffle algebra of a doubled quiver.

``ShuffleAlgebra`` bundles a quiver with a coefficient field and provides the
zeta factors, the shuffle product, wheel conditions and shift automorphisms.
Elements are symmetric Laurent polynomials tagged with a side: "+" for the
algebra itself, "-" for its opposite (same underlying space, reversed
product, negated horizontal grading).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .fields import Scalar
from .laurent import (
    RawTable,
    SymLaurent,
    divide_linear,
    offsets_of,
    raw_add,
    raw_mul_ratio_poly,
    substitute,
)
from .quiver import Quiver
from .series import LPoly, SeriesExpansion, lp_mul, lp_substitute_inverse

PLUS = "+"
MINUS = "-"


@dataclass(frozen=True)
class ZetaFactor:
    """zeta_{ij}(x) as an exact ratio of univariate Laurent polynomials."""

    numerator: LPoly
    denominator: LPoly


@dataclass(frozen=True)
class ShuffleElement:
    side: str
    poly: SymLaurent

    @property
    def shape(self) -> tuple[int, ...]:
        return self.poly.shape

    def hdeg(self) -> tuple[int, ...]:
        sgn = 1 if self.side == PLUS else -1
        return tuple(sgn * n for n in self.poly.shape)

    def vdeg(self) -> int:
        return self.poly.vdeg()

    def bidegree(self) -> tuple[tuple[int, ...], int]:
        return (self.hdeg(), self.vdeg())

    def is_zero(self) -> bool:
        return self.poly.is_zero()


class ShuffleAlgebra:
    def __init__(self, quiver: Quiver, field):
        self.quiver = quiver
        self.field = field
        self._zeta_cache: dict[tuple[int, int], ZetaFactor] = {}
        self._inv_zeta_series: dict[tuple[int, int], SeriesExpansion] = {}
        self._hh_series: dict[tuple[int, int], SeriesExpansion] = {}
        self.word_cache: dict[tuple, SymLaurent] = {}

    # -- scalars --------------------------------------------------------------

    def one(self) -> Scalar:
        return self.field.one

    def unit(self, side: str = PLUS) -> ShuffleElement:
        return ShuffleElement(side, SymLaurent.unit(self.quiver.vertex_count, self.field.one))

    def generator(self, side: str, i: int, d: int) -> ShuffleElement:
        """e_{i,d} (side +) or f_{i,d} (side -): z_{i,1}^d in shape varsigma^i."""
        shape = tuple(1 if j == i else 0 for j in range(self.quiver.vertex_count))
        return ShuffleElement(side, SymLaurent(shape, {(d,): self.field.one}))

    # -- zeta factors ----------------------------------------------------------

    def zeta(self, i: int, j: int) -> ZetaFactor:
        zf = self._zeta_cache.get((i, j))
        if zf is not None:
            return zf
        F = self.field
        one = F.one
        delta = 1 if i == j else 0
        num: LPoly = {0: one}
        if delta:
            num = lp_mul(num, {0: one, 1: -one / F.q})
        for e in self.quiver.edge_ids(i, j):
            num = lp_mul(num, {0: one / F.t_edge(e), 1: -one})
        for e in self.quiver.edge_ids(j, i):
            num = lp_mul(num, {0: one, -1: -F.t_edge(e) / F.q})
        den: LPoly = {0: one}
        if delta:
            den = {0: one, 1: -one}
        zf = ZetaFactor(num, den)
        self._zeta_cache[(i, j)] = zf
        return zf

    def zeta_ratio_poly(self, i: int, j: int) -> tuple[LPoly, int]:
        """zeta_{ij} split as (Laurent numerator P, diagonal power delta_ij):
        zeta_{ij}(x) = P(x) / (1-x)^delta."""
        zf = self.zeta(i, j)
        return zf.numerator, (1 if i == j else 0)

    def inv_zeta_series(self, i: int, j: int) -> SeriesExpansion:
        """Series of 1/zeta_{ij}(x) around x = 0 (lowest order #_{ji})."""
        s = self._inv_zeta_series.get((i, j))
        if s is None:
            zf = self.zeta(i, j)
            s = SeriesExpansion(zf.denominator, zf.numerator)
            self._inv_zeta_series[(i, j)] = s
        return s

    def hh_series(self, i: int, j: int) -> SeriesExpansion:
        """<h_i^+(z), h_j^-(w)> = zeta_{ij}(z/w)/zeta_{ji}(w/z) as a series in
        x = w/z around 0; coefficient of x^p is the mode pairing <h_{i,p}, h_{j,-p}>."""
        s = self._hh_series.get((i, j))
        if s is None:
            zij = self.zeta(i, j)
            zji = self.zeta(j, i)
            num = lp_mul(lp_substitute_inverse(zij.numerator), zji.denominator)
            den = lp_mul(lp_substitute_inverse(zij.denominator), zji.numerator)
            s = SeriesExpansion(num, den)
            self._hh_series[(i, j)] = s
        return s

    def gamma_const(self, i: int) -> Scalar:
        F = self.field
        one = F.one
        acc = one
        for e in self.quiver.loops_at(i):
            t = F.t_edge(e)
            acc = acc * (one / t - one) * (one - t / F.q)
        return acc / (one - one / F.q)

    def h_exchange_scalar(self, j: int, n: tuple[int, ...]) -> Scalar:
        """Scalar X_j(n) with F h_{j,+0} = h_{j,+0} F X_j(n) for F of horizontal degree n."""
        F = self.field
        acc = F.one
        for i, ni in enumerate(n):
            if ni == 0:
                continue
            base = F.one
            if i == j:
                base = base * F.q
            for e in self.quiver.edge_ids(i, j):
                base = base / F.t_edge(e)
            for e in self.quiver.edge_ids(j, i):
                base = base * F.t_edge(e) / F.q
            acc = acc * base**ni
        return acc

    # -- shuffle product ---------------------------------------------------------

    def shuffle_product(self, A: ShuffleElement, B: ShuffleElement) -> ShuffleElement:
        if A.side != B.side:
            raise ValueError("shuffle product requires same-side elements")
        if A.side == PLUS:
            poly = self._shuffle_polys(A.poly, B.poly)
        else:
            poly = self._shuffle_polys(B.poly, A.poly)  # opposite algebra
        return ShuffleElement(A.side, poly)

    def product_many(self, elements: list[ShuffleElement]) -> ShuffleElement:
        if not elements:
            return self.unit()
        acc = elements[0]
        for el in elements[1:]:
            acc = self.shuffle_product(acc, el)
        return acc

    def _shuffle_polys(self, F: SymLaurent, G: SymLaurent) -> SymLaurent:
        nI = self.quiver.vertex_count
        nF, nG = F.shape, G.shape
        if len(nF) != nI or len(nG) != nI:
            raise ValueError("shape does not match quiver")
        if F.is_zero() or G.is_zero():
            return SymLaurent.zero(tuple(a + b for a, b in zip(nF, nG)))
        shape = tuple(a + b for a, b in zip(nF, nG))
        offs = offsets_of(shape)
        offsF = offsets_of(nF)
        offsG = offsets_of(nG)
        rawF = F.expand_raw()
        rawG = G.expand_raw()

        total: RawTable = {}
        for assignment, sign in self._cosets(nF, shape):
            # assignment[i] = sorted tuple of merged slots (within block i) for F's variables
            posF: list[int] = []
            posG: list[int] = []
            for i in range(nI):
                inS = set(assignment[i])
                posF.extend(offs[i] + a for a in assignment[i])
                posG.extend(offs[i] + a for a in range(shape[i]) if a not in inS)
            # base product F(z_posF) * G(z_posG)
            raw: RawTable = {}
            for eF, cF in rawF.items():
                for eG, cG in rawG.items():
                    exps = [0] * sum(shape)
                    for v, x in zip(posF, eF):
                        exps[v] = x
                    for v, x in zip(posG, eG):
                        exps[v] = x
                    key = tuple(exps)
                    s = raw.get(key)
                    c = cF * cG
                    raw[key] = c if s is None else s + c
            # cross zeta numerators; same-vertex pairs also clear the (1 - z_u/z_v)
            # denominator against the global Vandermonde (handled via `sign` and the
            # non-cross linear factors below)
            for i in range(nI):
                for a in range(nF[i]):
                    u = posF[offsF[i] + a]
                    for j in range(nI):
                        P, delta = self.zeta_ratio_poly(i, j)
                        for b in range(nG[j]):
                            v = posG[offsG[j] + b]
                            raw = raw_mul_ratio_poly(raw, u, v, P)
                            if delta:
                                raw = {
                                    k[:v] + (k[v] + 1,) + k[v + 1 :]: c for k, c in raw.items()
                                }  # times z_v from (1 - z_u/z_v) = (z_v - z_u)/z_v
            # multiply the non-cross factors of the Vandermonde
            for i in range(nI):
                inS = set(assignment[i])
                for a, b in combinations(range(shape[i]), 2):
                    if (a in inS) == (b in inS):
                        u, v = offs[i] + a, offs[i] + b
                        nxt: RawTable = {}
                        for k, c in raw.items():
                            e1 = k[:u] + (k[u] + 1,) + k[u + 1 :]
                            s = nxt.get(e1)
                            nxt[e1] = c if s is None else s + c
                            e2 = k[:v] + (k[v] + 1,) + k[v + 1 :]
                            s = nxt.get(e2)
                            mc = -c
                            nxt[e2] = mc if s is None else s + mc
                        raw = {k: c for k, c in nxt.items() if c != 0}
            if sign < 0:
                raw = {k: -c for k, c in raw.items()}
            raw_add(total, raw)

        # divide by the full Vandermonde, pair by pair (must be exact)
        for i in range(nI):
            for a, b in combinations(range(shape[i]), 2):
                try:
                    total = divide_linear(total, offs[i] + a, offs[i] + b)
                except ArithmeticError as exc:
                    raise ArithmeticError(
                        "shuffle product: residual diagonal denominator survived symmetrization"
                    ) from exc
        return SymLaurent.from_raw(total, shape, check=True)

    @staticmethod
    def _cosets(nF: tuple[int, ...], shape: tuple[int, ...]):
        """Shuffle coset representatives: per vertex choose which merged slots
        receive F's variables.  Yields (assignment, sign) with sign = (-1)^c,
        c = #{u < v in the same block : u is an F-slot, v a G-slot}."""

        def per_vertex(i: int):
            out = []
            for S in combinations(range(shape[i]), nF[i]):
                inS = set(S)
                c = sum(1 for u in S for v in range(u + 1, shape[i]) if v not in inS)
                out.append((S, c))
            return out

        choices = [per_vertex(i) for i in range(len(shape))]

        def rec(i: int, acc: list, csum: int):
            if i == len(choices):
                yield (tuple(acc), -1 if csum % 2 else 1)
                return
            for S, c in choices[i]:
                acc.append(S)
                yield from rec(i + 1, acc, csum + c)
                acc.pop()

        yield from rec(0, [], 0)

    # -- wheel conditions ---------------------------------------------------------

    def wheel_substitutions(self, shape: tuple[int, ...]):
        """All canonical wheel specializations for this quiver at the given shape.

        Yields (edge_id, pattern, assignment) where assignment maps flat variable
        indices to (scalar, target index).  Pattern 1 is z_{ia} = q z_{jb}/t_e
        = q z_{ic}; pattern 2 is z_{ja} = t_e z_{ib} = q z_{jc}.  One canonical
        index triple per (edge, pattern) suffices by symmetry.
        """
        offs = offsets_of(shape)
        F = self.field
        for e, (i, j) in enumerate(self.quiver.edges):
            t = F.t_edge(e)
            if i == j:
                if shape[i] >= 3:
                    base = offs[i]
                    w = base + 2
                    yield e, 1, {base: (F.q, w), base + 1: (t, w)}
                    yield e, 2, {base: (F.q, w), base + 1: (F.q / t, w)}
            else:
                if shape[i] >= 2 and shape[j] >= 1:
                    w = offs[i] + 1
                    yield e, 1, {offs[i]: (F.q, w), offs[j]: (t, w)}
                if shape[j] >= 2 and shape[i] >= 1:
                    w = offs[j] + 1
                    yield e, 2, {offs[j]: (F.q, w), offs[i]: (F.q / t, w)}

    def wheel_check(self, el: ShuffleElement) -> tuple[bool, tuple | None]:
        """True iff every wheel specialization of the polynomial vanishes.

        On failure returns (False, (edge_id, pattern, monomial)) for the first
        surviving raw monomial.  Zero testing happens on the raw substituted
        table, term by term.
        """
        F = el.poly
        for e, pattern, assignment in self.wheel_substitutions(F.shape):
            raw = substitute(F, assignment)
            if raw:
                witness = min(raw)
                return False, (e, pattern, witness)
        return True, None

    # -- shift automorphisms ---------------------------------------------------

    def tau_shift(self, el: ShuffleElement, k: tuple[int, ...]) -> ShuffleElement:
        sgn = 1 if el.side == PLUS else -1
        return ShuffleElement(el.side, el.poly.shift_all(tuple(sgn * x for x in k)))


def as_fraction_str(x: Scalar) -> str:
    if isinstance(x, Fraction):
        return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)
    return str(x)
