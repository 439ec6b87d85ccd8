"""Univariate Laurent polynomials and power-series expansion of their ratios.

A Laurent polynomial in one formal variable x is a dict {exponent: scalar}.
``series_div`` expands num/den as an exact Laurent series around x = 0 up to
a requested order; this is the engine behind 1/zeta expansions, contour
pairings and h-series pairings.
"""

from __future__ import annotations

from .fields import Scalar

LPoly = dict[int, Scalar]


def lp_mul(a: LPoly, b: LPoly) -> LPoly:
    out: LPoly = {}
    for ka, ca in a.items():
        for kb, cb in b.items():
            k = ka + kb
            s = out.get(k)
            s = ca * cb if s is None else s + ca * cb
            if s == 0:
                out.pop(k, None)
            else:
                out[k] = s
    return out


def lp_many(factors: list[LPoly], one: Scalar) -> LPoly:
    out: LPoly = {0: one}
    for f in factors:
        out = lp_mul(out, f)
    return out


def lp_substitute_inverse(a: LPoly) -> LPoly:
    """x -> 1/x."""
    return {-k: c for k, c in a.items()}


def lp_pow(a: LPoly, n: int, one: Scalar) -> LPoly:
    out: LPoly = {0: one}
    for _ in range(n):
        out = lp_mul(out, a)
    return out


class SeriesExpansion:
    """Lazy Laurent-series expansion of num/den around x = 0."""

    def __init__(self, num: LPoly, den: LPoly):
        if not den:
            raise ZeroDivisionError("series denominator is zero")
        self.num = dict(num)
        self.den = dict(den)
        self._s = min(den)  # den = x^s * (c0 + c1 x + ...), c0 != 0
        self._c0 = den[self._s]
        self._inv: list[Scalar] = []  # coefficients of 1/(c0 + c1 x + ...)
        if not num:
            self.order = 0  # series is identically zero
            self._num_min = 0
        else:
            self._num_min = min(num)
            self.order = self._num_min - self._s  # lowest x-power of the series

    def _inv_coeff(self, k: int) -> Scalar:
        while len(self._inv) <= k:
            j = len(self._inv)
            if j == 0:
                self._inv.append(1 / self._c0)
            else:
                acc = None
                for i in range(1, j + 1):
                    c = self.den.get(self._s + i)
                    if c is None:
                        continue
                    term = c * self._inv[j - i]
                    acc = term if acc is None else acc + term
                if acc is None:
                    self._inv.append(self._c0 * 0)
                else:
                    self._inv.append(-acc / self._c0)
        return self._inv[k]

    def coeff(self, k: int) -> Scalar:
        """Coefficient of x^k in the expansion."""
        if not self.num or k < self.order:
            return self._c0 * 0
        acc = None
        for kn, cn in self.num.items():
            j = k - (kn - self._s)
            if j < 0:
                continue
            term = cn * self._inv_coeff(j)
            acc = term if acc is None else acc + term
        return self._c0 * 0 if acc is None else acc

    def coeffs_upto(self, kmax: int) -> dict[int, Scalar]:
        out = {}
        for k in range(self.order, kmax + 1):
            c = self.coeff(k)
            if c != 0:
                out[k] = c
        return out
