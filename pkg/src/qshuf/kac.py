"""Kac polynomials and the dimension-conjecture harness.

Two independent routes to the count of absolutely indecomposable
representations over a finite field:

* ``kac_hua`` -- the partition-indexed generating function for the stack
  count, followed by plethystic log extraction.  All internal sums are exact
  univariate rational functions in an auxiliary variable t; the final
  coefficients must come out as polynomials with nonnegative integer
  coefficients, and anything else aborts.

* ``kac_bruteforce`` -- exhaustive enumeration of matrix tuples over F_q,
  bucketed into isomorphism classes by orbit exploration under the
  base-change group, with absolute indecomposability read off from the
  endomorphism algebra (local with residue field F_q, i.e. every
  endomorphism is a scalar plus a nilpotent).

``check_conjecture`` compares the graded character of the slope-0 subalgebra
against Exp of the Kac generating series at t = 1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, gcd

from .quiver import Quiver

# -- univariate exact rational functions in t ---------------------------------

QP = dict[int, Fraction]  # polynomial in t, exponent -> coefficient


def qp_norm(p: QP) -> QP:
    return {e: c for e, c in p.items() if c != 0}


def qp_add(a: QP, b: QP) -> QP:
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, Fraction(0)) + c
        if s == 0:
            out.pop(e, None)
        else:
            out[e] = s
    return out


def qp_mul(a: QP, b: QP) -> QP:
    out: QP = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            s = out.get(e, Fraction(0)) + ca * cb
            if s == 0:
                out.pop(e, None)
            else:
                out[e] = s
    return out


def qp_scale(a: QP, c: Fraction) -> QP:
    if c == 0:
        return {}
    return {e: v * c for e, v in a.items()}


def qp_divmod(a: QP, b: QP) -> tuple[QP, QP]:
    if not b:
        raise ZeroDivisionError
    out: QP = {}
    rem = dict(a)
    db = max(b)
    lb = b[db]
    while rem and max(rem) >= db:
        da = max(rem)
        f = rem[da] / lb
        out[da - db] = f
        for eb, cb in b.items():
            e = da - db + eb
            s = rem.get(e, Fraction(0)) - f * cb
            if s == 0:
                rem.pop(e, None)
            else:
                rem[e] = s
    return out, rem


def qp_gcd(a: QP, b: QP) -> QP:
    a, b = dict(a), dict(b)
    while b:
        _, r = qp_divmod(a, b)
        a, b = b, r
    if not a:
        return {0: Fraction(1)}
    lead = a[max(a)]
    return {e: c / lead for e, c in a.items()}


def qp_subs_pow(a: QP, k: int) -> QP:
    return {e * k: c for e, c in a.items()}


class QRat:
    """Reduced quotient of polynomials in t over Q."""

    __slots__ = ("num", "den")

    def __init__(self, num: QP, den: QP | None = None, reduce: bool = True):
        if den is None:
            den = {0: Fraction(1)}
        if not den:
            raise ZeroDivisionError
        if not num:
            self.num, self.den = {}, {0: Fraction(1)}
            return
        if reduce:
            g = qp_gcd(num, den)
            if g != {0: Fraction(1)}:
                num, _ = qp_divmod(num, g)
                den, _ = qp_divmod(den, g)
            lead = den[max(den)]
            if lead != 1:
                num = qp_scale(num, 1 / lead)
                den = qp_scale(den, 1 / lead)
        self.num, self.den = num, den

    @staticmethod
    def const(c: Fraction | int) -> "QRat":
        c = Fraction(c)
        return QRat({0: c} if c else {}, None, reduce=False)

    @staticmethod
    def t_power(e: int) -> "QRat":
        if e >= 0:
            return QRat({e: Fraction(1)}, None, reduce=False)
        return QRat({0: Fraction(1)}, {-e: Fraction(1)}, reduce=False)

    def __add__(self, other: "QRat") -> "QRat":
        return QRat(
            qp_add(qp_mul(self.num, other.den), qp_mul(other.num, self.den)),
            qp_mul(self.den, other.den),
        )

    def __sub__(self, other: "QRat") -> "QRat":
        return self + other.scale(Fraction(-1))

    def __mul__(self, other: "QRat") -> "QRat":
        return QRat(qp_mul(self.num, other.num), qp_mul(self.den, other.den))

    def scale(self, c: Fraction) -> "QRat":
        return QRat(qp_scale(self.num, c), dict(self.den), reduce=False)

    def subs_pow(self, k: int) -> "QRat":
        return QRat(qp_subs_pow(self.num, k), qp_subs_pow(self.den, k))

    def is_zero(self) -> bool:
        return not self.num

    def as_polynomial(self) -> QP:
        q, r = qp_divmod(self.num, self.den)
        if r:
            raise ArithmeticError("rational function is not a polynomial")
        return q

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, QRat)
            and qp_norm(self.num) == qp_norm(other.num)
            and qp_norm(self.den) == qp_norm(other.den)
        )

    def __repr__(self) -> str:
        return f"QRat({self.num}/{self.den})"


# -- partitions ----------------------------------------------------------------


def partitions(s: int) -> list[tuple[int, ...]]:
    if s == 0:
        return [()]
    out = []

    def rec(rem: int, top: int, acc: list[int]):
        if rem == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rem, top), 0, -1):
            acc.append(part)
            rec(rem - part, part, acc)
            acc.pop()

    rec(s, s, [])
    return out


def conjugate_pairing(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """<lam, mu> = sum_k lam'_k mu'_k over conjugate parts."""
    if not lam or not mu:
        return 0
    top = min(lam[0], mu[0])
    total = 0
    for k in range(1, top + 1):
        total += sum(1 for p in lam if p >= k) * sum(1 for p in mu if p >= k)
    return total


def _b_inverse_factor(lam: tuple[int, ...]) -> tuple[int, QP]:
    """1 / b_lam(t^{-1}) as (extra numerator t-power, denominator poly)."""
    extra = 0
    den: QP = {0: Fraction(1)}
    mult: dict[int, int] = {}
    for p in lam:
        mult[p] = mult.get(p, 0) + 1
    for _, mk in mult.items():
        for j in range(1, mk + 1):
            extra += j
            den = qp_mul(den, {j: Fraction(1), 0: Fraction(-1)})
    return extra, den


def _mobius(k: int) -> int:
    if k == 1:
        return 1
    out = 1
    d = 2
    while d * d <= k:
        if k % d == 0:
            k //= d
            if k % d == 0:
                return 0
            out = -out
        d += 1
    if k > 1:
        out = -out
    return out


# -- Hua's generating function ---------------------------------------------------


@dataclass
class KacPoly:
    quiver: Quiver
    n: tuple[int, ...]
    coefficients: list[int]  # coefficients[d] multiplies t^d

    def at_one(self) -> int:
        return sum(self.coefficients)

    def __call__(self, t: int) -> int:
        return sum(c * t**d for d, c in enumerate(self.coefficients))


DEFAULT_HUA_BOUND = 6


def hua_kac_table(
    quiver: Quiver, n_max: tuple[int, ...], per_vertex_bound: int = DEFAULT_HUA_BOUND
) -> dict[tuple[int, ...], KacPoly]:
    """Kac polynomials for all 0 < n <= n_max via the stack-count generating function."""
    for x in n_max:
        if x > per_vertex_bound:
            raise ValueError(
                f"dimension bound {x} exceeds the configured Hua bound {per_vertex_bound}"
            )
    nI = quiver.vertex_count
    box = list(itertools.product(*(range(x + 1) for x in n_max)))

    # P[n]: sum over multipartitions with |lam^i| = n_i
    per_vertex_parts = [
        {s: partitions(s) for s in range(n_max[i] + 1)} for i in range(nI)
    ]
    P: dict[tuple[int, ...], QRat] = {n: QRat.const(0) for n in box}
    for n in box:
        for multi in itertools.product(*(per_vertex_parts[i][n[i]] for i in range(nI))):
            E = 0
            for s, t in quiver.edges:
                E += conjugate_pairing(multi[s], multi[t])
            for i in range(nI):
                E -= conjugate_pairing(multi[i], multi[i])
            extra = 0
            den: QP = {0: Fraction(1)}
            for i in range(nI):
                ex, dn = _b_inverse_factor(multi[i])
                extra += ex
                den = qp_mul(den, dn)
            etot = E + extra
            num: QP = {etot: Fraction(1)} if etot >= 0 else {0: Fraction(1)}
            if etot < 0:
                den = qp_mul(den, {-etot: Fraction(1)})
            P[n] = P[n] + QRat(num, den)

    # L = ordinary log of P (truncated); P has constant term 1
    zero = tuple(0 for _ in range(nI))
    assert P[zero] == QRat.const(1)
    P1 = dict(P)
    P1[zero] = QRat.const(0)
    L: dict[tuple[int, ...], QRat] = {n: QRat.const(0) for n in box}
    power = {n: QRat.const(1) if n == zero else QRat.const(0) for n in box}
    max_total = sum(n_max)
    for k in range(1, max_total + 1):
        power = _series_mul(power, P1, box)
        sign = Fraction((-1) ** (k + 1), k)
        for n in box:
            if not power[n].is_zero():
                L[n] = L[n] + power[n].scale(sign)

    # plethystic log and the (t-1) normalization
    table: dict[tuple[int, ...], KacPoly] = {}
    tm1 = QRat({1: Fraction(1), 0: Fraction(-1)}, None, reduce=False)
    for n in box:
        if n == zero:
            continue
        f = QRat.const(0)
        g = 0
        for x in n:
            g = gcd(g, x)
        for k in range(1, g + 1):
            if k > 1 and any(x % k for x in n):
                continue
            mu = _mobius(k)
            if mu == 0:
                continue
            nk = tuple(x // k for x in n)
            f = f + L[nk].subs_pow(k).scale(Fraction(mu, k))
        A = tm1 * f
        poly = A.as_polynomial()  # aborts if the sum is not a polynomial
        coeffs: list[int] = []
        if poly:
            top = max(poly)
            coeffs = [0] * (top + 1)
            for e, c in poly.items():
                if c.denominator != 1:
                    raise ArithmeticError(f"Kac coefficient at {n} is not an integer: {poly}")
                coeffs[e] = int(c)
        if any(c < 0 for c in coeffs):
            raise ArithmeticError(f"Kac polynomial at {n} has a negative coefficient: {coeffs}")
        table[n] = KacPoly(quiver, n, coeffs)
    return table


def _series_mul(a, b, box):
    out = {n: QRat.const(0) for n in box}
    for na, ca in a.items():
        if ca.is_zero():
            continue
        for nb, cb in b.items():
            if cb.is_zero():
                continue
            n = tuple(x + y for x, y in zip(na, nb))
            if n in out:
                out[n] = out[n] + ca * cb
    return out


def kac_hua(quiver: Quiver, n: tuple[int, ...], per_vertex_bound: int = DEFAULT_HUA_BOUND) -> KacPoly:
    return hua_kac_table(quiver, n, per_vertex_bound)[n]


# -- truncated integer power series in z_i --------------------------------------


@dataclass(eq=False)
class TruncSeries:
    box: tuple[int, ...]
    coeffs: dict[tuple[int, ...], int] = field(default_factory=dict)
    methods: dict = field(default_factory=dict)  # optional per-coefficient provenance

    def coeff(self, n: tuple[int, ...]) -> int:
        return self.coeffs.get(tuple(n), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncSeries) or self.box != other.box:
            return False
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(k) == other.coeff(k) for k in keys)


def plethystic_exp(series: TruncSeries) -> TruncSeries:
    """Exp of a series with zero constant term and nonnegative coefficients:
    the truncated expansion of prod_n (1 - z^n)^{-d_n}."""
    zero = tuple(0 for _ in series.box)
    if series.coeff(zero) != 0:
        raise ValueError("plethystic exp needs zero constant term")
    box = series.box
    out = {zero: 1}
    for n, d in sorted(series.coeffs.items()):
        if n == zero or d == 0:
            continue
        if d < 0:
            raise ValueError(f"negative multiplicity {d} at {n}")
        jmax = min((b // x for b, x in zip(box, n) if x > 0), default=0)
        factor = {}
        for j in range(jmax + 1):
            key = tuple(j * x for x in n)
            factor[key] = comb(d - 1 + j, j)
        nxt: dict[tuple[int, ...], int] = {}
        for ka, ca in out.items():
            for kb, cb in factor.items():
                k = tuple(x + y for x, y in zip(ka, kb))
                if all(x <= b for x, b in zip(k, box)):
                    nxt[k] = nxt.get(k, 0) + ca * cb
        out = nxt
    return TruncSeries(box, out)


def kac_exp_series(quiver: Quiver, n_max: tuple[int, ...]) -> TruncSeries:
    """Exp[A_Q(1, z)] truncated at n_max."""
    table = hua_kac_table(quiver, n_max)
    inner = TruncSeries(n_max, {n: kp.at_one() for n, kp in table.items()})
    return plethystic_exp(inner)

def check_conjecture(
    quiver: Quiver,
    n_max: tuple[int, ...],
    seed: int = 7,
    trials: int = 3,
    jobs: int = 1,
    ceiling: int | None = None,
) -> dict:
    """Compare slope-0 graded dimensions against Exp of the Kac series.

    Returns the JSON-ready report; a mismatch is a finding recorded in the
    rows, never an exception.
    """
    from .harness import conjecture_report
    from .slopes import DEFAULT_CEILING

    return conjecture_report(
        quiver, n_max, seed, trials, jobs, DEFAULT_CEILING if ceiling is None else ceiling
    )
