"""Exact coefficient fields.

Two interchangeable modes:

* ``SpecializedField(quiver, seed)`` -- the workhorse.  The deformation
  parameters q and t_e are drawn as random positive rationals with numerator
  and denominator bounded by 10**4 from a seeded generator, and every scalar
  is a ``fractions.Fraction``.  Draws are rejected until q and the t_e are
  multiplicatively independent, so no monomial q^a * prod t_e^(b_e) equals 1
  except trivially (checked via the rank of the p-adic valuation matrix,
  which rules out relations of every exponent size, in particular all those
  with |a|, |b_e| <= relation_bound).

* ``ExactRationalField(quiver)`` -- slow reference mode.  Scalars are exact
  multivariate rational functions in formal symbols q, t_0, t_1, ... held as
  sympy field elements.

Scalars from either field support +, -, *, /, ** and exact equality; code
elsewhere is generic over them.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Any

from sympy import QQ
from sympy.polys.fields import field as _sympy_field

from .quiver import Quiver

Scalar = Any  # Fraction in specialized mode, sympy FracElement in exact mode

PARAM_BOUND = 10**4
DEFAULT_RELATION_BOUND = 12


def _factor_small(n: int) -> dict[int, int]:
    """Prime factorization of n <= 10**8 by trial division."""
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _valuation_vectors(values: list[Fraction]) -> tuple[list[int], list[list[int]]]:
    primes: set[int] = set()
    facs = []
    for v in values:
        fn = _factor_small(v.numerator)
        fd = _factor_small(v.denominator)
        facs.append((fn, fd))
        primes.update(fn)
        primes.update(fd)
    plist = sorted(primes)
    rows = []
    for fn, fd in facs:
        rows.append([fn.get(p, 0) - fd.get(p, 0) for p in plist])
    return plist, rows


def _rational_rank(rows: list[list[int]]) -> int:
    """Rank over Q of an integer matrix (small; plain elimination)."""
    mat = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    for col in range(ncols):
        piv = None
        for r in range(rank, len(mat)):
            if mat[r][col] != 0:
                piv = r
                break
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        inv = 1 / prow[col]
        for r in range(rank + 1, len(mat)):
            if mat[r][col] != 0:
                f = mat[r][col] * inv
                mat[r] = [a - f * b for a, b in zip(mat[r], prow)]
        rank += 1
    return rank


def multiplicatively_independent(values: list[Fraction]) -> bool:
    """True iff the positive rationals admit no nontrivial relation
    prod v_i^{c_i} = 1 with integer exponents (of any size)."""
    if any(v <= 0 or v == 1 for v in values):
        return False
    _, rows = _valuation_vectors(values)
    return _rational_rank(rows) == len(values)


class SpecializedField:
    """Coefficient field Q with a seeded generic specialization of q, t_e."""

    mode = "specialized"

    def __init__(self, quiver: Quiver, seed: int, relation_bound: int = DEFAULT_RELATION_BOUND):
        self.quiver = quiver
        self.seed = seed
        self.relation_bound = relation_bound
        rng = random.Random(seed)
        while True:
            vals = [self._draw(rng) for _ in range(1 + quiver.edge_count)]
            if vals[0] in (0, 1, -1) or any(v == 0 for v in vals[1:]):
                continue
            if multiplicatively_independent(vals):
                break
        self.q: Fraction = vals[0]
        self.t: tuple[Fraction, ...] = tuple(vals[1:])
        self.zero = Fraction(0)
        self.one = Fraction(1)

    @staticmethod
    def _draw(rng: random.Random) -> Fraction:
        return Fraction(rng.randint(1, PARAM_BOUND), rng.randint(1, PARAM_BOUND))

    def t_edge(self, e: int) -> Fraction:
        return self.t[e]

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def from_fraction(self, f: Fraction) -> Fraction:
        return f

    def is_zero(self, x: Fraction) -> bool:
        return x == 0

    def __repr__(self) -> str:
        return f"SpecializedField(seed={self.seed}, q={self.q}, t={self.t})"


class ExactRationalField:
    """Reference field Q(q, t_e): sympy rational functions, exact and slow."""

    mode = "exact"

    def __init__(self, quiver: Quiver):
        self.quiver = quiver
        names = ["q"] + [f"t{e}" for e in range(quiver.edge_count)]
        ring, *gens = _sympy_field(names, QQ)
        self._ring = ring
        self.q = gens[0]
        self.t = tuple(gens[1:])
        self.zero = ring.zero
        self.one = ring.one

    def t_edge(self, e: int):
        return self.t[e]

    def from_int(self, n: int):
        return self._ring.ground_new(QQ(n))

    def from_fraction(self, f: Fraction):
        return self._ring.ground_new(QQ(f.numerator, f.denominator))

    def is_zero(self, x) -> bool:
        return not x

    def evaluate(self, x, at: SpecializedField) -> Fraction:
        """Evaluate an exact-mode scalar at a specialization's q, t_e."""
        vals = [at.q, *at.t]

        def ev_poly(p) -> Fraction:
            total = Fraction(0)
            for monom, coeff in p.terms():
                c = Fraction(int(coeff.numerator), int(coeff.denominator))
                for v, ex in zip(vals, monom):
                    if ex:
                        c *= v**ex
                total += c
            return total

        den = ev_poly(x.denom)
        if den == 0:
            raise ZeroDivisionError("specialization hits a pole of the exact scalar")
        return ev_poly(x.numer) / den

    def __repr__(self) -> str:
        return f"ExactRationalField(edges={self.quiver.edge_count})"


def make_field(quiver: Quiver, seed: int | None = None, exact: bool = False):
    if exact:
        return ExactRationalField(quiver)
    if seed is None:
        raise ValueError("seeded mode requires a seed")
    return SpecializedField(quiver, seed)
