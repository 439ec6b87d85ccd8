"""Slope factorization of shuffle elements by hinge subtraction.

Every homogeneous plus-side element is a sum of ordered products of
elements of the slope subalgebras along a ray m + r*theta, with r strictly
increasing inside each product.  The algorithm finds the maximal bad hinge
of the coproduct, matches it with a product of lower-slope pieces times a
slope-piece basis element, subtracts, and recurses; termination is a strict
decrease in the (slope, |k|, k) order of the maximal bad hinge.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import PLUS, ShuffleAlgebra, ShuffleElement
from ..fields import Scalar
from ..laurent import SymLaurent, degree_profile
from ..linalg import solve_columns
from ..slopes import (
    DEFAULT_CEILING,
    SlopeVector,
    dot,
    edge_form,
    has_slope_leq,
    slope_basis,
)
from .coproduct import coproduct_component

ThetaVector = tuple[Fraction, ...]


@dataclass(frozen=True)
class Hinge:
    k: tuple[int, ...]
    e: int
    rho: Fraction  # solves e = (m + rho theta).k
    bad: bool

    def order_key(self) -> tuple:
        return (self.rho, sum(self.k), self.k)


# factorization terms: (coefficient, ((r_1, poly_1), ..., (r_s, poly_s)))
PBWTerm = tuple[Scalar, tuple[tuple[Fraction, SymLaurent], ...]]


def naive_slope_r(m: SlopeVector, theta: ThetaVector, n: tuple[int, ...], d: int) -> Fraction:
    """The unique r with (m + r theta).n = d (theta positive)."""
    tn = dot(theta, n)
    if tn == 0:
        raise ValueError("slope parameter undefined for n = 0")
    return (Fraction(d) - dot(m, n)) / tn


def bad_hinges(
    algebra: ShuffleAlgebra, el: ShuffleElement, m: SlopeVector, theta: ThetaVector
) -> list[Hinge]:
    """All bad hinges of a homogeneous plus element, in increasing order."""
    n = el.shape
    d = el.vdeg()
    r = naive_slope_r(m, theta, n, d)
    quiver = algebra.quiver
    out = []
    for k in itertools.product(*(range(x + 1) for x in n)):
        if all(x == 0 for x in k) or k == n:
            continue
        nk = tuple(a - b for a, b in zip(n, k))
        e_max = degree_profile(el.poly, k) - edge_form(quiver, k, nk)
        bound = dot(m, k) + r * dot(theta, k)
        e_min = _strict_floor(bound) + 1
        for e in range(e_min, e_max + 1):
            comp = coproduct_component(algebra, el, (nk, d - e), (k, e))
            if not comp.is_zero():
                rho = (Fraction(e) - dot(m, k)) / dot(theta, k)
                out.append(Hinge(k, e, rho, True))
    out.sort(key=Hinge.order_key)
    return out


def _strict_floor(x: Fraction) -> int:
    """Largest integer <= x (so the bad range starts at floor(x)+1 > x when x
    is an integer, and ceil(x) otherwise)."""
    return x.numerator // x.denominator


def pbw_decompose(
    algebra: ShuffleAlgebra,
    el: ShuffleElement,
    m: SlopeVector,
    theta: ThetaVector,
    ceiling: int = DEFAULT_CEILING,
    _check: bool = True,
) -> list[PBWTerm]:
    """Decompose F as sum_j c_j * (ordered product of slope pieces).

    Factors inside each term carry strictly increasing r; the ordered shuffle
    product of each term's factors, weighted by its coefficient, sums back to
    F exactly (verified before returning when _check is set).
    """
    if el.side != PLUS:
        raise ValueError("decomposition is implemented for plus-side elements")
    terms = _pbw_rec(algebra, el, m, theta, ceiling)
    if _check:
        _verify_remultiplication(algebra, el, terms)
    return terms


def _pbw_rec(
    algebra: ShuffleAlgebra,
    el: ShuffleElement,
    m: SlopeVector,
    theta: ThetaVector,
    ceiling: int,
) -> list[PBWTerm]:
    field = algebra.field
    if el.is_zero():
        return []
    n = el.shape
    if all(x == 0 for x in n):
        return [(el.poly.terms[()], ())]
    d = el.vdeg()
    r = naive_slope_r(m, theta, n, d)

    terms: list[PBWTerm] = []
    residual = el
    prev_key = None
    while True:
        hinges = bad_hinges(algebra, residual, m, theta)
        if not hinges:
            break
        top = hinges[-1]
        key = top.order_key()
        if prev_key is not None and key >= prev_key:
            raise RuntimeError(
                f"hinge subtraction failed to decrease the bad-hinge order at {top}"
            )
        prev_key = key
        k, e, rho = top.k, top.e, top.rho
        nk = tuple(a - b for a, b in zip(n, k))
        comp = coproduct_component(algebra, residual, (nk, d - e), (k, e))
        hk = tuple(sorted((i, 0) for i in range(len(n)) for _ in range(k[i])))
        for cartan in comp.cartan_words():
            if cartan != hk:
                raise AssertionError(
                    f"maximal hinge component carries Cartan word {cartan}, expected {hk}"
                )
        mrho = tuple(a + rho * b for a, b in zip(m, theta))
        piece = slope_basis(algebra.quiver, field, mrho, k, PLUS, ceiling)
        if piece.dim == 0:
            raise AssertionError(f"hinge slice lives in an empty slope piece at {k}, {rho}")
        columns = [b.expand_raw() for b in piece.basis]
        # express the second legs in the slope-piece basis, one first-leg
        # monomial at a time: comp = sum_t L_t (x) basis_t
        by_u: dict[tuple, dict] = {}
        for (_, u, v), c in comp.terms.items():
            by_u.setdefault(u, {})[v] = c
        L: list[dict] = [dict() for _ in piece.basis]
        for u, vmap in by_u.items():
            sol = solve_columns(columns, vmap, field.one)
            if sol is None:
                raise AssertionError(
                    "hinge second leg is not in the span of the slope piece"
                )
            for t, c in sol.items():
                if c != 0:
                    L[t][u] = c
        Lpolys = [SymLaurent.from_raw(Lt, nk, check=True) for Lt in L]
        G = SymLaurent.zero(n)
        for Lt, bt in zip(Lpolys, piece.basis):
            if Lt.is_zero():
                continue
            prod = algebra.shuffle_product(
                ShuffleElement(PLUS, Lt), ShuffleElement(PLUS, bt)
            )
            G = G + prod.poly
        Gel = ShuffleElement(PLUS, G)
        compG = coproduct_component(algebra, Gel, (nk, d - e), (k, e))
        gamma = comp.proportionality(compG)
        if gamma is None:
            raise AssertionError("hinge components of F and G are not proportional")
        # cross-check against the h-exchange closed form
        x = field.one
        for j in range(len(n)):
            if k[j]:
                x = x * algebra.h_exchange_scalar(j, nk) ** k[j]
        if gamma * x != field.one:
            raise AssertionError(
                f"hinge constant {gamma} disagrees with the exchange scalar {x}"
            )
        for Lt, bt in zip(Lpolys, piece.basis):
            if Lt.is_zero():
                continue
            for c_sub, factors in _pbw_rec(algebra, ShuffleElement(PLUS, Lt), m, theta, ceiling):
                if factors and factors[-1][0] >= rho:
                    raise AssertionError("lower-slope factor reached the hinge slope")
                terms.append((gamma * c_sub, factors + ((rho, bt),)))
        residual = ShuffleElement(PLUS, residual.poly - G.scale(gamma))
        if residual.is_zero():
            break
    if not residual.is_zero():
        if not has_slope_leq(algebra.quiver, residual, tuple(a + r * b for a, b in zip(m, theta))):
            raise AssertionError("hinge-free residual fails its slope bound")
        terms.append((field.one, ((r, residual.poly),)))
    return terms


def _verify_remultiplication(
    algebra: ShuffleAlgebra, el: ShuffleElement, terms: list[PBWTerm]
) -> None:
    acc = SymLaurent.zero(el.shape)
    for c, factors in terms:
        rs = [r for r, _ in factors]
        if any(a >= b for a, b in zip(rs, rs[1:])):
            raise AssertionError(f"factor slopes not strictly increasing: {rs}")
        prod = algebra.unit(PLUS)
        for _, poly in factors:
            prod = algebra.shuffle_product(prod, ShuffleElement(PLUS, poly))
        acc = acc + prod.poly.scale(c)
    if acc != el.poly:
        raise AssertionError("remultiplied decomposition does not equal the input")
