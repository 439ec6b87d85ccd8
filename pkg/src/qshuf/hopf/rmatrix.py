"""Dual bases of the slope pairing and windowed R-matrix factorization checks.

The off-diagonal canonical tensor factors as an ordered product over slopes.
On a window (bounded horizontal degree, bounded variable exponents) this
becomes a finite statement about dual systems: ordered products of the slope
pieces' dual bases pair as the identity, and they reproduce the global
pairing against any test element lying in their span.  Terms escaping the
window are discarded and counted; the full tensor lives in a completion.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from ..algebra import MINUS, PLUS, ShuffleAlgebra, ShuffleElement
from ..fields import Scalar
from ..laurent import SymLaurent
from ..linalg import rref_pivots, solve_columns
from ..slopes import DEFAULT_CEILING, SlopeVector, dot, slope_basis
from .pairing import pair_elements, pair_poly_word
from .pbw import pbw_decompose
from .words import GeneratorWord, expand_word


@dataclass
class DualBases:
    m: SlopeVector
    n: tuple[int, ...]
    plus: list[SymLaurent]
    minus: list[SymLaurent]  # adjusted so the Gram matrix is the identity


def _invert_gram(gram: list[list[Scalar]], one) -> list[list[Scalar]] | None:
    """Exact inverse of a square matrix, or None if singular."""
    k = len(gram)
    rows = []
    for idx, row in enumerate(gram):
        r = {j: v for j, v in enumerate(row) if v != 0}
        r[k + idx] = one
        rows.append(r)
    pivots = rref_pivots(rows)
    if sorted(c for c in pivots if c < k) != list(range(k)):
        return None
    inv = [[one * 0] * k for _ in range(k)]
    for p, prow in pivots.items():
        if p >= k:
            return None
        for j in range(k):
            v = prow.get(k + j)
            if v is not None:
                inv[p][j] = v
    return inv


def dual_bases(
    algebra: ShuffleAlgebra,
    m: SlopeVector,
    n: tuple[int, ...],
    ceiling: int = DEFAULT_CEILING,
) -> DualBases:
    """Bases of the plus and minus graded pieces with identity Gram matrix.

    The minus side is routed through f-words for every pairing.  A singular
    Gram matrix contradicts non-degeneracy and raises (retry with a fresh
    seed before suspecting a real bug).
    """
    plus = slope_basis(algebra.quiver, algebra.field, m, n, PLUS, ceiling)
    minus = slope_basis(algebra.quiver, algebra.field, m, n, MINUS, ceiling)
    if plus.dim != minus.dim:
        raise ArithmeticError(
            f"plus/minus dimensions differ at {n}: {plus.dim} vs {minus.dim} "
            "(non-degeneracy violated; retry with another seed)"
        )
    if plus.dim == 0:
        raise ValueError(f"slope piece at {n} is zero-dimensional")
    gram = [
        [
            pair_elements(algebra, ShuffleElement(PLUS, a), ShuffleElement(MINUS, b))
            for b in minus.basis
        ]
        for a in plus.basis
    ]
    inv = _invert_gram(gram, algebra.field.one)
    if inv is None:
        raise ArithmeticError(
            f"Gram matrix of the slope pairing at {n} is singular "
            "(retry with another seed before suspecting a bug)"
        )
    adjusted = []
    k = plus.dim
    for u in range(k):
        acc = SymLaurent.zero(minus.basis[0].shape)
        for t in range(k):
            if inv[t][u] != 0:
                acc = acc + minus.basis[t].scale(inv[t][u])
        adjusted.append(acc)
    # post-condition: Gram of (plus, adjusted) is exactly the identity
    for s in range(k):
        for u in range(k):
            val = pair_elements(
                algebra, ShuffleElement(PLUS, plus.basis[s]), ShuffleElement(MINUS, adjusted[u])
            )
            want = algebra.field.one if s == u else algebra.field.zero
            if val != want:
                raise AssertionError("dual basis Gram is not the identity")
    return DualBases(m, n, plus.basis, adjusted)


def _within_window(poly: SymLaurent, window: int) -> bool:
    lo, hi = poly.exponent_range()
    return -window <= lo and hi <= window


def rprime_window_check(
    algebra: ShuffleAlgebra,
    m: SlopeVector,
    theta: tuple[Fraction, ...],
    hbound: int,
    window: int,
    ceiling: int = DEFAULT_CEILING,
) -> dict:
    """Verify the slope factorization of the canonical tensor on a window.

    Checks, in order: the shape-1 layer equals the sum of generator pairs
    over gamma; ordered products of dual bases pair as the identity, zero
    across distinct slope assignments (blockwise factorization); and the
    windowed tensor reproduces the global pairing against plus test words
    certified (via the slope factorization itself) to lie in the span of its
    first legs, contracted against arbitrary window test words on the minus
    side.  Returns a JSON-ready report with discard/skip counts.
    """
    quiver = algebra.quiver
    nI = quiver.vertex_count
    field = algebra.field

    shapes = [
        k
        for k in itertools.product(*(range(hbound + 1) for _ in range(nI)))
        if 0 < sum(k) <= hbound
    ]
    pieces: dict[tuple[Fraction, tuple[int, ...]], DualBases] = {}
    full_dims: dict[tuple[Fraction, tuple[int, ...]], int] = {}
    discarded = 0
    for k in shapes:
        tk = dot(theta, k)
        for d in range(-window * sum(k), window * sum(k) + 1):
            r = (Fraction(d) - dot(m, k)) / tk
            mr = tuple(a + r * b for a, b in zip(m, theta))
            dim = slope_basis(quiver, field, mr, k, PLUS, ceiling).dim
            if dim == 0:
                continue
            db = dual_bases(algebra, mr, k, ceiling)
            keep = [
                i
                for i in range(len(db.plus))
                if _within_window(db.plus[i], window) and _within_window(db.minus[i], window)
            ]
            discarded += dim - len(keep)
            full_dims[(r, k)] = dim
            if keep:
                pieces[(r, k)] = DualBases(
                    db.m, k, [db.plus[i] for i in keep], [db.minus[i] for i in keep]
                )

    report: dict = {
        "hbound": hbound,
        "window": window,
        "pieces": {f"r={r},k={list(k)}": len(db.plus) for (r, k), db in sorted(pieces.items())},
        "discarded_out_of_window": discarded,
        "checks": {},
    }

    # shape-1 layer: dual pairs are exactly (z^d, z^{-d}/gamma_i)
    layer_ok = True
    layer_count = 0
    for i in range(nI):
        gamma = algebra.gamma_const(i)
        vs = tuple(1 if j == i else 0 for j in range(nI))
        for d in range(-window, window + 1):
            r = (Fraction(d) - dot(m, vs)) / dot(theta, vs)
            db = pieces.get((r, vs))
            want_a = SymLaurent(vs, {(d,): field.one})
            want_b = SymLaurent(vs, {(-d,): field.one / gamma})
            ok = (
                db is not None
                and len(db.plus) == 1
                and db.plus[0] == want_a
                and db.minus[0] == want_b
            )
            layer_ok = layer_ok and ok
            layer_count += 1
    report["checks"]["shape_one_layer"] = {"ok": layer_ok, "pairs": layer_count}

    # windowed terms of the ordered product, grouped by bidegree
    piece_keys = sorted(pieces, key=lambda rk: (rk[0], rk[1]))
    terms_by_deg: dict[tuple[tuple[int, ...], int], list] = {}

    def build(start: int, used: int, acc: list):
        for pos in range(start, len(piece_keys)):
            r, k = piece_keys[pos]
            if used + sum(k) > hbound:
                continue
            db = pieces[(r, k)]
            for idx in range(len(db.plus)):
                acc.append((r, k, idx))
                yield tuple(acc)
                yield from build(pos + 1, used + sum(k), acc)
                acc.pop()

    for assignment in build(0, 0, []):
        n_total = tuple(sum(k[i] for _, k, _ in assignment) for i in range(nI))
        d_total = 0
        aprod = algebra.unit(PLUS)
        bprod = algebra.unit(MINUS)
        for r, k, idx in assignment:
            db = pieces[(r, k)]
            aprod = algebra.shuffle_product(aprod, ShuffleElement(PLUS, db.plus[idx]))
            bprod = algebra.shuffle_product(bprod, ShuffleElement(MINUS, db.minus[idx]))
            d_total += db.plus[idx].vdeg()
        terms_by_deg.setdefault((n_total, d_total), []).append((assignment, aprod, bprod))

    # blockwise factorization: the product terms form a dual system
    orth_ok = True
    orth_count = 0
    orth_bad = []
    for (n_total, d_total), terms in sorted(terms_by_deg.items()):
        for s, (asg_s, aprod, _) in enumerate(terms):
            for t, (asg_t, _, bprod) in enumerate(terms):
                val = pair_elements(
                    algebra, ShuffleElement(PLUS, aprod.poly), ShuffleElement(MINUS, bprod.poly)
                )
                want = field.one if s == t else field.zero
                if val != want:
                    orth_ok = False
                    orth_bad.append(
                        {"a": _asg_str(asg_s), "b": _asg_str(asg_t), "got": str(val)}
                    )
                orth_count += 1
    report["checks"]["blockwise_orthogonality"] = {
        "ok": orth_ok,
        "pairings": orth_count,
        "mismatches": orth_bad,
    }

    # canonical-tensor reproduction against window test words
    canon_ok = True
    contractions = 0
    skipped = 0
    canon_bad = []
    for (n_total, d_total), terms in sorted(terms_by_deg.items()):
        for P_letters in _window_words(nI, n_total, d_total, window):
            Pel = expand_word(algebra, GeneratorWord(PLUS, P_letters))
            if Pel.is_zero():
                continue
            if not _in_span_certificate(algebra, Pel, m, theta, pieces, full_dims, ceiling):
                skipped += 1
                continue
            for w_letters in _window_words(nI, n_total, -d_total, window):
                w = GeneratorWord(MINUS, w_letters)
                lhs = field.zero
                for _, aprod, bprod in terms:
                    s1 = pair_poly_word(algebra, aprod, w)
                    if s1 == 0:
                        continue
                    s2 = pair_elements(algebra, Pel, ShuffleElement(MINUS, bprod.poly))
                    if s2 == 0:
                        continue
                    lhs = lhs + s1 * s2
                rhs = pair_poly_word(algebra, Pel, w)
                contractions += 1
                if lhs != rhs:
                    canon_ok = False
                    canon_bad.append(
                        {
                            "bidegree": [list(n_total), d_total],
                            "test_word": [list(x) for x in P_letters],
                            "minus_word": [list(x) for x in w_letters],
                            "lhs": str(lhs),
                            "rhs": str(rhs),
                        }
                    )
    report["checks"]["canonical_tensor"] = {
        "ok": canon_ok,
        "contractions": contractions,
        "skipped_out_of_span": skipped,
        "mismatches": canon_bad,
    }
    report["ok"] = bool(layer_ok and orth_ok and canon_ok)
    return report


def _asg_str(assignment) -> str:
    return ";".join(f"r={r},k={list(k)},s={i}" for r, k, i in assignment)


def _in_span_certificate(
    algebra, el, m, theta, pieces, full_dims, ceiling
) -> bool:
    """True when the slope factorization of el uses only window-kept basis
    elements, certifying membership in the span of the windowed first legs."""
    try:
        terms = pbw_decompose(algebra, el, m, theta, ceiling)
    except Exception:
        return False
    for _, factors in terms:
        for r, poly in factors:
            k = poly.shape
            db = pieces.get((r, k))
            if db is None or len(db.plus) != full_dims.get((r, k), -1):
                return False
            sol = solve_columns(
                [b.terms for b in db.plus], poly.terms, algebra.field.one
            )
            if sol is None:
                return False
    return True


def _window_words(nI: int, shape: tuple[int, ...], total_d: int, window: int):
    verts = [i for i in range(nI) for _ in range(shape[i])]
    out = []
    for degs in _compositions(total_d, len(verts), -window, window):
        out.append(tuple(zip(verts, degs)))
    return out


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
