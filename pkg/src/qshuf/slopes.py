"""Slope conditions and the finite-dimensional graded pieces of slope subalgebras.

The slope-<= m condition is checked monomial-wise: scaling a subset of
variables sends distinct monomials to distinct monomials, so the growth bound
holds for a symmetric Laurent polynomial iff it holds for every monomial in
its support.  A graded piece is therefore cut out of an explicit monomial
polytope by the wheel conditions, which become an exact linear system.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .algebra import MINUS, PLUS, ShuffleElement
from .fields import Scalar
from .laurent import (
    SymLaurent,
    degree_profile,
    min_degree_profile,
    offsets_of,
    orbit,
    orbit_size,
)
from .linalg import kernel_basis, kernel_dimension
from .quiver import Quiver

SlopeVector = tuple[Fraction, ...]


class ResourceCeiling(RuntimeError):
    """Raised when a computation would exceed the configured monomial ceiling."""


DEFAULT_CEILING = 5_000_000


def dot(k, l) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(k, l)), Fraction(0))


def edge_form(quiver: Quiver, k, l) -> int:
    """<k, l> = sum k_i l_j (#arrows i->j)."""
    total = 0
    for s, t in quiver.edges:
        total += k[s] * l[t]
    return total


def naive_slope_leq(el: ShuffleElement, m: SlopeVector) -> bool:
    d = el.vdeg()  # raises on non-homogeneous input
    bound = dot(m, el.hdeg())
    return d <= bound if el.side == PLUS else d >= bound


def has_slope_leq(quiver: Quiver, el: ShuffleElement, m: SlopeVector) -> bool:
    """Monomial-wise growth bound over every 0 <= k <= n (both sides)."""
    if el.is_zero():
        raise ValueError("slope of the zero element is undefined")
    n = el.shape
    for k in _all_k(n):
        nk = tuple(a - b for a, b in zip(n, k))
        if el.side == PLUS:
            if degree_profile(el.poly, k) > dot(m, k) + edge_form(quiver, k, nk):
                return False
        else:
            if min_degree_profile(el.poly, k) < -dot(m, k) - edge_form(quiver, nk, k):
                return False
    return True


@dataclass
class SlopeBasis:
    m: SlopeVector
    n: tuple[int, ...]
    side: str
    basis: list[SymLaurent]
    dim: int


def _vs(i: int, nI: int) -> tuple[int, ...]:
    return tuple(1 if j == i else 0 for j in range(nI))


def _all_k(n: tuple[int, ...]):
    return itertools.product(*(range(x + 1) for x in n))


def slope_monomials(
    quiver: Quiver, m: SlopeVector, n: tuple[int, ...], side: str
) -> list[tuple[int, ...]]:
    """Canonical exponent keys of shape n spanning the slope polytope.

    Plus side: vdeg = m.n and for all 0 <= k <= n the sum of the k_i largest
    exponents per block is <= m.k + <k, n-k>.  Minus side is the mirrored
    lower bound; keys are produced for the actual minus-side exponents.
    """
    nI = quiver.vertex_count
    D = dot(m, n)
    if D.denominator != 1:
        return []
    D = int(D)
    if all(x == 0 for x in n):
        return [()]

    if side == PLUS:
        bound = {k: dot(m, k) + edge_form(quiver, k, tuple(a - b for a, b in zip(n, k))) for k in _all_k(n)}
    else:
        # enumerate mu = reverse-negated keys, translate back at the end
        bound = {k: dot(m, k) + edge_form(quiver, tuple(a - b for a, b in zip(n, k)), k) for k in _all_k(n)}

    # per-variable ranges from the single-variable and all-but-one profiles
    hi: list[int] = []
    lo: list[int] = []
    for i in range(nI):
        if n[i] == 0:
            hi.append(0)
            lo.append(0)
            continue
        b1 = bound[_vs(i, nI)]
        hi.append(_floor(b1))
        ball = bound[tuple(a - b for a, b in zip(n, _vs(i, nI)))]
        lo.append(_ceil(Fraction(D) - ball))

    # per-vertex sorted tuples with prefix bounds along k = j * vs^i
    per_vertex: list[dict[int, list[tuple[int, ...]]]] = []
    for i in range(nI):
        ni = n[i]
        if ni == 0:
            per_vertex.append({0: [()]})
            continue
        pref = [bound[tuple(j if jj == i else 0 for jj in range(nI))] for j in range(ni + 1)]
        buckets: dict[int, list[tuple[int, ...]]] = {}

        def rec(pos: int, prev: int, acc: list[int], total: int):
            if pos == ni:
                buckets.setdefault(total, []).append(tuple(acc))
                return
            top = min(prev, _floor(pref[pos + 1] - total))
            for v in range(top, lo[i] - 1, -1):
                acc.append(v)
                rec(pos + 1, v, acc, total + v)
                acc.pop()

        rec(0, hi[i], [], 0)
        per_vertex.append(buckets)

    # combine blocks with total degree D, then filter by every profile bound
    keys: list[tuple[int, ...]] = []
    sums = [sorted(b) for b in per_vertex]

    def combine(i: int, acc_keys: list[tuple[int, ...]], remaining: int):
        if i == nI:
            if remaining == 0:
                keys.append(tuple(x for part in acc_keys for x in part))
            return
        lo_rest = sum(min(s) for s in sums[i + 1 :]) if i + 1 < nI else 0
        hi_rest = sum(max(s) for s in sums[i + 1 :]) if i + 1 < nI else 0
        for s in sums[i]:
            rest = remaining - s
            if i + 1 < nI and not (lo_rest <= rest <= hi_rest):
                continue
            if i + 1 == nI and rest != 0:
                continue
            for part in per_vertex[i][s]:
                combine(i + 1, acc_keys + [part], rest)

    combine(0, [], D)

    offs = offsets_of(n)
    out = []
    for key in keys:
        ok = True
        for k, b in bound.items():
            tot = 0
            for i in range(nI):
                ki = k[i]
                if ki:
                    tot += sum(key[offs[i] : offs[i] + ki])
            if tot > b:
                ok = False
                break
        if ok:
            out.append(key)
    out.sort()

    if side == MINUS:
        out = sorted(_neg_rev(key, n) for key in out)
    return out


def _neg_rev(key: tuple[int, ...], n: tuple[int, ...]) -> tuple[int, ...]:
    offs = offsets_of(n)
    parts = []
    for i, ni in enumerate(n):
        block = key[offs[i] : offs[i] + ni]
        parts.extend(sorted((-x for x in block), reverse=True))
    return tuple(parts)


def _floor(x: Fraction) -> int:
    return x.numerator // x.denominator


def _ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


# -- wheel linear system -------------------------------------------------------


def _wheel_structures(quiver: Quiver, n: tuple[int, ...]):
    """Symbolic wheel instances grouped by (i, j, pattern).

    Each structure carries the substitution slots; the q/t exponents of a raw
    monomial E are (E[vA], E[vB]) for pattern 1 and (E[vA]+E[vB], -E[vB]) for
    pattern 2, independent of the particular edge.
    """
    offs = offsets_of(n)
    structures = []
    seen = set()
    for i, j in set(quiver.edges):
        if i == j:
            if n[i] >= 3 and (i, j) not in seen:
                base = offs[i]
                structures.append(((i, j), 1, base, base + 1, base + 2))
                structures.append(((i, j), 2, base, base + 1, base + 2))
                seen.add((i, j))
        else:
            if n[i] >= 2 and n[j] >= 1:
                structures.append(((i, j), 1, offs[i], offs[j], offs[i] + 1))
            if n[j] >= 2 and n[i] >= 1:
                structures.append(((i, j), 2, offs[j], offs[i], offs[j] + 1))
    return structures


def _wheel_symbolic_rows(
    quiver: Quiver, n: tuple[int, ...], monomials: list[tuple[int, ...]], ceiling: int
):
    """For each structure, rows {rowkey: {col: {(a, b): count}}} with entry
    sum_count q^a t_e^b; plus the total substitution work performed."""
    structures = _wheel_structures(quiver, n)
    edge_instances = sum(len(quiver.edge_ids(i, j)) for (i, j), *_ in structures)
    work = sum(orbit_size(lam, n) for lam in monomials) * max(1, edge_instances)
    if work > ceiling:
        raise ResourceCeiling(
            f"wheel system for n={n} needs ~{work} raw substitutions, over the ceiling {ceiling}; "
            "raise QSHUF_RESOURCE_CEILING to proceed"
        )
    out = []
    offs = offsets_of(n)
    for (i, j), pattern, vA, vB, target in structures:
        # the substituted table stays symmetric in the untouched variables of
        # each block, so row keys are canonicalized over those slots (merges
        # equal vanishing conditions)
        touched = {vA, vB, target}
        blocks = []
        for bi, ni in enumerate(n):
            free = [p for p in range(offs[bi], offs[bi] + ni) if p not in touched]
            if len(free) > 1:
                blocks.append(free)
        rows: dict[tuple[int, ...], dict[int, dict[tuple[int, int], int]]] = {}
        for col, lam in enumerate(monomials):
            for E in orbit(lam, n):
                eA, eB = E[vA], E[vB]
                if pattern == 1:
                    a, b = eA, eB
                else:
                    a, b = eA + eB, -eB
                ek = list(E)
                ek[vA] = 0
                ek[vB] = 0
                ek[target] += eA + eB
                for free in blocks:
                    vals = sorted((ek[p] for p in free), reverse=True)
                    for p, v in zip(free, vals):
                        ek[p] = v
                rowkey = tuple(ek)
                cell = rows.setdefault(rowkey, {}).setdefault(col, {})
                cell[(a, b)] = cell.get((a, b), 0) + 1
        out.append(((i, j), pattern, rows))
    return out


def _evaluate_rows_mod(symbolic, quiver: Quiver, field, prime: int) -> list[dict[int, int]]:
    """Evaluate the symbolic wheel rows directly modulo a prime.

    Entries are q^a t_e^b mod p with q, t_e the field's rational draws;
    denominators never hit p (they are < 10^4 while p is a 31-bit prime).
    """
    qmod = field.q.numerator * pow(field.q.denominator, -1, prime) % prime
    rows_out: list[dict[int, int]] = []
    powq: dict[int, int] = {}

    def qpow(a: int) -> int:
        v = powq.get(a)
        if v is None:
            v = pow(qmod, a, prime)
            powq[a] = v
        return v

    for (i, j), _pattern, rows in symbolic:
        for e in quiver.edge_ids(i, j):
            te = field.t_edge(e)
            tmod = te.numerator * pow(te.denominator, -1, prime) % prime
            powt: dict[int, int] = {}

            def tpow(b: int) -> int:
                v = powt.get(b)
                if v is None:
                    v = pow(tmod, b, prime)
                    powt[b] = v
                return v

            for rowkey in sorted(rows):
                cols = rows[rowkey]
                row: dict[int, int] = {}
                for col, cell in cols.items():
                    acc = 0
                    for (a, b), count in cell.items():
                        acc = (acc + qpow(a) * tpow(b) % prime * count) % prime
                    if acc:
                        row[col] = acc
                if row:
                    rows_out.append(row)
    return rows_out


def _evaluate_rows(symbolic, quiver: Quiver, field) -> list[dict[int, Scalar]]:
    rows_out: list[dict[int, Scalar]] = []
    powq: dict[int, Scalar] = {}
    powt: dict[tuple[int, int], Scalar] = {}

    def qpow(a: int) -> Scalar:
        v = powq.get(a)
        if v is None:
            v = field.q**a
            powq[a] = v
        return v

    def tpow(e: int, b: int) -> Scalar:
        v = powt.get((e, b))
        if v is None:
            v = field.t_edge(e) ** b
            powt[(e, b)] = v
        return v

    for (i, j), _pattern, rows in symbolic:
        for e in quiver.edge_ids(i, j):
            for rowkey in sorted(rows):
                cols = rows[rowkey]
                row: dict[int, Scalar] = {}
                for col, cell in cols.items():
                    acc = None
                    for (a, b), count in cell.items():
                        term = qpow(a) * tpow(e, b)
                        if count != 1:
                            term = term * count
                        acc = term if acc is None else acc + term
                    if acc is not None and acc != 0:
                        row[col] = acc
                if row:
                    rows_out.append(row)
    return rows_out


def slope_basis(
    quiver: Quiver,
    field,
    m: SlopeVector,
    n: tuple[int, ...],
    side: str = PLUS,
    ceiling: int = DEFAULT_CEILING,
) -> SlopeBasis:
    """Explicit basis of the graded piece: slope polytope cut by wheel kernels."""
    if all(x == 0 for x in n):
        return SlopeBasis(m, n, side, [SymLaurent.unit(quiver.vertex_count, field.one)], 1)
    monomials = slope_monomials(quiver, m, n, side)
    if not monomials:
        return SlopeBasis(m, n, side, [], 0)
    symbolic = _wheel_symbolic_rows(quiver, n, monomials, ceiling)
    rows = _evaluate_rows(symbolic, quiver, field)
    vectors = kernel_basis(rows, len(monomials), field.one)
    basis = [
        SymLaurent(n, {monomials[c]: v for c, v in vec.items()}) for vec in vectors
    ]
    return SlopeBasis(m, n, side, basis, len(basis))


def slope_dim(
    quiver: Quiver,
    field,
    m: SlopeVector,
    n: tuple[int, ...],
    side: str = PLUS,
    ceiling: int = DEFAULT_CEILING,
    prime_index: int | None = None,
) -> tuple[int, str]:
    """Dimension of the graded piece, with the linear-algebra method used."""
    if all(x == 0 for x in n):
        return 1, "exact"
    monomials = slope_monomials(quiver, m, n, side)
    if not monomials:
        return 0, "exact"
    symbolic = _wheel_symbolic_rows(quiver, n, monomials, ceiling)
    if getattr(field, "mode", "") == "exact":
        from .linalg import rank_of

        rows = _evaluate_rows(symbolic, quiver, field)
        if not rows:
            return len(monomials), "exact"
        return len(monomials) - rank_of(rows), "exact-symbolic"
    if len(monomials) > 600:
        # large kernels: evaluate straight into F_p and eliminate there (the
        # exact path would go modular anyway at this size)
        from .linalg import _MOD_PRIMES_DENSE, rank_modular_dense, singleton_cascade

        if prime_index is not None:
            primes = [_MOD_PRIMES_DENSE[prime_index % len(_MOD_PRIMES_DENSE)]]
        else:
            primes = list(_MOD_PRIMES_DENSE)
        dims = []
        for p in primes:
            mrows = _evaluate_rows_mod(symbolic, quiver, field, p)
            killed, rest = singleton_cascade(mrows)
            r = rank_modular_dense(rest, len(monomials), p) if rest else 0
            dims.append(len(monomials) - killed - r)
        if len(set(dims)) == 1:
            label = f"modular(p={primes[0]})" if len(primes) == 1 else f"modular({len(primes)} primes agree)"
            return dims[0], label
        # disagreement: fall back to the exact integer elimination
        rows = _evaluate_rows(symbolic, quiver, field)
        return kernel_dimension(rows, len(monomials), exact_limit=10**9)
    rows = _evaluate_rows(symbolic, quiver, field)
    if not rows:
        return len(monomials), "exact"
    return kernel_dimension(rows, len(monomials), prime_index=prime_index)


def graded_character(
    quiver: Quiver,
    field,
    m: SlopeVector,
    n_max: tuple[int, ...],
    ceiling: int = DEFAULT_CEILING,
    prime_index: int | None = None,
):
    """dim table of the slope subalgebra's graded pieces for 0 <= n <= n_max."""
    from .kac import TruncSeries

    coeffs: dict[tuple[int, ...], int] = {}
    methods: dict[tuple[int, ...], str] = {}
    for n in itertools.product(*(range(x + 1) for x in n_max)):
        d, method = slope_dim(quiver, field, m, n, PLUS, ceiling, prime_index)
        coeffs[n] = d
        methods[n] = method
    series = TruncSeries(n_max, coeffs)
    series.methods = methods
    return series
