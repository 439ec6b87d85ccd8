"""Exact sparse linear algebra over the coefficient field.

Rows and vectors are dicts {column index: scalar}.  The generic routines only
use field arithmetic (+, -, *, /, == 0), so they run over Fractions and over
exact rational functions alike.  A fraction-free integer path accelerates the
large wheel systems, whose entries are rationals after specialization.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable

SparseRow = dict[int, object]


def rref_pivots(rows: Iterable[SparseRow]) -> dict[int, SparseRow]:
    """Reduce rows to reduced row echelon form.

    Returns {pivot column: row} with each pivot normalized to 1 and eliminated
    from every other row.  Deterministic: pivots are the smallest column of
    each reduced row, rows processed in the given order.
    """
    pivots: dict[int, SparseRow] = {}
    for row in rows:
        row = dict(row)
        # forward reduction against known pivots
        while True:
            cols = [c for c in row if c in pivots]
            if not cols:
                break
            for c in sorted(cols):
                if c not in row:
                    continue
                factor = row[c]
                if factor == 0:
                    del row[c]
                    continue
                prow = pivots[c]
                for cc, vv in prow.items():
                    s = row.get(cc)
                    s = -factor * vv if s is None else s - factor * vv
                    if s == 0:
                        row.pop(cc, None)
                    else:
                        row[cc] = s
        row = {c: v for c, v in row.items() if v != 0}
        if not row:
            continue
        p = min(row)
        inv = row[p] ** (-1)
        newrow = {c: v * inv for c, v in row.items()}
        # back-substitute into existing pivot rows
        for pc, prow in pivots.items():
            if p in prow:
                f = prow[p]
                for cc, vv in newrow.items():
                    s = prow.get(cc)
                    s = -f * vv if s is None else s - f * vv
                    if s == 0:
                        prow.pop(cc, None)
                    else:
                        prow[cc] = s
        pivots[p] = newrow
    return pivots


def kernel_basis(rows: Iterable[SparseRow], ncols: int, one) -> list[SparseRow]:
    """Basis of {x : A x = 0}, one vector per free column, in column order.

    Vectors are normalized with x[free column] = 1 (reduced row echelon
    representatives of the kernel).
    """
    pivots = rref_pivots(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis: list[SparseRow] = []
    for f in free:
        vec: SparseRow = {f: one}
        for p, prow in pivots.items():
            v = prow.get(f)
            if v is not None and v != 0:
                vec[p] = -v
        basis.append(vec)
    return basis


def rank_of(rows: Iterable[SparseRow]) -> int:
    return len(rref_pivots(rows))


def solve_columns(columns: list[SparseRow], target: SparseRow, one) -> SparseRow | None:
    """Solve sum_j x_j * columns[j] = target exactly; None if inconsistent.

    Column/target keys may be arbitrary hashables (monomial keys).
    """
    # transpose into rows indexed by key, augmented with the target in column -1
    keys: set = set(target)
    for col in columns:
        keys.update(col)
    key_list = sorted(keys)
    key_index = {k: idx for idx, k in enumerate(key_list)}
    rows: dict[int, SparseRow] = {}
    for j, col in enumerate(columns):
        for k, v in col.items():
            rows.setdefault(key_index[k], {})[j] = v
    AUG = len(columns)
    for k, v in target.items():
        rows.setdefault(key_index[k], {})[AUG] = v
    pivots = rref_pivots(rows.values())
    if AUG in pivots:
        return None  # inconsistent
    sol: SparseRow = {}
    for p, prow in pivots.items():
        v = prow.get(AUG)
        if v is not None and v != 0:
            sol[p] = v
    # consistency also requires no free non-augmented columns feeding the target:
    # with RREF, x = (pivot rows' augmented entries) on pivot cols, 0 on free cols.
    return sol


# -- fraction-free integer path for big Fraction systems ----------------------


def _int_rows(rows: Iterable[SparseRow]) -> list[dict[int, int]]:
    out = []
    for row in rows:
        if not row:
            continue
        denlcm = 1
        for v in row.values():
            d = v.denominator
            denlcm = denlcm * d // gcd(denlcm, d)
        ints = {c: int(v * denlcm) for c, v in row.items()}
        g = 0
        for v in ints.values():
            g = gcd(g, v)
        if g > 1:
            ints = {c: v // g for c, v in ints.items()}
        out.append(ints)
    return out


def singleton_cascade(rows: list[dict[int, int]]) -> tuple[int, list[dict[int, int]]]:
    """Repeatedly force-to-zero columns pinned by single-entry rows.

    Returns (number of columns eliminated, remaining rows without those
    columns).  Each eliminated column is a pivot of the original system.
    """
    dead: set[int] = set()
    changed = True
    while changed:
        changed = False
        nxt: list[dict[int, int]] = []
        for row in rows:
            if dead:
                row = {c: v for c, v in row.items() if c not in dead}
            if not row:
                continue
            if len(row) == 1:
                dead.add(next(iter(row)))
                changed = True
            else:
                nxt.append(row)
        rows = nxt
    rows = [{c: v for c, v in row.items() if c not in dead} for row in rows]
    rows = [r for r in rows if r]
    return len(dead), rows


def rank_int_fraction_free(rows: list[dict[int, int]]) -> int:
    """Rank over Q of integer rows by sparse fraction-free elimination.

    Rows are combined by cross-multiplication and content-stripped, so all
    intermediate entries stay integers.  Deterministic pivot choice: rows in
    sparsity order, pivot at each row's least column.
    """
    pivots: dict[int, dict[int, int]] = {}
    order = sorted(range(len(rows)), key=lambda r: (len(rows[r]), r))
    for idx in order:
        row = dict(rows[idx])
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                break
            a = row[c]
            b = prow[c]
            g = gcd(a, b)
            fa = b // g
            fb = a // g
            new = {}
            for cc, vv in row.items():
                new[cc] = vv * fa
            for cc, vv in prow.items():
                s = new.get(cc, 0) - vv * fb
                if s:
                    new[cc] = s
                else:
                    new.pop(cc, None)
            g2 = 0
            for vv in new.values():
                g2 = gcd(g2, vv)
            if g2 > 1:
                new = {cc: vv // g2 for cc, vv in new.items()}
            row = new
        if row:
            pivots[min(row)] = row
    return len(pivots)


_MOD_PRIMES = (2305843009213693951, 2305843009213693669, 2305843009213693613)
# largest primes below 2**31: safe for int64 products in the dense numpy path
_MOD_PRIMES_DENSE = (2147483647, 2147483629, 2147483587)


def rank_modular_dense(rows: list[dict[int, int]], ncols: int, prime: int) -> int:
    """Rank over F_p via incremental dense elimination (numpy int64).

    Pivot rows are kept triangular (zeros left of their pivot column), so an
    incoming row reduces in one ascending pass.  Requires prime < 2**31 so a
    single multiply-subtract fits in int64 before the mod.
    """
    import numpy as np

    piv_of_col = [-1] * ncols
    pivrows: list = []
    order = sorted(range(len(rows)), key=lambda r: (len(rows[r]), r))
    for idx in order:
        vec = np.zeros(ncols, dtype=np.int64)
        for c, v in rows[idx].items():
            vec[c] = v % prime
        c = 0
        while c < ncols:
            nzs = np.flatnonzero(vec[c:])
            if nzs.size == 0:
                break
            c += int(nzs[0])
            r = piv_of_col[c]
            if r < 0:
                inv = pow(int(vec[c]), prime - 2, prime)
                vec[c:] = (vec[c:] * inv) % prime
                piv_of_col[c] = len(pivrows)
                pivrows.append(vec)
                break
            f = int(vec[c])
            tail = vec[c:]
            tail -= f * pivrows[r][c:]
            tail %= prime
            c += 1
    return len(pivrows)


def rank_modular(rows: list[dict[int, int]], prime: int) -> int:
    """Rank of integer rows over F_p by sparse elimination.

    A certified lower bound for the rank over Q (a nonzero minor mod p is a
    nonzero minor over Q); agreement across several primes is used as the
    upper-bound evidence, mirroring the multi-seed protocol.
    """
    pivots: dict[int, dict[int, int]] = {}
    order = sorted(range(len(rows)), key=lambda r: (len(rows[r]), r))
    for idx in order:
        row = {c: v % prime for c, v in rows[idx].items() if v % prime}
        while row:
            c = min(row)
            prow = pivots.get(c)
            if prow is None:
                break
            f = row[c]
            new = dict(row)
            for cc, vv in prow.items():
                s = (new.get(cc, 0) - f * vv) % prime
                if s:
                    new[cc] = s
                else:
                    new.pop(cc, None)
            row = new
        if row:
            c = min(row)
            inv = pow(row[c], prime - 2, prime)
            pivots[c] = {cc: (vv * inv) % prime for cc, vv in row.items()}
    return len(pivots)


def kernel_dimension(
    rows: Iterable[SparseRow],
    ncols: int,
    exact_limit: int = 250,
    prime_index: int | None = None,
) -> tuple[int, str]:
    """Dimension of the kernel of a Fraction matrix, with method report.

    Exact fraction-free elimination when the column count is modest; above
    ``exact_limit`` live columns, ranks are computed modulo fixed primes and
    must agree (rank over Q can only exceed a modular rank, and a modular
    rank certifies a nonzero minor over Q).  ``prime_index`` selects a single
    prime; multi-seed harnesses rotate it so disagreement of any kind
    surfaces as a seed mismatch.
    """
    irows = _int_rows(rows)
    killed, rest = singleton_cascade(irows)
    if not rest:
        return ncols - killed, "exact"
    live_cols = {c for row in rest for c in row}
    if len(live_cols) <= exact_limit:
        r = rank_int_fraction_free(rest)
        return ncols - killed - r, "exact"
    try:
        import numpy  # noqa: F401

        have_numpy = True
    except ImportError:
        have_numpy = False
    if prime_index is not None:
        if have_numpy:
            p = _MOD_PRIMES_DENSE[prime_index % len(_MOD_PRIMES_DENSE)]
            return ncols - killed - rank_modular_dense(rest, ncols, p), f"modular(p={p})"
        p = _MOD_PRIMES[prime_index % len(_MOD_PRIMES)]
        return ncols - killed - rank_modular(rest, p), f"modular(p={p})"
    if have_numpy:
        ranks = [rank_modular_dense(rest, ncols, p) for p in _MOD_PRIMES_DENSE]
    else:
        ranks = [rank_modular(rest, p) for p in _MOD_PRIMES]
    if len(set(ranks)) != 1:
        r = rank_int_fraction_free(rest)
        return ncols - killed - r, "exact(after modular disagreement)"
    return ncols - killed - ranks[0], f"modular({len(ranks)} primes agree)"
