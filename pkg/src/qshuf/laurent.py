"""Symmetric Laurent polynomial tables.

Variables come in per-vertex blocks: a shape (n_0, ..., n_{|I|-1}) lays out
N = sum(n_i) variables, block i occupying flat positions
offset_i .. offset_i + n_i - 1 (slot a of vertex i is "z_{i,a+1}").

A *raw table* is a dict mapping full exponent tuples (length N, ints, may be
negative) to nonzero scalars.  No symmetry is implied.

A ``SymLaurent`` stores one representative per symmetric orbit: keys are
canonical exponent tuples (each vertex block sorted non-increasingly) and the
stored scalar is the coefficient of *every* raw monomial in that orbit.  This
makes equality a plain table comparison.
"""

from __future__ import annotations

from math import factorial
from typing import Iterator

from .fields import Scalar

ExpTuple = tuple[int, ...]
RawTable = dict[ExpTuple, Scalar]


def offsets_of(shape: tuple[int, ...]) -> tuple[int, ...]:
    out = []
    acc = 0
    for n in shape:
        out.append(acc)
        acc += n
    return tuple(out)


def block_slices(shape: tuple[int, ...]) -> tuple[tuple[int, int], ...]:
    offs = offsets_of(shape)
    return tuple((o, o + n) for o, n in zip(offs, shape))


def canonical_key(exps: ExpTuple, shape: tuple[int, ...]) -> ExpTuple:
    """Sort each vertex block non-increasingly."""
    out: list[int] = []
    pos = 0
    for n in shape:
        out.extend(sorted(exps[pos : pos + n], reverse=True))
        pos += n
    return tuple(out)


def _distinct_perms(values: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All distinct permutations of a multiset, lexicographic order."""
    n = len(values)
    if n == 0:
        yield ()
        return
    cur = sorted(values)
    while True:
        yield tuple(cur)
        i = n - 2
        while i >= 0 and cur[i] >= cur[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while cur[j] <= cur[i]:
            j -= 1
        cur[i], cur[j] = cur[j], cur[i]
        cur[i + 1 :] = reversed(cur[i + 1 :])


def orbit(key: ExpTuple, shape: tuple[int, ...]) -> Iterator[ExpTuple]:
    """All raw exponent tuples in the symmetric orbit of a canonical key."""
    pos = 0
    block_perms: list[list[tuple[int, ...]]] = []
    for n in shape:
        block_perms.append(list(_distinct_perms(key[pos : pos + n])))
        pos += n
    idx = [0] * len(shape)
    while True:
        yield tuple(x for b, perms in enumerate(block_perms) for x in perms[idx[b]])
        b = len(shape) - 1
        while b >= 0:
            idx[b] += 1
            if idx[b] < len(block_perms[b]):
                break
            idx[b] = 0
            b -= 1
        if b < 0:
            return


def stabilizer_order(key: ExpTuple, shape: tuple[int, ...]) -> int:
    """Order of the subgroup fixing the monomial (product of multiplicity factorials)."""
    out = 1
    pos = 0
    for n in shape:
        block = key[pos : pos + n]
        run = 1
        for a in range(1, n):
            if block[a] == block[a - 1]:
                run += 1
            else:
                out *= factorial(run)
                run = 1
        out *= factorial(run)
        pos += n
    return out


def orbit_size(key: ExpTuple, shape: tuple[int, ...]) -> int:
    total = 1
    for n in shape:
        total *= factorial(n)
    return total // stabilizer_order(key, shape)


def group_order(shape: tuple[int, ...]) -> int:
    out = 1
    for n in shape:
        out *= factorial(n)
    return out


class SymLaurent:
    """Finitely supported symmetric Laurent polynomial of a fixed shape."""

    __slots__ = ("shape", "terms")

    def __init__(self, shape: tuple[int, ...], terms: dict[ExpTuple, Scalar]):
        # terms must already be canonical; use from_raw for unchecked input
        self.shape = tuple(shape)
        self.terms = terms

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero(shape: tuple[int, ...]) -> "SymLaurent":
        return SymLaurent(shape, {})

    @staticmethod
    def unit(nvertices: int, one: Scalar) -> "SymLaurent":
        """The constant 1 in shape (0,...,0)."""
        return SymLaurent((0,) * nvertices, {(): one})

    @staticmethod
    def monomial_sym(shape: tuple[int, ...], key: ExpTuple, coeff: Scalar) -> "SymLaurent":
        """coeff times the sum of all distinct monomials in the orbit of key."""
        k = canonical_key(key, shape)
        return SymLaurent(shape, {k: coeff})

    @staticmethod
    def from_raw(raw: RawTable, shape: tuple[int, ...], check: bool = True) -> "SymLaurent":
        """Canonicalize a raw table known (or checked) to be symmetric."""
        terms: dict[ExpTuple, Scalar] = {}
        for exps, c in raw.items():
            key = canonical_key(exps, shape)
            if key in terms:
                if check and terms[key] != c:
                    raise ValueError(f"table not symmetric at {exps}: {c} vs {terms[key]}")
            else:
                terms[key] = c
        if check:
            for key, c in terms.items():
                if orbit_size(key, shape) != sum(1 for e in orbit(key, shape) if raw.get(e, None) is not None):
                    raise ValueError(f"orbit of {key} incomplete in raw table")
        return SymLaurent(shape, {k: c for k, c in terms.items() if c != 0})

    # -- queries ------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def nvars(self) -> int:
        return sum(self.shape)

    def degrees(self) -> set[int]:
        return {sum(k) for k in self.terms}

    def vdeg(self) -> int:
        """Homogeneous degree; raises if inhomogeneous or zero."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError(f"not homogeneous (degrees {sorted(degs)})" if degs else "zero polynomial has no degree")
        return degs.pop()

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def homogeneous_parts(self) -> dict[int, "SymLaurent"]:
        parts: dict[int, dict[ExpTuple, Scalar]] = {}
        for k, c in self.terms.items():
            parts.setdefault(sum(k), {})[k] = c
        return {d: SymLaurent(self.shape, t) for d, t in sorted(parts.items())}

    def expand_raw(self) -> RawTable:
        out: RawTable = {}
        for key, c in self.terms.items():
            for e in orbit(key, self.shape):
                out[e] = c
        return out

    def exponent_range(self) -> tuple[int, int]:
        """(min, max) exponent over all variables and terms; (0, 0) if constant."""
        lo, hi = 0, 0
        first = True
        for k in self.terms:
            for x in k:
                if first:
                    lo = hi = x
                    first = False
                else:
                    lo = min(lo, x)
                    hi = max(hi, x)
        return lo, hi

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "SymLaurent") -> "SymLaurent":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        terms = dict(self.terms)
        for k, c in other.terms.items():
            s = terms.get(k)
            s = c if s is None else s + c
            if s == 0:
                terms.pop(k, None)
            else:
                terms[k] = s
        return SymLaurent(self.shape, terms)

    def __sub__(self, other: "SymLaurent") -> "SymLaurent":
        return self + other.scale(-1)

    def scale(self, c: Scalar) -> "SymLaurent":
        if c == 0:
            return SymLaurent.zero(self.shape)
        return SymLaurent(self.shape, {k: v * c for k, v in self.terms.items()})

    def shift_all(self, per_vertex: tuple[int, ...]) -> "SymLaurent":
        """Multiply every variable of vertex i by z^{per_vertex[i]} (exponent shift)."""
        sl = block_slices(self.shape)
        out = {}
        for k, c in self.terms.items():
            kk = list(k)
            for i, (a, b) in enumerate(sl):
                for p in range(a, b):
                    kk[p] += per_vertex[i]
            out[tuple(kk)] = c
        return SymLaurent(self.shape, out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, SymLaurent)
            and self.shape == other.shape
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        items = ", ".join(f"{k}:{c}" for k, c in sorted(self.terms.items())[:6])
        more = "..." if len(self.terms) > 6 else ""
        return f"SymLaurent(shape={self.shape}, {{{items}{more}}})"


# -- raw-table operations ----------------------------------------------------


def raw_add_term(raw: RawTable, exps: ExpTuple, c: Scalar) -> None:
    s = raw.get(exps)
    s = c if s is None else s + c
    if s == 0:
        raw.pop(exps, None)
    else:
        raw[exps] = s


def raw_mul_ratio_poly(raw: RawTable, va: int, vb: int, factor: dict[int, Scalar]) -> RawTable:
    """Multiply a raw table by sum_k factor[k] * (z_va / z_vb)^k."""
    out: RawTable = {}
    for exps, c in raw.items():
        for k, fc in factor.items():
            e = list(exps)
            e[va] += k
            e[vb] -= k
            raw_add_term(out, tuple(e), c * fc)
    return out


def raw_mul_var(raw: RawTable, v: int, power: int) -> RawTable:
    out: RawTable = {}
    for exps, c in raw.items():
        e = list(exps)
        e[v] += power
        out[tuple(e)] = c
    return out


def raw_scale(raw: RawTable, c: Scalar) -> RawTable:
    if c == 0:
        return {}
    return {k: v * c for k, v in raw.items()}


def raw_add(dst: RawTable, src: RawTable) -> None:
    for k, c in src.items():
        raw_add_term(dst, k, c)


def divide_linear(raw: RawTable, va: int, vb: int) -> RawTable:
    """Exact division of a raw Laurent table by (z_va - z_vb).

    Raises ArithmeticError when the division is not exact.
    """
    if not raw:
        return {}
    by_k: dict[int, RawTable] = {}
    for exps, c in raw.items():
        k = exps[va]
        rest = exps[:va] + (0,) + exps[va + 1 :]
        by_k.setdefault(k, {})[rest] = c
    kmax = max(by_k)
    kmin = min(by_k)

    def times_zb(tbl: RawTable) -> RawTable:
        return {e[:vb] + (e[vb] + 1,) + e[vb + 1 :]: c for e, c in tbl.items()}

    quot: dict[int, RawTable] = {}
    carry: RawTable = {}  # q_k while scanning k downward
    for k in range(kmax, kmin - 1, -1):
        qk: RawTable = dict(times_zb(carry))
        raw_add(qk, by_k.get(k, {}))
        if k > kmin:
            quot[k - 1] = qk
            carry = qk
        else:
            if qk:
                raise ArithmeticError("division by (z_a - z_b) leaves a remainder")
    out: RawTable = {}
    for k, tbl in quot.items():
        for rest, c in tbl.items():
            if c == 0:
                continue
            exps = rest[:va] + (k,) + rest[va + 1 :]
            raw_add_term(out, exps, c)
    return out


# -- poly-core operations ----------------------------------------------------


def symmetrize(raw: RawTable, shape: tuple[int, ...]) -> SymLaurent:
    """Full per-vertex group sum (NOT orbit-normalized): sum over all sigma of p o sigma."""
    acc: dict[ExpTuple, Scalar] = {}
    for exps, c in raw.items():
        key = canonical_key(exps, shape)
        s = acc.get(key)
        acc[key] = c if s is None else s + c
    stab_cache: dict[ExpTuple, int] = {}
    terms: dict[ExpTuple, Scalar] = {}
    for key, s in acc.items():
        if s == 0:
            continue
        st = stab_cache.get(key)
        if st is None:
            st = stabilizer_order(key, shape)
            stab_cache[key] = st
        terms[key] = s * st
    return SymLaurent(shape, terms)


def substitute(
    F: SymLaurent,
    assignment: dict[int, tuple[Scalar, int | None]],
) -> RawTable:
    """Exact substitution z_v -> scalar * z_target (or a pure scalar if target is None).

    Targets must be unsubstituted variables.  Substituted slots are zeroed in the
    result's exponent tuples; the result is generally NOT symmetric.
    """
    for v, (c, tgt) in assignment.items():
        if tgt is not None and tgt in assignment:
            raise ValueError(f"target z_{tgt} of z_{v} is itself substituted")
    out: RawTable = {}
    for exps, coeff in F.expand_raw().items():
        c = coeff
        e = list(exps)
        dead = False
        for v, (s, tgt) in assignment.items():
            k = e[v]
            if k:
                if s == 0:
                    if k < 0:
                        raise ZeroDivisionError("substitution by zero scalar at negative exponent")
                    dead = True
                    break
                c = c * s**k
                if tgt is not None:
                    e[tgt] += k
            e[v] = 0
        if not dead:
            raw_add_term(out, tuple(e), c)
    return out


def degree_profile(F: SymLaurent, k: tuple[int, ...]) -> int:
    """Max over monomials of the sum of the k_i largest exponents per vertex block."""
    if F.is_zero():
        raise ValueError("degree profile of the zero polynomial is undefined")
    sl = block_slices(F.shape)
    for ki, ni in zip(k, F.shape):
        if not (0 <= ki <= ni):
            raise ValueError(f"profile vector {k} out of range for shape {F.shape}")
    best = None
    for key in F.terms:
        tot = 0
        for ki, (a, _) in zip(k, sl):
            tot += sum(key[a : a + ki])  # canonical keys are sorted descending
        if best is None or tot > best:
            best = tot
    return best


def min_degree_profile(F: SymLaurent, k: tuple[int, ...]) -> int:
    """Min over monomials of the sum of the k_i smallest exponents per vertex block."""
    if F.is_zero():
        raise ValueError("degree profile of the zero polynomial is undefined")
    sl = block_slices(F.shape)
    best = None
    for key in F.terms:
        tot = 0
        for ki, (a, b) in zip(k, sl):
            if ki:
                tot += sum(key[b - ki : b])
        if best is None or tot < best:
            best = tot
    return best
