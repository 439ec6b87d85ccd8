"""Exhaustive counting of absolutely indecomposable quiver representations.

Representations over a small finite field are enumerated as matrix tuples,
bucketed into isomorphism classes by breadth-first orbit exploration under
generators of the base-change group, and tested for absolute
indecomposability through the endomorphism algebra: the class counts iff
every endomorphism is a scalar plus a nilpotent (local ring, residue field
F_q).  Field sizes are capped at 4 and the tuple count is resource-guarded.
"""

from __future__ import annotations

import itertools

from .quiver import Quiver

Matrix = tuple[tuple[int, ...], ...]


class GF:
    """Arithmetic tables for F_q, q in {2, 3, 4}."""

    def __init__(self, q: int):
        if q in (2, 3):
            self.q = q
            self.add = [[(a + b) % q for b in range(q)] for a in range(q)]
            self.mul = [[(a * b) % q for b in range(q)] for a in range(q)]
            self.neg = [(-a) % q for a in range(q)]
        elif q == 4:
            # F_4 = F_2[w]/(w^2+w+1), elements encoded as bit pairs a0 + a1*w
            self.q = 4

            def mul4(a: int, b: int) -> int:
                a0, a1 = a & 1, a >> 1
                b0, b1 = b & 1, b >> 1
                c0 = (a0 & b0) ^ (a1 & b1)
                c1 = (a0 & b1) ^ (a1 & b0) ^ (a1 & b1)
                return c0 | (c1 << 1)

            self.add = [[a ^ b for b in range(4)] for a in range(4)]
            self.mul = [[mul4(a, b) for b in range(4)] for a in range(4)]
            self.neg = [a for a in range(4)]
        else:
            raise ValueError(f"field size {q} not supported (only 2, 3, 4)")
        self.inv = [0] * self.q
        for a in range(1, self.q):
            for b in range(1, self.q):
                if self.mul[a][b] == 1:
                    self.inv[a] = b
                    break
        self.primitive = self._find_primitive()

    def _find_primitive(self) -> int:
        for g in range(2, self.q):
            seen = set()
            x = 1
            for _ in range(self.q - 1):
                x = self.mul[x][g]
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        return 1  # F_2


def mat_mul(F: GF, A: Matrix, B: Matrix) -> Matrix:
    n, m = len(A), len(B[0]) if B else 0
    k = len(B)
    add, mul = F.add, F.mul
    out = []
    for r in range(n):
        row = []
        Ar = A[r]
        for c in range(m):
            s = 0
            for j in range(k):
                s = add[s][mul[Ar[j]][B[j][c]]]
            row.append(s)
        out.append(tuple(row))
    return tuple(out)


def mat_identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inverse(F: GF, A: Matrix) -> Matrix:
    n = len(A)
    aug = [list(A[i]) + [1 if j == i else 0 for j in range(n)] for i in range(n)]
    add, mul, inv, neg = F.add, F.mul, F.inv, F.neg
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        s = inv[aug[col][col]]
        aug[col] = [mul[s][x] for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [add[x][mul[neg[f]][y]] for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def gl_generators(F: GF, n: int) -> list[Matrix]:
    """A generating set of GL_n(F_q), validated by closure size."""
    if n == 0:
        return []
    if n == 1:
        return [((F.primitive,),)] if F.q > 2 else []
    gens = []
    cyc = tuple(
        tuple(1 if c == (r + 1) % n else 0 for c in range(n)) for r in range(n)
    )
    gens.append(cyc)
    trans = [list(row) for row in mat_identity(n)]
    trans[0][1] = 1
    gens.append(tuple(tuple(r) for r in trans))
    if F.q > 2:
        diag = [list(row) for row in mat_identity(n)]
        diag[0][0] = F.primitive
        gens.append(tuple(tuple(r) for r in diag))
    return gens


_gl_order_checked: set[tuple[int, int]] = set()


def _check_gl_closure(F: GF, n: int, gens: list[Matrix]) -> None:
    if (F.q, n) in _gl_order_checked or n <= 1:
        _gl_order_checked.add((F.q, n))
        return
    expected = 1
    for i in range(n):
        expected *= F.q**n - F.q**i
    seen = {mat_identity(n)}
    frontier = [mat_identity(n)]
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                gh = mat_mul(F, g, h)
                if gh not in seen:
                    seen.add(gh)
                    nxt.append(gh)
        frontier = nxt
    if len(seen) != expected:
        raise AssertionError(f"GL_{n}(F_{F.q}) generators span {len(seen)} != {expected}")
    _gl_order_checked.add((F.q, n))


DEFAULT_TUPLE_LIMIT = 2_000_000


def _solve_endo_basis(F: GF, quiver: Quiver, n: tuple[int, ...], rep: list[Matrix]):
    """Basis of the endomorphism algebra: phi_t M_e = M_e phi_s per edge."""
    nI = quiver.vertex_count
    offs = []
    acc = 0
    for i in range(nI):
        offs.append(acc)
        acc += n[i] ** 2
    nvars = acc
    rows = []
    add, mul, neg = F.add, F.mul, F.neg
    for e, (s, t) in enumerate(quiver.edges):
        M = rep[e]
        for r in range(n[t]):
            for c in range(n[s]):
                row = [0] * nvars
                # (phi_t M)_rc = sum_j phi_t[r][j] M[j][c]
                for j in range(n[t]):
                    row[offs[t] + r * n[t] + j] = add[row[offs[t] + r * n[t] + j]][M[j][c]]
                # -(M phi_s)_rc = -sum_j M[r][j] phi_s[j][c]
                for j in range(n[s]):
                    idx = offs[s] + j * n[s] + c
                    row[idx] = add[row[idx]][neg[M[r][j]]]
                if any(row):
                    rows.append(row)
    # kernel over F_q
    pivots: dict[int, list[int]] = {}
    for row in rows:
        row = list(row)
        for col, prow in sorted(pivots.items()):
            if row[col]:
                f = row[col]
                row = [add[x][neg[mul[f][y]]] for x, y in zip(row, prow)]
        lead = next((c for c in range(nvars) if row[c]), None)
        if lead is None:
            continue
        s0 = F.inv[row[lead]]
        row = [mul[s0][x] for x in row]
        for col, prow in pivots.items():
            if prow[lead]:
                f = prow[lead]
                pivots[col] = [add[x][neg[mul[f][y]]] for x, y in zip(prow, row)]
        pivots[lead] = row
    free = [c for c in range(nvars) if c not in pivots]
    basis = []
    for fcol in free:
        vec = [0] * nvars
        vec[fcol] = 1
        for p, prow in pivots.items():
            if prow[fcol]:
                vec[p] = neg[prow[fcol]]
        mats = []
        for i in range(nI):
            ni = n[i]
            mats.append(
                tuple(
                    tuple(vec[offs[i] + r * ni + c] for c in range(ni)) for r in range(ni)
                )
            )
        basis.append(mats)
    return basis


def _is_scalar_plus_nilpotent(F: GF, n: tuple[int, ...], phi: list[Matrix]) -> bool:
    add, mul, neg = F.add, F.mul, F.neg
    for c in range(F.q):
        ok = True
        for i, ni in enumerate(n):
            if ni == 0:
                continue
            M = tuple(
                tuple(add[phi[i][r][cc]][neg[c] if r == cc else 0] for cc in range(ni))
                for r in range(ni)
            )
            P = M
            for _ in range(ni - 1):
                P = mat_mul(F, P, M)
            if any(any(row) for row in P):
                ok = False
                break
        if ok:
            return True
    return False


def count_absolutely_indecomposable(
    quiver: Quiver,
    n: tuple[int, ...],
    q: int,
    tuple_limit: int = DEFAULT_TUPLE_LIMIT,
) -> int:
    """Exhaustive count of iso classes of absolutely indecomposable reps."""
    F = GF(q)
    nI = quiver.vertex_count
    shapes = [(n[t], n[s]) for s, t in quiver.edges]
    sizes = [r * c for r, c in shapes]
    total_entries = sum(sizes)
    count = q**total_entries
    if count > tuple_limit:
        raise ValueError(
            f"{count} matrix tuples exceed the exhaustive bound {tuple_limit} for n={n}, q={q}"
        )

    gens_per_vertex = []
    for i in range(nI):
        gens = gl_generators(F, n[i])
        _check_gl_closure(F, n[i], gens)
        gens_per_vertex.append([(g, mat_inverse(F, g)) for g in gens])

    def encode(rep: list[Matrix]) -> int:
        code = 0
        for M in rep:
            for row in M:
                for x in row:
                    code = code * q + x
        return code

    def decode(code: int) -> list[Matrix]:
        flat = []
        for _ in range(total_entries):
            flat.append(code % q)
            code //= q
        flat.reverse()
        rep = []
        pos = 0
        for r, c in shapes:
            M = tuple(tuple(flat[pos + rr * c : pos + rr * c + c]) for rr in range(r))
            rep.append(M)
            pos += r * c
        return rep

    visited = bytearray(count)
    n_classes = 0
    n_abs = 0
    maxloc = max((x for x in n), default=0) + sum(x * (x - 1) // 2 for x in n)
    for start in range(count):
        if visited[start]:
            continue
        n_classes += 1
        rep0 = decode(start)
        stack = [start]
        visited[start] = 1
        while stack:
            code = stack.pop()
            rep = decode(code)
            for v in range(nI):
                for g, ginv in gens_per_vertex[v]:
                    new = []
                    for e, (s, t) in enumerate(quiver.edges):
                        M = rep[e]
                        if t == v:
                            M = mat_mul(F, g, M)
                        if s == v:
                            M = mat_mul(F, M, ginv)
                        new.append(M)
                    ncode = encode(new)
                    if not visited[ncode]:
                        visited[ncode] = 1
                        stack.append(ncode)
        endo = _solve_endo_basis(F, quiver, n, rep0)
        if len(endo) > maxloc:
            continue  # endomorphism algebra too large to be local
        abs_indec = True
        for combo in itertools.product(range(q), repeat=len(endo)):
            phi = []
            for i in range(nI):
                ni = n[i]
                M = [[0] * ni for _ in range(ni)]
                for coef, b in zip(combo, endo):
                    if coef:
                        for r in range(ni):
                            for c in range(ni):
                                M[r][c] = F.add[M[r][c]][F.mul[coef][b[i][r][c]]]
                phi.append(tuple(tuple(row) for row in M))
            if not _is_scalar_plus_nilpotent(F, n, phi):
                abs_indec = False
                break
        if abs_indec:
            n_abs += 1
    return n_abs


def kac_bruteforce(
    quiver: Quiver,
    n: tuple[int, ...],
    field_sizes: list[int],
    tuple_limit: int = DEFAULT_TUPLE_LIMIT,
) -> list[int]:
    """Counts of absolutely indecomposable reps for each field size."""
    if sum(n) > 3:
        raise ValueError(f"|n| = {sum(n)} exceeds the exhaustive bound 3")
    out = []
    for q in field_sizes:
        if q > 4:
            raise ValueError(f"field size {q} exceeds the exhaustive bound 4")
        out.append(count_absolutely_indecomposable(quiver, n, q, tuple_limit))
    return out
