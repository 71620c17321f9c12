"""Exact integer and rational dense linear algebra.

Matrices are plain tuples of row tuples.  Entries are Python ``int`` (never
overflowing) or :class:`fractions.Fraction`.  Nothing here is fast; ranks in
this package stay well below 32.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm
from typing import NamedTuple, Sequence

Matrix = tuple  # tuple[tuple[int | Fraction, ...], ...]


class SingularMatrix(ArithmeticError):
    pass


class SmithDecomposition(NamedTuple):
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: Matrix
    S: Matrix
    V: Matrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.S[i][i] for i in range(min(len(self.S), len(self.S[0]) if self.S else 0)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def as_matrix(rows: Sequence[Sequence]) -> Matrix:
    return tuple(tuple(r) for r in rows)


def shape(A: Matrix) -> tuple[int, int]:
    return len(A), (len(A[0]) if A else 0)


def identity(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def zeros(m: int, n: int) -> Matrix:
    return tuple((0,) * n for _ in range(m))


def transpose(A: Matrix, nrows: int | None = None) -> Matrix:
    if not A:
        return tuple(() for _ in range(nrows or 0))
    return tuple(zip(*A))


def matmul(A: Matrix, B: Matrix) -> Matrix:
    if not A:
        return ()
    Bt = transpose(B)
    if not Bt:
        return tuple(() for _ in A)
    return tuple(tuple(sum(a * b for a, b in zip(row, col)) for col in Bt) for row in A)


def matvec(A: Matrix, v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in A)


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def bilinear(G: Matrix, u: Sequence, v: Sequence):
    """``u^T G v``."""
    return dot(u, matvec(G, v))


def columns(A: Matrix) -> list[tuple]:
    return list(transpose(A))


def from_columns(cols: Sequence[Sequence], nrows: int) -> Matrix:
    if not cols:
        return tuple(() for _ in range(nrows))
    return transpose(tuple(tuple(c) for c in cols))


def _normalize(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def normalize(A: Matrix) -> Matrix:
    """Demote integral fractions to ``int`` so equality is representation-free."""
    return tuple(tuple(_normalize(x) for x in row) for row in A)


# ---------------------------------------------------------------------------
# Smith normal form


def smith_normal_form(A: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form with transforms.

    Pivoting is deterministic: the smallest nonzero absolute value in the
    remaining block, ties broken by lowest row then lowest column.
    """
    m, n = len(A), (len(A[0]) if A else 0)
    S = [list(map(int, r)) for r in A]
    U = [list(r) for r in identity(m)]
    V = [list(r) for r in identity(n)]

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (S, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        for M in (S, U):
            M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for M in (S, V):
            for row in M:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = abs(S[i][j])
                if x and (best is None or x < best[0]):
                    best = (x, i, j)
        if best is None:
            break
        _, i, j = best
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            changed = False
            for i in range(t + 1, m):
                if S[i][t]:
                    add_row(i, t, -(S[i][t] // S[t][t]))
                    if S[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if S[t][j]:
                    add_col(j, t, -(S[t][j] // S[t][t]))
                    if S[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % S[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
    return SmithDecomposition(as_matrix(U), as_matrix(S), as_matrix(V))


def invariant_factors(A: Sequence[Sequence[int]]) -> tuple[int, ...]:
    return tuple(d for d in smith_normal_form(A).diagonal if d)


def rank(A: Sequence[Sequence]) -> int:
    if not A or not A[0]:
        return 0
    return smith_normal_form(integral_scaling(A)[0]).rank


def determinant(A: Sequence[Sequence]):
    """Exact determinant by fraction-valued elimination."""
    n = len(A)
    M = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return 0
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return _normalize(det)


# ---------------------------------------------------------------------------
# Hermite forms and kernels


def integral_scaling(A: Sequence[Sequence]) -> tuple[Matrix, int]:
    """Return ``(d*A, d)`` with ``d`` the least common denominator."""
    d = 1
    for row in A:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return tuple(tuple(int(Fraction(x) * d) for x in row) for row in A), d


def hermite_rows(rows: Sequence[Sequence]) -> list[tuple]:
    """Row Hermite normal form of the Z-span of ``rows``.

    Rows may be rational.  Returns a basis in echelon form with positive
    pivots and entries above each pivot reduced into ``[0, pivot)``; zero rows
    are dropped.  The result depends only on the lattice spanned.
    """
    if not rows:
        return []
    M, d = integral_scaling(rows)
    H = [list(r) for r in M]
    ncols = len(H[0])
    out: list[list[int]] = []
    col = 0
    while H and col < ncols:
        nz = [r for r in H if r[col]]
        if not nz:
            col += 1
            continue
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            piv = nz[0]
            for r in nz[1:]:
                q = r[col] // piv[col]
                r[:] = [a - q * b for a, b in zip(r, piv)]
            nz = [r for r in nz if r[col]]
        piv = nz[0]
        if piv[col] < 0:
            piv[:] = [-a for a in piv]
        H = [r for r in H if r is not piv and any(r)]
        for r in out:
            q = r[col] // piv[col]
            if q:
                r[:] = [a - q * b for a, b in zip(r, piv)]
        out.append(piv)
        col += 1
    return [tuple(_normalize(Fraction(a, d)) for a in r) for r in out]


def integer_kernel(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Z-basis of ``{x in Z^n : A x = 0}`` as the columns of the result.

    The basis is saturated and put in Hermite form (first nonzero entry of each
    basis vector positive).  ``ncols`` is needed only when ``A`` has no rows.
    """
    n = len(A[0]) if A else (ncols or 0)
    if not A:
        return identity(n)
    dec = smith_normal_form(A)
    r = dec.rank
    basis = [tuple(dec.V[i][j] for i in range(n)) for j in range(r, n)]
    return from_columns(hermite_rows(basis), n)


def rational_inverse(A: Sequence[Sequence]) -> Matrix:
    n = len(A)
    if any(len(r) != n for r in A):
        raise ValueError("matrix must be square")
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularMatrix("determinant is zero")
        M[c], M[p] = M[p], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c]:
                f = M[r][c]
                M[r] = [a - f * b for a, b in zip(M[r], M[c])]
    return normalize(tuple(tuple(row[n:]) for row in M))


def solve_f2(rows: Sequence[Sequence[int]], rhs: Sequence[int]) -> list[int] | None:
    """Lexicographically least solution of ``rows . x = rhs`` over GF(2).

    Returns ``None`` if inconsistent.  "Least" treats ``x[0]`` as the most
    significant bit, so each coordinate is pinned to 0 whenever possible.
    """
    n = len(rows[0]) if rows else 0
    fixed: list[int] = []

    def consistent(prefix):
        k = len(prefix)
        eqs = []
        for row, b in zip(rows, rhs):
            b = (b - sum(a * p for a, p in zip(row[:k], prefix))) % 2
            eqs.append([a % 2 for a in row[k:]] + [b])
        # Gaussian elimination on the remaining unknowns
        col = 0
        m = n - k
        while col < m:
            p = next((e for e in eqs if e[col]), None)
            if p is not None:
                eqs = [e if e is p or not e[col] else [(a + b) % 2 for a, b in zip(e, p)] for e in eqs]
                eqs.remove(p)
            col += 1
        return all(not e[-1] for e in eqs)

    if not consistent([]):
        return None
    for _ in range(n):
        fixed.append(0 if consistent(fixed + [0]) else 1)
    return fixed


def f2_rank_basis(vectors: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """Reduced row echelon basis over GF(2) of the span of ``vectors``."""
    rows = [[a % 2 for a in v] for v in vectors]
    if not rows:
        return []
    n = len(rows[0])
    basis: list[list[int]] = []
    for col in range(n):
        p = next((r for r in rows if r[col]), None)
        if p is None:
            continue
        rows = [[(a + b) % 2 for a, b in zip(r, p)] if r[col] else r for r in rows if r is not p]
        basis = [[(a + b) % 2 for a, b in zip(r, p)] if r[col] else r for r in basis]
        basis.append(p)
    return [tuple(b) for b in basis]


def f2_kernel(A: Sequence[Sequence[int]], ncols: int) -> list[tuple[int, ...]]:
    """Basis (reduced echelon) of the null space of ``A`` over GF(2)."""
    rows = f2_rank_basis(A) if A else []
    pivots = [next(i for i, a in enumerate(r) if a) for r in rows]
    free = [j for j in range(ncols) if j not in pivots]
    out = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for r, p in zip(rows, pivots):
            x[p] = r[f] % 2
        out.append(tuple(x))
    return f2_rank_basis(out)
