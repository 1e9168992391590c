"""Exact integer matrix routines: echelon forms, Smith form, lattice solving.

Matrices are lists of rows of Python ints.  Nothing here uses floats, so
entries may grow without bound.
"""

from __future__ import annotations

from typing import Sequence

Matrix = list[list[int]]


def zeros(m: int, n: int) -> Matrix:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def copy(A: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in A]


def transpose(A: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Transpose; `ncols` gives the column count when `A` has no rows."""
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence[int]], B: Sequence[Sequence[int]], inner: int | None = None,
           ncols: int | None = None) -> Matrix:
    m = len(A)
    k = len(B) if inner is None else inner
    n = (len(B[0]) if B else 0) if ncols is None else ncols
    out = zeros(m, n)
    for i in range(m):
        Ai = A[i]
        Oi = out[i]
        for t in range(k):
            a = Ai[t]
            if a:
                Bt = B[t]
                for j in range(n):
                    b = Bt[j]
                    if b:
                        Oi[j] += a * b
    return out


def matvec(A: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """Return (g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def row_hnf(rows: Sequence[Sequence[int]], ncols: int,
            with_transform: bool = False) -> tuple[Matrix, Matrix | None, list[int]]:
    """Row Hermite normal form.

    Returns ``(H, T, pivots)`` with ``T @ rows == H`` (``T`` unimodular, only
    when requested).  Nonzero rows of ``H`` come first, each with a positive
    pivot strictly right of the previous one; entries above a pivot are
    reduced into ``[0, pivot)``.  The nonzero rows are the canonical basis of
    the lattice spanned by ``rows``.
    """
    H = copy(rows)
    m = len(H)
    T = identity(m) if with_transform else None
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        for i in range(r + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[r][c]
            g, s, t = ext_gcd(a, b)
            u, v = -b // g, a // g
            Hr, Hi = H[r], H[i]
            H[r] = [s * x + t * y for x, y in zip(Hr, Hi)]
            H[i] = [u * x + v * y for x, y in zip(Hr, Hi)]
            if T is not None:
                Tr, Ti = T[r], T[i]
                T[r] = [s * x + t * y for x, y in zip(Tr, Ti)]
                T[i] = [u * x + v * y for x, y in zip(Tr, Ti)]
        p = H[r][c]
        if p == 0:
            continue
        if p < 0:
            H[r] = [-x for x in H[r]]
            if T is not None:
                T[r] = [-x for x in T[r]]
            p = -p
        Hr = H[r]
        for i in range(r):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], Hr)]
                if T is not None:
                    T[i] = [x - q * y for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
    return H, T, pivots


def lattice_basis(vectors: Sequence[Sequence[int]], dim: int) -> list[tuple[int, ...]]:
    """Canonical (Hermite) basis of the lattice spanned by `vectors` in Z^dim."""
    H, _, pivots = row_hnf(vectors, dim)
    return [tuple(H[i]) for i in range(len(pivots))]


def reduce_vector(v: Sequence[int], basis: Sequence[Sequence[int]], pivots: Sequence[int]) -> list[int]:
    """Canonical representative of `v` modulo a Hermite basis."""
    w = list(v)
    for row, p in zip(basis, pivots):
        q = w[p] // row[p]
        if q:
            w = [x - q * y for x, y in zip(w, row)]
    return w


def hermite_pivots(basis: Sequence[Sequence[int]]) -> list[int]:
    out = []
    for row in basis:
        for j, x in enumerate(row):
            if x:
                out.append(j)
                break
    return out


def in_lattice(v: Sequence[int], basis: Sequence[Sequence[int]]) -> bool:
    return not any(reduce_vector(v, basis, hermite_pivots(basis)))


class IntegerSolver:
    """Solve ``A x = b`` over the integers for a fixed ``A`` and many ``b``.

    ``A`` is ``m x n``.  The echelon form of ``A^T`` is computed once; each
    solve is forward substitution plus a transform product.
    """

    def __init__(self, A: Sequence[Sequence[int]], m: int, n: int):
        self.m, self.n = m, n
        At = transpose(A, n) if m else [[] for _ in range(n)]
        H, T, pivots = row_hnf(At, m, with_transform=True)
        self.H = H
        self.T = T
        self.pivots = pivots
        self.rank = len(pivots)

    def solve(self, b: Sequence[int]) -> list[int] | None:
        """Some integer solution of ``A x = b``, or None if there is none."""
        resid = list(b)
        w = [0] * self.n
        for i, p in enumerate(self.pivots):
            val = resid[p]
            if val == 0:
                continue
            piv = self.H[i][p]
            q, r = divmod(val, piv)
            if r:
                return None
            w[i] = q
            Hi = self.H[i]
            for j in range(p, self.m):
                if Hi[j]:
                    resid[j] -= q * Hi[j]
        if any(resid):
            return None
        x = [0] * self.n
        for i in range(self.rank):
            wi = w[i]
            if wi:
                Ti = self.T[i]
                for j in range(self.n):
                    if Ti[j]:
                        x[j] += wi * Ti[j]
        return x

    def nullspace(self) -> list[list[int]]:
        """Basis of ``{x : A x = 0}`` (as vectors)."""
        return [list(self.T[i]) for i in range(self.rank, self.n)]


def integer_nullspace(A: Sequence[Sequence[int]], m: int, n: int) -> list[list[int]]:
    return IntegerSolver(A, m, n).nullspace()


def smith(A: Sequence[Sequence[int]], m: int, n: int) -> tuple[Matrix, Matrix, list[int], Matrix, Matrix]:
    """Smith normal form ``U A V = D``.

    Returns ``(U, U_inv, diag, V, V_inv)``; ``diag`` holds the nonzero
    invariant factors in divisibility order (length = rank of ``A``).
    """
    D = copy(A)
    U, Ui = identity(m), identity(m)
    V, Vi = identity(n), identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]
        for row in Ui:
            row[i], row[j] = row[j], row[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vi[i], Vi[j] = Vi[j], Vi[i]

    def row_combine(i, j, s, t, u, v):
        # rows (i, j) <- [[s, t], [u, v]] @ rows (i, j); det = 1
        Di, Dj = D[i], D[j]
        D[i] = [s * x + t * y for x, y in zip(Di, Dj)]
        D[j] = [u * x + v * y for x, y in zip(Di, Dj)]
        Ui_, Uj = U[i], U[j]
        U[i] = [s * x + t * y for x, y in zip(Ui_, Uj)]
        U[j] = [u * x + v * y for x, y in zip(Ui_, Uj)]
        # inverse of [[s,t],[u,v]] is [[v,-t],[-u,s]] applied on columns of Ui
        for row in Ui:
            a, b = row[i], row[j]
            row[i], row[j] = a * v - b * u, -a * t + b * s

    def col_combine(i, j, s, t, u, v):
        # cols (i, j) <- cols (i, j) @ [[s, u], [t, v]]; det = 1
        for row in D:
            a, b = row[i], row[j]
            row[i], row[j] = s * a + t * b, u * a + v * b
        for row in V:
            a, b = row[i], row[j]
            row[i], row[j] = s * a + t * b, u * a + v * b
        Vii, Vij = Vi[i], Vi[j]
        Vi[i] = [v * x - u * y for x, y in zip(Vii, Vij)]
        Vi[j] = [-t * x + s * y for x, y in zip(Vii, Vij)]

    diag: list[int] = []
    k = 0
    while k < min(m, n):
        best = None
        for i in range(k, m):
            for j in range(k, n):
                x = D[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        if i != k:
            swap_rows(i, k)
        if j != k:
            swap_cols(j, k)
        while True:
            changed = False
            for i in range(k + 1, m):
                b = D[i][k]
                if b:
                    a = D[k][k]
                    if b % a == 0:
                        row_combine(k, i, 1, 0, -(b // a), 1)
                    else:
                        g, s, t = ext_gcd(a, b)
                        row_combine(k, i, s, t, -b // g, a // g)
                        changed = True
            for j in range(k + 1, n):
                b = D[k][j]
                if b:
                    a = D[k][k]
                    if b % a == 0:
                        col_combine(k, j, 1, 0, -(b // a), 1)
                    else:
                        g, s, t = ext_gcd(a, b)
                        col_combine(k, j, s, t, -b // g, a // g)
                        changed = True
            if not changed:
                p = D[k][k]
                bad = None
                for i in range(k + 1, m):
                    for j in range(k + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                # fold the offending row into row k and redo the elimination
                Dk, Db = D[k], D[bad]
                D[k] = [x + y for x, y in zip(Dk, Db)]
                U[k] = [x + y for x, y in zip(U[k], U[bad])]
                for row in Ui:
                    row[bad] -= row[k]
        if D[k][k] < 0:
            D[k] = [-x for x in D[k]]
            U[k] = [-x for x in U[k]]
            for row in Ui:
                row[k] = -row[k]
        diag.append(D[k][k])
        k += 1
    return U, Ui, diag, V, Vi


def invariant_factors(A: Sequence[Sequence[int]], m: int, n: int) -> list[int]:
    return smith(A, m, n)[2]


def det(A: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = copy(A)
    n = len(M)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k]:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]
