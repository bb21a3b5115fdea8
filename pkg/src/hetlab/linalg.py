"""Exact dense linear algebra over Q(i, sqrt2).

Matrices are lists of row lists of Scalar.  Everything is plain
Gauss-Jordan with exact division; no pivoting heuristics are needed
since the arithmetic is exact.
"""

from __future__ import annotations

from .scalars import Scalar, ZERO, ONE


def zeros(n, m):
    return [[ZERO for _ in range(m)] for _ in range(n)]


def identity(n):
    out = zeros(n, n)
    for i in range(n):
        out[i][i] = ONE
    return out


def matvec(mat, vec):
    return [sum((row[j] * vec[j] for j in range(len(vec))), ZERO)
            for row in mat]


def matmul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = zeros(n, m)
    for i in range(n):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            x = ai[t]
            if x.is_zero():
                continue
            bt = b[t]
            for j in range(m):
                if bt[j]:
                    oi[j] = oi[j] + x * bt[j]
    return out


def row_reduce(mat):
    """Reduced row echelon form; returns (rref, pivot column list)."""
    a = [row[:] for row in mat]
    n = len(a)
    m = len(a[0]) if n else 0
    pivots = []
    r = 0
    for c in range(m):
        pr = None
        for i in range(r, n):
            if a[i][c]:
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = a[r][c].inverse()
        a[r] = [x * inv for x in a[r]]
        for i in range(n):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == n:
            break
    return a, pivots


def rank(mat):
    if not mat:
        return 0
    return len(row_reduce(mat)[1])


def kernel_basis(mat):
    """Basis of the right null space {x : mat x = 0}."""
    if not mat:
        return []
    m = len(mat[0])
    rr, pivots = row_reduce(mat)
    pivset = set(pivots)
    free = [c for c in range(m) if c not in pivset]
    basis = []
    for fc in free:
        v = [ZERO] * m
        v[fc] = ONE
        for r, pc in enumerate(pivots):
            v[pc] = -rr[r][fc]
        basis.append(v)
    return basis


def solve(mat, rhs):
    """Solve mat x = rhs exactly; raises ValueError if inconsistent or
    underdetermined."""
    n = len(mat)
    m = len(mat[0])
    aug = [mat[i][:] + [rhs[i]] for i in range(n)]
    rr, pivots = row_reduce(aug)
    if m in pivots:
        raise ValueError("inconsistent linear system")
    if len(pivots) < m:
        raise ValueError("underdetermined linear system")
    x = [ZERO] * m
    for r, pc in enumerate(pivots):
        x[pc] = rr[r][m]
    return x


def inverse(mat):
    n = len(mat)
    aug = [mat[i][:] + identity(n)[i] for i in range(n)]
    rr, pivots = row_reduce(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in rr]


def transpose(mat):
    if not mat:
        return []
    return [list(col) for col in zip(*mat)]


def scalar_matrix(rows):
    """Coerce a nested list of ints/Scalars into a Scalar matrix."""
    return [[x if isinstance(x, Scalar) else Scalar(x) for x in row]
            for row in rows]
