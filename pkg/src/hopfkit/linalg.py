"""Dense exact linear algebra over Scalars.

Matrices are lists of rows; every entry is a Scalar of one
ParameterSpace.  Only what the engine needs is here."""

from __future__ import annotations

from .errors import SingularGram


def zeros(space, nrows, ncols):
    z = space.zero()
    return [[z] * ncols for _ in range(nrows)]


def identity(space, n):
    z, o = space.zero(), space.one()
    return [[o if i == j else z for j in range(n)] for i in range(n)]


def matmul(A, B, space):
    if not A or not B:
        return zeros(space, len(A), len(B[0]) if B else 0)
    n, k, m = len(A), len(B), len(B[0])
    z = space.zero()
    out = []
    for i in range(n):
        row = [z] * m
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if not a:
                continue
            Bt = B[t]
            for j in range(m):
                b = Bt[j]
                if b:
                    row[j] = row[j] + a * b
        out.append(row)
    return out


def matvec(A, v, space):
    z = space.zero()
    out = []
    for row in A:
        s = z
        for a, x in zip(row, v):
            if a and x:
                s = s + a * x
        out.append(s)
    return out


def add(A, B):
    return [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def scale(A, c):
    return [[c * a for a in row] for row in A]


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def is_zero(A):
    return all(not x for row in A for x in row)


def equal(A, B):
    return len(A) == len(B) and all(len(ra) == len(rb) and all(a == b for a, b in zip(ra, rb))
                                    for ra, rb in zip(A, B))


def rref(A, ncols=None):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    M = [list(r) for r in A]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = M[r][c].inverse()
        M[r] = [x * inv if x else x for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y if y else x for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rank(A):
    if not A or not A[0]:
        return 0
    return len(rref(A)[1])


def nullspace(A, ncols, space):
    """Basis (list of column vectors) of {v : A v = 0}."""
    if not A:
        return [[space.one() if i == j else space.zero() for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(A, ncols)
    free = [c for c in range(ncols) if c not in piv]
    out = []
    for f in free:
        v = [space.zero()] * ncols
        v[f] = space.one()
        for row, p in zip(R, piv):
            v[p] = -row[f]
        out.append(v)
    return out


def inverse(A, space):
    n = len(A)
    aug = [list(row) + e for row, e in zip(A, identity(space, n))]
    R, piv = rref(aug, 2 * n)
    if piv[:n] != list(range(n)):
        raise SingularGram("matrix is singular")
    return [row[n:] for row in R[:n]]


def det(A, space):
    n = len(A)
    M = [list(r) for r in A]
    d = space.one()
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return space.zero()
        if p != c:
            M[c], M[p] = M[p], M[c]
            d = -d
        piv = M[c][c]
        d = d * piv
        inv = piv.inverse()
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] * inv
                M[r] = [x - f * y if y else x for x, y in zip(M[r], M[c])]
    return d


def span_rank(vectors):
    """Rank of a list of equal-length vectors."""
    return rank(vectors)
