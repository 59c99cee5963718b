"""Classical, parameter-free reference computations.

Everything here works with Python ints and Fractions only and imports
nothing from the rest of the package, so the oracles cannot share a bug
with the engine.  Weights are written as lambda - alpha with alpha in
N^I in the basis of simple roots, and lambda is given by its Dynkin
labels m."""

from __future__ import annotations

from collections import deque
from fractions import Fraction
from functools import lru_cache
from itertools import product

def _chain(n):
    return [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(n)] for i in range(n)]


def cartan_matrix(kind: str, n: int):
    """Cartan matrix of a connected finite type, Bourbaki numbering.

    For B and C the convention is a_ij = <alpha_j, alpha_i^vee>, so B2 is
    [[2, -1], [-2, 2]] with alpha_1 long."""
    a = _chain(n)
    if kind == "A":
        return a
    if kind == "B":
        a[n - 1][n - 2] = -2
        return a
    if kind == "C":
        a[n - 2][n - 1] = -2
        return a
    if kind == "D":
        a = _chain(n)
        a[n - 2][n - 1] = a[n - 1][n - 2] = 0
        a[n - 3][n - 1] = a[n - 1][n - 3] = -1
        return a
    if kind == "G" and n == 2:
        return [[2, -3], [-1, 2]]
    if kind == "F" and n == 4:
        a[2][1] = -2
        return a
    if kind == "E" and n in (6, 7, 8):
        a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
        edges = [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
        for i, j in edges:
            a[i][j] = a[j][i] = -1
        return a
    raise ValueError(f"unknown finite type {kind}{n}")


def product_cartan(*blocks):
    n = sum(len(b) for b in blocks)
    a = [[0] * n for _ in range(n)]
    off = 0
    for b in blocks:
        for i, row in enumerate(b):
            for j, x in enumerate(row):
                a[off + i][off + j] = x
        off += len(b)
    return a


def symmetrizer(a):
    """Smallest positive integers d with d_i a_ij = d_j a_ji on each component."""
    n = len(a)
    d = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        comp = [start]
        todo = deque([start])
        while todo:
            i = todo.popleft()
            for j in range(n):
                if j != i and a[i][j]:
                    val = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = val
                        comp.append(j)
                        todo.append(j)
                    elif d[j] != val:
                        raise ValueError("not symmetrizable")
        lcm = 1
        for i in comp:
            den = d[i].denominator
            lcm = lcm * den // _gcd(lcm, den)
        g = 0
        for i in comp:
            g = _gcd(g, int(d[i] * lcm))
        for i in comp:
            d[i] = int(d[i] * lcm) // g
    return [int(x) for x in d]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


class RootSystem:
    """Finite root system given by its Cartan matrix."""

    def __init__(self, a):
        self.a = [list(r) for r in a]
        self.rank = len(a)
        self.d = symmetrizer(self.a)
        self.positive_roots = self._roots()

    def form(self, x, y):
        """(x, y) for x, y in the root lattice, (alpha_i, alpha_j) = d_i a_ij."""
        n = self.rank
        return sum(x[i] * y[j] * self.d[i] * self.a[i][j] for i in range(n) for j in range(n) if x[i] and y[j])

    def _roots(self):
        n = self.rank
        simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
        roots = set(simple)
        layer = list(simple)
        limit = 200
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    # p = length of the alpha_i-string below beta
                    p = 0
                    while True:
                        cand = tuple(b - (p + 1) * (k == i) for k, b in enumerate(beta))
                        if cand in roots:
                            p += 1
                        else:
                            break
                    pairing = sum(beta[j] * self.a[i][j] for j in range(n))
                    if p - pairing > 0:
                        up = tuple(b + (k == i) for k, b in enumerate(beta))
                        if up not in roots:
                            roots.add(up)
                            nxt.append(up)
            layer = nxt
            if len(roots) > limit:
                raise ValueError("Cartan matrix is not of finite type")
        return sorted(roots, key=lambda r: (sum(r), r))


def kostant_partition(rs: RootSystem, alpha) -> int:
    roots = tuple(rs.positive_roots)
    alpha = tuple(alpha)
    if any(x < 0 for x in alpha):
        return 0

    @lru_cache(maxsize=None)
    def count(rest, k):
        if not any(rest):
            return 1
        if k == len(roots):
            return 0
        total = 0
        beta = roots[k]
        cur = rest
        while all(c >= 0 for c in cur):
            total += count(cur, k + 1)
            cur = tuple(c - b for c, b in zip(cur, beta))
        return total

    return count(alpha, 0)


def weyl_dim(rs: RootSystem, m) -> int:
    num = Fraction(1)
    for beta in rs.positive_roots:
        top = sum(b * dj * (mj + 1) for b, dj, mj in zip(beta, rs.d, m))
        bot = sum(b * dj for b, dj in zip(beta, rs.d))
        num *= Fraction(top, bot)
    assert num.denominator == 1
    return int(num)


def freudenthal(rs: RootSystem, m):
    """Weight multiplicities of L(m) as {alpha: mult}, weight = lambda - alpha."""
    n = rs.rank
    lam_dot = lambda beta: sum(b * dj * mj for b, dj, mj in zip(beta, rs.d, m))
    rho_dot = lambda beta: sum(b * dj for b, dj in zip(beta, rs.d))
    mult = {tuple([0] * n): 1}
    layer = [tuple([0] * n)]
    roots = rs.positive_roots
    while layer:
        cands = sorted({tuple(a + (k == i) for k, a in enumerate(alpha)) for alpha in layer for i in range(n)})
        nxt = []
        for alpha in cands:
            lhs = 2 * (lam_dot(alpha) + rho_dot(alpha)) - rs.form(alpha, alpha)
            rhs = 0
            for beta in roots:
                bb = rs.form(beta, beta)
                lb = lam_dot(beta) - rs.form(alpha, beta)
                k = 1
                while True:
                    up = tuple(a - k * b for a, b in zip(alpha, beta))
                    if any(x < 0 for x in up):
                        break
                    mu = mult.get(up, 0)
                    if mu:
                        rhs += mu * (lb + k * bb)
                    k += 1
            rhs *= 2
            if rhs:
                assert lhs > 0 and rhs % lhs == 0
                mult[alpha] = rhs // lhs
                nxt.append(alpha)
        layer = nxt
    return mult


def clebsch_gordan_a1(m: int, n: int):
    return list(range(m + n, abs(m - n) - 1, -2))


def sl2_weight_dims(m: int):
    return [1] * (m + 1)


def degrees_up_to(theta: int, max_height: int):
    """All alpha in N^theta with 1 <= |alpha| <= max_height."""
    out = []
    for alpha in product(range(max_height + 1), repeat=theta):
        if 1 <= sum(alpha) <= max_height:
            out.append(alpha)
    return sorted(out, key=lambda a: (sum(a), a))
