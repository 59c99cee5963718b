"""Free abelian groups Z^r, their characters, Smith normal form and the
exponent-lattice solving behind weight comparison."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSolution, NotRegular, RankMismatch
from .scalars import UnitScalar


class AbelianGroup:
    """Free abelian group on generators g_1..g_r."""

    __slots__ = ("rank",)

    def __init__(self, rank: int):
        if rank < 1:
            raise ValueError("group rank must be at least 1")
        self.rank = rank

    def __eq__(self, other):
        return isinstance(other, AbelianGroup) and other.rank == self.rank

    def __hash__(self):
        return hash(("AbelianGroup", self.rank))

    def __repr__(self):
        return f"AbelianGroup({self.rank})"

    def element(self, exponents):
        return GroupElement(self, exponents)

    def identity(self):
        return GroupElement(self, (0,) * self.rank)

    def gen(self, k):
        e = [0] * self.rank
        e[k] = 1
        return GroupElement(self, e)


class GroupElement:
    __slots__ = ("group", "exponents")

    def __init__(self, group, exponents):
        exponents = tuple(int(e) for e in exponents)
        if len(exponents) != group.rank:
            raise RankMismatch(f"expected {group.rank} exponents, got {len(exponents)}")
        self.group = group
        self.exponents = exponents

    def _check(self, other):
        if self.group != other.group:
            raise RankMismatch("elements of different groups")

    def __mul__(self, other):
        self._check(other)
        return GroupElement(self.group, [a + b for a, b in zip(self.exponents, other.exponents)])

    def inverse(self):
        return GroupElement(self.group, [-a for a in self.exponents])

    def __pow__(self, k):
        return GroupElement(self.group, [k * a for a in self.exponents])

    def is_identity(self):
        return not any(self.exponents)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self.exponents == other.exponents and self.group == other.group

    def __hash__(self):
        return hash(self.exponents)

    def __repr__(self):
        return f"GroupElement({list(self.exponents)})"


class Character:
    """Homomorphism Z^r -> units, given by the images of the generators."""

    __slots__ = ("group", "space", "values", "_hash")

    def __init__(self, group, values, space=None):
        values = tuple(values)
        if len(values) != group.rank:
            raise RankMismatch(f"expected {group.rank} character values, got {len(values)}")
        if space is None:
            space = values[0].space
        for v in values:
            if not isinstance(v, UnitScalar):
                raise TypeError("character values must be UnitScalars")
            if v.space is not space:
                raise ValueError("character values from different parameter spaces")
        self.group = group
        self.space = space
        self.values = values
        self._hash = None

    @classmethod
    def trivial(cls, group, space):
        one = space.unit_one()
        return cls(group, [one] * group.rank, space)

    def __call__(self, g):
        return evaluate(self, g)

    def _check(self, other):
        if self.group != other.group:
            raise RankMismatch("characters of different groups")

    def __mul__(self, other):
        self._check(other)
        return Character(self.group, [a * b for a, b in zip(self.values, other.values)], self.space)

    def __truediv__(self, other):
        return self * other.inverse()

    def inverse(self):
        return Character(self.group, [a.inverse() for a in self.values], self.space)

    def __pow__(self, k):
        return Character(self.group, [a ** k for a in self.values], self.space)

    def is_trivial(self):
        return all(v.is_one() for v in self.values)

    def key(self):
        return tuple((v.sign, v.exponents) for v in self.values)

    def __eq__(self, other):
        return isinstance(other, Character) and self.group == other.group and self.key() == other.key()

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.key())
        return self._hash

    def __repr__(self):
        return "Character(" + ", ".join(str(v) for v in self.values) + ")"

    def exponent_vector(self):
        """Concatenated Laurent exponents of all generator images."""
        out = []
        for v in self.values:
            out.extend(v.exponents)
        return out

    def sign_vector(self):
        return [0 if v.sign == 1 else 1 for v in self.values]


class DegreeVector(tuple):
    """An element of Z^I in the basis alpha_1..alpha_theta."""

    def __new__(cls, coords):
        return super().__new__(cls, (int(c) for c in coords))

    @classmethod
    def zero(cls, theta):
        return cls((0,) * theta)

    @classmethod
    def simple(cls, theta, i):
        return cls(1 if k == i else 0 for k in range(theta))

    @property
    def height(self):
        return sum(self)

    def is_nonneg(self):
        return all(c >= 0 for c in self)

    def __add__(self, other):
        return DegreeVector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return DegreeVector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return DegreeVector(-a for a in self)

    def __repr__(self):
        return f"DegreeVector({list(self)})"


def evaluate(chi: Character, g: GroupElement) -> UnitScalar:
    if chi.group != g.group:
        raise RankMismatch("character and element live on different groups")
    sign = 1
    exps = [0] * chi.space.m
    for v, e in zip(chi.values, g.exponents):
        if e:
            if v.sign < 0 and e % 2:
                sign = -sign
            for j, x in enumerate(v.exponents):
                exps[j] += e * x
    return UnitScalar(chi.space, sign, exps)


def char_product(basis, alpha, group=None, space=None) -> Character:
    """prod_i basis[i] ** alpha[i]."""
    if not basis:
        return Character.trivial(group, space)
    out = Character.trivial(basis[0].group, basis[0].space)
    for chi, n in zip(basis, alpha):
        if n:
            out = out * chi ** n
    return out


# Smith normal form

def smith_normal_form(matrix):
    """Return (D, U, V) with U*A*V = D, U and V unimodular, D diagonal with
    d_1 | d_2 | ... and nonnegative entries."""
    A = [list(map(int, row)) for row in matrix]
    n = len(A)
    m = len(A[0]) if n else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(m)] for i in range(m)]

    def swap_rows(M, a, b):
        M[a], M[b] = M[b], M[a]

    def swap_cols(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def add_row(M, src, dst, c):  # row dst += c*row src
        M[dst] = [x + c * y for x, y in zip(M[dst], M[src])]

    def add_col(M, src, dst, c):
        for row in M:
            row[dst] += c * row[src]

    t = 0
    while t < min(n, m):
        # pivot: smallest nonzero absolute value in the remaining block
        best = None
        for i in range(t, n):
            for j in range(t, m):
                if A[i][j] and (best is None or abs(A[i][j]) < abs(A[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        swap_rows(A, t, i)
        swap_rows(U, t, i)
        swap_cols(A, t, j)
        swap_cols(V, t, j)
        done = False
        while not done:
            done = True
            for i in range(t + 1, n):
                if A[i][t]:
                    c = A[i][t] // A[t][t]
                    add_row(A, t, i, -c)
                    add_row(U, t, i, -c)
                    if A[i][t]:
                        swap_rows(A, t, i)
                        swap_rows(U, t, i)
                        done = False
            for j in range(t + 1, m):
                if A[t][j]:
                    c = A[t][j] // A[t][t]
                    add_col(A, t, j, -c)
                    add_col(V, t, j, -c)
                    if A[t][j]:
                        swap_cols(A, t, j)
                        swap_cols(V, t, j)
                        done = False
            if done:
                # divisibility: fold in any entry not divisible by the pivot
                for i in range(t + 1, n):
                    if any(A[i][j] % A[t][t] for j in range(t + 1, m)):
                        add_row(A, i, t, 1)
                        add_row(U, i, t, 1)
                        done = False
                        break
        if A[t][t] < 0:
            A[t] = [-x for x in A[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return A, U, V


def elementary_divisors(matrix):
    D, _, _ = smith_normal_form(matrix)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


@dataclass(frozen=True)
class SubgroupIndex:
    value: int | None  # None means infinite

    @property
    def finite(self):
        return self.value is not None

    def __str__(self):
        return str(self.value) if self.finite else "infinite"


def smith_index(generators, group: AbelianGroup) -> SubgroupIndex:
    rows = []
    for g in generators:
        if g.group != group:
            raise RankMismatch("generator from a different group")
        rows.append(list(g.exponents))
    if not rows:
        return SubgroupIndex(None)
    divs = elementary_divisors(rows)
    if len(divs) < group.rank:
        return SubgroupIndex(None)
    idx = 1
    for d in divs:
        idx *= d
    return SubgroupIndex(idx)


# exact rational linear algebra on small integer systems

def _rref(rows):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in r] for r in rows]
    pivots = []
    r = 0
    ncols = len(M[0]) if M else 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c]), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
    return M[:r], pivots


def rational_rank(rows):
    if not rows or not rows[0]:
        return 0
    return len(_rref(rows)[1])


def rational_kernel(rows, ncols):
    """Basis of {x in Q^ncols : rows . x = 0}."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    R, piv = _rref(rows)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(R, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def z_linear_independent(chars) -> bool:
    """No nonzero n in Z^k with prod chi_i^n_i trivial.

    Sign parts are irrelevant: any rational kernel vector can be scaled to
    an even integer vector, which kills every sign."""
    chars = list(chars)
    if not chars:
        return True
    cols = [c.exponent_vector() for c in chars]
    rows = [list(r) for r in zip(*cols)]
    return rational_rank(rows) == len(chars)


def solve_weight_difference(target: Character, base: Character, basis) -> DegreeVector:
    """The unique alpha in Z^I with target = base * chi_alpha."""
    basis = list(basis)
    if not z_linear_independent(basis):
        raise NotRegular("basis characters are Z-linearly dependent")
    ratio = target / base
    k = len(basis)
    cols = [c.exponent_vector() for c in basis]
    rhs = ratio.exponent_vector()
    aug = [list(r) + [b] for r, b in zip(zip(*cols), rhs)] if cols and cols[0] else []
    R, piv = _rref(aug) if aug else ([], [])
    if k in piv:
        raise NoSolution("characters lie in different cosets")
    sol = [Fraction(0)] * k
    for row, p in zip(R, piv):
        sol[p] = row[k]
    if any(x.denominator != 1 for x in sol):
        raise NoSolution("no integral solution")
    alpha = DegreeVector(int(x) for x in sol)
    if char_product(basis, alpha) != ratio:
        raise NoSolution("sign constraints fail")
    return alpha


def weight_leq(lower: Character, upper: Character, basis) -> bool:
    """lower <= upper in the order upper = lower * chi_alpha, alpha in N^I."""
    try:
        return solve_weight_difference(upper, lower, basis).is_nonneg()
    except NoSolution:
        return False


def solve_integer_system(A, b):
    """One integer solution x of A x = b (A a list of integer rows), or None."""
    n = len(A)
    m = len(A[0]) if n else 0
    D, U, V = smith_normal_form(A)
    Ub = [sum(U[i][k] * b[k] for k in range(n)) for i in range(n)]
    y = [0] * m
    for t in range(n):
        d = D[t][t] if t < m else 0
        if d == 0:
            if Ub[t] != 0:
                return None
            continue
        if Ub[t] % d:
            return None
        y[t] = Ub[t] // d
    return [sum(V[i][k] * y[k] for k in range(m)) for i in range(m)]


def solve_mod2(A, b):
    """One solution of A x = b over GF(2), or None."""
    n = len(A)
    m = len(A[0]) if n else 0
    rows = [[A[i][j] % 2 for j in range(m)] + [b[i] % 2] for i in range(n)]
    piv = []
    r = 0
    for c in range(m):
        p = next((i for i in range(r, n) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(n):
            if i != r and rows[i][c]:
                rows[i] = [(x + y) % 2 for x, y in zip(rows[i], rows[r])]
        piv.append(c)
        r += 1
    if any(row[m] for row in rows[r:]):
        return None
    x = [0] * m
    for row, c in zip(rows, piv):
        x[c] = row[m]
    return x
