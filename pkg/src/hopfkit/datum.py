"""YD-data, linking parameters and reduced data.

Indices are 0-based internally; reports and error messages print them
1-based."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import (AntisymmetryViolation, AuditFailure, ConditionFails, IllegalLink, InvalidDatum,
                     MultipleLinks, NotCartan, NotGeneric, NotPerfect, NotSymmetrizable, NotUnlinked)
from .lattice import (AbelianGroup, Character, rational_kernel, rational_rank, smith_index,
                      z_linear_independent)
from .scalars import UnitScalar, is_root_of_unity, unit_discrete_log


def _components(n, adjacent):
    seen = [False] * n
    comps = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp, todo = [s], deque([s])
        while todo:
            i = todo.popleft()
            for j in range(n):
                if not seen[j] and adjacent(i, j):
                    seen[j] = True
                    comp.append(j)
                    todo.append(j)
        comps.append(sorted(comp))
    return comps


class _BraidingMixin:
    """Shared helpers for anything with a braiding matrix ``q``."""

    def is_generic(self):
        return all(not is_root_of_unity(self.q[i][i]) for i in range(self.theta))

    def similar_classes(self):
        """Classes of ~: connected components of i -- j iff q_ij q_ji != 1."""
        q = self.q
        return _components(self.theta, lambda i, j: i != j and not (q[i][j] * q[j][i]).is_one())

    def similar(self, i, j):
        return any(i in c and j in c for c in self.similar_classes())

    def condition_holds(self):
        """q_ij q_ji != q_ii^2 for all i != j."""
        q = self.q
        return all(q[i][j] * q[j][i] != q[i][i] ** 2
                   for i in range(self.theta) for j in range(self.theta) if i != j)


class YDDatum(_BraidingMixin):
    def __init__(self, group: AbelianGroup, space, g, chi):
        g, chi = list(g), list(chi)
        if len(g) != len(chi) or not g:
            raise InvalidDatum("g and chi must be nonempty lists of equal length")
        for x in g:
            if x.group != group:
                raise InvalidDatum("g_i must lie in the datum's group")
        for c in chi:
            if c.group != group or c.space is not space:
                raise InvalidDatum("chi_i must be characters of the datum's group")
        self.group = group
        self.space = space
        self.g = g
        self.chi = chi
        self.theta = len(g)
        self.q = [[chi[j](g[i]) for j in range(self.theta)] for i in range(self.theta)]

    def __repr__(self):
        return f"YDDatum(theta={self.theta}, rank={self.group.rank})"


class LinkingParameter:
    """Sparse map (i, j) -> nonzero Scalar."""

    def __init__(self, values=None):
        self.values = {k: v for k, v in (values or {}).items() if v}

    def __getitem__(self, key):
        return self.values.get(key)

    def get(self, i, j, space):
        v = self.values.get((i, j))
        return v if v is not None else space.zero()

    def support(self):
        return sorted(self.values)

    def __eq__(self, other):
        return isinstance(other, LinkingParameter) and self.values == other.values

    def __repr__(self):
        return "LinkingParameter({" + ", ".join(f"({i + 1},{j + 1}): {v}" for (i, j), v in sorted(self.values.items())) + "})"


@dataclass
class YDReport:
    generic: bool
    classes: list

    def to_dict(self):
        return {"generic": self.generic, "classes": [[i + 1 for i in c] for c in self.classes]}


def validate_yd(datum) -> YDReport:
    for i in range(datum.theta):
        if is_root_of_unity(datum.q[i][i]):
            raise NotGeneric(i, f"q_{i + 1}{i + 1} = {datum.q[i][i]} is a root of unity")
    return YDReport(True, datum.similar_classes())


# Cartan data

@dataclass
class CartanData:
    a: list
    d: list
    finite_type: bool
    components: list
    component_types: list = field(default_factory=list)

    @property
    def type_name(self):
        if not self.finite_type:
            return None
        return "x".join(self.component_types)

    def determinant(self):
        M = [[Fraction(x) for x in row] for row in self.a]
        return _det(M)

    def to_dict(self):
        return {
            "a": self.a,
            "d": self.d,
            "finite_type": self.finite_type,
            "type": self.type_name,
            "components": [[i + 1 for i in c] for c in self.components],
        }


def _det(M):
    n = len(M)
    M = [row[:] for row in M]
    det = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            M[c], M[p] = M[p], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            if M[r][c]:
                f = M[r][c] / M[c][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def _symmetrize(a, comps):
    n = len(a)
    d = [None] * n
    for comp in comps:
        s = comp[0]
        d[s] = Fraction(1)
        todo = deque([s])
        while todo:
            i = todo.popleft()
            for j in comp:
                if j == i or not a[i][j]:
                    continue
                val = d[i] * a[i][j] / a[j][i]
                if d[j] is None:
                    d[j] = val
                    todo.append(j)
                elif d[j] != val:
                    raise NotSymmetrizable(f"no symmetrizer: cycle condition fails at {j + 1}")
        den = 1
        for i in comp:
            den = den * d[i].denominator // _gcd(den, d[i].denominator)
        ints = [int(d[i] * den) for i in comp]
        g = 0
        for x in ints:
            g = _gcd(g, x)
        for i, x in zip(comp, ints):
            d[i] = x // g
    return [int(x) for x in d]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def _positive_definite(M):
    """All leading principal minors > 0 (M symmetric rational)."""
    n = len(M)
    return all(_det([row[:k] for row in M[:k]]) > 0 for k in range(1, n + 1))


def _dynkin_name(a, d, comp):
    """Name of a connected finite-type diagram, given positive definiteness."""
    n = len(comp)
    if n == 1:
        return "A1"
    nbrs = {i: [j for j in comp if j != i and a[i][j]] for i in comp}
    lace = {(i, j): a[i][j] * a[j][i] for i in comp for j in nbrs[i]}
    top = max(lace.values())
    if top == 3:
        return "G2"
    if top == 2:
        if n == 2:
            return "B2"
        (i, j) = next(k for k, v in lace.items() if v == 2)
        if len(nbrs[i]) == 2 and len(nbrs[j]) == 2:
            return "F4"
        leaf = i if len(nbrs[i]) == 1 else j
        other = j if leaf == i else i
        # B_n: the leaf of the double edge is the unique short root
        return f"B{n}" if d[leaf] < d[other] else f"C{n}"
    branch = [i for i in comp if len(nbrs[i]) == 3]
    if not branch:
        return f"A{n}"
    b = branch[0]
    arms = []
    for start in nbrs[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [k for k in nbrs[cur] if k != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[:2] == [1, 1]:
        return f"D{n}"
    return f"E{n}"


def detect_cartan(datum):
    """Generalized Cartan matrix of a generic datum, or raise NotCartan."""
    if not datum.is_generic():
        i = next(i for i in range(datum.theta) if is_root_of_unity(datum.q[i][i]))
        raise NotGeneric(i)
    n = datum.theta
    q = datum.q
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            k = unit_discrete_log(q[i][i], q[i][j] * q[j][i])
            if k is None or k > 0:
                raise NotCartan(i, j, f"q_{i + 1}{j + 1} q_{j + 1}{i + 1} = {q[i][j] * q[j][i]} "
                                      f"is not a nonpositive power of q_{i + 1}{i + 1} = {q[i][i]}")
            a[i][j] = k
    for i in range(n):
        for j in range(n):
            if (a[i][j] == 0) != (a[j][i] == 0):
                raise NotCartan(i, j, f"a_{i + 1}{j + 1} and a_{j + 1}{i + 1} are not both zero")
    comps = _components(n, lambda i, j: i != j and a[i][j] != 0)
    d = _symmetrize(a, comps)
    finite = True
    types = []
    for comp in comps:
        sym = [[Fraction(d[i] * a[i][j]) for j in comp] for i in comp]
        if _positive_definite(sym):
            types.append(_dynkin_name(a, d, comp))
        else:
            finite = False
            types.append("indefinite")
    return CartanData(a, d, finite, comps, types)


def try_cartan(datum):
    try:
        return detect_cartan(datum)
    except (NotCartan, NotSymmetrizable, NotGeneric):
        return None


# linking

def linkable(datum: YDDatum, i, j):
    """(bool, reasons) for the pair (i, j), i != j."""
    if i == j:
        raise ValueError("linkable needs i != j")
    reasons = []
    if datum.similar(i, j):
        reasons.append(f"{i + 1} ~ {j + 1}")
    if (datum.g[i] * datum.g[j]).is_identity():
        reasons.append(f"g_{i + 1} g_{j + 1} = 1")
    if not (datum.chi[i] * datum.chi[j]).is_trivial():
        reasons.append(f"chi_{i + 1} chi_{j + 1} is not trivial")
    return (not reasons, reasons)


@dataclass
class LinkingReport:
    partners: dict
    unlinked: list
    perfect: bool
    condition: bool

    def linked_pairs(self):
        return sorted({tuple(sorted((i, j))) for i, js in self.partners.items() for j in js})

    @property
    def gamma_reductive(self):
        """Datum-level verdict: the pointed algebra is Gamma-reductive iff the linking is perfect."""
        return self.perfect

    def to_dict(self):
        return {
            "linked_pairs": [[i + 1, j + 1] for i, j in self.linked_pairs()],
            "unlinked": [i + 1 for i in self.unlinked],
            "perfect": self.perfect,
            "condition": self.condition,
            "gamma_reductive": self.gamma_reductive,
        }


def validate_linking(datum: YDDatum, lam: LinkingParameter) -> LinkingReport:
    n = datum.theta
    partners = {i: set() for i in range(n)}
    for (i, j) in lam.support():
        if not (0 <= i < n and 0 <= j < n) or i == j:
            raise IllegalLink(i, j)
        partners[i].add(j)
        partners[j].add(i)
    cond = datum.condition_holds()
    if cond:
        # under the condition a vertex is linkable to at most one other
        for i in range(n):
            if len(partners[i]) > 1:
                raise MultipleLinks(i)
    for (i, j) in lam.support():
        ok, why = linkable(datum, i, j)
        if not ok:
            raise IllegalLink(i, j, f"lambda_{i + 1}{j + 1} != 0 but " + "; ".join(why))
    sp = datum.space
    for (i, j) in lam.support():
        if lam.get(i, j, sp) != -(datum.q[i][j] * lam.get(j, i, sp)):
            raise AntisymmetryViolation(i, j)
    unlinked = [i for i in range(n) if not partners[i]]
    return LinkingReport({i: sorted(p) for i, p in partners.items()}, unlinked, not unlinked, cond)


def restrict_datum(datum: YDDatum, lam: LinkingParameter, removed):
    """Drop the unlinked vertices in ``removed``; returns (D', lambda')."""
    removed = set(removed)
    report = validate_linking(datum, lam)
    for h in sorted(removed):
        if h not in report.unlinked:
            raise NotUnlinked(h)
    keep = [i for i in range(datum.theta) if i not in removed]
    if not keep:
        raise InvalidDatum("restriction removes every vertex")
    new = YDDatum(datum.group, datum.space, [datum.g[i] for i in keep], [datum.chi[i] for i in keep])
    pos = {old: k for k, old in enumerate(keep)}
    vals = {}
    for (i, j), v in lam.values.items():
        if i in pos and j in pos and not datum.similar(i, j):
            vals[(pos[i], pos[j])] = v
    return new, LinkingParameter(vals)


# reduced data

class ReducedDatum(_BraidingMixin):
    """(Gamma, K_i, L_i, chi_i, ell_i) with q_ij = chi_j(K_i)."""

    def __init__(self, group: AbelianGroup, space, K, L, chi, ell, name=None, declared_cartan=None):
        K, L, chi = list(K), list(L), list(chi)
        ell = [space.scalar(x) for x in ell]
        theta = len(K)
        if not theta or len(L) != theta or len(chi) != theta or len(ell) != theta:
            raise InvalidDatum("K, L, chi, ell must be nonempty lists of equal length")
        for x in K + L:
            if x.group != group:
                raise InvalidDatum("K_i, L_i must lie in the datum's group")
        for c in chi:
            if c.group != group or c.space is not space:
                raise InvalidDatum("chi_i must be characters of the datum's group")
        self.group = group
        self.space = space
        self.K, self.L, self.chi, self.ell = K, L, chi, ell
        self.theta = theta
        self.name = name
        self.q = [[chi[j](K[i]) for j in range(theta)] for i in range(theta)]
        for i in range(theta):
            for j in range(theta):
                if chi[j](K[i]) != chi[i](L[j]):
                    raise InvalidDatum(f"chi_{j + 1}(K_{i + 1}) != chi_{i + 1}(L_{j + 1})")
        for i in range(theta):
            if (K[i] * L[i]).is_identity():
                raise InvalidDatum(f"K_{i + 1} L_{i + 1} = 1")
            if not ell[i]:
                raise InvalidDatum(f"ell_{i + 1} = 0")
            if is_root_of_unity(self.q[i][i]):
                raise NotGeneric(i, f"q_{i + 1}{i + 1} = {self.q[i][i]} is a root of unity")
        self._cartan = None
        if declared_cartan is not None:
            found = detect_cartan(self)
            if found.a != [list(r) for r in declared_cartan]:
                raise InvalidDatum(f"declared Cartan matrix {declared_cartan} != detected {found.a}")

    def __repr__(self):
        return f"ReducedDatum({self.name or ''} theta={self.theta}, rank={self.group.rank})"

    @property
    def cartan(self):
        if self._cartan is None:
            self._cartan = detect_cartan(self)
        return self._cartan

    def with_ell(self, ell):
        return ReducedDatum(self.group, self.space, self.K, self.L, self.chi, ell, self.name)

    def sub_datum(self, indices):
        idx = list(indices)
        return ReducedDatum(self.group, self.space, [self.K[i] for i in idx], [self.L[i] for i in idx],
                            [self.chi[i] for i in idx], [self.ell[i] for i in idx], self.name)

    # group and character data attached to degrees
    def K_alpha(self, alpha):
        g = self.group.identity()
        for i, n in enumerate(alpha):
            if n:
                g = g * self.K[i] ** n
        return g

    def L_alpha(self, alpha):
        g = self.group.identity()
        for i, n in enumerate(alpha):
            if n:
                g = g * self.L[i] ** n
        return g

    def chi_alpha(self, alpha):
        c = Character.trivial(self.group, self.space)
        for i, n in enumerate(alpha):
            if n:
                c = c * self.chi[i] ** n
        return c

    def KL(self, i):
        return self.K[i] * self.L[i]

    def trivial_character(self):
        return Character.trivial(self.group, self.space)


def tilde(red: ReducedDatum):
    """The 2*theta-vertex YD-datum and its perfect linking."""
    t = red.theta
    g = list(red.L) + list(red.K)
    chi = [c.inverse() for c in red.chi] + list(red.chi)
    datum = YDDatum(red.group, red.space, g, chi)
    vals = {}
    for i in range(t):
        vals[(t + i, i)] = -red.ell[i]
        vals[(i, t + i)] = datum.q[i][t + i] * red.ell[i]
    return datum, LinkingParameter(vals)


def to_reduced(datum: YDDatum, lam: LinkingParameter, name=None):
    report = validate_linking(datum, lam)
    if not report.perfect:
        raise NotPerfect("unlinked vertices: " + ", ".join(str(i + 1) for i in report.unlinked))
    if not report.condition:
        raise ConditionFails("q_ij q_ji = q_ii^2 for some i != j")
    partner = {i: js[0] for i, js in report.partners.items()}
    classes = datum.similar_classes()
    cls_of = {i: k for k, c in enumerate(classes) for i in c}
    side = {}
    for k, c in enumerate(classes):
        if k in side:
            continue
        side[k] = "-"
        side[cls_of[partner[c[0]]]] = "+"
    minus = sorted(i for i in range(datum.theta) if side[cls_of[i]] == "-")
    L = [datum.g[i] for i in minus]
    K = [datum.g[partner[i]] for i in minus]
    chi = [datum.chi[partner[i]] for i in minus]
    ell = [-lam.get(partner[i], i, datum.space) for i in minus]
    return ReducedDatum(datum.group, datum.space, K, L, chi, ell, name=name)


# regularity and reductivity

@dataclass
class ReductivityReport:
    regular: bool
    gamma2_index: object
    reductive: bool
    gamma_reductive: bool
    cartan_invertible: bool | None

    def to_dict(self):
        return {
            "regular": self.regular,
            "gamma2_index": str(self.gamma2_index),
            "reductive": self.reductive,
            "gamma_reductive": self.gamma_reductive,
            "cartan_invertible": self.cartan_invertible,
        }


def regularity_and_reductivity(red: ReducedDatum) -> ReductivityReport:
    regular = z_linear_independent(red.chi)
    idx = smith_index([red.KL(i) for i in range(red.theta)], red.group)
    cartan = try_cartan(red)
    inv = None
    if cartan is not None:
        inv = cartan.determinant() != 0
        if regular and idx.finite and not inv:
            raise AuditFailure("regular datum with finite [Gamma:Gamma^2] but singular Cartan matrix")
    return ReductivityReport(regular, idx, idx.finite, True, inv)


@dataclass
class DJ2Data:
    q_J: dict
    d: list
    q_hat: list
    p: list

    def to_dict(self):
        return {
            "q_J": {",".join(str(i + 1) for i in k): str(v) for k, v in self.q_J.items()},
            "d": self.d,
            "p": [[str(x) for x in row] for row in self.p],
        }


def check_dj2(red: ReducedDatum):
    """Twist data q_J with q_ii = q_J^(2 d_i), or None if no monomial q_J exists."""
    cartan = red.cartan
    sp = red.space
    qJ = {}
    for comp in cartan.components:
        exps = None
        for i in comp:
            u = red.q[i][i]
            if u.sign != 1:
                return None
            e = []
            for x in u.exponents:
                if x % (2 * cartan.d[i]):
                    return None
                e.append(x // (2 * cartan.d[i]))
            if exps is None:
                exps = e
            elif exps != e:
                return None
        qJ[tuple(comp)] = UnitScalar(sp, 1, exps)
    comp_of = {i: tuple(c) for c in cartan.components for i in c}
    n = red.theta
    one = sp.unit_one()
    q_hat = [[qJ[comp_of[i]] ** (cartan.d[i] * cartan.a[i][j]) if comp_of[i] == comp_of[j] else one
              for j in range(n)] for i in range(n)]
    p = [[red.q[i][j] * q_hat[i][j].inverse() for j in range(n)] for i in range(n)]
    return DJ2Data(qJ, list(cartan.d), q_hat, p)


def check_nli(red: ReducedDatum) -> bool:
    """True iff prod q_ii^n_i = 1 with n in N^theta forces n = 0."""
    return nli_relation(red) is None


def nli_relation(red: ReducedDatum):
    """A nonzero n in N^theta with prod q_ii^n_i = 1, or None.

    A solution exists iff the cone ker(E) cap R_{>=0}^theta is nonzero,
    E being the exponent matrix of the q_ii.  That cone is generated by
    circuits: minimal supports S whose kernel is a line spanned by a
    vector of one strict sign.  Doubling a solution fixes the signs."""
    n = red.theta
    cols = [list(red.q[i][i].exponents) for i in range(n)]
    m = red.space.m
    for size in range(1, n + 1):
        for S in combinations(range(n), size):
            rows = [[cols[i][r] for i in S] for r in range(m)]
            if rational_rank(rows) != size - 1:
                continue
            v = rational_kernel(rows, size)[0]
            if all(x < 0 for x in v):
                v = [-x for x in v]
            if not all(x > 0 for x in v):
                continue
            den = 1
            for x in v:
                den = den * x.denominator // _gcd(den, x.denominator)
            out = [0] * n
            for i, x in zip(S, v):
                out[i] = int(x * den)
            val = red.space.unit_one()
            for i in range(n):
                val = val * red.q[i][i] ** out[i]
            if not val.is_one():
                out = [2 * x for x in out]
            return out
    return None
