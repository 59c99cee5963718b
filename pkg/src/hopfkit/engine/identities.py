"""Executable structural identities of U, each returning True/False.

They are checked on canonical basis words (which suffices by linearity)
and, where useful, on seeded random combinations."""

from __future__ import annotations

import random
from dataclasses import dataclass

from .. import linalg
from . import words as W
from .algebra import MINUS, PLUS, AlgebraElement, degrees_up_to
from .form import dual_bases


class TensorElement:
    """Element of U (x) U as {(term key, term key): coef}."""

    __slots__ = ("handle", "terms")

    def __init__(self, handle, terms=None):
        self.handle = handle
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def pure(cls, a: AlgebraElement, b: AlgebraElement):
        out = {}
        for k1, c1 in a.terms.items():
            for k2, c2 in b.terms.items():
                W.add_to(out, (k1, k2), c1 * c2)
        return cls(a.handle, out)

    def __add__(self, other):
        out = dict(self.terms)
        W.combine(out, other.terms)
        return TensorElement(self.handle, out)

    def __neg__(self):
        return TensorElement(self.handle, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        h = self.handle
        out = {}
        for (a1, a2), c in self.terms.items():
            for (b1, b2), d in other.terms.items():
                left = h.multiply(AlgebraElement(h, {a1: c}), AlgebraElement(h, {b1: d}))
                right = h.multiply(AlgebraElement(h, {a2: h.space.one()}), AlgebraElement(h, {b2: h.space.one()}))
                for k1, x in left.terms.items():
                    for k2, y in right.terms.items():
                        W.add_to(out, (k1, k2), x * y)
        return TensorElement(h, out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.terms == other.terms


def theta_element(handle, alpha):
    """theta_alpha = sum_k x_k (x) y_k; zero outside N^I."""
    if any(a < 0 for a in alpha):
        return TensorElement(handle)
    xs, ys = dual_bases(handle, alpha)
    out = TensorElement(handle)
    for x, y in zip(xs, ys):
        out = out + TensorElement.pure(handle.minus_element(x), handle.plus_element(y))
    return out


# skew-derivation commutation rules

def commutator_with_f(handle, y, i):
    """y F_i - F_i y = l_i (r_i(y) K_i - L_i^-1 r'_i(y)) for y in U^+."""
    lhs = y * handle.F(i) - handle.F(i) * y
    rhs = (handle.skew_derivation("r", i, y) * handle.K(i)
           - handle.Linv(i) * handle.skew_derivation("r'", i, y)) * handle.ell[i]
    return lhs == rhs


def commutator_with_e(handle, x, i):
    """E_i x - x E_i = l_i (K_i s_i(x) - s'_i(x) L_i^-1) for x in U^-."""
    lhs = handle.E(i) * x - x * handle.E(i)
    rhs = (handle.K(i) * handle.skew_derivation("s", i, x)
           - handle.skew_derivation("s'", i, x) * handle.Linv(i)) * handle.ell[i]
    return lhs == rhs


# powers of one generator

def _power(x, n):
    out = x.handle.one()
    for _ in range(n):
        out = out * x
    return out


def _qfactor(handle, i, n):
    q = handle.q[i][i]
    return (q ** n - 1) / (q - 1)


def e_times_f_power(handle, i, n):
    F, E = handle.F(i), handle.E(i)
    q = handle.q[i][i]
    lhs = E * _power(F, n)
    rhs = _power(F, n) * E + (handle.K(i) - handle.Linv(i) * q ** (1 - n)) * _power(F, n - 1) \
        * (handle.ell[i] * _qfactor(handle, i, n))
    return lhs == rhs


def f_times_e_power(handle, i, n):
    F, E = handle.F(i), handle.E(i)
    q = handle.q[i][i]
    lhs = F * _power(E, n)
    rhs = _power(E, n) * F + (handle.Linv(i) - handle.K(i) * q ** (1 - n)) * _power(E, n - 1) \
        * (handle.ell[i] * _qfactor(handle, i, n))
    return lhs == rhs


def _in_span(handle, sign, target, spanning):
    """Is the free combination ``target`` in the span of ``spanning`` in U^sign?"""
    vecs = [handle.reduce(sign, s) for s in spanning]
    t = handle.reduce(sign, target)
    keys = sorted(set(t).union(*vecs))
    if not keys:
        return True
    z = handle.space.zero()
    rows = [[v.get(k, z) for k in keys] for v in vecs]
    return linalg.rank(rows + [[t.get(k, z) for k in keys]]) == linalg.rank(rows) if rows else not t


def power_span(handle, sign, i, j, n):
    """X_i^n X_j lies in span{X_i^s X_j X_i^(n-s) : 0 <= s <= -a_ij} for n >= 1 - a_ij."""
    a = handle.cartan.a[i][j]
    one = handle.space.one()
    target = {(i,) * n + (j,): one}
    spanning = [{(i,) * s + (j,) + (i,) * (n - s): one} for s in range(-a + 1)]
    return _in_span(handle, sign, target, spanning)


def serre_vanish(handle):
    """Every Serre element reduces to zero on both sides."""
    for sign in (PLUS, MINUS):
        for _, el in handle.serre_generators(sign):
            if handle.reduce(sign, el):
                return False
    return True


# the quasi-R-matrix relations in U (x) U

def theta_intertwines_e(handle, alpha, i):
    ai = W.degree((i,), handle.theta)
    beta = tuple(a - b for a, b in zip(alpha, ai))
    t_a, t_b = theta_element(handle, alpha), theta_element(handle, beta)
    one = handle.one()
    Ei1 = TensorElement.pure(handle.E(i), one)
    KE = TensorElement.pure(handle.K(i), handle.E(i))
    LE = TensorElement.pure(handle.Linv(i), handle.E(i))
    return (Ei1 * t_a + KE * t_b) == (t_a * Ei1 + t_b * LE)


def theta_intertwines_f(handle, alpha, i):
    ai = W.degree((i,), handle.theta)
    beta = tuple(a - b for a, b in zip(alpha, ai))
    t_a, t_b = theta_element(handle, alpha), theta_element(handle, beta)
    one = handle.one()
    oF = TensorElement.pure(one, handle.F(i))
    FL = TensorElement.pure(handle.F(i), handle.Linv(i))
    FK = TensorElement.pure(handle.F(i), handle.K(i))
    return (oF * t_a + FL * t_b) == (t_a * oF + t_b * FK)


# the rank-one commutation formula E^r F^s

def _qint(q, a):
    return (q ** a - q ** (-a)) / (q - q ** -1)


def _qbinom(q, a, n):
    num = q.space.one() if hasattr(q, "space") else 1
    for t in range(n):
        num = num * _qint(q, a - t) / _qint(q, t + 1)
    return num


def rank_one_expansion(handle, r, s, i=0, q=None):
    """E^r F^s = sum_k F^(s-k) h_k(r,s) E^(r-k) with
    h_k = (l (q - q^-1))^k [r k][s k] [k]! prod_{j=1}^k (K,L; k-(r+s)+j).

    Needs q with q^2 = q_ii; by default the first parameter of the space."""
    sp = handle.space
    if q is None:
        q = sp.param(sp.names[0])
    if q * q != handle.q[i][i]:
        raise ValueError("rank_one_expansion needs q with q^2 = q_ii")
    E, F = handle.E(i), handle.F(i)
    K, Linv = handle.K(i), handle.Linv(i)
    ell = handle.ell[i]
    lhs = _power(E, r) * _power(F, s)
    rhs = handle.element()
    for k in range(min(r, s) + 1):
        fact = sp.one()
        for t in range(1, k + 1):
            fact = fact * _qint(q, t)
        h = handle.scalar((ell * (q - q ** -1)) ** k * _qbinom(q, r, k) * _qbinom(q, s, k) * fact)
        for t in range(1, k + 1):
            a = k - (r + s) + t
            h = h * ((K * q ** a - Linv * q ** (-a)) * (q - q ** -1).inverse())
        rhs = rhs + _power(F, s - k) * h * _power(E, r - k)
    return lhs == rhs


# driver

@dataclass
class IdentityResult:
    name: str
    ok: bool
    cases: int

    def to_dict(self):
        return {"identity": self.name, "ok": self.ok, "cases": self.cases}


def _random_combo(handle, sign, alpha, rng):
    words = handle.graded_basis(sign, alpha).words
    comb = {}
    for w in words:
        W.add_to(comb, w, handle.space.scalar(rng.randint(-3, 3)))
    return handle.plus_element(comb) if sign == PLUS else handle.minus_element(comb)


def check_all(handle, max_height=3, seed=0, rank_one_bound=4):
    """Run every identity up to ``max_height``; returns a list of IdentityResults."""
    rng = random.Random(seed)
    theta = handle.theta
    degs = degrees_up_to(theta, max_height)
    out = []

    def record(name, results):
        results = list(results)
        out.append(IdentityResult(name, all(results), len(results)))

    def basis_and_random(sign):
        for alpha in degs:
            for w in handle.graded_basis(sign, alpha).words:
                yield handle.plus_element({w: handle.space.one()}) if sign == PLUS else \
                    handle.minus_element({w: handle.space.one()})
            yield _random_combo(handle, sign, alpha, rng)

    record("serre relations vanish", [serre_vanish(handle)])
    record("F-commutator rule", [commutator_with_f(handle, y, i) for y in basis_and_random(PLUS) for i in range(theta)])
    record("E-commutator rule", [commutator_with_e(handle, x, i) for x in basis_and_random(MINUS) for i in range(theta)])
    record("E F^n", [e_times_f_power(handle, i, n) for i in range(theta) for n in range(1, max_height + 2)])
    record("F E^n", [f_times_e_power(handle, i, n) for i in range(theta) for n in range(1, max_height + 2)])
    pairs = [(i, j) for i in range(theta) for j in range(theta) if i != j]
    bound = lambda i, j: 1 - handle.cartan.a[i][j]  # noqa: E731
    record("F-power span", [power_span(handle, MINUS, i, j, n) for i, j in pairs for n in range(bound(i, j), bound(i, j) + 2)
                     if n + 1 <= handle.max_degree])
    record("E-power span", [power_span(handle, PLUS, i, j, n) for i, j in pairs for n in range(bound(i, j), bound(i, j) + 2)
                     if n + 1 <= handle.max_degree])
    record("theta intertwines E", [theta_intertwines_e(handle, a, i) for a in degs for i in range(theta)])
    record("theta intertwines F", [theta_intertwines_f(handle, a, i) for a in degs for i in range(theta)])
    if theta == 1:
        sp = handle.space
        q = sp.param(sp.names[0])
        if q * q == handle.q[0][0]:
            record("E^r F^s expansion", [rank_one_expansion(handle, r, s) for r in range(rank_one_bound + 1)
                            for s in range(rank_one_bound + 1)])
    return out
