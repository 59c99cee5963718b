"""The algebra U(D_red, l): graded bases of U^+ and U^- modulo the Serre
relations, and multiplication in triangular normal form F * E * g."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass

from ..datum import ReducedDatum, check_dj2
from ..errors import DegreeCapExceeded, HandleMismatch, WrongSide
from ..lattice import DegreeVector, GroupElement
from . import words as W

PLUS, MINUS = "+", "-"
DEFAULT_MAX_DEGREE = 10


def default_max_degree():
    env = os.environ.get("HOPFKIT_MAX_DEGREE")
    return int(env) if env else DEFAULT_MAX_DEGREE


def _check_sign(sign):
    if sign not in (PLUS, MINUS):
        raise ValueError(f"sign must be '+' or '-', got {sign!r}")


@dataclass
class GradedSlice:
    """Canonical words of one degree and the reduction of all other words."""

    sign: str
    alpha: DegreeVector
    words: list
    index: dict
    reductions: dict
    n_words: int

    @property
    def dim(self):
        return len(self.words)


class AlgebraHandle:
    """Lazily built data of U for one reduced datum of Cartan type."""

    def __init__(self, datum: ReducedDatum, max_degree=None):
        self.datum = datum
        self.space = datum.space
        self.theta = datum.theta
        self.max_degree = default_max_degree() if max_degree is None else max_degree
        self.cartan = datum.cartan
        self.q = [[datum.q[i][j].to_scalar() for j in range(self.theta)] for i in range(self.theta)]
        self.ell = list(datum.ell)
        self.dj2 = check_dj2(datum)
        self.pre_nichols = not self.cartan.finite_type and self.dj2 is None
        self._lock = threading.RLock()
        self._slices = {PLUS: {}, MINUS: {}}
        self._serre = {}
        self._ef_cache = {}
        self._char_cache = {}
        self.form_cache = {}
        self.gram_cache = {}
        self.dual_cache = {}

    def __repr__(self):
        return f"AlgebraHandle({self.datum!r}, max_degree={self.max_degree})"

    def flags(self):
        out = []
        if self.pre_nichols:
            out.append("pre-Nichols assumption: Serre presentation used without a DJ2 certificate")
        return out

    # Serre relations

    def serre_generators(self, sign):
        _check_sign(sign)
        with self._lock:
            if sign not in self._serre:
                a = self.cartan.a
                gens = []
                for i in range(self.theta):
                    for j in range(self.theta):
                        if i == j:
                            continue
                        n = 1 - a[i][j]
                        el = (W.serre_plus if sign == PLUS else W.serre_minus)(self.q, i, j, n, self.space)
                        deg = DegreeVector([n * (k == i) + (k == j) for k in range(self.theta)])
                        gens.append((deg, el))
                self._serre[sign] = gens
            return list(self._serre[sign])

    # graded bases

    def graded_basis(self, sign, alpha) -> GradedSlice:
        _check_sign(sign)
        alpha = DegreeVector(alpha)
        if len(alpha) != self.theta or not alpha.is_nonneg():
            raise ValueError(f"degree {list(alpha)} is not in N^{self.theta}")
        sl = self._slices[sign].get(alpha)
        if sl is not None:
            return sl
        if alpha.height > self.max_degree:
            raise DegreeCapExceeded(f"|alpha| = {alpha.height} exceeds max_degree {self.max_degree}")
        with self._lock:
            return self._build_slice(sign, alpha)

    def _build_slice(self, sign, alpha):
        cache = self._slices[sign]
        if alpha in cache:
            return cache[alpha]
        if alpha.height == 0:
            sl = GradedSlice(sign, alpha, [()], {(): 0}, {}, 1)
            cache[alpha] = sl
            return sl
        one = self.space.one()
        rows = []
        for i in range(self.theta):
            if alpha[i] == 0:
                continue
            sub = self._build_slice(sign, alpha - DegreeVector.simple(self.theta, i))
            for p, red in sub.reductions.items():
                left = {(i,) + p: one}
                right = {p + (i,): one}
                for w, c in red.items():
                    W.add_to(left, (i,) + w, -c)
                    W.add_to(right, w + (i,), -c)
                rows.append(left)
                rows.append(right)
        for deg, el in self.serre_generators(sign):
            if deg == alpha:
                rows.append(dict(el))
        all_words = W.words_of_degree(alpha)
        pivots = {}
        for row in rows:
            row = dict(row)
            while True:
                hits = [k for k in row if k in pivots]
                if not hits:
                    break
                k = max(hits)
                c = row[k]
                for w2, c2 in pivots[k].items():
                    W.add_to(row, w2, -(c * c2))
            if row:
                lead = max(row)
                inv = row[lead].inverse()
                pivots[lead] = {w: c * inv for w, c in row.items()}
                if len(pivots) == len(all_words):
                    break
        reductions = {}
        for w in sorted(pivots):
            row = pivots[w]
            for k in [k for k in row if k != w and k in pivots]:
                c = row.pop(k)
                for w2, c2 in reductions[k].items():
                    W.add_to(row, w2, c * c2)
            reductions[w] = {k: -c for k, c in row.items() if k != w}
        canon = [w for w in all_words if w not in pivots]
        sl = GradedSlice(sign, alpha, canon, {w: n for n, w in enumerate(canon)}, reductions, len(all_words))
        cache[alpha] = sl
        return sl

    def dim(self, sign, alpha):
        return self.graded_basis(sign, alpha).dim

    def warm(self, max_degree=None):
        """Build every slice up to ``max_degree``; afterwards reads are lock-free."""
        top = self.max_degree if max_degree is None else max_degree
        for alpha in degrees_up_to(self.theta, top):
            self.graded_basis(PLUS, alpha)
            self.graded_basis(MINUS, alpha)

    def reduce_word(self, sign, word):
        """Canonical expansion {canonical word: coefficient} of a free word."""
        sl = self.graded_basis(sign, W.degree(word, self.theta))
        if word in sl.index:
            return {word: self.space.one()}
        return sl.reductions[word]

    def reduce(self, sign, elem):
        out = {}
        for w, c in elem.items():
            for w2, c2 in self.reduce_word(sign, w).items():
                W.add_to(out, w2, c * c2)
        return out

    # characters on words and group elements

    def char_value(self, j, gexp):
        """chi_j(g) as a Scalar for an exponent tuple g."""
        key = (j, gexp)
        v = self._char_cache.get(key)
        if v is None:
            g = GroupElement(self.datum.group, gexp)
            v = self.datum.chi[j](g).to_scalar()
            self._char_cache[key] = v
        return v

    def word_char(self, word, gexp):
        v = self.space.one()
        for j in word:
            v = v * self.char_value(j, gexp)
        return v

    # elements

    def element(self, terms=None):
        return AlgebraElement(self, terms or {})

    def one(self):
        return self.element({((), (), self._id()): self.space.one()})

    def scalar(self, c):
        return self.element({((), (), self._id()): self.space.scalar(c)})

    def E(self, i):
        return self.element({((), (i,), self._id()): self.space.one()})

    def F(self, i):
        return self.element({((i,), (), self._id()): self.space.one()})

    def group_element(self, g):
        exps = g.exponents if isinstance(g, GroupElement) else tuple(g)
        return self.element({((), (), tuple(exps)): self.space.one()})

    def K(self, i):
        return self.group_element(self.datum.K[i])

    def L(self, i):
        return self.group_element(self.datum.L[i])

    def Linv(self, i):
        return self.group_element(self.datum.L[i].inverse())

    def Kinv(self, i):
        return self.group_element(self.datum.K[i].inverse())

    def E_word(self, word, coef=None):
        red = self.reduce_word(PLUS, tuple(word))
        c0 = self.space.one() if coef is None else coef
        return self.element({((), w, self._id()): c0 * c for w, c in red.items()})

    def F_word(self, word, coef=None):
        red = self.reduce_word(MINUS, tuple(word))
        c0 = self.space.one() if coef is None else coef
        return self.element({(w, (), self._id()): c0 * c for w, c in red.items()})

    def plus_element(self, comb):
        """AlgebraElement from a free E-combination {word: coef}."""
        out = {}
        for w, c in self.reduce(PLUS, comb).items():
            out[((), w, self._id())] = c
        return self.element(out)

    def minus_element(self, comb):
        out = {}
        for w, c in self.reduce(MINUS, comb).items():
            out[(w, (), self._id())] = c
        return self.element(out)

    def _id(self):
        return (0,) * self.datum.group.rank

    # multiplication

    def _e_past_f(self, e, f):
        """E_e F_f as {(F-word, E-word, g): coef} with free words."""
        key = (e, f)
        res = self._ef_cache.get(key)
        if res is not None:
            return res
        one = self.space.one()
        ident = self._id()
        if not e or not f:
            res = {(f, e, ident): one}
        elif len(e) == 1:
            i = e[0]
            res = {(f, e, ident): one}
            Ki = self.datum.K[i].exponents
            Linv = self.datum.L[i].inverse().exponents
            ell = self.ell[i]
            for p in range(len(f)):
                if f[p] != i:
                    continue
                rest = f[:p] + f[p + 1:]
                tail = f[p + 1:]
                cK = ell
                cL = -ell
                for s in tail:
                    cK = cK * self.q[i][s].inverse()
                    cL = cL * self.q[s][i]
                W.add_to(res, (rest, (), Ki), cK)
                W.add_to(res, (rest, (), Linv), cL)
        else:
            head, last = e[:-1], e[-1]
            res = {}
            for (a, b, g), c in self._e_past_f((last,), f).items():
                for (a2, b2, h), c2 in self._e_past_f(head, a).items():
                    cc = c * c2
                    if b:
                        cc = cc * self.word_char(b, h)
                    W.add_to(res, (a2, b2 + b, _gmul(h, g)), cc)
        self._ef_cache[key] = res
        return res

    def multiply(self, a, b):
        if a.handle is not self or b.handle is not self:
            raise HandleMismatch("elements belong to different algebra handles")
        out = {}
        for (f1, e1, g1), c1 in a.terms.items():
            for (f2, e2, g2), c2 in b.terms.items():
                c = c1 * c2
                if any(g1):
                    c = c * self.word_char(f2, g1).inverse() * self.word_char(e2, g1)
                g12 = _gmul(g1, g2)
                for (fa, eb, h), c3 in self._e_past_f(e1, f2).items():
                    cc = c * c3
                    if e2 and any(h):
                        cc = cc * self.word_char(e2, h)
                    fred = self.reduce_word(MINUS, f1 + fa)
                    ered = self.reduce_word(PLUS, eb + e2)
                    g = _gmul(h, g12)
                    for fw, fc in fred.items():
                        for ew, ec in ered.items():
                            W.add_to(out, (fw, ew, g), cc * fc * ec)
        return AlgebraElement(self, out)

    # skew-derivations and antipode

    def skew_derivation(self, which, i, x):
        fn, side = W.DERIVATIONS[which]
        comb = x.pure_part(side)
        res = W.apply_word_map(fn, self.q, i, comb, self.space)
        return self.plus_element(res) if side == PLUS else self.minus_element(res)

    def antipode_uminus(self, x):
        """S on U^-: S(F_c1 ... F_cn) = (-1)^n F_cn L_cn ... F_c1 L_c1."""
        comb = x.pure_part(MINUS)
        out = self.element()
        for w, c in comb.items():
            term = self.scalar(c if len(w) % 2 == 0 else -c)
            for j in reversed(w):
                term = term * self.F(j) * self.L(j)
            out = out + term
        return out


def _gmul(g, h):
    return tuple(a + b for a, b in zip(g, h))


def degrees_up_to(theta, max_height):
    out = []

    def rec(prefix, left):
        if len(prefix) == theta:
            if sum(prefix):
                out.append(DegreeVector(prefix))
            return
        for n in range(left + 1):
            rec(prefix + [n], left - n)

    rec([], max_height)
    return sorted(out, key=lambda a: (a.height, tuple(a)))


class AlgebraElement:
    """Finite sum of coef * F_f E_e g with canonical words f, e."""

    __slots__ = ("handle", "terms")

    def __init__(self, handle, terms):
        self.handle = handle
        self.terms = {k: v for k, v in terms.items() if v}

    def _coerce(self, other):
        if isinstance(other, AlgebraElement):
            if other.handle is not self.handle:
                raise HandleMismatch("elements belong to different algebra handles")
            return other
        return self.handle.scalar(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            W.add_to(out, k, v)
        return AlgebraElement(self.handle, out)

    __radd__ = __add__

    def __neg__(self):
        return AlgebraElement(self.handle, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, AlgebraElement):
            return self.handle.multiply(self, other)
        c = self.handle.space.scalar(other)
        return AlgebraElement(self.handle, {k: v * c for k, v in self.terms.items()})

    def __rmul__(self, other):
        c = self.handle.space.scalar(other)
        return AlgebraElement(self.handle, {k: c * v for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            other = self._coerce(other)
        return self.handle is other.handle and self.terms == other.terms

    def __hash__(self):
        raise TypeError("AlgebraElement is unhashable")

    def is_zero(self):
        return not self.terms

    def pure_part(self, side):
        """The free combination of a pure E- (side '+') or F-element."""
        ident = self.handle._id()
        out = {}
        for (f, e, g), c in self.terms.items():
            if g != ident or (side == PLUS and f) or (side == MINUS and e):
                raise WrongSide(f"element is not a pure {'E' if side == PLUS else 'F'}-element")
            out[e if side == PLUS else f] = c
        return out

    def counit(self):
        """epsilon: F, E -> 0, g -> 1."""
        s = self.handle.space.zero()
        for (f, e, g), c in self.terms.items():
            if not f and not e:
                s = s + c
        return s

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (f, e, g), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0], kv[0][1], kv[0][2])):
            mon = []
            if f:
                mon.append("F" + "".join(str(i + 1) for i in f))
            if e:
                mon.append("E" + "".join(str(i + 1) for i in e))
            if any(g):
                mon.append("g" + str(list(g)))
            parts.append(f"({c})" + ("*" + "*".join(mon) if mon else ""))
        return " + ".join(parts)
