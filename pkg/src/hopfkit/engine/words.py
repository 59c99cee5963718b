"""Free words in the generators and linear combinations of them.

A linear combination is a plain dict ``word -> Scalar`` with no zero
values.  ``q`` is the braiding matrix as Scalars, q[i][j] = chi_j(K_i)."""

from __future__ import annotations

from ..lattice import DegreeVector


def degree(word, theta):
    d = [0] * theta
    for i in word:
        d[i] += 1
    return DegreeVector(d)


def words_of_degree(alpha):
    """All words with letter counts ``alpha``, in increasing lex order."""
    alpha = list(alpha)
    n = sum(alpha)
    out = []
    cur = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for i, c in enumerate(alpha):
            if c:
                alpha[i] -= 1
                cur.append(i)
                rec()
                cur.pop()
                alpha[i] += 1

    rec()
    return out


def add_to(acc, key, coef):
    if not coef:
        return
    old = acc.get(key)
    if old is None:
        acc[key] = coef
    else:
        new = old + coef
        if new:
            acc[key] = new
        else:
            del acc[key]


def combine(target, source, factor=None):
    for k, v in source.items():
        add_to(target, k, v if factor is None else v * factor)


def braided_commutator_power(q, i, j, n, space):
    """(ad_c x_i)^n (x_j) in the free algebra with braiding q:
    y -> x_i y - (prod_k q_ik^{deg_k y}) y x_i."""
    y = {(j,): space.one()}
    deg_factor = q[i][j]
    for _ in range(n):
        new = {}
        for w, c in y.items():
            add_to(new, (i,) + w, c)
            add_to(new, w + (i,), -(deg_factor * c))
        y = new
        deg_factor = deg_factor * q[i][i]
    return y


def serre_plus(q, i, j, n, space):
    return braided_commutator_power(q, i, j, n, space)


def serre_minus(q, i, j, n, space):
    """Serre element of U^-: iterate with braiding q'_ik = q_ki^-1, then
    reverse every word."""
    theta = len(q)
    qw = [[q[k][l].inverse() for k in range(theta)] for l in range(theta)]
    el = braided_commutator_power(qw, i, j, n, space)
    return {w[::-1]: c for w, c in el.items()}


# skew-derivations on single words

def r_word(q, i, w, space):
    """r_i(E_w) = sum_{w_p = i} (prod_{s > p} q_{i w_s}) E_{w minus p}."""
    out = {}
    coef = space.one()
    for p in range(len(w) - 1, -1, -1):
        if w[p] == i:
            add_to(out, w[:p] + w[p + 1:], coef)
        coef = coef * q[i][w[p]]
    return out


def r_prime_word(q, i, w, space):
    """r'_i(E_w) = sum_{w_p = i} (prod_{s < p} q_{w_s i}) E_{w minus p}."""
    out = {}
    coef = space.one()
    for p in range(len(w)):
        if w[p] == i:
            add_to(out, w[:p] + w[p + 1:], coef)
        coef = coef * q[w[p]][i]
    return out


def s_word(q, i, w, space):
    """s_i(F_w) = sum_{w_p = i} (prod_{s < p} q_{i w_s}) F_{w minus p}."""
    out = {}
    coef = space.one()
    for p in range(len(w)):
        if w[p] == i:
            add_to(out, w[:p] + w[p + 1:], coef)
        coef = coef * q[i][w[p]]
    return out


def s_prime_word(q, i, w, space):
    """s'_i(F_w) = sum_{w_p = i} (prod_{s > p} q_{w_s i}) F_{w minus p}."""
    out = {}
    coef = space.one()
    for p in range(len(w) - 1, -1, -1):
        if w[p] == i:
            add_to(out, w[:p] + w[p + 1:], coef)
        coef = coef * q[w[p]][i]
    return out


DERIVATIONS = {"r": (r_word, "+"), "r'": (r_prime_word, "+"), "s": (s_word, "-"), "s'": (s_prime_word, "-")}


def apply_word_map(fn, q, i, elem, space):
    out = {}
    for w, c in elem.items():
        for w2, c2 in fn(q, i, w, space).items():
            add_to(out, w2, c * c2)
    return out
