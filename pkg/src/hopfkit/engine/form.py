"""The bilinear form U^- x U^+ -> k, Gram matrices and dual bases.

The form is computed from its recursion: peel the rightmost F of x with
(x F_i, y) = (x, r_i(y)) (F_i, E_i), (F_i, E_i) = -l_i and (1, 1) = 1.
The left-peeling rule and the two s-side rules are kept as independent
routes for cross-checks."""

from __future__ import annotations

from .. import linalg
from ..errors import SingularGram
from ..lattice import DegreeVector
from . import words as W
from .algebra import MINUS, PLUS


def _same_degree(u, v):
    return len(u) == len(v) and sorted(u) == sorted(v)


def pair_words(handle, u, v):
    """(F_u, E_v) for free words u, v by right-peeling."""
    cache = handle.form_cache
    key = ("r", u, v)
    val = cache.get(key)
    if val is not None:
        return val
    sp = handle.space
    if not _same_degree(u, v):
        val = sp.zero()
    elif not u:
        val = sp.one()
    else:
        i = u[-1]
        head = u[:-1]
        total = sp.zero()
        for w, c in W.r_word(handle.q, i, v, sp).items():
            p = pair_words(handle, head, w)
            if p:
                total = total + c * p
        val = -(handle.ell[i] * total) if total else total
    cache[key] = val
    return val


def _pair_by(handle, route, u, v):
    """Alternative recursions: 'r'' peels F from the left, 's' and 's''
    peel E from the left and right of y."""
    cache = handle.form_cache
    key = (route, u, v)
    val = cache.get(key)
    if val is not None:
        return val
    sp = handle.space
    if not _same_degree(u, v):
        val = sp.zero()
    elif not u:
        val = sp.one()
    else:
        total = sp.zero()
        if route == "r'":
            i = u[0]
            for w, c in W.r_prime_word(handle.q, i, v, sp).items():
                total = total + c * _pair_by(handle, route, u[1:], w)
        elif route == "s":
            i = v[0]
            for w, c in W.s_word(handle.q, i, u, sp).items():
                total = total + c * _pair_by(handle, route, w, v[1:])
        elif route == "s'":
            i = v[-1]
            for w, c in W.s_prime_word(handle.q, i, u, sp).items():
                total = total + c * _pair_by(handle, route, w, v[:-1])
        else:
            raise ValueError(route)
        val = -(handle.ell[i] * total)
    cache[key] = val
    return val


def pairing(handle, x, y, route="r"):
    """(x, y) for x an F-combination and y an E-combination.

    ``x`` and ``y`` may be AlgebraElements or dicts {word: coef}."""
    if hasattr(x, "pure_part"):
        x = x.pure_part(MINUS)
    if hasattr(y, "pure_part"):
        y = y.pure_part(PLUS)
    sp = handle.space
    total = sp.zero()
    for u, a in x.items():
        for v, b in y.items():
            p = pair_words(handle, u, v) if route == "r" else _pair_by(handle, route, u, v)
            if p:
                total = total + a * b * p
    return total


def gram_matrix(handle, alpha):
    """G[k][l] = (x_k, e_l) over the canonical F- and E-words of degree alpha."""
    alpha = DegreeVector(alpha)
    G = handle.gram_cache.get(alpha)
    if G is None:
        xs = handle.graded_basis(MINUS, alpha).words
        es = handle.graded_basis(PLUS, alpha).words
        G = [[pair_words(handle, u, v) for v in es] for u in xs]
        handle.gram_cache[alpha] = G
    return G


def gram_determinant(handle, alpha):
    G = gram_matrix(handle, alpha)
    return linalg.det(G, handle.space)


def dual_bases(handle, alpha):
    """(x-basis, y-basis) with (x_k, y_m) = delta_km.

    x_k are the canonical F-words; y_m = sum_l (G^-1)_{lm} e_l as dicts
    {E-word: coef}.  theta_alpha is sum_k x_k (x) y_k."""
    alpha = DegreeVector(alpha)
    cached = handle.dual_cache.get(alpha)
    if cached is not None:
        return cached
    xs = handle.graded_basis(MINUS, alpha).words
    es = handle.graded_basis(PLUS, alpha).words
    if len(xs) != len(es):
        raise SingularGram(f"dim U^-_{list(alpha)} != dim U^+_{list(alpha)}")
    G = gram_matrix(handle, alpha)
    try:
        Ginv = linalg.inverse(G, handle.space)
    except SingularGram:
        raise SingularGram(f"Gram matrix in degree {list(alpha)} is singular") from None
    ys = []
    for m in range(len(xs)):
        y = {}
        for l, e in enumerate(es):
            W.add_to(y, e, Ginv[l][m])
        ys.append(y)
    out = ([{x: handle.space.one()} for x in xs], ys)
    handle.dual_cache[alpha] = out
    return out
