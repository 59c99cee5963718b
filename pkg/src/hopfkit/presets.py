"""Built-in reduced data.  All presets use ell_i = 1 and K_i = L_i = g_i
unless stated otherwise."""

from __future__ import annotations

from .datum import ReducedDatum
from .errors import HopfkitError
from .lattice import AbelianGroup, Character
from .scalars import ParameterSpace


def _symmetric(name, a, d):
    """Gamma = Z^theta, chi_j(g_i) = q^(d_i a_ij)."""
    sp = ParameterSpace(["q"])
    n = len(a)
    G = AbelianGroup(n)
    g = [G.gen(i) for i in range(n)]
    chi = [Character(G, [sp.unit(1, (d[i] * a[i][j],)) for i in range(n)], sp) for j in range(n)]
    return ReducedDatum(G, sp, g, g, chi, [1] * n, name=name)


def a1():
    return _symmetric("A1", [[2]], [1])


def a2():
    return _symmetric("A2", [[2, -1], [-1, 2]], [1, 1])


def b2():
    return _symmetric("B2", [[2, -1], [-2, 2]], [2, 1])


def a2_two_parameter():
    """Gamma = Z^4 on (w1, w2, w1', w2'), K_i = w_i, L_i = w_i'^-1,
    q_11 = q_22 = r s^-1, q_12 = s, q_21 = r^-1."""
    sp = ParameterSpace(["r", "s"])
    u = sp.parse_unit
    q = [[u("r/s"), u("s")], [u("1/r"), u("r/s")]]
    G = AbelianGroup(4)
    K = [G.gen(0), G.gen(1)]
    L = [G.gen(2).inverse(), G.gen(3).inverse()]
    chi = [Character(G, [q[0][j], q[1][j], q[j][0].inverse(), q[j][1].inverse()], sp) for j in range(2)]
    return ReducedDatum(G, sp, K, L, chi, [1, 1], name="A2-two-parameter")


def a1xa1_counterexample():
    """Gamma free on K_1, K_2, L_i = K_i, chi_1 = (q, 1), chi_2 = (1, q^-1)."""
    sp = ParameterSpace(["q"])
    u = sp.parse_unit
    G = AbelianGroup(2)
    K = [G.gen(0), G.gen(1)]
    chi = [Character(G, [u("q"), u("1")], sp), Character(G, [u("1"), u("q^-1")], sp)]
    return ReducedDatum(G, sp, K, K, chi, [1, 1], name="A1xA1-G-counterexample")


PRESETS = {
    "A1": a1,
    "A2": a2,
    "B2": b2,
    "A2-two-parameter": a2_two_parameter,
    "A1xA1-G-counterexample": a1xa1_counterexample,
}


def preset(name):
    try:
        return PRESETS[name]()
    except KeyError:
        raise HopfkitError(f"unknown preset {name!r}; choose from {', '.join(PRESETS)}") from None
