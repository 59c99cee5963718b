"""Acceptance suite: nine criteria, exact arithmetic throughout.

Each test prints one ``PASS``/``FAIL`` line.  Run directly with
``python3 tests/test_acceptance.py`` for the summary alone."""

import random

import pytest

from hopfkit import linalg
from hopfkit.datum import (LinkingParameter, ReducedDatum, check_nli, regularity_and_reductivity, tilde,
                           validate_linking)
from hopfkit.engine import MINUS, AlgebraHandle, degrees_up_to
from hopfkit.engine.form import gram_determinant, pairing
from hopfkit.engine.identities import check_all
from hopfkit.lattice import AbelianGroup, Character
from hopfkit.oracles import RootSystem, cartan_matrix, clebsch_gordan_a1, freudenthal, kostant_partition, weyl_dim
from hopfkit.presets import preset
from hopfkit.representations import (GFunction, omega_commutation_check, decompose, dominant_character, is_dominant,
                                     simple_module_from_m, summand_eigenvalues, tensor)
from hopfkit.scalars import ParameterSpace

_HANDLES = {}


def _handle(name, ell=False, max_degree=12):
    key = (name, ell, max_degree)
    if key not in _HANDLES:
        red = preset(name)
        if ell:
            red = red.with_ell(_rescaled_ell(red))
        _HANDLES[key] = AlgebraHandle(red, max_degree)
    return _HANDLES[key]


def _rescaled_ell(red):
    sp = red.space
    p = sp.param(sp.names[0])
    return [sp.scalar(2), p, p ** -3][:red.theta]


def _report(capsys, n, ok, detail):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
    assert ok, detail


# 1. graded dimensions

def criterion_1():
    bad = []
    for name in ("A1", "A2", "B2"):
        h = _handle(name, max_degree=8)
        rs = RootSystem(h.cartan.a)
        for alpha in degrees_up_to(h.theta, 8):
            if h.dim(MINUS, alpha) != kostant_partition(rs, tuple(alpha)):
                bad.append((name, tuple(alpha)))
    return not bad, "dim U^-_{-alpha} = Kostant partition number for A1, A2, B2, |alpha| <= 8" + (
        f"; mismatches {bad}" if bad else "")


# 2. simple-module dimensions

SIMPLE_TARGETS = {
    "A1": {(m,): m + 1 for m in range(11)},
    "A2": {(1, 0): 3, (0, 1): 3, (1, 1): 8, (2, 0): 6, (2, 2): 27},
}


def _b2_targets():
    rs = RootSystem(cartan_matrix("B", 2))
    return {(1, 0): weyl_dim(rs, (1, 0)), (0, 1): weyl_dim(rs, (0, 1))}


def criterion_2(ell=False):
    targets = dict(SIMPLE_TARGETS)
    targets["B2"] = _b2_targets()
    assert sorted(targets["B2"].values()) == [4, 5]
    bad = []
    for name, table in targets.items():
        h = _handle(name, ell)
        rs = RootSystem(h.cartan.a)
        for m, dim in table.items():
            assert weyl_dim(rs, m) == dim
            L = simple_module_from_m(h, list(m))
            if L.dim != dim or L.layer_dims() != freudenthal(rs, m) or L.audit_relations():
                bad.append((name, m, L.dim))
    return not bad, "dim L(m) and all weight multiplicities match Weyl/Freudenthal" + (
        f"; mismatches {bad}" if bad else "")


# 3. complete reducibility

def _tensor_cases():
    for m in range(5):
        for n in range(5):
            yield "A1", [m], [n]
    yield "A2", [1, 0], [0, 1]
    yield "A2-two-parameter", [1, 0], [0, 1]


def _decompose_case(name, m1, m2, ell):
    h = _handle(name, ell)
    T = tensor(h, simple_module_from_m(h, m1), simple_module_from_m(h, m2))
    return h, T, decompose(h, T)


def criterion_3(ell=False):
    bad = []
    multisets = {}
    for name, m1, m2 in _tensor_cases():
        h, T, rep = _decompose_case(name, m1, m2, ell)
        if not (rep.audit_ok and rep.direct and rep.total_dim == T.dim):
            bad.append((name, m1, m2, "audit"))
        if name == "A1":
            got = sorted((k[0] for k, mult in rep.multiset() for _ in range(mult)), reverse=True)
            if got != clebsch_gordan_a1(m1[0], m2[0]):
                bad.append((name, m1, m2, got))
        else:
            multisets[name] = rep.multiset()
            dims = sorted(s.dim_simple for s in rep.summands)
            if rep.multiset() != [((0, 0), 1), ((1, 1), 1)] or dims != [1, 8] or rep.total_dim != 9:
                bad.append((name, rep.multiset()))
    if multisets["A2"] != multisets["A2-two-parameter"]:
        bad.append(("multiparameter", multisets))
    return not bad, "Clebsch-Gordan on A1 for m,n <= 4; 3 x 3* = 8 + 1 on A2 and two-parameter A2" + (
        f"; failures {bad}" if bad else "")


# 4. Casimir

def criterion_4(ell=False):
    bad = []
    for name, m1, m2 in _tensor_cases():
        h, T, rep = _decompose_case(name, m1, m2, ell)
        G = GFunction(h, T.weights[0])
        eig = summand_eigenvalues(h, T, rep, G)
        for (m, val, scalar), s in zip(eig, rep.summands):
            if not scalar or val != G(s.highest_weight).to_scalar():
                bad.append((name, m1, m2, m))
        vals = [val for _, val, _ in eig]
        if any(vals[a] == vals[b] for a in range(len(vals)) for b in range(a)):
            bad.append((name, m1, m2, "eigenvalues collide"))
    return not bad, "Omega_G = G(chi) id on every summand; eigenvalues pairwise distinct" + (
        f"; failures {bad}" if bad else "")


# 5. the G-function counterexample

def criterion_5():
    h = _handle("A1xA1-G-counterexample")
    d = h.datum
    chi_p = dominant_character(h, [2, 2])
    chi = chi_p * d.chi[0] * d.chi[1]
    m_p, m = is_dominant(h, chi_p), is_dominant(h, chi)
    # chi(K_i L_i) gains chi_j(K_i L_i) = q_ii^(a_ij) for each j
    a = h.cartan.a
    expected_m = [m_p[i] + sum(a[i][j] for j in range(2)) for i in range(2)]
    G = GFunction(h, chi_p, allow_degenerate=True)
    alpha = list(G.degree_of(chi))
    leq = alpha == [1, 1]
    ok = (m_p == [2, 2] and m == expected_m == [4, 4] and leq and G(chi) == G(chi_p)
          and not check_nli(d))
    return ok, (f"chi' dominant m'={m_p}, chi = chi' chi_1 chi_2 dominant m={m}, chi' <= chi, "
                f"G(chi) = G(chi') = {G(chi)}, Nli false")


# 6. the bilinear form

def criterion_6():
    bad = []
    for name in ("A1", "A2", "B2", "A2-two-parameter"):
        h = _handle(name)
        for i in range(h.theta):
            for j in range(h.theta):
                expect = -h.ell[i] if i == j else h.space.zero()
                if pairing(h, h.F(i), h.E(j)) != expect:
                    bad.append((name, "generator", i, j))
        for alpha in degrees_up_to(h.theta, 5):
            if not gram_determinant(h, alpha):
                bad.append((name, "gram", tuple(alpha)))
    rng = random.Random(0)
    pairs = 0
    while pairs < 200:
        name = rng.choice(["A2", "B2", "A2-two-parameter"])
        h = _handle(name)
        alpha = rng.choice([a for a in degrees_up_to(h.theta, 4) if a.height])
        xs = h.graded_basis(MINUS, alpha).words
        ys = h.graded_basis("+", alpha).words
        x = {w: h.space.scalar(rng.randint(-4, 4)) for w in xs}
        y = {w: h.space.scalar(rng.randint(-4, 4)) for w in ys}
        if pairing(h, x, y, route="r") != pairing(h, x, y, route="s"):
            bad.append((name, "routes", tuple(alpha)))
        pairs += 1
    return not bad, "(F_i,E_j) = -delta_ij l_i; Gram determinants nonzero for |alpha| <= 5; r- and s-routes agree on 200 pairs" + (
        f"; failures {bad}" if bad else "")


# 7. structural identities

def criterion_7():
    bad = []
    for name in ("A1", "A2", "B2", "A2-two-parameter"):
        h = _handle(name)
        for r in check_all(h, max_height=3, rank_one_bound=4):
            if not r.ok:
                bad.append((name, r.name))
        for m in ([1] * h.theta, [2] + [0] * (h.theta - 1)):
            fails = omega_commutation_check(h, simple_module_from_m(h, m))
            if fails:
                bad.append((name, m, fails))
    return not bad, "commutator rules, E F^n and F E^n, power spans, theta intertwining for |alpha| <= 3, E^r F^s on A1 r,s <= 4, Omega commutation" + (
        f"; failures {bad}" if bad else "")


# 8. reductivity

def _rank3_datum():
    sp = ParameterSpace(["q"])
    u = sp.parse_unit
    G = AbelianGroup(3)
    K = [G.gen(0), G.gen(1)]
    chi = [Character(G, [u("q^2"), u("q^-1"), u("q")], sp), Character(G, [u("q^-1"), u("q^2"), u("1")], sp)]
    return ReducedDatum(G, sp, K, K, chi, [1, 1], name="rank-3")


def criterion_8():
    a1 = regularity_and_reductivity(preset("A1"))
    r3 = regularity_and_reductivity(_rank3_datum())
    yd, lam = tilde(preset("A2"))
    full = validate_linking(yd, lam)
    pair = full.linked_pairs()[0]
    cut = LinkingParameter({k: v for k, v in lam.values.items() if tuple(sorted(k)) != pair})
    partial = validate_linking(yd, cut)
    ok = (a1.gamma2_index.finite and a1.gamma2_index.value == 2 and a1.reductive
          and not r3.gamma2_index.finite and not r3.reductive
          and full.perfect and full.gamma_reductive
          and partial.unlinked and not partial.perfect and not partial.gamma_reductive)
    return ok, (f"A1 index {a1.gamma2_index.value} reductive; rank-3 datum index infinite, not reductive; "
                f"tilde-A2 perfectly linked; one link removed gives unlinked {[i + 1 for i in partial.unlinked]}, "
                f"not Gamma-reductive")


# 9. invariance under rescaling ell

def criterion_9():
    checks = []
    for crit in (criterion_2, criterion_3, criterion_4):
        ok, _ = crit(ell=True)
        checks.append(ok)
    same = True
    for name, m1, m2 in _tensor_cases():
        same &= _decompose_case(name, m1, m2, False)[2].multiset() == _decompose_case(name, m1, m2, True)[2].multiset()
    for name in ("A2", "B2"):
        h0, h1 = _handle(name), _handle(name, True)
        for m in ([1, 1], [2, 0]):
            same &= simple_module_from_m(h0, m).layer_dims() == simple_module_from_m(h1, m).layer_dims()
    ok = all(checks) and same
    return ok, "criteria 2-4 rerun with l = (2, q, q^-3); identical dimensions and multiplicities"


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8, criterion_9]


@pytest.mark.parametrize("n", range(1, 10))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n - 1]()
    _report(capsys, n, ok, detail)


if __name__ == "__main__":
    for n, crit in enumerate(CRITERIA, 1):
        ok, detail = crit()
        print(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
