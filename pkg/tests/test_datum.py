import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopfkit import oracles
from hopfkit.datum import (LinkingParameter, ReducedDatum, YDDatum, check_dj2, check_nli, detect_cartan, linkable,
                           nli_relation, regularity_and_reductivity, restrict_datum, tilde, to_reduced,
                           validate_linking, validate_yd)
from hopfkit.errors import (AntisymmetryViolation, IllegalLink, InvalidDatum, MultipleLinks, NotCartan,
                            NotGeneric, NotPerfect, NotUnlinked)
from hopfkit.lattice import AbelianGroup, Character
from hopfkit.presets import _symmetric, preset
from hopfkit.scalars import ParameterSpace

Q = ParameterSpace(["q"])
u = Q.parse_unit


def diagonal_yd(exps, rank=None):
    """Gamma = Z^theta with g_i the generators and chi_j(g_i) = q^exps[i][j]."""
    n = len(exps)
    G = AbelianGroup(rank or n)
    g = [G.gen(i) for i in range(n)]
    chi = [Character(G, [Q.unit(1, (exps[i][j],)) for i in range(n)] + [Q.unit_one()] * (G.rank - n), Q)
           for j in range(n)]
    return YDDatum(G, Q, g, chi)


def test_validate_yd_examples():
    rep = validate_yd(preset("A2"))
    assert rep.generic and rep.classes == [[0, 1]]
    assert validate_yd(preset("A1xA1-G-counterexample")).classes == [[0], [1]]
    G = AbelianGroup(1)
    bad = YDDatum(G, Q, [G.gen(0)], [Character(G, [u("-1")], Q)])
    with pytest.raises(NotGeneric):
        validate_yd(bad)


def test_detect_cartan_examples():
    c = preset("A2").cartan
    assert c.a == [[2, -1], [-1, 2]] and c.d == [1, 1] and c.type_name == "A2"
    assert preset("A1xA1-G-counterexample").cartan.a == [[2, 0], [0, 2]]
    b2 = preset("B2").cartan
    assert b2.a == oracles.cartan_matrix("B", 2) and b2.d == [2, 1]
    with pytest.raises(NotCartan):
        detect_cartan(diagonal_yd([[2, 1], [1, 2]]))  # q12 q21 = q11


@pytest.mark.parametrize("kind,n", [("A", 1), ("A", 3), ("B", 3), ("C", 3), ("D", 4), ("G", 2), ("F", 4),
                                    ("A", 4), ("B", 4), ("C", 4)])
def test_detect_cartan_recovers_declared_matrix(kind, n):
    a = oracles.cartan_matrix(kind, n)
    d = oracles.symmetrizer(a)
    red = _symmetric(f"{kind}{n}", a, d)
    c = red.cartan
    assert c.a == a
    assert c.finite_type and c.type_name == f"{kind}{n}"
    assert all(c.d[i] * a[i][j] == c.d[j] * a[j][i] for i in range(n) for j in range(n))


def test_detect_cartan_non_finite():
    c = _symmetric("A1^(1)", [[2, -2], [-2, 2]], [1, 1]).cartan
    assert not c.finite_type and c.type_name is None


def test_linkable_on_tilde():
    yd, lam = tilde(preset("A1"))
    ok, why = linkable(yd, 0, 1)
    assert ok and not why
    q = yd.q
    assert (q[0][1] * q[1][0]).is_one()
    yd2, _ = tilde(preset("A2"))
    ok, why = linkable(yd2, 0, 1)
    assert not ok and "1 ~ 2" in why[0]


def test_linkable_rejects_inverse_group_elements():
    G = AbelianGroup(1)
    yd = YDDatum(G, Q, [G.gen(0), G.gen(0).inverse()], [Character(G, [u("q")], Q), Character(G, [u("q^-1")], Q)])
    ok, why = linkable(yd, 0, 1)
    assert not ok and any("g_1 g_2 = 1" in w for w in why)


def test_validate_linking_tilde_is_perfect():
    for name in ("A1", "A2", "B2", "A2-two-parameter"):
        yd, lam = tilde(preset(name))
        validate_yd(yd)
        rep = validate_linking(yd, lam)
        assert rep.perfect and rep.unlinked == []


def test_validate_linking_zero_is_not_perfect():
    yd, _ = tilde(preset("A1"))
    rep = validate_linking(yd, LinkingParameter())
    assert rep.unlinked == [0, 1] and not rep.perfect


def test_validate_linking_errors():
    yd, lam = tilde(preset("A1"))
    bad = dict(lam.values)
    bad[(0, 1)] = bad[(0, 1)] * 2
    with pytest.raises(AntisymmetryViolation):
        validate_linking(yd, LinkingParameter(bad))
    yd2, _ = tilde(preset("A2"))
    with pytest.raises(IllegalLink):
        validate_linking(yd2, LinkingParameter({(0, 1): Q.one(), (1, 0): Q.one()}))
    tri = diagonal_yd([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
    assert tri.condition_holds()
    with pytest.raises(MultipleLinks):
        validate_linking(tri, LinkingParameter({(0, 1): Q.one(), (0, 2): Q.one()}))


@given(st.lists(st.integers(-2, 2), min_size=9, max_size=9), st.lists(st.integers(-1, 1), min_size=9, max_size=9))
def test_linking_rule_by_enumeration(exps, gexps):
    """Under the condition a vertex is linkable to at most one other, and
    linkable pairs satisfy q_ii = q_kk^-1 = q_ki = q_ik^-1."""
    G = AbelianGroup(3)
    g = [G.element(gexps[3 * i:3 * i + 3]) for i in range(3)]
    chi = [Character(G, [Q.unit(1, (exps[3 * k + j],)) for k in range(3)], Q) for j in range(3)]
    yd = YDDatum(G, Q, g, chi)
    if not yd.is_generic():
        return
    q = yd.q
    for i, k in itertools.permutations(range(3), 2):
        if linkable(yd, i, k)[0]:
            assert q[i][i] == q[k][k].inverse() == q[k][i] == q[i][k].inverse()
    if yd.condition_holds():
        for i in range(3):
            assert sum(linkable(yd, i, k)[0] for k in range(3) if k != i) <= 1


def test_restrict_datum():
    # vertices 1,2 linked (a tilde-A1 pair) plus an unlinked third vertex
    G = AbelianGroup(3)
    g = [G.gen(0), G.gen(1), G.gen(2)]
    chi = [Character(G, [u("q^2"), u("q^2"), u("1")], Q), Character(G, [u("q^-2"), u("q^-2"), u("1")], Q),
           Character(G, [u("1"), u("1"), u("q")], Q)]
    yd = YDDatum(G, Q, g, chi)
    lam = LinkingParameter({(1, 0): -Q.one(), (0, 1): yd.q[0][1]})
    rep = validate_linking(yd, lam)
    assert rep.unlinked == [2]
    same, lam_same = restrict_datum(yd, lam, [])
    assert same.theta == 3 and lam_same == lam
    small, lam2 = restrict_datum(yd, lam, [2])
    assert small.theta == 2
    assert validate_linking(small, lam2).perfect
    with pytest.raises(NotUnlinked):
        restrict_datum(yd, lam, [0])


@pytest.mark.parametrize("name", ["A1", "A2", "B2", "A2-two-parameter", "A1xA1-G-counterexample"])
def test_tilde_round_trip(name):
    red = preset(name)
    yd, lam = tilde(red)
    back = to_reduced(yd, lam)
    assert back.K == red.K and back.L == red.L and back.chi == red.chi and back.ell == red.ell


def test_to_reduced_needs_perfect_linking():
    yd, _ = tilde(preset("A1"))
    with pytest.raises(NotPerfect):
        to_reduced(yd, LinkingParameter())


def test_tilde_a2_classes():
    yd, _ = tilde(preset("A2"))
    assert yd.similar_classes() == [[0, 1], [2, 3]]


def test_reduced_datum_invariants():
    G = AbelianGroup(1)
    chi = Character(G, [u("q")], Q)
    with pytest.raises(InvalidDatum):
        ReducedDatum(G, Q, [G.gen(0)], [G.gen(0).inverse()], [chi], [1])  # K L = 1
    with pytest.raises(InvalidDatum):
        ReducedDatum(G, Q, [G.gen(0)], [G.gen(0)], [chi], [0])


def test_reductivity():
    rep = regularity_and_reductivity(preset("A1"))
    assert rep.regular and rep.gamma2_index.value == 2 and rep.reductive
    assert regularity_and_reductivity(preset("A1xA1-G-counterexample")).gamma2_index.value == 4
    # theta = 2 on a rank-3 group: rank deficit
    G = AbelianGroup(3)
    K = [G.gen(0), G.gen(1)]
    chi = [Character(G, [u("q^2"), u("q^-1"), u("q")], Q), Character(G, [u("q^-1"), u("q^2"), u("1")], Q)]
    red = ReducedDatum(G, Q, K, K, chi, [1, 1])
    rep = regularity_and_reductivity(red)
    assert not rep.gamma2_index.finite and not rep.reductive and rep.gamma_reductive


def test_dj2():
    assert str(check_dj2(preset("A2")).q_J[(0, 1)]) == "q"
    assert str(check_dj2(preset("A1")).q_J[(0,)]) == "q"
    dj = check_dj2(preset("B2"))
    assert str(dj.q_J[(0, 1)]) == "q" and all(x.is_one() for row in dj.p for x in row)
    assert check_dj2(preset("A2-two-parameter")) is None


def test_nli():
    assert check_nli(preset("A2"))
    assert check_nli(preset("A1"))
    assert not check_nli(preset("A1xA1-G-counterexample"))
    assert nli_relation(preset("A1xA1-G-counterexample")) == [1, 1]
