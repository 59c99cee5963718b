import pytest

from hopfkit import oracles
from hopfkit.oracles import RootSystem, cartan_matrix, freudenthal, kostant_partition, weyl_dim

POSITIVE_ROOTS = {("A", 1): 1, ("A", 2): 3, ("A", 3): 6, ("B", 2): 4, ("B", 3): 9, ("C", 3): 9, ("D", 4): 12,
                  ("G", 2): 6, ("F", 4): 24, ("E", 6): 36}


@pytest.mark.parametrize("kind,n", sorted(POSITIVE_ROOTS))
def test_root_counts(kind, n):
    assert len(RootSystem(cartan_matrix(kind, n)).positive_roots) == POSITIVE_ROOTS[(kind, n)]


def test_cartan_conventions():
    assert cartan_matrix("B", 2) == [[2, -1], [-2, 2]]
    assert cartan_matrix("G", 2) == [[2, -3], [-1, 2]]
    assert RootSystem(cartan_matrix("B", 2)).d == [2, 1]


def test_kostant_values():
    a2 = RootSystem(cartan_matrix("A", 2))
    assert kostant_partition(a2, (1, 1)) == 2
    assert kostant_partition(a2, (2, 2)) == 3
    assert kostant_partition(a2, (2, 1)) == 2
    assert kostant_partition(a2, (0, 0)) == 1
    assert kostant_partition(RootSystem(cartan_matrix("B", 2)), (2, 2)) == 4


def test_weyl_dims():
    a1 = RootSystem([[2]])
    assert [weyl_dim(a1, (m,)) for m in range(6)] == [1, 2, 3, 4, 5, 6]
    a2 = RootSystem(cartan_matrix("A", 2))
    assert [weyl_dim(a2, m) for m in [(1, 0), (0, 1), (1, 1), (2, 0), (2, 2)]] == [3, 3, 8, 6, 27]
    b2 = RootSystem(cartan_matrix("B", 2))
    assert weyl_dim(b2, (1, 0)) == 5 and weyl_dim(b2, (0, 1)) == 4
    g2 = RootSystem(cartan_matrix("G", 2))
    assert weyl_dim(g2, (1, 0)) == 7 and weyl_dim(g2, (0, 1)) == 14


def test_freudenthal_adjoint_a2():
    mult = freudenthal(RootSystem(cartan_matrix("A", 2)), (1, 1))
    assert mult[(1, 1)] == 2 and sum(mult.values()) == 8


@pytest.mark.parametrize("kind,n", [("A", 1), ("A", 2), ("B", 2), ("G", 2)])
def test_freudenthal_total_is_weyl_dim(kind, n):
    rs = RootSystem(cartan_matrix(kind, n))
    for m in oracles.degrees_up_to(n, 4):
        assert sum(freudenthal(rs, m).values()) == weyl_dim(rs, m)


def test_clebsch_gordan():
    assert oracles.clebsch_gordan_a1(2, 3) == [5, 3, 1]
    assert oracles.clebsch_gordan_a1(1, 1) == [2, 0]


def test_product_cartan():
    assert oracles.product_cartan([[2]], [[2]]) == [[2, 0], [0, 2]]
