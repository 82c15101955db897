import pytest

from translie.hecke import (
    braid_tuple,
    det_check,
    gnq_membership,
    hull_classify,
    hull_table,
    identity_tuple,
    infinitesimal_gnq,
    permutation_tuple,
    quadratic_check,
    table1_certificates,
    transposition_blocks,
    tuple_product,
)
from translie.partitions import enumerate_partitions
from translie.series import exp_scalar

K = 8


@pytest.mark.parametrize("n", range(2, 7))
def test_quadratic_relation(n):
    for lam in enumerate_partitions(n):
        assert all(quadratic_check(lam, i, K) for i in range(1, n))


@pytest.mark.parametrize("n", range(2, 7))
def test_determinant_law(n):
    for lam in enumerate_partitions(n):
        assert det_check(lam, K)


@pytest.mark.parametrize(
    "lam,G,Gt",
    [
        ([3, 2], "GL", "GL"),
        ([6, 3, 2, 2, 2], "SL", "SL"),
        ([9, 3, 3, 3, 3, 1, 1, 1], "SL", "SLtilde"),
        ([2, 2], "OSP", "OSPtilde"),
    ],
)
def test_hull_examples(lam, G, Gt):
    c = hull_classify(lam)
    assert (c.G, c.Gtilde) == (G, Gt)


def test_hull_rejects_hooks():
    with pytest.raises(ValueError):
        hull_classify([3, 1, 1])


def test_hull_table_rows():
    rows = hull_table(6)
    shapes = {tuple(r["shape"]) for r in rows}
    assert (3, 2, 1) in shapes and (5, 1) not in shapes
    row = next(r for r in rows if r["shape"] == [2, 2, 2])
    assert row["G"] == "GL" and row["gamma"] == -1


@pytest.mark.parametrize("n", [4, 5, 6])
def test_even_word_certificates(n):
    rep = table1_certificates(n, K)
    assert rep.passed, rep.failures
    assert rep.det_checks + rep.form_checks > 0


@pytest.mark.parametrize("n", [4, 5, 6])
def test_gnq_identity_and_permutations(n):
    assert gnq_membership(identity_tuple(n, K)).passed
    sigma = tuple([2, 3, 1] + list(range(4, n + 1)))
    assert gnq_membership(permutation_tuple(n, sigma, K)).passed


@pytest.mark.parametrize("n", [4, 5])
@pytest.mark.parametrize("word", [(1, 1), (1, 2), (2, 1, 3, 3)])
def test_even_braid_words_lie_in_gnq(n, word):
    x = braid_tuple(n, word[0], 6)
    for i in word[1:]:
        x = tuple_product(x, braid_tuple(n, i, 6))
    assert gnq_membership(x).passed


@pytest.mark.parametrize(
    "n,fail1,fail2",
    [
        (4, [], ["[2,2]"]),
        (5, ["[2,2,1]"], ["[3,1,1]"]),
        (6, ["[2,2,1,1]", "[2,2,2]"], ["[3,2,1]"]),
    ],
)
def test_gnq_sigma1(n, fail1, fail2):
    rep = gnq_membership(braid_tuple(n, 1, K))
    assert not rep.passed
    assert not rep.conditions["2"]
    assert rep.failures.get("1", []) == fail1
    assert rep.failures["2"] == fail2
    assert not rep.conditions["3"]
    assert rep.conditions["4"]


def test_gnq_proper_scope():
    rep = gnq_membership(braid_tuple(5, 1, 6), osp_scope="proper")
    assert rep.conditions["2"]


def test_gnq_missing_block():
    x = identity_tuple(4, 3)
    x.pop(next(iter(x)))
    with pytest.raises(ValueError):
        gnq_membership(x)


def test_infinitesimal():
    assert infinitesimal_gnq(transposition_blocks(5)).passed
    assert infinitesimal_gnq(transposition_blocks(4, 2, 4)).passed


def test_scalar_tuple_condition_three():
    # a central scalar e^{h} on every block fails det = x_[n]^γ unless γ·dim agree
    n = 4
    x = identity_tuple(n, 4)
    x = {lam: m.scale(exp_scalar(1, 4)) for lam, m in x.items()}
    assert not gnq_membership(x).conditions["3"]
