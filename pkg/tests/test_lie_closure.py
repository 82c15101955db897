import random
from fractions import Fraction

import pytest

from translie import linalg as la
from translie.lie_closure import (
    DEFAULT_PRIME,
    EXACT,
    FieldMode,
    block_layout,
    containment_checks,
    expected_block_dim,
    g_lambda_basis,
    g_prime_dim,
    lie_closure,
    theorem_a_verify,
)
from translie.partitions import conjugate, dimension, enumerate_partitions, predicted_theorem_a_dim
from translie.seminormal import rep_handle, transposition_images

FP = FieldMode(DEFAULT_PRIME)


def naive_closure_dim(mats):
    """Bracket everything with everything until nothing new appears."""
    E = la.SparseEchelon()
    basis = []

    def push(m):
        v = {k: x for k, x in enumerate(m.ravel()) if x}
        if E.add(v) is not None:
            basis.append(m)
            return True
        return False

    for m in mats:
        push(m)
    grew = True
    while grew:
        grew = False
        for a in list(basis):
            for b in list(basis):
                if push(la.matmul(a, b) - la.matmul(b, a)):
                    grew = True
    return len(basis)


def blockdiag(blocks):
    N = sum(b.shape[0] for b in blocks)
    out = la.zeros(N)
    k = 0
    for b in blocks:
        n = b.shape[0]
        out[k : k + n, k : k + n] = b
        k += n
    return out


def test_field_mode_parse():
    assert FieldMode.parse("Q").exact
    assert FieldMode.parse("Fp:101").p == 101
    assert FieldMode.parse("Fp").p == DEFAULT_PRIME
    assert FieldMode.parse("Fp:7").label == "Fp:7"
    with pytest.raises(ValueError):
        FieldMode.parse("Fp:100")
    with pytest.raises(ValueError):
        FieldMode.parse("R")


def test_sl2_from_two_nilpotents():
    E = la.qmatrix([[0, 1], [0, 0]])
    F = la.qmatrix([[0, 0], [1, 0]])
    for mode in (EXACT, FP):
        assert lie_closure([E, F], mode).dim == 3


def test_abelian_generators():
    D1 = la.qmatrix([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    D2 = la.qmatrix([[0, 0, 0], [0, 1, 0], [0, 0, 0]])
    assert lie_closure([D1, D2, D1 + D2]).dim == 2


def test_unknown_strategy():
    with pytest.raises(ValueError):
        lie_closure([la.identity(2)], strategy="bogus")


@pytest.mark.parametrize("n", [3, 4, 5])
def test_full_closure_matches_naive_oracle(n):
    layout = block_layout(n)
    handles = [rep_handle(lam) for lam in layout]
    gens = []
    for key in transposition_images(handles[0]):
        blocks = []
        for h, lam in zip(handles, layout):
            m = transposition_images(h)[key]
            blocks.append(m - Fraction(la.trace(m), h.dim) * la.identity(h.dim))
        gens.append(blockdiag(blocks))
    expected = naive_closure_dim(gens)
    rep = g_prime_dim(n, EXACT, checks=False)
    assert rep.computed_dim == expected == predicted_theorem_a_dim(n)


@pytest.mark.parametrize("n", [3, 4, 5])
def test_exact_and_modular_agree_per_shape(n):
    for lam in enumerate_partitions(n):
        if dimension(lam) <= 1:
            continue
        a = g_lambda_basis(lam, EXACT).dim
        b = g_lambda_basis(lam, FP).dim
        assert a == b == expected_block_dim(lam)
        assert a == g_lambda_basis(conjugate(lam), EXACT).dim


def test_per_shape_n6_modular():
    for lam in enumerate_partitions(6):
        if dimension(lam) > 1:
            assert g_lambda_basis(lam, FP).dim == expected_block_dim(lam)


@pytest.mark.parametrize("lam", [[2, 2], [3, 2], [3, 1, 1]])
def test_pairwise_strategy_agrees(lam):
    assert g_lambda_basis(lam, EXACT, "pairwise").dim == g_lambda_basis(lam, EXACT).dim


@pytest.mark.parametrize("n", [3, 4])
def test_pairwise_full_layout(n):
    assert g_prime_dim(n, EXACT, strategy="pairwise", checks=False).computed_dim == predicted_theorem_a_dim(n)


@pytest.mark.parametrize("seed", range(3))
def test_generator_order_irrelevant(seed):
    imgs = list(transposition_images(rep_handle([3, 2])).values())
    random.Random(seed).shuffle(imgs)
    assert lie_closure(imgs, EXACT).dim == lie_closure(imgs[::-1], FP).dim == 24 + 1


def test_projection_ranks_and_blocks():
    rep = g_prime_dim(5, FP)
    assert rep.passed
    assert [b["dim"] for b in rep.blocks] == [b["predicted"] for b in rep.blocks]
    js = rep.to_json()
    assert js["schema"] == 1 and js["n"] == 5 and js["total"] == 39 and js["pass"] is True


def test_containment_checks_all_hold():
    checks = containment_checks(6)
    names = [c for c, _ in checks]
    assert any("osp form" in c for c in names)
    assert any("conjugate pair" in c for c in names)
    assert all(ok for _, ok in checks)


def test_small_prime_dividing_denominator():
    with pytest.raises(ZeroDivisionError):
        g_prime_dim(5, FieldMode(3), checks=False)


def test_verify_per_shape():
    rep = theorem_a_verify(4, EXACT, per_shape=True)
    assert rep.passed
    assert {tuple(r["shape"]) for r in rep.per_shape} == {(3, 1), (2, 2), (2, 1, 1)}


@pytest.mark.parametrize("lam", [[2, 2, 1], [3, 1, 1]])
def test_result_closed_under_all_pairwise_brackets(lam):
    span = lie_closure(list(transposition_images(rep_handle(lam)).values()), EXACT)
    N = rep_handle(lam).dim
    E = la.SparseEchelon()
    mats = []
    for v in span.vectors:
        E.add(dict(v))
        m = la.zeros(N)
        for k, x in v.items():
            m[divmod(k, N)] = x
        mats.append(m)
    for a in mats:
        for b in mats:
            c = la.matmul(a, b) - la.matmul(b, a)
            assert not E.reduce({k: x for k, x in enumerate(c.ravel()) if x})
