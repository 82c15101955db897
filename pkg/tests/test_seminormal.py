from fractions import Fraction
from itertools import permutations
from math import comb, factorial

import pytest

from translie import linalg as la
from translie.partitions import conjugate, dimension, enumerate_partitions, gamma
from translie.seminormal import (
    adjoint_wrt_gram,
    bilinear_form,
    delta_r,
    exterior_power,
    gram,
    hook_intertwiner,
    hook_iso_check,
    m_map,
    permutation_matrix,
    reduced_word,
    rep_gen,
    rep_handle,
    rep_perm,
    solve_intertwiner,
    sum_transpositions,
    transposition,
    transposition_images,
    verify_coxeter,
)


def test_small_matrices():
    # [2,1]: basis T1 = superstandard, T2 = its swap under s_2
    s1 = rep_gen([2, 1], 1)
    s2 = rep_gen([2, 1], 2)
    assert la.is_zero(s1 - la.qmatrix([[1, 0], [0, -1]]))
    assert s2[0, 0] == Fraction(-1, 2) and s2[1, 1] == Fraction(1, 2)
    assert rep_gen([3], 1)[0, 0] == 1
    assert rep_gen([1, 1, 1], 2)[0, 0] == -1


def test_matrices_are_read_only():
    h = rep_handle([2, 1])
    with pytest.raises(ValueError):
        h.generators[0][0, 0] = 5


@pytest.mark.parametrize("n", range(2, 8))
def test_coxeter_relations(n):
    for lam in enumerate_partitions(n):
        rep = verify_coxeter(rep_handle(lam))
        assert rep.passed, (lam, rep.failure)


def test_reduced_word():
    sigma = (3, 1, 2, 4)
    w = reduced_word(sigma)
    P = permutation_matrix(sigma)
    Q = la.identity(4)
    for i in w:
        Q = la.matmul(Q, permutation_matrix(transposition(4, i, i + 1)))
    assert la.is_zero(P - Q)
    assert reduced_word(tuple(range(1, 5))) == []


@pytest.mark.parametrize("n", [3, 4, 5])
def test_character_orthogonality(n):
    perms = list(permutations(range(1, n + 1)))
    chars = {lam: [la.trace(rep_perm(rep_handle(lam), p)) for p in perms] for lam in enumerate_partitions(n)}
    for a in chars:
        for b in chars:
            s = sum(x * y for x, y in zip(chars[a], chars[b]))
            assert s == (factorial(n) if a == b else 0)
    # regular representation
    ident = tuple(range(1, n + 1))
    for k, p in enumerate(perms):
        total = sum(dimension(lam) * chars[lam][k] for lam in chars)
        assert total == (factorial(n) if p == ident else 0)


@pytest.mark.parametrize("n", range(2, 7))
def test_sum_of_transpositions_scalar(n):
    for lam in enumerate_partitions(n):
        h = rep_handle(lam)
        _, c = sum_transpositions(h)
        assert c == Fraction(n * (n - 1) * gamma(lam), 2 * h.dim)


def test_sum_transpositions_example():
    _, c = sum_transpositions(rep_handle([4, 1]))
    assert c == 5


def test_transposition_images_are_involutions():
    h = rep_handle([3, 2])
    for (i, j), m in transposition_images(h).items():
        assert la.is_zero(la.matmul(m, m) - la.identity(h.dim))
        assert la.is_zero(m - rep_perm(h, transposition(5, i, j)))


@pytest.mark.parametrize("n", range(2, 7))
def test_gram_invariance(n):
    for lam in enumerate_partitions(n):
        assert gram(lam).is_invariant()


@pytest.mark.parametrize("lam", [[2, 1], [2, 2], [3, 1, 1], [3, 2, 1], [4, 1, 1, 1], [4, 2, 1, 1]])
def test_bilinear_twisted_invariance(lam):
    data = bilinear_form(lam)
    assert data.is_twisted_invariant()
    B = data.B
    assert la.is_zero(B.T - data.sign * B)


def test_bilinear_requires_self_conjugate():
    with pytest.raises(ValueError):
        bilinear_form([3, 1])


@pytest.mark.parametrize("n", range(3, 7))
def test_m_map_intertwines_with_sign(n):
    for lam in enumerate_partitions(n):
        lc = conjugate(lam)
        M = m_map(lam)
        a, b = rep_handle(lam), rep_handle(lc)
        for s, t in zip(a.generators, b.generators):
            assert la.is_zero(la.matmul(M, s) + la.matmul(t, M))
        assert la.is_scalar(la.matmul(m_map(lc), M))


def test_adjoint_is_inverse_on_group_elements():
    lam = [3, 2]
    h = rep_handle(lam)
    for s in h.generators:
        assert la.is_zero(adjoint_wrt_gram(lam, s) - s)
    x = rep_perm(h, (2, 3, 1, 5, 4))
    assert la.is_zero(la.matmul(adjoint_wrt_gram(lam, x), x) - la.identity(h.dim))


def test_solve_intertwiner_none_for_inequivalent():
    a = rep_handle([3, 1]).generators
    b = rep_handle([2, 1, 1]).generators
    assert solve_intertwiner(a, b) is None


def test_solve_intertwiner_finds_conjugation():
    a = rep_handle([3, 2]).generators
    g = la.qmatrix([[1, 1, 0, 0, 0], [0, 1, 2, 0, 0], [0, 0, 1, 0, 3], [1, 0, 0, 1, 0], [0, 0, 0, 0, 1]])
    gi = la.inverse(g)
    b = [la.matmul(la.matmul(g, s), gi) for s in a]
    P = solve_intertwiner(a, b)
    assert P is not None and la.det(P) != 0
    for s, t in zip(a, b):
        assert la.is_zero(la.matmul(P, s) - la.matmul(t, P))


def test_exterior_power_multiplicative():
    A = la.qmatrix([[1, 2, 0], [0, 1, 3], [4, 0, 1]])
    B = la.qmatrix([[2, 0, 1], [1, 1, 0], [0, 5, 1]])
    for r in (1, 2, 3):
        lhs = exterior_power(la.matmul(A, B), r)
        rhs = la.matmul(exterior_power(A, r), exterior_power(B, r))
        assert la.is_zero(lhs - rhs)
    assert exterior_power(A, 3)[0, 0] == la.det(A)


def test_delta_is_derivation():
    x = la.qmatrix([[0, 1, 2], [3, 0, 1], [1, 1, 1]])
    # Δ_r(x) is the h-linear part of Λ^r(1 + h x)
    for r in (1, 2):
        eps = Fraction(1, 10**6)
        lin = (exterior_power(la.identity(3) + eps * x, r) - la.identity(comb(3, r))) / eps
        quad = lin - delta_r(x, r)
        assert all(abs(v) < Fraction(1, 10**4) for v in quad.ravel())


@pytest.mark.parametrize("n", [4, 5, 6])
def test_hook_isomorphism(n):
    alpha = rep_handle([n - 1, 1])
    for r in range(1, n):
        assert hook_iso_check(n, r).passed
        Q = hook_intertwiner(n, r)
        assert la.det(Q) != 0
        hook = rep_handle([n - r] + [1] * r)
        for s, t in zip(hook.generators, alpha.generators):
            assert la.is_zero(la.matmul(Q, s) - la.matmul(exterior_power(t, r), Q))


@pytest.mark.parametrize("n", range(2, 9))
def test_generator_trace_is_gamma(n):
    for lam in enumerate_partitions(n):
        assert la.trace(rep_gen(lam, 1)) == gamma(lam)
