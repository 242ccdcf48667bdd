import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tycat.intlinalg import (
    factorize,
    inverse_unimodular,
    kernel_mod_pk,
    local_snf,
    matmul,
    smith_normal_form,
    solve_mod,
    solve_mod_pk,
)

small_mats = st.integers(1, 4).flatmap(
    lambda m: st.integers(1, 4).flatmap(
        lambda n: st.lists(st.lists(st.integers(-9, 9), min_size=n, max_size=n), min_size=m, max_size=m)
    )
)


def test_factorize():
    assert factorize(360) == {2: 3, 3: 2, 5: 1}
    assert factorize(1) == {}


@given(small_mats)
def test_snf_transforms(mat):
    diag, U, V = smith_normal_form(mat)
    D = matmul(matmul(U, mat), V)
    for i, row in enumerate(D):
        for j, x in enumerate(row):
            assert x == (diag[i] if i == j else 0)
    nz = [d for d in diag if d]
    for a, b in zip(nz, nz[1:]):
        assert b % a == 0
    assert inverse_unimodular(U)
    assert inverse_unimodular(V)


def _brute_kernel(a, p, K):
    mod = p**K
    n = a.shape[1]
    return {x for x in itertools.product(range(mod), repeat=n) if not np.any((a @ np.array(x)) % mod)}


def _span(gens, mod):
    out = {tuple([0] * gens.shape[0])}
    frontier = list(out)
    while frontier:
        new = []
        for v in frontier:
            for j in range(gens.shape[1]):
                w = tuple((np.array(v) + gens[:, j]) % mod)
                if w not in out:
                    out.add(w)
                    new.append(w)
        frontier = new
    return out


@pytest.mark.parametrize("p,K", [(2, 1), (2, 2), (3, 1), (2, 3)])
def test_kernel_matches_brute_force(p, K):
    rng = np.random.default_rng(p * 10 + K)
    mod = p**K
    for _ in range(15):
        m, n = rng.integers(1, 4), rng.integers(1, 4)
        a = rng.integers(0, mod, (m, n))
        Z = kernel_mod_pk(a, p, K)
        assert not np.any((a @ Z) % mod)
        assert _span(Z, mod) == _brute_kernel(a, p, K)


def test_local_snf_valuations():
    a = np.array([[2, 0], [0, 4]])
    res = local_snf(a, 2, 3)
    assert sorted(res.valuations) == [1, 2]


def test_solve_mod_pk_and_crt():
    a = np.array([[2, 1], [0, 3]])
    rhs = np.array([1, 3])
    x = solve_mod(a, rhs, 12)
    assert x is not None
    assert not np.any((a @ x - rhs) % 12)
    assert solve_mod_pk(np.array([[2]]), np.array([1]), 2, 2) is None
