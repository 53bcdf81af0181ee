import itertools
import random

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.matrices.normalforms import smith_normal_form as sympy_snf

from ckstar.integer_ktheory import (
    AbelianGroup,
    identity,
    k_groups,
    kernel_basis,
    kron_vector,
    matmul,
    matvec,
    one_minus_transpose,
    smith_normal_form,
    verify_kernel_inclusion,
)
from ckstar.matrix_monoid import all_matrices, full, kronecker, random_matrix

from helpers import CYCLE3, SWAP


def sympy_diagonal(m) -> list[int]:
    d = sympy_snf(sympy.Matrix(m), domain=sympy.ZZ)
    return [abs(int(d[i, i])) for i in range(min(d.shape))]


def check_smith(m):
    snf = smith_normal_form(m)
    assert matmul(matmul(snf.U, m), snf.V) == snf.D
    assert abs(sympy.Matrix(snf.U).det()) == 1
    assert abs(sympy.Matrix(snf.V).det()) == 1
    diag = snf.diagonal
    rows, cols = len(m), len(m[0])
    for i in range(rows):
        for j in range(cols):
            if i != j:
                assert snf.D[i][j] == 0
    assert all(d >= 0 for d in diag)
    nz = [d for d in diag if d]
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert diag[: len(nz)] == nz
    return snf


# ------------------------------------------------------------------ examples


def test_identity_smith():
    assert check_smith(identity(2)).D == identity(2)


def test_swap_like_smith():
    assert check_smith([[1, -1], [-1, 1]]).diagonal == [1, 0]


def test_chain_form_kept():
    assert check_smith([[2, 0], [0, 4]]).diagonal == [2, 4]


def test_non_chain_fixed():
    assert check_smith([[2, 0], [0, 3]]).diagonal == [1, 6]


def test_k_groups_f2():
    kg = k_groups(full(2))
    assert kg.k0.is_trivial() and kg.k1.is_trivial()
    assert one_minus_transpose(full(2)) == [[0, -1], [-1, 0]]
    assert list(kg.smith_diagonal) == [1, 1]


def test_k_groups_swap():
    kg = k_groups(SWAP)
    assert kg.k0 == AbelianGroup(1) and kg.k1 == AbelianGroup(1)


def test_k_groups_f4():
    kg = k_groups(full(4))
    assert str(kg.k0) == "Z/3" and str(kg.k1) == "0"
    assert list(kg.smith_diagonal) == [1, 1, 1, 3]


@pytest.mark.parametrize("n", range(2, 10))
def test_full_matrices(n):
    kg = k_groups(full(n))
    assert kg.k0 == (AbelianGroup(0, (n - 1,)) if n > 2 else AbelianGroup(0))
    assert kg.k1.is_trivial()


def test_kernel_examples():
    assert kernel_basis(identity(2)) == []
    assert kernel_basis([[1, -1], [-1, 1]]) in ([[1, 1]], [[-1, -1]])
    assert len(kernel_basis([[0, 0], [0, 0]])) == 2


def test_kernel_inclusion_examples():
    assert verify_kernel_inclusion(SWAP, SWAP)
    assert kron_vector([1, 1], [1, 1]) == [1, 1, 1, 1]
    assert verify_kernel_inclusion(full(2), SWAP)
    assert verify_kernel_inclusion(CYCLE3, CYCLE3)


def test_group_formatting():
    assert str(AbelianGroup(2, (3, 6))) == "Z^2 (+) Z/3 (+) Z/6"
    assert str(AbelianGroup(1)) == "Z"
    with pytest.raises(ValueError):
        AbelianGroup(0, (2, 3))


# ------------------------------------------------------------------ properties

int_matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-6, 6), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


@settings(max_examples=120, deadline=None)
@given(int_matrices)
def test_smith_matches_sympy(m):
    snf = check_smith(m)
    assert snf.diagonal == sympy_diagonal(m)


@settings(max_examples=60, deadline=None)
@given(int_matrices)
def test_kernel_basis_is_kernel(m):
    basis = kernel_basis(m)
    for v in basis:
        assert not any(matvec(m, v))
    assert len(basis) == len(m[0]) - sympy.Matrix(m).rank()


def test_smith_is_deterministic():
    m = [[4, 6, 2], [2, 8, -4], [0, 3, 9]]
    a, b = smith_normal_form(m), smith_normal_form(m)
    assert (a.U, a.D, a.V) == (b.U, b.D, b.V)


def test_kernel_inclusion_exhaustive_small():
    mats = [m for n in (1, 2, 3) for m in all_matrices(n)]
    rng = random.Random(1)
    for a, b in itertools.product(mats[:8], mats):
        assert verify_kernel_inclusion(a, b)
    for _ in range(200):
        assert verify_kernel_inclusion(rng.choice(mats), rng.choice(mats))


def test_kernel_rank_is_product_at_least():
    rng = random.Random(2)
    for _ in range(30):
        a, b = random_matrix(rng.randint(1, 4), rng), random_matrix(rng.randint(1, 4), rng)
        lhs = len(kernel_basis([[int(i == j) - a.rows[i][j] for j in range(a.n)] for i in range(a.n)]))
        rhs = len(kernel_basis([[int(i == j) - b.rows[i][j] for j in range(b.n)] for i in range(b.n)]))
        ab = kronecker(a, b)
        both = len(kernel_basis([[int(i == j) - ab.rows[i][j] for j in range(ab.n)] for i in range(ab.n)]))
        assert both >= lhs * rhs
