import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from _gen import rand_matrix, rand_trace, rand_unimodular
from torelli_kit.errors import NonPrimitive, NotUnimodular
from torelli_kit.linalg import (IntMatrix, cokernel, complete_to_basis, inverse_unimodular,
                                kernel_basis, kernel_matrix, rank, smith_normal_form, solve,
                                vector_gcd)
from torelli_kit.presentation import boundary_homology


def check_snf(M):
    s = smith_normal_form(M)
    assert s.U @ M @ s.V == s.S
    assert abs(s.U.det()) == 1 and abs(s.V.det()) == 1
    assert s.U @ s.U_inv == IntMatrix.identity(M.nrows)
    assert s.V @ s.V_inv == IntMatrix.identity(M.ncols)
    for i in range(s.S.nrows):
        for j in range(s.S.ncols):
            if i != j:
                assert s.S[i, j] == 0
    d = s.invariant_factors
    assert all(x > 0 for x in d)
    assert all(d[i + 1] % d[i] == 0 for i in range(len(d) - 1))
    assert all(x == 0 for x in s.diagonal[s.rank:])
    return s


def test_small_examples():
    s = check_snf(IntMatrix([[2, 4], [6, 8]]))
    assert s.invariant_factors == (2, 4)
    s = check_snf(IntMatrix([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]))
    assert s.invariant_factors == (2, 6, 12)
    assert rank(IntMatrix.zeros(3, 2)) == 0


def test_empty_and_degenerate_shapes():
    check_snf(IntMatrix.zeros(3, 3))
    check_snf(IntMatrix([[0, 0, 5]]))
    check_snf(IntMatrix([[7]]))
    check_snf(IntMatrix([[0], [3], [-9]]))


def test_random_snf_suite():
    rng = random.Random(20261019)
    for _ in range(500):
        m, n = rng.randint(1, 6), rng.randint(1, 6)
        check_snf(rand_matrix(rng, m, n, rng.choice([1, 3, 9])))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.lists(st.integers(-50, 50), min_size=3, max_size=3), min_size=1, max_size=4))
def test_snf_hypothesis(rows):
    check_snf(IntMatrix(rows))


def test_kernels_are_saturated():
    rng = random.Random(7)
    for _ in range(200):
        M = rand_matrix(rng, rng.randint(1, 4), rng.randint(1, 6), 3)
        K = kernel_matrix(M)
        assert (M @ K).is_zero()
        assert K.ncols == M.ncols - rank(M)
        if K.ncols:
            # saturated: the cokernel of the inclusion is torsion-free
            assert cokernel(K).torsion == ()
            assert smith_normal_form(K).invariant_factors == (1,) * K.ncols


def test_cokernel_z3():
    g = cokernel(IntMatrix([[3]]))
    assert str(g) == "Z/3" and g.free_rank == 0
    assert g.is_zero((3,)) and not g.is_zero((1,))
    assert str(cokernel(IntMatrix.zeros(2, 2))) == "Z^2"
    assert str(cokernel(IntMatrix([[1]]))) == "0"
    g = cokernel(IntMatrix([[2, 0], [0, 0]]))
    assert str(g) == "Z/2 + Z"


def test_solve():
    M = IntMatrix([[2, 0], [0, 3]])
    assert solve(M, (4, 9)) == (2, 3)
    assert solve(M, (1, 0)) is None
    rng = random.Random(3)
    for _ in range(100):
        M = rand_matrix(rng, 3, 4, 3)
        x = tuple(rng.randint(-5, 5) for _ in range(4))
        y = solve(M, M @ x)
        assert y is not None and M @ y == M @ x


def test_inverse_unimodular():
    rng = random.Random(11)
    for _ in range(50):
        U = rand_unimodular(rng, rng.randint(1, 5))
        assert U @ inverse_unimodular(U) == IntMatrix.identity(U.nrows)
    with pytest.raises(NotUnimodular):
        inverse_unimodular(IntMatrix([[2]]))


def test_complete_to_basis():
    assert complete_to_basis((2, 3)).col(0) == (2, 3)
    assert abs(complete_to_basis((2, 3)).det()) == 1
    assert complete_to_basis((0, 1)).col(0) == (0, 1)
    rng = random.Random(5)
    for _ in range(200):
        v = tuple(rng.randint(-9, 9) for _ in range(rng.randint(1, 5)))
        if vector_gcd(v) != 1:
            with pytest.raises(NonPrimitive):
                complete_to_basis(v)
            continue
        B = complete_to_basis(v)
        assert B.col(0) == v and abs(B.det()) == 1
    with pytest.raises(NonPrimitive):
        complete_to_basis((2, 4))
    with pytest.raises(NonPrimitive):
        complete_to_basis((0, 0))


def test_boundary_duality_is_unimodular():
    rng = random.Random(13)
    for _ in range(300):
        t = rand_trace(rng, rng.randint(1, 5))
        bd = boundary_homology(t)
        assert abs(bd.duality.det()) == 1
        assert bd.h2_boundary.ncols == bd.b1 == t.n - rank(t.linking)


def test_det_and_basic_ops():
    A = IntMatrix([[1, 2], [3, 4]])
    assert A.det() == -2
    assert A.T == IntMatrix([[1, 3], [2, 4]])
    assert A @ (1, 1) == (3, 7)
    assert (A - A).is_zero()
    assert 2 * A == A + A
    assert IntMatrix.block_diag(A, IntMatrix([[5]])).shape == (3, 3)
    assert kernel_basis(IntMatrix([[1, 1]])) in ([(1, -1)], [(-1, 1)])
