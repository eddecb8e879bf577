"""Seeded generators shared by the property tests."""

from torelli_kit.linalg import IntMatrix
from torelli_kit.presentation import LinkTrace, boundary_homology
from torelli_kit.variation import (HYPERBOLIC, SkewForm, Variation, compose, variation_from_isometry,
                                   variation_from_skew)


def rand_matrix(rng, m, n, bound=4):
    return IntMatrix([[rng.randint(-bound, bound) for _ in range(n)] for _ in range(m)], cols=n)


def rand_unimodular(rng, n, steps=6):
    """Product of random elementary matrices."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i == j:
            rows[i] = [-x for x in rows[i]]
            continue
        c = rng.choice([-2, -1, 1, 2])
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return IntMatrix(rows, cols=n)


def rand_trace(rng, n, corank=None):
    """Symmetric ``C^T Q C`` with ``C`` of size ``r x n``, so corank is at least ``n - r``."""
    if corank is None:
        corank = rng.randint(0, n)
    r = n - min(corank, n)
    if r == 0:
        return LinkTrace(IntMatrix.zeros(n, n))
    C = rand_matrix(rng, r, n, 2)
    Q = rand_matrix(rng, r, r, 2)
    Q = Q + Q.T
    return LinkTrace(C.T @ Q @ C)


def rand_skew(rng, r, bound=3):
    rows = [[0] * r for _ in range(r)]
    for i in range(r):
        for j in range(i + 1, r):
            x = rng.randint(-bound, bound)
            rows[i][j], rows[j][i] = x, -x
    return SkewForm(IntMatrix(rows, cols=r))


def rand_torelli(rng, t):
    return variation_from_skew(rand_skew(rng, boundary_homology(t).b1), t)


def rand_unimodular_form(rng, blocks):
    """Conjugate of a sum of ``H`` and ``(+-1)`` blocks by a random unimodular matrix."""
    parts = [HYPERBOLIC if rng.random() < 0.5 else IntMatrix([[rng.choice([1, -1])]])
             for _ in range(blocks)]
    L = IntMatrix.block_diag(*parts)
    P = rand_unimodular(rng, L.nrows)
    return P.T @ L @ P


def rand_isometry(rng, L, reflections=3, tries=200):
    """Product of reflections in vectors of square +-1 or +-2."""
    n = L.nrows
    A = IntMatrix.identity(n)
    for _ in range(reflections):
        for _ in range(tries):
            v = [rng.randint(-2, 2) for _ in range(n)]
            sq = sum(v[i] * L[i, j] * v[j] for i in range(n) for j in range(n))
            if sq in (1, -1, 2, -2):
                break
        else:
            continue
        Lv = L @ tuple(v)
        R = IntMatrix([[int(i == j) - (2 // sq) * v[i] * Lv[j] for j in range(n)]
                       for i in range(n)], cols=n)
        A = A @ R
    return A


def rand_isometry_variation(rng, t):
    return variation_from_isometry(rand_isometry(rng, t.linking), t)


def mixed_trace(rng, blocks, zeros):
    """Unimodular part plus a zero block, so both kinds of variation coexist."""
    U = rand_unimodular_form(rng, blocks)
    return LinkTrace(IntMatrix.block_diag(U, IntMatrix.zeros(zeros, zeros))), U


def rand_mixed_variation(rng, t, U):
    """Block sum of an isometry variation on ``U`` with zero, times a Torelli element."""
    k = U.nrows
    D = variation_from_isometry(rand_isometry(rng, U), LinkTrace(U)).matrix
    n = t.n
    base = Variation(IntMatrix.block_diag(D, IntMatrix.zeros(n - k, n - k)), t)
    if boundary_homology(t).b1 >= 2 and rng.random() < 0.7:
        return compose(base, rand_torelli(rng, t))
    return base
