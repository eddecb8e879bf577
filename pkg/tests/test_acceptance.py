"""Acceptance criteria, one test per criterion.

Every comparison is exact.  Each test prints a PASS/FAIL line, and the
lines are repeated in the terminal summary.
"""

import random
import time
from contextlib import contextmanager

from _gen import (mixed_trace, rand_isometry_variation, rand_matrix, rand_mixed_variation,
                  rand_skew, rand_torelli, rand_trace, rand_unimodular_form)
from conftest import ACCEPTANCE_LINES
from test_linalg import check_snf
from torelli_kit.certificate import (Realizability, certify, consistent_profiles,
                                     dehn_twist_realizability, xn_input, zn_input)
from torelli_kit.families import xn_family, z_fixture
from torelli_kit.groupring import basic_classes, pairwise_distinct, sw_knot_surgery_family
from torelli_kit.legendrian import chern_class, distinguish_boundaries
from torelli_kit.linalg import IntMatrix, cokernel, kernel_matrix, rank, smith_normal_form
from torelli_kit.presentation import LinkTrace, boundary_homology
from torelli_kit.variation import (compose, identity, induced_automorphism, inverse, is_poincare,
                                   is_torelli, skew_from_variation, stabilize, torelli_rank,
                                   variation_from_skew)


@contextmanager
def criterion(k, title):
    try:
        yield
    except BaseException:
        line = f"FAIL criterion {k}: {title}"
        ACCEPTANCE_LINES.append(line)
        print(line)
        raise
    line = f"PASS criterion {k}: {title}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def test_criterion_1_xn_pipeline():
    with criterion(1, "X_n pipeline n=1..10: H_2=Z^2, form 0, H_1=Z^2, c1=(2n,0), rank 1, verdicts true/true, < 1 s"):
        start = time.perf_counter()
        for n in range(1, 11):
            t, front = xn_family(n)
            assert t.n == 2
            assert t.linking == IntMatrix.zeros(2, 2)
            assert str(boundary_homology(t).h1) == "Z^2"
            assert chern_class(front) == (2 * n, 0)
            assert torelli_rank(t) == 1
            cert = certify(xn_input(n))
            assert cert.infinitely_many_nonsmoothable is True
            assert cert.all_nontrivial_nonsmoothable is True
        assert time.perf_counter() - start < 1.0


def test_criterion_2_displacement_chain():
    with criterion(2, "displacement = k * 2n * e_2 and matches the boundary chain, k=-3..3, n=1..10"):
        for n in range(1, 11):
            cert = certify(xn_input(n))
            assert cert.d == 2 * n
            assert cert.chain_value == (0, 2 * n)
            for k in range(-3, 4):
                assert cert.displacement_witness[k] == (0, k * 2 * n)
                assert cert.displacement_witness[k] == tuple(k * x for x in cert.chain_value)


def test_criterion_3_boundary_distinction():
    with criterion(3, "upper 5*2^r-3 < lower 5*2^m-5 for all 1 <= r < m <= 6"):
        for r in range(1, 7):
            for m in range(r + 1, 7):
                b = distinguish_boundaries(r, m)
                assert b.upper == max(5 * 2 ** r - 3, 7)
                assert b.lower == 5 * 2 ** m - 5
                assert b.upper < b.lower and b.distinct


def test_criterion_4_sw_calculus():
    with criterion(4, "SW(Z_n): 12 basic classes, E1E2 coefficient -(2n-1), pairwise distinct n=1..20"):
        family = [sw_knot_surgery_family(n) for n in range(1, 21)]
        for n, sw in enumerate(family, start=1):
            assert len(basic_classes(sw)) == 12
            assert sw.coefficient((1, 1, 0)) == -(2 * n - 1)
        assert pairwise_distinct(family).all_distinct


def _variation_pool(rng):
    kind = rng.random()
    if kind < 0.4:
        t = rand_trace(rng, rng.randint(2, 5), corank=rng.randint(2, 4))
        return t, lambda: rand_torelli(rng, t)
    if kind < 0.7:
        t = LinkTrace(rand_unimodular_form(rng, rng.randint(1, 2)))
        return t, lambda: rand_isometry_variation(rng, t)
    t, U = mixed_trace(rng, rng.randint(1, 2), rng.randint(1, 3))
    return t, lambda: rand_mixed_variation(rng, t, U)


def test_criterion_5_variation_algebra():
    with criterion(5, "variation algebra: 1000 random cases, group axioms, roundtrip, isometry, stabilization"):
        rng = random.Random(5005)
        cases = 0
        for _ in range(1000):
            t, sample = _variation_pool(rng)
            a, b, c = sample(), sample(), sample()
            e = identity(t)
            L = t.linking
            assert is_poincare(compose(a, b))
            assert compose(a, e) == a == compose(e, a)
            assert compose(a, inverse(a)).matrix.is_zero()
            assert compose(inverse(a), a).matrix.is_zero()
            assert compose(compose(a, b), c) == compose(a, compose(b, c))
            A = induced_automorphism(a)
            assert A.T @ L @ A == L
            s = stabilize(a, rng.randint(1, 2))
            assert is_poincare(s) and is_torelli(s) == is_torelli(a)
            b1 = boundary_homology(t).b1
            if b1 >= 2:
                eta = rand_skew(rng, b1)
                v = variation_from_skew(eta, t)
                assert skew_from_variation(v) == eta
                sv = stabilize(v, 1)
                n = t.n
                assert (skew_from_variation(sv).on_meridians(sv.trace).submatrix(range(n), range(n))
                        == eta.on_meridians(t))
            cases += 1
        assert cases >= 1000


def test_criterion_6_exact_linalg():
    with criterion(6, "exact linalg: 500 random matrices, SNF identities, saturated kernels, unimodular duality"):
        rng = random.Random(6006)
        for _ in range(500):
            M = rand_matrix(rng, rng.randint(1, 6), rng.randint(1, 6), rng.choice([2, 5, 20]))
            check_snf(M)
            K = kernel_matrix(M)
            assert (M @ K).is_zero() and K.ncols == M.ncols - rank(M)
            if K.ncols:
                assert smith_normal_form(K).invariant_factors == (1,) * K.ncols
            if M.nrows == M.ncols:
                S = M + M.T
                bd = boundary_homology(LinkTrace(S))
                assert abs(bd.duality.det()) == 1
                assert cokernel(S).free_rank == bd.h2_boundary.ncols


def test_criterion_7_dehn_twist_table():
    with criterion(7, "generalised Dehn twist classifier on the 12 consistent profiles"):
        profiles = consistent_profiles(4)
        assert len(profiles) == 12
        for p in profiles:
            expected = (p.b1 < 2 or p.is_T3 or (p.b1 == 2 and p.seifert_over_T2))
            got = dehn_twist_realizability(p)
            assert got is (Realizability.REALIZABLE if expected else Realizability.NOT_REALIZABLE)


def test_criterion_8_z_fixture():
    with criterion(8, "Z fixture: form [[0,1],[1,-2]] + 0, H_1 = Z^2, restriction -2(v1+v2), verdicts true/true"):
        t, cap = z_fixture()
        assert t.linking == IntMatrix.block_diag(IntMatrix([[0, 1], [1, -2]]), IntMatrix.zeros(2, 2))
        bd = boundary_homology(t)
        assert str(bd.h1) == "Z^2"
        v1 = bd.boundary_map(cap.boundary_generators["v1"])
        v2 = bd.boundary_map(cap.boundary_generators["v2"])
        assert bd.boundary_map(cap.basic_class_restriction) == tuple(-2 * (a + b) for a, b in zip(v1, v2))
        cert = certify(zn_input(1))
        assert cert.infinitely_many_nonsmoothable is True
        assert cert.all_nontrivial_nonsmoothable is True
