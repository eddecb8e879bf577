"""Poincare variations as integer matrices.

A variation ``H_2(X, dX) -> H_2(X)`` is stored as its matrix ``D`` in the
bases ``f_j`` (source) and ``e_i`` (target) fixed in :mod:`presentation`.
With these dual bases the umkehr map is the transpose, so the Poincare
condition reads ``D + D^T = D L D^T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DimensionMismatch, InjectivityUnverified, NotPoincare, NotTorelli, SchemaError
from .linalg import IntMatrix, Vector, as_matrix, inverse_unimodular, rank, solve
from .presentation import CapData, LinkTrace, boundary_homology


@dataclass(frozen=True)
class Variation:
    matrix: IntMatrix
    trace: LinkTrace

    def __post_init__(self):
        if not isinstance(self.matrix, IntMatrix):
            object.__setattr__(self, "matrix", IntMatrix(self.matrix))

    @property
    def n(self) -> int:
        return self.trace.n

    def to_json(self) -> dict:
        return {"trace": self.trace.to_json(), "matrix": self.matrix.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> Variation:
        if not isinstance(data, dict) or "trace" not in data or "matrix" not in data:
            raise SchemaError("variation needs 'trace' and 'matrix'")
        trace = LinkTrace.from_json(data["trace"])
        return cls(_matrix_from_json(data["matrix"], trace.n), trace)


@dataclass(frozen=True)
class SkewForm:
    """Alternating pairing on the free part of ``H_1(dX)``.

    The basis is the free-generator basis chosen by the cokernel computation
    for the trace at hand, so ``eta(a, b) = a^T N b`` for free coordinate
    vectors ``a``, ``b``.
    """

    matrix: IntMatrix

    def __post_init__(self):
        N = self.matrix if isinstance(self.matrix, IntMatrix) else IntMatrix(self.matrix)
        if not N.is_skew():
            raise ValueError(f"not a skew-symmetric matrix: {N.tolist()}")
        object.__setattr__(self, "matrix", N)

    @classmethod
    def zero(cls, r: int) -> SkewForm:
        return cls(IntMatrix.zeros(r, r))

    @classmethod
    def wedge(cls, a: Sequence[int], b: Sequence[int]) -> SkewForm:
        """``a ^ b`` for functionals ``a``, ``b``: ``(x, y) -> a(x)b(y) - b(x)a(y)``."""
        r = len(a)
        return cls(IntMatrix([[a[i] * b[j] - b[i] * a[j] for j in range(r)] for i in range(r)], cols=r))

    @property
    def rank(self) -> int:
        return self.matrix.nrows

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(xi * v for xi, v in zip(x, self.matrix @ y))

    def __add__(self, other: SkewForm) -> SkewForm:
        return SkewForm(self.matrix + other.matrix)

    def __neg__(self) -> SkewForm:
        return SkewForm(-self.matrix)

    def __mul__(self, k: int) -> SkewForm:
        return SkewForm(self.matrix * k)

    __rmul__ = __mul__

    def on_meridians(self, t: LinkTrace) -> IntMatrix:
        """Gram matrix ``eta(mu_i, mu_j)`` over the meridians of ``t``."""
        pi = boundary_homology(t).free_projection
        return pi.T @ self.matrix @ pi

    def to_json(self) -> dict:
        return {"matrix": self.matrix.tolist()}

    @classmethod
    def from_json(cls, data: dict) -> SkewForm:
        if not isinstance(data, dict) or "matrix" not in data:
            raise SchemaError("skew form needs 'matrix'")
        m = data["matrix"]
        if not isinstance(m, list):
            raise SchemaError("'matrix' must be a list of rows")
        try:
            return cls(_matrix_from_json(m, len(m)))
        except ValueError as exc:
            raise SchemaError(str(exc)) from None


def _matrix_from_json(rows, n: int) -> IntMatrix:
    if (not isinstance(rows, list) or len(rows) != n
            or not all(isinstance(r, list) and len(r) == n for r in rows)
            or not all(isinstance(x, int) and not isinstance(x, bool) for r in rows for x in r)):
        raise SchemaError(f"expected a {n} x {n} integer matrix")
    return IntMatrix(rows, cols=n)


# ---------------------------------------------------------------------------
# Poincare condition and the group law
# ---------------------------------------------------------------------------


def _check_dims(v: Variation) -> None:
    if v.matrix.shape != (v.n, v.n):
        raise DimensionMismatch(f"variation matrix {v.matrix.shape} on a {v.n}-component trace")


def umkehr(v: Variation) -> IntMatrix:
    """The umkehr map, composed from its five constituent coordinate maps.

    PD^-1, ev, ev^-1 and PD are all identity matrices in the dual bases;
    the dual map of ``D`` acts on coefficient vectors of functionals by
    ``D^T``.  Kept as an explicit composite so the collapse to ``D^T`` is
    checked rather than assumed.
    """
    _check_dims(v)
    n = v.n
    pd_inv = IntMatrix.identity(n)     # H_2(X,dX) -> H^2(X): f_i -> h_i^*
    ev = IntMatrix.identity(n)         # H^2(X) -> H_2(X)^*
    dual = v.matrix.T                  # H_2(X)^* -> H_2(X,dX)^*: phi -> phi o D
    ev_inv = IntMatrix.identity(n)     # H_2(X,dX)^* -> H^2(X,dX)
    pd = IntMatrix.identity(n)         # H^2(X,dX) -> H_2(X): f_j^* -> e_j
    return pd @ ev_inv @ dual @ ev @ pd_inv


def is_poincare(v: Variation) -> bool:
    _check_dims(v)
    D, L = v.matrix, v.trace.linking
    Dt = umkehr(v)
    return D + Dt == D @ L @ Dt


def _require_poincare(*vs: Variation) -> None:
    for v in vs:
        if not is_poincare(v):
            raise NotPoincare(f"D + D^T != D L D^T for D = {v.matrix.tolist()}")


def _same_trace(v1: Variation, v2: Variation) -> None:
    if v1.trace.linking != v2.trace.linking:
        raise DimensionMismatch("variations live on different traces")


def compose(v1: Variation, v2: Variation) -> Variation:
    """Group product ``D1 + (I - D1 L) D2``."""
    _check_dims(v1)
    _check_dims(v2)
    _same_trace(v1, v2)
    _require_poincare(v1, v2)
    L = v1.trace.linking
    I = IntMatrix.identity(v1.n)
    return Variation(v1.matrix + (I - v1.matrix @ L) @ v2.matrix, v1.trace)


def inverse(v: Variation) -> Variation:
    """``-(I - D L)^-1 D``, using ``(I - D L)^-1 = I - D^T L``.

    The shorter ``-(I - D L) D`` agrees with this only when ``(I - D L)^2 = I``
    (Torelli elements and involutions), so it is not used.
    """
    _require_poincare(v)
    L = v.trace.linking
    I = IntMatrix.identity(v.n)
    return Variation(-((I - umkehr(v) @ L) @ v.matrix), v.trace)


def identity(t: LinkTrace) -> Variation:
    return Variation(IntMatrix.zeros(t.n, t.n), t)


def induced_automorphism(v: Variation) -> IntMatrix:
    """``I - D L``, an isometry of the intersection form."""
    _require_poincare(v)
    return IntMatrix.identity(v.n) - v.matrix @ v.trace.linking


def is_torelli(v: Variation) -> bool:
    _require_poincare(v)
    return (v.matrix @ v.trace.linking).is_zero()


def variation_from_isometry(A, t: LinkTrace) -> Variation:
    """The unique variation inducing the isometry ``A`` of a unimodular form.

    Only defined when the linking matrix is unimodular (closed-up boundary
    is a homology sphere), where ``D = (I - A) L^-1``.
    """
    A = as_matrix(A)
    L = t.linking
    if A.T @ L @ A != L:
        raise ValueError("matrix does not preserve the intersection form")
    v = Variation((IntMatrix.identity(t.n) - A) @ inverse_unimodular(L), t)
    _require_poincare(v)
    return v


# ---------------------------------------------------------------------------
# Torelli variations <-> skew forms
# ---------------------------------------------------------------------------


def variation_from_skew(eta: SkewForm, t: LinkTrace) -> Variation:
    """Boundary map, adjoint of eta, duality, then include ``H_2(dX)``.

    The adjoint sends ``a`` to the functional ``eta(a, -)`` whose coordinates
    are ``N^T a``.  A functional ``phi`` on the free part of ``H_1(dX)`` is
    identified with the kernel vector ``c`` satisfying ``P^T c = phi``.
    """
    bd = boundary_homology(t)
    if eta.rank != bd.b1:
        raise DimensionMismatch(f"skew form of rank {eta.rank} on a boundary with b1 = {bd.b1}")
    to_kernel = inverse_unimodular(bd.duality.T)
    D = bd.h2_boundary @ to_kernel @ eta.matrix.T @ bd.free_projection
    return Variation(D, t)


def skew_from_variation(v: Variation) -> SkewForm:
    """Recover eta from a Torelli variation by lifting ``D(x)`` to ``ker L``."""
    if not is_torelli(v):
        raise NotTorelli("variation acts non-trivially on H_2")
    bd = boundary_homology(v.trace)
    rows = []
    for j in range(bd.b1):
        y = v.matrix @ bd.free_lifts.col(j)
        c = solve(bd.h2_boundary, y)
        if c is None:
            raise NotTorelli(f"image {y} of a boundary lift does not come from H_2(dX)")
        rows.append(bd.duality.T @ c)
    N = IntMatrix(rows, cols=bd.b1)
    # skewness is a theorem for Torelli variations; check it rather than assume it
    if not N.is_skew():
        raise ArithmeticError(f"recovered pairing is not skew: {N.tolist()}")
    return SkewForm(N)


def torelli_rank(t: LinkTrace) -> int:
    """Rank of the lattice of Torelli variations on ``t``."""
    r = boundary_homology(t).b1
    flat = []
    for i in range(r):
        for j in range(i + 1, r):
            a = [int(k == i) for k in range(r)]
            b = [int(k == j) for k in range(r)]
            D = variation_from_skew(SkewForm.wedge(a, b), t).matrix
            flat.append([x for row in D.rows for x in row])
    if not flat:
        return 0
    return rank(IntMatrix(flat))


# ---------------------------------------------------------------------------
# Stabilisation and gluing
# ---------------------------------------------------------------------------

HYPERBOLIC = IntMatrix([[0, 1], [1, 0]])


def stabilize(v: Variation, m: int) -> Variation:
    """Extend by zero over ``m`` hyperbolic summands (connected sum with S^2 x S^2)."""
    _require_poincare(v)
    if m < 0:
        raise ValueError("m must be non-negative")
    t = v.trace
    L = IntMatrix.block_diag(t.linking, *([HYPERBOLIC] * m))
    labels = None
    if t.labels is not None:
        labels = t.labels + tuple(f"{s}{k + 1}" for k in range(m) for s in ("S", "S'"))
    t2 = LinkTrace(L, labels)
    return Variation(IntMatrix.block_diag(v.matrix, IntMatrix.zeros(2 * m, 2 * m)), t2)


def gluing_displacement(v: Variation, x_rel: Sequence[int], embed=None,
                        cap: CapData | None = None) -> Vector:
    """How far the glued-up homeomorphism moves a class: ``embed @ D @ x_rel``.

    ``x_rel`` is the restriction ``i^!(x)`` of a closed class in relative
    coordinates and ``embed`` the matrix of ``H_2(W) -> H_2(X)`` (identity
    when omitted, i.e. the answer is reported in ``H_2(W)``).  The answer is
    only meaningful when ``H_2(dW) -> H_2(X)`` is injective, which needs the
    cap to have vanishing ``H^1``.
    """
    if cap is None or not cap.cap_h1_vanishes:
        raise InjectivityUnverified("no cap data certifying H^1(cap) = 0")
    if not is_torelli(v):
        raise NotTorelli("gluing formula needs a Torelli variation")
    E = IntMatrix.identity(v.n) if embed is None else as_matrix(embed)
    if E.ncols != v.n:
        raise DimensionMismatch(f"embedding has {E.ncols} columns for {v.n} handles")
    ker = boundary_homology(v.trace).h2_boundary
    if rank(E @ ker) != ker.ncols:
        raise InjectivityUnverified("embedding is not injective on H_2 of the boundary")
    return E @ (v.matrix @ tuple(x_rel))
