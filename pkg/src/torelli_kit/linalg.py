"""Exact integer linear algebra.

Everything here works over Python ints, so entries never overflow no matter
how large the intermediate values of a Smith reduction become.  Matrices act
on column vectors; vectors are plain tuples of ints.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatch, NonPrimitive, NotUnimodular

Vector = tuple[int, ...]


class IntMatrix:
    """Immutable integer matrix.

    ``IntMatrix([[1, 2], [3, 4]])`` builds a 2x2 matrix.  Empty shapes need
    the column count spelled out: ``IntMatrix([], cols=3)`` is 0x3.
    """

    __slots__ = ("_rows", "_ncols")

    def __init__(self, rows: Iterable[Iterable[int]], cols: int | None = None):
        data = tuple(tuple(_as_int(x) for x in r) for r in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise DimensionMismatch("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatch(f"expected {cols} columns, got {width}")
        else:
            width = cols or 0
        if width < 0:
            raise DimensionMismatch(f"negative column count {width}")
        self._rows = data
        self._ncols = width

    # -- constructors -----------------------------------------------------
    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls([[int(i == j) for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def zeros(cls, m: int, n: int) -> IntMatrix:
        return cls([[0] * n for _ in range(m)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]], nrows: int | None = None) -> IntMatrix:
        if not columns:
            return cls.zeros(nrows or 0, 0)
        m = len(columns[0])
        return cls([[c[i] for c in columns] for i in range(m)], cols=len(columns))

    @classmethod
    def diagonal(cls, entries: Sequence[int]) -> IntMatrix:
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def block_diag(cls, *blocks: IntMatrix) -> IntMatrix:
        m = sum(b.nrows for b in blocks)
        n = sum(b.ncols for b in blocks)
        out = [[0] * n for _ in range(m)]
        r0 = c0 = 0
        for b in blocks:
            for i, row in enumerate(b.rows):
                out[r0 + i][c0:c0 + b.ncols] = row
            r0 += b.nrows
            c0 += b.ncols
        return cls(out, cols=n)

    # -- shape and access -------------------------------------------------
    @property
    def rows(self) -> tuple[Vector, ...]:
        return self._rows

    @property
    def nrows(self) -> int:
        return len(self._rows)

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self._ncols)

    @property
    def is_square(self) -> bool:
        return self.nrows == self._ncols

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self._rows[i][j]

    def row(self, i: int) -> Vector:
        return self._rows[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self._rows)

    def columns(self) -> list[Vector]:
        return [self.col(j) for j in range(self._ncols)]

    def submatrix(self, rows: Iterable[int] | None = None, cols: Iterable[int] | None = None) -> IntMatrix:
        ri = list(range(self.nrows)) if rows is None else list(rows)
        ci = list(range(self._ncols)) if cols is None else list(cols)
        return IntMatrix([[self._rows[i][j] for j in ci] for i in ri], cols=len(ci))

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self._rows]

    # -- arithmetic -------------------------------------------------------
    @property
    def T(self) -> IntMatrix:
        return IntMatrix([self.col(j) for j in range(self._ncols)], cols=self.nrows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self._ncols != other.nrows:
                raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
            cols = other.columns()
            return IntMatrix(
                [[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self._rows],
                cols=other.ncols,
            )
        vec = tuple(other)
        if len(vec) != self._ncols:
            raise DimensionMismatch(f"cannot apply {self.shape} matrix to length-{len(vec)} vector")
        return tuple(sum(a * b for a, b in zip(r, vec)) for r in self._rows)

    def _zip(self, other: IntMatrix, op) -> IntMatrix:
        if self.shape != other.shape:
            raise DimensionMismatch(f"shape {self.shape} vs {other.shape}")
        return IntMatrix(
            [[op(a, b) for a, b in zip(r, s)] for r, s in zip(self._rows, other.rows)],
            cols=self._ncols,
        )

    def __add__(self, other: IntMatrix) -> IntMatrix:
        return self._zip(other, lambda a, b: a + b)

    def __sub__(self, other: IntMatrix) -> IntMatrix:
        return self._zip(other, lambda a, b: a - b)

    def __neg__(self) -> IntMatrix:
        return IntMatrix([[-a for a in r] for r in self._rows], cols=self._ncols)

    def __mul__(self, k: int) -> IntMatrix:
        k = _as_int(k)
        return IntMatrix([[k * a for a in r] for r in self._rows], cols=self._ncols)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other.rows

    def __hash__(self) -> int:
        return hash((self._ncols, self._rows))

    def __repr__(self) -> str:
        return f"IntMatrix({self.tolist()!r}, cols={self._ncols})"

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)

    def is_symmetric(self) -> bool:
        return self.is_square and self == self.T

    def is_skew(self) -> bool:
        return self.is_square and self == -self.T

    def det(self) -> int:
        """Determinant by fraction-free (Bareiss) elimination."""
        if not self.is_square:
            raise DimensionMismatch("determinant of a non-square matrix")
        n = self.nrows
        if n == 0:
            return 1
        a = self.tolist()
        sign, prev = 1, 1
        for k in range(n - 1):
            if a[k][k] == 0:
                swap = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
                if swap is None:
                    return 0
                a[k], a[swap] = a[swap], a[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            prev = a[k][k]
        return sign * a[n - 1][n - 1]

    def is_unimodular(self) -> bool:
        return self.is_square and abs(self.det()) == 1


def _as_int(x) -> int:
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    # numpy integers and the like; refuse floats silently truncating
    if hasattr(x, "__index__"):
        return x.__index__()
    raise TypeError(f"expected an integer entry, got {type(x).__name__}")


def as_matrix(m) -> IntMatrix:
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


def vector_gcd(v: Iterable[int]) -> int:
    return reduce(gcd, (abs(x) for x in v), 0)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ source @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal.

    The inverses of ``U`` and ``V`` are tracked during the reduction and kept
    alongside, since homology computations need both directions.
    """

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    source: IntMatrix
    U_inv: IntMatrix
    V_inv: IntMatrix

    @property
    def diagonal(self) -> Vector:
        return tuple(self.S[i, i] for i in range(min(self.S.shape)))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)

    @property
    def invariant_factors(self) -> Vector:
        """Nonzero diagonal entries, in divisibility order."""
        return tuple(d for d in self.diagonal if d != 0)


class _Reducer:
    """Mutable workspace for the reduction; every elementary operation is
    mirrored on U, U^-1 (rows) or V, V^-1 (columns)."""

    def __init__(self, M: IntMatrix):
        m, n = M.shape
        self.m, self.n = m, n
        self.A = M.tolist()
        self.U = IntMatrix.identity(m).tolist()
        self.Ui = IntMatrix.identity(m).tolist()
        self.V = IntMatrix.identity(n).tolist()
        self.Vi = IntMatrix.identity(n).tolist()

    def row_swap(self, i, j):
        if i == j:
            return
        for mat in (self.A, self.U):
            mat[i], mat[j] = mat[j], mat[i]
        for r in self.Ui:
            r[i], r[j] = r[j], r[i]

    def row_add(self, i, j, c):
        """row_i += c * row_j"""
        if c == 0:
            return
        for mat in (self.A, self.U):
            ri, rj = mat[i], mat[j]
            for k in range(len(ri)):
                ri[k] += c * rj[k]
        for r in self.Ui:
            r[j] -= c * r[i]

    def row_neg(self, i):
        for mat in (self.A, self.U):
            mat[i] = [-x for x in mat[i]]
        for r in self.Ui:
            r[i] = -r[i]

    def col_swap(self, i, j):
        if i == j:
            return
        for mat in (self.A, self.V):
            for r in mat:
                r[i], r[j] = r[j], r[i]
        self.Vi[i], self.Vi[j] = self.Vi[j], self.Vi[i]

    def col_add(self, i, j, c):
        """col_i += c * col_j"""
        if c == 0:
            return
        for mat in (self.A, self.V):
            for r in mat:
                r[i] += c * r[j]
        ri, rj = self.Vi[i], self.Vi[j]
        for k in range(len(rj)):
            rj[k] -= c * ri[k]

    def run(self):
        A = self.A
        for t in range(min(self.m, self.n)):
            entries = [(abs(A[i][j]), i, j) for i in range(t, self.m)
                       for j in range(t, self.n) if A[i][j] != 0]
            if not entries:
                break
            _, i0, j0 = min(entries)
            self.row_swap(t, i0)
            self.col_swap(t, j0)
            while True:
                p = A[t][t]
                clean = True
                for i in range(t + 1, self.m):
                    self.row_add(i, t, -(A[i][t] // p))
                    clean = clean and A[i][t] == 0
                for j in range(t + 1, self.n):
                    self.col_add(j, t, -(A[t][j] // p))
                    clean = clean and A[t][j] == 0
                if not clean:
                    # move the smallest leftover of row/column t into the pivot
                    cands = [(abs(A[i][t]), i, t) for i in range(t + 1, self.m) if A[i][t]]
                    cands += [(abs(A[t][j]), t, j) for j in range(t + 1, self.n) if A[t][j]]
                    _, i1, j1 = min(cands)
                    self.row_swap(t, i1)
                    self.col_swap(t, j1)
                    continue
                bad = next((i for i in range(t + 1, self.m)
                            if any(A[i][j] % p for j in range(t + 1, self.n))), None)
                if bad is None:
                    break
                self.row_add(t, bad, 1)
            if A[t][t] < 0:
                self.row_neg(t)


def smith_normal_form(M) -> SmithDecomposition:
    """Smith normal form with unimodular change-of-basis matrices.

    Only the diagonal is canonical; ``U`` and ``V`` are whatever the
    reduction produced.
    """
    M = as_matrix(M)
    red = _Reducer(M)
    red.run()
    m, n = M.shape
    return SmithDecomposition(
        U=IntMatrix(red.U, cols=m),
        S=IntMatrix(red.A, cols=n),
        V=IntMatrix(red.V, cols=n),
        source=M,
        U_inv=IntMatrix(red.Ui, cols=m),
        V_inv=IntMatrix(red.Vi, cols=n),
    )


def rank(M) -> int:
    return smith_normal_form(M).rank


# ---------------------------------------------------------------------------
# Kernels, cokernels, solving
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FGAbelianGroup:
    """A finitely generated abelian group presented as ``Z^m / im(M)``.

    Normal coordinates of a class ``x`` in ``Z^m`` are ``to_normal @ x``: the
    first ``len(diagonal)`` of them are read modulo the invariant factors,
    the trailing ``free_rank`` ones are free.
    """

    free_rank: int
    torsion: Vector
    presentation: IntMatrix
    to_normal: IntMatrix
    from_normal: IntMatrix
    factors: Vector

    @property
    def ngens(self) -> int:
        return self.presentation.nrows

    @property
    def _free_start(self) -> int:
        return self.ngens - self.free_rank

    @property
    def free_projection(self) -> IntMatrix:
        """Rows of ``to_normal`` picking out the free coordinates."""
        return self.to_normal.submatrix(rows=range(self._free_start, self.ngens))

    @property
    def free_lifts(self) -> IntMatrix:
        """Columns are lifts to ``Z^m`` of the free generators."""
        return self.from_normal.submatrix(cols=range(self._free_start, self.ngens))

    def free_coordinates(self, x: Sequence[int]) -> Vector:
        return self.free_projection @ x

    def torsion_coordinates(self, x: Sequence[int]) -> Vector:
        y = self.to_normal @ x
        return tuple(y[i] % d for i, d in enumerate(self.factors) if d > 1)

    def normal_coordinates(self, x: Sequence[int]) -> Vector:
        y = self.to_normal @ x
        reduced = [y[i] % d if d else y[i] for i, d in enumerate(self.factors)]
        return tuple(reduced) + y[len(self.factors):]

    def is_zero(self, x: Sequence[int]) -> bool:
        return not any(self.normal_coordinates(x))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank:
            parts.append("Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel(M) -> FGAbelianGroup:
    """``Z^rows / im(M)`` together with its normal-form coordinate maps."""
    snf = smith_normal_form(M)
    r = snf.rank
    factors = snf.invariant_factors
    return FGAbelianGroup(
        free_rank=snf.source.nrows - r,
        torsion=tuple(d for d in factors if d > 1),
        presentation=snf.source,
        to_normal=snf.U,
        from_normal=snf.U_inv,
        factors=factors,
    )


def kernel_matrix(M) -> IntMatrix:
    """Columns form a saturated basis of the integer kernel of ``M``."""
    snf = smith_normal_form(M)
    return snf.V.submatrix(cols=range(snf.rank, snf.source.ncols))


def kernel_basis(M) -> list[Vector]:
    return kernel_matrix(M).columns()


def solve(M, b: Sequence[int]) -> Vector | None:
    """An integer solution of ``M x = b``, or None when there is none."""
    snf = smith_normal_form(M)
    c = snf.U @ b
    y = []
    for i, d in enumerate(snf.invariant_factors):
        if c[i] % d:
            return None
        y.append(c[i] // d)
    if any(c[len(y):]):
        return None
    y += [0] * (snf.source.ncols - len(y))
    return snf.V @ y


def solve_matrix(M, B) -> IntMatrix | None:
    """Solve ``M X = B`` column by column."""
    B = as_matrix(B)
    cols = []
    for b in B.columns():
        x = solve(M, b)
        if x is None:
            return None
        cols.append(x)
    return IntMatrix.from_columns(cols, nrows=as_matrix(M).ncols) if cols else IntMatrix.zeros(as_matrix(M).ncols, 0)


def inverse_unimodular(M) -> IntMatrix:
    M = as_matrix(M)
    if not M.is_unimodular():
        raise NotUnimodular(f"matrix has determinant {M.det() if M.is_square else 'undefined'}")
    X = solve_matrix(M, IntMatrix.identity(M.nrows))
    assert X is not None
    return X


def complete_to_basis(v: Sequence[int]) -> IntMatrix:
    """A unimodular matrix whose first column is the primitive vector ``v``."""
    v = tuple(_as_int(x) for x in v)
    if not v or vector_gcd(v) != 1:
        raise NonPrimitive(f"{v} is not primitive")
    snf = smith_normal_form(IntMatrix([[x] for x in v], cols=1))
    # U v V = e_1 with V = [+-1], so v = +-(first column of U^-1)
    B = snf.U_inv.tolist()
    if snf.V[0, 0] == -1:
        for r in B:
            r[0] = -r[0]
    out = IntMatrix(B, cols=len(v))
    assert out.col(0) == v
    return out
