"""Link-trace presentations of simply-connected 4-manifolds with boundary.

Coordinates are fixed once for the whole package:

* ``H_2(X)`` is free on the handle classes ``e_1..e_n``;
* ``H_2(X, dX)`` is free on the dual classes ``f_1..f_n`` with
  ``<e_i, f_j> = delta_ij``;
* ``j_* = q : H_2(X) -> H_2(X, dX)`` is the linking matrix;
* Poincare duality ``H^2(X) -> H_2(X, dX)`` sends ``h_i^*`` to ``f_i``;
* ``d : H_2(X, dX) -> H_1(dX) = coker(L)`` sends ``f_i`` to the meridian
  ``mu_i``;
* ``H_2(dX) = ker(L)`` sits inside ``H_2(X)`` by inclusion.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .errors import DimensionMismatch, NonUnimodularDuality, SchemaError
from .linalg import FGAbelianGroup, IntMatrix, Vector, cokernel, kernel_matrix, rank

SCHEMA = "torelli-kit/1"


@dataclass(frozen=True)
class LinkTrace:
    """``B^4`` with 2-handles attached along an ``n``-component framed link."""

    linking: IntMatrix
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        L = self.linking
        if not isinstance(L, IntMatrix):
            object.__setattr__(self, "linking", L := IntMatrix(L))
        if not L.is_symmetric():
            raise ValueError("linking matrix must be square and symmetric")
        if self.labels is not None:
            labels = tuple(self.labels)
            if len(labels) != L.nrows:
                raise DimensionMismatch(f"{len(labels)} labels for {L.nrows} components")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_framings(cls, framings: Sequence[int], linking: Sequence[Sequence[int]] | None = None,
                      labels: Sequence[str] | None = None) -> LinkTrace:
        n = len(framings)
        rows = [list(r) for r in linking] if linking is not None else [[0] * n for _ in range(n)]
        for i, f in enumerate(framings):
            if linking is not None and rows[i][i] not in (0, f):
                raise ValueError(f"diagonal entry {rows[i][i]} disagrees with framing {f}")
            rows[i][i] = f
        return cls(IntMatrix(rows, cols=n), tuple(labels) if labels is not None else None)

    @property
    def n(self) -> int:
        return self.linking.nrows

    @property
    def framings(self) -> Vector:
        return tuple(self.linking[i, i] for i in range(self.n))

    def component_labels(self) -> tuple[str, ...]:
        return self.labels or tuple(f"K{i + 1}" for i in range(self.n))

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "components": self.n,
            "framings": list(self.framings),
            "linking": self.linking.tolist(),
        }
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> LinkTrace:
        try:
            n = data["components"]
            framings = data["framings"]
            linking = data["linking"]
        except (KeyError, TypeError) as exc:
            raise SchemaError(f"link trace is missing field {exc}") from None
        _check_schema(data)
        if not isinstance(n, int) or n < 0:
            raise SchemaError("'components' must be a non-negative integer")
        if not _is_int_list(framings) or len(framings) != n:
            raise SchemaError("'framings' must list one integer per component")
        if (not isinstance(linking, list) or len(linking) != n
                or not all(_is_int_list(r) and len(r) == n for r in linking)):
            raise SchemaError("'linking' must be an n x n integer matrix")
        if any(linking[i][i] != framings[i] for i in range(n)):
            raise SchemaError("diagonal of 'linking' must equal 'framings'")
        labels = data.get("labels")
        if labels is not None and (not isinstance(labels, list) or len(labels) != n
                                   or not all(isinstance(s, str) for s in labels)):
            raise SchemaError("'labels' must be a list of n strings")
        try:
            return cls(IntMatrix(linking, cols=n), tuple(labels) if labels is not None else None)
        except ValueError as exc:
            raise SchemaError(str(exc)) from None


@dataclass(frozen=True)
class CapData:
    """What is known about the complement of the trace in a closed manifold.

    ``basic_class_restriction`` is the restriction of a basic class to the
    trace, in handle-cochain coordinates.  Both entries are asserted by the
    caller (they come from gauge theory or symplectic topology).
    """

    cap_h1_vanishes: bool
    basic_class_restriction: Vector | None = None
    provenance: str = ""
    boundary_generators: dict[str, Vector] = field(default_factory=dict, compare=False, hash=False)

    def to_json(self) -> dict:
        out: dict = {"cap_h1_vanishes": self.cap_h1_vanishes}
        if self.basic_class_restriction is not None:
            out["basic_class_restriction"] = list(self.basic_class_restriction)
        if self.provenance:
            out["provenance"] = self.provenance
        if self.boundary_generators:
            out["boundary_generators"] = {k: list(v) for k, v in self.boundary_generators.items()}
        return out

    @classmethod
    def from_json(cls, data: dict) -> CapData:
        if not isinstance(data, dict) or not isinstance(data.get("cap_h1_vanishes"), bool):
            raise SchemaError("cap data needs a boolean 'cap_h1_vanishes'")
        bcr = data.get("basic_class_restriction")
        if bcr is not None and not _is_int_list(bcr):
            raise SchemaError("'basic_class_restriction' must be a list of integers")
        gens = data.get("boundary_generators") or {}
        if not isinstance(gens, dict) or not all(_is_int_list(v) for v in gens.values()):
            raise SchemaError("'boundary_generators' must map names to integer vectors")
        return cls(
            cap_h1_vanishes=data["cap_h1_vanishes"],
            basic_class_restriction=tuple(bcr) if bcr is not None else None,
            provenance=str(data.get("provenance", "")),
            boundary_generators={k: tuple(v) for k, v in gens.items()},
        )


def _is_int_list(x) -> bool:
    return isinstance(x, list) and all(isinstance(v, int) and not isinstance(v, bool) for v in x)


def _check_schema(data: dict) -> None:
    tag = data.get("schema", SCHEMA)
    if tag != SCHEMA:
        raise SchemaError(f"unsupported schema {tag!r}; expected {SCHEMA!r}")


def intersection_form(t: LinkTrace) -> IntMatrix:
    return t.linking


@dataclass(frozen=True)
class BoundaryData:
    """Homology of the boundary 3-manifold, in the package coordinates.

    ``h2_boundary`` has as columns a saturated basis of ``ker(L)``;
    ``duality[i][j]`` pairs the i-th kernel vector with a lift of the j-th
    free generator of ``coker(L)``.
    """

    h1: FGAbelianGroup
    h2_boundary: IntMatrix
    duality: IntMatrix

    @property
    def b1(self) -> int:
        return self.h1.free_rank

    @property
    def free_projection(self) -> IntMatrix:
        """``H_2(X, dX) -> H_1(dX)/torsion`` as an ``r x n`` matrix."""
        return self.h1.free_projection

    @property
    def free_lifts(self) -> IntMatrix:
        return self.h1.free_lifts

    def boundary_map(self, x_rel: Sequence[int]) -> Vector:
        """Free coordinates of ``d(x)`` for a relative class ``x``."""
        return self.h1.free_coordinates(x_rel)


@lru_cache(maxsize=256)
def boundary_homology(t: LinkTrace) -> BoundaryData:
    L = t.linking
    h1 = cokernel(L)
    ker = kernel_matrix(L)
    duality = ker.T @ h1.free_lifts
    if ker.ncols != h1.free_rank or abs(duality.det()) != 1:
        raise NonUnimodularDuality(
            f"kernel rank {ker.ncols}, free cokernel rank {h1.free_rank}, "
            f"pairing {duality.tolist()}"
        )
    return BoundaryData(h1=h1, h2_boundary=ker, duality=duality)


@dataclass(frozen=True)
class BettiReport:
    b2: int
    b1_boundary: int
    form_rank: int
    violations: tuple[str, ...]

    @property
    def consistent(self) -> bool:
        return not self.violations


def betti_sanity(t: LinkTrace) -> BettiReport:
    """Check ``b_2(X) >= b_1(dX)``, with equality only for a vanishing form."""
    b2 = t.n
    r = rank(t.linking)
    b1 = boundary_homology(t).b1
    problems = []
    if b1 != b2 - r:
        problems.append(f"b1(boundary)={b1} but n - rank(L) = {b2 - r}")
    if b2 < b1:
        problems.append(f"b2={b2} < b1(boundary)={b1}")
    if b1 == b2 and not t.linking.is_zero():
        problems.append("b1(boundary) = b2 but the intersection form does not vanish")
    return BettiReport(b2=b2, b1_boundary=b1, form_rank=r, violations=tuple(problems))
