"""Legendrian fronts as event words, and what Stein handlebodies read off them.

A front is scanned left to right.  The running state is the list of strands
currently present, top to bottom.  Events:

``L i``  left cusp: a new upper/lower strand pair appears at positions i, i+1
``R i``  right cusp: strands at positions i, i+1 meet and disappear
``X i``  crossing: strands at positions i, i+1 swap

At a crossing the strand coming from above has the smaller slope and passes
in front.  A crossing is positive exactly when both strands are traversed in
the same horizontal direction.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import MalformedFront, NotUnimodular, SchemaError
from .linalg import IntMatrix, Vector, as_matrix, vector_gcd
from .presentation import SCHEMA, LinkTrace, boundary_homology

_EVENT_RE = re.compile(r"^\s*([LRX])\s*(\d+)\s*$")


@dataclass(frozen=True)
class Event:
    kind: str
    pos: int

    def __post_init__(self):
        if self.kind not in ("L", "R", "X"):
            raise MalformedFront(f"unknown event kind {self.kind!r}")
        if self.pos < 0:
            raise MalformedFront(f"negative position in {self.kind}{self.pos}")

    @classmethod
    def parse(cls, token: str) -> Event:
        m = _EVENT_RE.match(token)
        if not m:
            raise MalformedFront(f"cannot parse event {token!r}")
        return cls(m.group(1), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.kind}{self.pos}"


def L(i: int) -> Event:
    return Event("L", i)


def R(i: int) -> Event:
    return Event("R", i)


def X(i: int) -> Event:
    return Event("X", i)


@dataclass(frozen=True)
class FrontDiagram:
    """An oriented Legendrian link front.

    Components are numbered by the order of their first left cusp.  The
    reference orientation of a component leaves that cusp along its upper
    strand; ``orientations[k] = -1`` reverses it.
    """

    events: tuple[Event, ...]
    orientations: tuple[int, ...] | None = None
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        evs = tuple(e if isinstance(e, Event) else Event.parse(e) for e in self.events)
        object.__setattr__(self, "events", evs)
        ncomp = len(_trace(evs).components)
        if self.orientations is None:
            object.__setattr__(self, "orientations", (1,) * ncomp)
        else:
            o = tuple(int(x) for x in self.orientations)
            if len(o) != ncomp or any(x not in (1, -1) for x in o):
                raise MalformedFront(f"need {ncomp} orientations in {{+1, -1}}, got {o}")
            object.__setattr__(self, "orientations", o)
        if self.labels is not None:
            if len(self.labels) != ncomp:
                raise MalformedFront(f"need {ncomp} labels, got {len(self.labels)}")
            if any("," in s or "\n" in s or "#" in s for s in self.labels):
                raise MalformedFront("labels may not contain ',', '#' or newlines")
            object.__setattr__(self, "labels", tuple(self.labels))

    @classmethod
    def from_word(cls, word: str | Sequence[str], orientations=None, labels=None) -> FrontDiagram:
        tokens = [t for t in word.split(",") if t.strip()] if isinstance(word, str) else list(word)
        return cls(tuple(Event.parse(t) for t in tokens), orientations, labels)

    @property
    def ncomponents(self) -> int:
        return len(self.orientations)

    def component_labels(self) -> tuple[str, ...]:
        return self.labels or tuple(f"K{i + 1}" for i in range(self.ncomponents))

    def word(self) -> str:
        return ", ".join(map(str, self.events))

    def reoriented(self, component: int) -> FrontDiagram:
        o = list(self.orientations)
        o[component] = -o[component]
        return FrontDiagram(self.events, tuple(o), self.labels)

    def __add__(self, other: FrontDiagram) -> FrontDiagram:
        """Split union, placing ``other`` to the right."""
        labels = None
        if self.labels is not None and other.labels is not None:
            labels = self.labels + other.labels
        return FrontDiagram(self.events + other.events, self.orientations + other.orientations, labels)

    # -- serialisation ----------------------------------------------------
    def blocks(self) -> list[tuple[Event, ...]]:
        """Split the word wherever no strands are present."""
        out, cur, k = [], [], 0
        for e in self.events:
            cur.append(e)
            k += {"L": 2, "R": -2, "X": 0}[e.kind]
            if k == 0:
                out.append(tuple(cur))
                cur = []
        if cur:
            out.append(tuple(cur))
        return out

    def to_text(self) -> str:
        lines = ["orientations: " + ", ".join(f"{o:+d}" for o in self.orientations)]
        if self.labels is not None:
            lines.append("labels: " + ", ".join(self.labels))
        lines += [", ".join(map(str, b)) for b in self.blocks()]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> FrontDiagram:
        orientations = labels = None
        tokens: list[str] = []
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, rest = line.partition(":")
            if sep and head.strip().lower() == "orientations":
                try:
                    orientations = tuple(int(x) for x in rest.split(",") if x.strip())
                except ValueError:
                    raise MalformedFront(f"bad orientation line {raw!r}") from None
            elif sep and head.strip().lower() == "labels":
                labels = tuple(x.strip() for x in rest.split(",") if x.strip())
            else:
                tokens += [t for t in line.split(",") if t.strip()]
        return cls.from_word(tokens, orientations, labels)

    def to_json(self) -> dict:
        out = {"schema": SCHEMA, "events": [str(e) for e in self.events],
               "orientations": list(self.orientations)}
        if self.labels is not None:
            out["labels"] = list(self.labels)
        return out

    @classmethod
    def from_json(cls, data: dict) -> FrontDiagram:
        if not isinstance(data, dict) or not isinstance(data.get("events"), list):
            raise SchemaError("front needs an 'events' list")
        if data.get("schema", SCHEMA) != SCHEMA:
            raise SchemaError(f"unsupported schema {data.get('schema')!r}")
        if not all(isinstance(e, str) for e in data["events"]):
            raise SchemaError("events must be strings such as 'L0'")
        return cls.from_word(data["events"], data.get("orientations"), data.get("labels"))


# ---------------------------------------------------------------------------
# Strand bookkeeping
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Traced:
    # per strand: (left cusp index, is upper at left cusp, right cusp index, is upper at right cusp)
    strands: tuple[tuple[int, bool, int, bool], ...]
    left_cusps: tuple[tuple[int, int], ...]
    right_cusps: tuple[tuple[int, int], ...]
    crossings: tuple[tuple[int, int], ...]      # (over strand, under strand)
    components: tuple[tuple[int, ...], ...]     # strand ids in traversal order
    strand_component: tuple[int, ...]
    strand_direction: tuple[int, ...]           # +1 rightwards in the reference orientation
    # per component: (down cusps, up cusps) in the reference orientation
    cusp_counts: tuple[tuple[int, int], ...]


@lru_cache(maxsize=512)
def _trace(events: tuple[Event, ...]) -> _Traced:
    positions: list[int] = []
    left_of: list[tuple[int, bool]] = []
    right_of: dict[int, tuple[int, bool]] = {}
    left_cusps, right_cusps, crossings = [], [], []
    for step, e in enumerate(events):
        k = len(positions)
        if e.kind == "L":
            if e.pos > k:
                raise MalformedFront(f"event {step} ({e}): only {k} strands present")
            u, l = len(left_of), len(left_of) + 1
            left_of += [(len(left_cusps), True), (len(left_cusps), False)]
            left_cusps.append((u, l))
            positions[e.pos:e.pos] = [u, l]
            continue
        if e.pos + 1 >= k:
            raise MalformedFront(f"event {step} ({e}): needs strands {e.pos}, {e.pos + 1} but only {k} present")
        a, b = positions[e.pos], positions[e.pos + 1]
        if e.kind == "R":
            right_of[a] = (len(right_cusps), True)
            right_of[b] = (len(right_cusps), False)
            right_cusps.append((a, b))
            del positions[e.pos:e.pos + 2]
        else:
            crossings.append((a, b))
            positions[e.pos], positions[e.pos + 1] = b, a
    if positions:
        raise MalformedFront(f"{len(positions)} strands left open at the end of the word")

    nstrands = len(left_of)
    strands = tuple(left_of[s] + right_of[s] for s in range(nstrands))
    comp_of = [-1] * nstrands
    direction = [0] * nstrands
    components, counts = [], []
    for u, _ in left_cusps:
        if comp_of[u] != -1:
            continue
        c = len(components)
        order, down, up = [], 0, 0
        s, d = u, 1
        while True:
            comp_of[s], direction[s] = c, d
            order.append(s)
            if d == 1:
                rc, upper = right_of[s]
                pair = right_cusps[rc]
            else:
                lc, upper = left_of[s]
                pair = left_cusps[lc]
            if upper:
                down += 1
            else:
                up += 1
            s = pair[1] if upper else pair[0]
            d = -d
            if s == u and d == 1:
                break
        components.append(tuple(order))
        counts.append((down, up))
    return _Traced(strands, tuple(left_cusps), tuple(right_cusps), tuple(crossings),
                   tuple(components), tuple(comp_of), tuple(direction), tuple(counts))


def _oriented_direction(f: FrontDiagram, strand: int) -> int:
    tr = _trace(f.events)
    return tr.strand_direction[strand] * f.orientations[tr.strand_component[strand]]


def crossing_signs(f: FrontDiagram) -> list[tuple[int, int, int]]:
    """``(component of over strand, component of under strand, sign)`` per crossing."""
    tr = _trace(f.events)
    out = []
    for over, under in tr.crossings:
        sign = _oriented_direction(f, over) * _oriented_direction(f, under)
        out.append((tr.strand_component[over], tr.strand_component[under], sign))
    return out


# ---------------------------------------------------------------------------
# Classical invariants and the Stein trace
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ClassicalInvariants:
    tb: int
    rot: int
    writhe: int
    right_cusps: int
    up_cusps: int
    down_cusps: int
    crossings: int


def classical_invariants(f: FrontDiagram, component: int) -> ClassicalInvariants:
    tr = _trace(f.events)
    if not 0 <= component < len(tr.components):
        raise IndexError(f"front has {len(tr.components)} components")
    signs = [s for a, b, s in crossing_signs(f) if a == b == component]
    writhe = sum(signs)
    strands = set(tr.components[component])
    right = sum(1 for a, _ in tr.right_cusps if a in strands)
    down, up = tr.cusp_counts[component]
    if f.orientations[component] == -1:
        down, up = up, down
    if (down - up) % 2:
        raise MalformedFront(f"component {component} has an odd signed cusp count")
    return ClassicalInvariants(
        tb=writhe - right,
        rot=(down - up) // 2,
        writhe=writhe,
        right_cusps=right,
        up_cusps=up,
        down_cusps=down,
        crossings=len(signs),
    )


def linking_number(f: FrontDiagram, i: int, j: int) -> int:
    if i == j:
        raise ValueError("linking number needs two distinct components")
    total = sum(s for a, b, s in crossing_signs(f) if {a, b} == {i, j})
    if total % 2:
        raise MalformedFront(f"odd crossing count between components {i} and {j}")
    return total // 2


def stein_trace(f: FrontDiagram) -> LinkTrace:
    """Attach 2-handles along the front with framings ``tb - 1``."""
    n = f.ncomponents
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = classical_invariants(f, i).tb - 1
    for a, b, s in crossing_signs(f):
        if a != b:
            rows[a][b] += s
            rows[b][a] += s
    for i in range(n):
        for j in range(n):
            if i != j:
                if rows[i][j] % 2:
                    raise MalformedFront(f"odd crossing count between components {i} and {j}")
                rows[i][j] //= 2
    return LinkTrace(IntMatrix(rows, cols=n), f.labels)


def chern_class(f: FrontDiagram) -> Vector:
    """First Chern class of the Stein structure in the handle-cochain basis."""
    return tuple(classical_invariants(f, i).rot for i in range(f.ncomponents))


# ---------------------------------------------------------------------------
# Boundary restriction of c_1 and the genus argument
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Nontorsion:
    """``PD(c)|_boundary = d * v1`` with ``v1`` primitive in free coordinates."""

    d: int
    v1: Vector
    image: Vector


def nontorsion_test(c1: Sequence[int], t: LinkTrace) -> Nontorsion | None:
    """Push ``PD(c1)`` into ``H_1`` of the boundary; None when it is torsion."""
    bd = boundary_homology(t)
    if len(c1) != t.n:
        raise ValueError(f"class has {len(c1)} coordinates for {t.n} handles")
    image = bd.boundary_map(c1)
    d = vector_gcd(image)
    if d == 0:
        return None
    return Nontorsion(d=d, v1=tuple(x // d for x in image), image=image)


@dataclass(frozen=True)
class AdjunctionBound:
    displayed: int      # 1 + 2n max(|A11|, |A21|)
    literal: Fraction   # 1 + max_i |<c1, A e_i>| / 2
    universal: int      # 1 + 2n


def adjunction_lower_bound(c1: Sequence[int], A, n: int) -> AdjunctionBound:
    """Genus lower bound for the images of ``e_1, e_2`` under ``A``.

    ``displayed`` follows the published chain of inequalities term for term;
    ``literal`` is the adjunction quantity evaluated directly on ``c1``.
    """
    A = as_matrix(A)
    if A.shape != (2, 2) or abs(A.det()) != 1:
        raise NotUnimodular(f"{A.tolist()} is not in GL(2, Z)")
    if len(c1) != 2:
        raise ValueError("expected a class on a rank-2 H_2")
    pairings = [abs(sum(c * a for c, a in zip(c1, A.col(i)))) for i in range(2)]
    return AdjunctionBound(
        displayed=1 + 2 * n * max(abs(A[0, 0]), abs(A[1, 0])),
        literal=1 + Fraction(max(pairings), 2),
        universal=1 + 2 * n,
    )


def family_parameter(r: int) -> int:
    """``n_r = 5 * 2^(r-1) - 3``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    return 5 * 2 ** (r - 1) - 3


def surface_genera(n: int) -> tuple[int, int]:
    """Genera of the explicit surfaces representing ``e_1, e_2`` in the boundary."""
    return (2 * n + 3, 7)


@dataclass(frozen=True)
class BoundaryDistinction:
    r: int
    m: int
    n_r: int
    n_m: int
    upper: int
    lower: int
    literal_lower: int

    @property
    def distinct(self) -> bool:
        return self.upper < self.lower

    @property
    def verdict(self) -> str:
        return "Distinct" if self.distinct else "Inconclusive"

    def __str__(self) -> str:
        rel = "<" if self.distinct else ">="
        return f"{self.verdict}: upper {self.upper} {rel} lower {self.lower}"


def distinguish_boundaries(r: int, m: int) -> BoundaryDistinction:
    """Compare the genus of the explicit surfaces with the adjunction bound.

    A diffeomorphism between the two boundaries would carry the surfaces of
    the smaller parameter to surfaces bounding the genus function of the
    larger one from above, so upper < lower rules it out.
    """
    if r == m:
        raise ValueError("r and m must differ")
    r, m = min(r, m), max(r, m)
    n_r, n_m = family_parameter(r), family_parameter(m)
    return BoundaryDistinction(
        r=r, m=m, n_r=n_r, n_m=n_m,
        upper=max(surface_genera(n_r)),
        lower=1 + 2 * n_m,
        literal_lower=1 + n_m,
    )


# ---------------------------------------------------------------------------
# Generators and symmetries
# ---------------------------------------------------------------------------


def unknot_front() -> FrontDiagram:
    return FrontDiagram((L(0), R(0)))


def torus_front(q: int) -> FrontDiagram:
    """Max-tb front of the (2, q) torus knot (q odd) or link (q even)."""
    return FrontDiagram((L(0), L(2)) + (X(1),) * q + (R(2), R(0)))


def xn_front(n: int) -> FrontDiagram:
    """Two-component front with the invariants of the Stein family ``X_n``.

    ``K1`` is the (2, 2n+3) torus knot front with ``2n`` same-sign zig-zags on
    its top strand (tb = 1, rot = 2n); ``K2`` is the max-tb right-handed
    trefoil (tb = 1, rot = 0), placed to the right.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    k1 = (L(0), L(2)) + (X(1),) * (2 * n + 3) + (L(1), R(0)) * (2 * n) + (R(2), R(0))
    k2 = (L(0), L(2)) + (X(1),) * 3 + (R(2), R(0))
    return FrontDiagram(k1 + k2, (1, 1), (f"K1_{n}", f"K2_{n}"))


def _strand_counts(events: Sequence[Event]) -> list[int]:
    counts, k = [], 0
    for e in events:
        counts.append(k)
        k += {"L": 2, "R": -2, "X": 0}[e.kind]
    return counts


def mirror_front(f: FrontDiagram) -> FrontDiagram:
    """Reflect the front left-right (rotation by pi about the z-axis)."""
    events = tuple(Event({"L": "R", "R": "L", "X": "X"}[e.kind], e.pos) for e in reversed(f.events))
    return FrontDiagram(events)


def flip_front(f: FrontDiagram) -> FrontDiagram:
    """Reflect the front top-bottom."""
    events = []
    for e, k in zip(f.events, _strand_counts(f.events)):
        new_pos = k - e.pos if e.kind == "L" else k - 2 - e.pos
        events.append(Event(e.kind, new_pos))
    return FrontDiagram(tuple(events))
