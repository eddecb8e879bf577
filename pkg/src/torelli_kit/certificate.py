"""Non-smoothability certificates for Torelli mapping classes.

The checkable part of the criterion is carried out exactly: the boundary
restriction of the basic class is shown to be non-torsion, a skew form is
built from it, and the glued-up homeomorphisms are shown to move the basic
class by ``k`` times a fixed non-zero vector.  Gauge-theoretic inputs (a
non-vanishing invariant, a cap with vanishing ``H^1``) are taken as flags
and echoed back in ``assumptions``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

from .errors import HypothesisFailed, InconsistentProfile, SchemaError
from .families import xn_family, z_fixture
from .groupring import sw_knot_surgery_family
from .legendrian import FrontDiagram, chern_class, nontorsion_test, stein_trace
from .linalg import IntMatrix, Vector, complete_to_basis, inverse_unimodular, smith_normal_form
from .presentation import SCHEMA, CapData, LinkTrace, boundary_homology
from .variation import (SkewForm, gluing_displacement, is_poincare, is_torelli, torelli_rank,
                        variation_from_skew)

WITNESS_RANGE = range(-3, 4)

STEIN_ASSUMPTIONS = (
    "basic class: c_1 of a closed symplectic manifold containing the filling (Taubes)",
    "cap: symplectic cap with simply-connected complement and b+ >= 2 (Etnyre-Min-Mukherjee)",
)


@dataclass(frozen=True)
class CertificateInput:
    trace: LinkTrace
    c1_restriction: Vector
    invariant_nonzero: bool
    cap: CapData
    front: FrontDiagram | None = None
    assumptions: tuple[str, ...] = ()

    @property
    def source(self) -> str:
        return "stein" if self.front is not None else "explicit"

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "trace": self.trace.to_json(),
            "c1_restriction": list(self.c1_restriction),
            "invariant_nonzero": self.invariant_nonzero,
            "cap": self.cap.to_json(),
            "source": self.source,
        }
        if self.front is not None:
            out["front"] = self.front.to_json()
        if self.assumptions:
            out["assumptions"] = list(self.assumptions)
        return out

    @classmethod
    def from_json(cls, data: dict) -> CertificateInput:
        if not isinstance(data, dict):
            raise SchemaError("certificate input must be a JSON object")
        if data.get("schema", SCHEMA) != SCHEMA:
            raise SchemaError(f"unsupported schema {data.get('schema')!r}")
        for key in ("trace", "c1_restriction", "invariant_nonzero", "cap"):
            if key not in data:
                raise SchemaError(f"certificate input is missing {key!r}")
        trace = LinkTrace.from_json(data["trace"])
        c1 = data["c1_restriction"]
        if (not isinstance(c1, list) or len(c1) != trace.n
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in c1)):
            raise SchemaError("'c1_restriction' must list one integer per component")
        if not isinstance(data["invariant_nonzero"], bool):
            raise SchemaError("'invariant_nonzero' must be a boolean")
        front = FrontDiagram.from_json(data["front"]) if data.get("front") is not None else None
        return cls(trace, tuple(c1), data["invariant_nonzero"], CapData.from_json(data["cap"]),
                   front, tuple(data.get("assumptions", ())))


@dataclass(frozen=True)
class Certificate:
    b1_boundary: int
    d: int = 0
    v1: Vector = ()
    v2: Vector = ()
    torelli_rank: int = 0
    infinitely_many_nonsmoothable: bool = False
    all_nontrivial_nonsmoothable: bool = False
    displacement_witness: dict[int, Vector] = field(default_factory=dict)
    failure_reason: str | None = None
    skew_form: IntMatrix | None = None
    variation: IntMatrix | None = None
    chain_value: Vector = ()
    assumptions: tuple[str, ...] = ()

    def __post_init__(self):
        if self.infinitely_many_nonsmoothable:
            assert self.b1_boundary >= 2 and self.d != 0
        if self.all_nontrivial_nonsmoothable:
            assert self.b1_boundary == 2

    @property
    def ok(self) -> bool:
        return self.failure_reason is None

    @property
    def failed_hypothesis(self) -> str | None:
        return self.failure_reason.split(":", 1)[0] if self.failure_reason else None

    def raise_for_failure(self) -> None:
        if self.failure_reason:
            which, _, detail = self.failure_reason.partition(": ")
            raise HypothesisFailed(which, detail)

    def to_json(self) -> dict:
        out = {
            "schema": SCHEMA,
            "b1_boundary": self.b1_boundary,
            "d": self.d,
            "v1": list(self.v1),
            "v2": list(self.v2),
            "torelli_rank": self.torelli_rank,
            "infinitely_many_nonsmoothable": self.infinitely_many_nonsmoothable,
            "all_nontrivial_nonsmoothable": self.all_nontrivial_nonsmoothable,
            "displacement_witness": {str(k): list(v) for k, v in sorted(self.displacement_witness.items())},
            "failure_reason": self.failure_reason,
            "assumptions": list(self.assumptions),
        }
        if self.skew_form is not None:
            out["skew_form"] = self.skew_form.tolist()
        if self.variation is not None:
            out["variation"] = self.variation.tolist()
        if self.chain_value:
            out["chain_value"] = list(self.chain_value)
        return out


def certify(inp: CertificateInput, strict: bool = False) -> Certificate:
    """Run the certificate pipeline; failures are recorded, or raised if ``strict``."""
    cert = _certify(inp)
    if strict:
        cert.raise_for_failure()
    return cert


def _certify(inp: CertificateInput) -> Certificate:
    t = inp.trace
    bd = boundary_homology(t)
    b1 = bd.b1
    assumptions = inp.assumptions + ((inp.cap.provenance,) if inp.cap.provenance else ())

    def fail(which: str, detail: str) -> Certificate:
        return Certificate(b1_boundary=b1, failure_reason=f"{which}: {detail}", assumptions=assumptions)

    c1 = tuple(inp.c1_restriction)
    if inp.front is not None:
        if stein_trace(inp.front) != t:
            return fail("stein", "trace framings are not tb - 1 of the supplied front")
        recomputed = chern_class(inp.front)
        if recomputed != c1:
            return fail("stein", f"c1 {c1} disagrees with rotation numbers {recomputed}")

    if not inp.invariant_nonzero:
        return fail("invariant", "no spin^c structure with non-vanishing invariant supplied")

    nt = nontorsion_test(c1, t)
    if nt is None:
        return fail("nontorsion", "restriction of c1 to the boundary is torsion")
    if b1 < 2:
        return fail("b1", f"b1(boundary) = {b1} < 2, the Torelli group is trivial")

    if not inp.cap.cap_h1_vanishes:
        return fail("cap", "H^1 of the complement is not known to vanish")
    # H_2(Y) -> H_2(W) must be a split injection: full rank, all invariant factors 1
    incl = smith_normal_form(bd.h2_boundary)
    if incl.rank != b1 or any(x != 1 for x in incl.invariant_factors):
        return fail("injectivity", "H_2(boundary) is not a summand of H_2(W)")

    basis = complete_to_basis(nt.v1)
    dual = inverse_unimodular(basis)         # rows are the dual functionals v_i^*
    v1_star, v2_star = dual.row(0), dual.row(1)
    eta = SkewForm.wedge(v1_star, v2_star)

    witness = {}
    for k in WITNESS_RANGE:
        var = variation_from_skew(k * eta, t)
        assert is_poincare(var) and is_torelli(var)
        witness[k] = gluing_displacement(var, c1, cap=inp.cap)

    unit = witness[1]
    if not any(unit) or any(witness[k] != tuple(k * x for x in unit) for k in WITNESS_RANGE):
        return fail("displacement", f"displacements {witness} are not k times a non-zero class")

    # same class computed along the other route: d * (H_2(Y) -> H_2(W)) o PD o ev^-1 (v2^*)
    kernel_coords = inverse_unimodular(bd.duality.T) @ v2_star
    chain = tuple(nt.d * x for x in bd.h2_boundary @ kernel_coords)
    if chain != unit:
        return fail("displacement", f"gluing formula gives {unit}, boundary chain gives {chain}")

    return Certificate(
        b1_boundary=b1,
        d=nt.d,
        v1=nt.v1,
        v2=basis.col(1),
        torelli_rank=torelli_rank(t),
        infinitely_many_nonsmoothable=True,
        all_nontrivial_nonsmoothable=b1 == 2,
        displacement_witness=witness,
        skew_form=eta.matrix,
        variation=variation_from_skew(eta, t).matrix,
        chain_value=chain,
        assumptions=assumptions,
    )


def stein_input(front: FrontDiagram) -> CertificateInput:
    trace = stein_trace(front)
    c1 = chern_class(front)
    cap = CapData(cap_h1_vanishes=True, basic_class_restriction=c1,
                  provenance="cap: complement of the filling is simply connected")
    return CertificateInput(trace, c1, True, cap, front, STEIN_ASSUMPTIONS)


def stein_certify(front: FrontDiagram, strict: bool = False) -> Certificate:
    """Certificate for a Stein domain given by a front with framings ``tb - 1``."""
    return certify(stein_input(front), strict)


def xn_input(n: int) -> CertificateInput:
    _, front = xn_family(n)
    return stein_input(front)


def zn_input(n: int = 1) -> CertificateInput:
    """Input for ``Z_n``; the invariant flag comes from the E1*E2 coefficient of SW."""
    trace, cap = z_fixture()
    sw = sw_knot_surgery_family(n)
    nonzero = sw.coefficient((1, 1, 0)) != 0
    note = f"basic class E1+E2: SW coefficient {sw.coefficient((1, 1, 0))} (knot surgery formula)"
    return CertificateInput(trace, cap.basic_class_restriction, nonzero, cap, None, (note,))


# ---------------------------------------------------------------------------
# Realisability by generalised Dehn twists
# ---------------------------------------------------------------------------


class Realizability(str, Enum):
    REALIZABLE = "Realizable"
    NOT_REALIZABLE = "NotRealizable"
    OUT_OF_SCOPE = "OutOfScope"


@dataclass(frozen=True)
class BoundaryProfile:
    """Caller-supplied facts about a connected boundary 3-manifold."""

    b1: int
    is_prime: bool = True
    is_T3: bool = False
    seifert_over_T2: bool = False


def dehn_twist_realizability(profile: BoundaryProfile) -> Realizability:
    """Is the whole Torelli group generated by generalised Dehn twists?"""
    if profile.b1 < 0:
        raise InconsistentProfile("b1 must be non-negative")
    if profile.is_T3 and profile.b1 != 3:
        raise InconsistentProfile(f"T^3 has b1 = 3, not {profile.b1}")
    if not profile.is_prime:
        return Realizability.OUT_OF_SCOPE
    if profile.b1 < 2 or profile.is_T3 or (profile.b1 == 2 and profile.seifert_over_T2):
        return Realizability.REALIZABLE
    return Realizability.NOT_REALIZABLE


def consistent_profiles(max_b1: int = 4) -> list[BoundaryProfile]:
    return [BoundaryProfile(b1, True, t3, sf)
            for b1 in range(max_b1 + 1)
            for t3 in (False, True)
            for sf in (False, True)
            if not t3 or b1 == 3]


def sweep(ns: Sequence[int], builder=xn_input) -> list[Certificate]:
    return [certify(builder(n)) for n in ns]
