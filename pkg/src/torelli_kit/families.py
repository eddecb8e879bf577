"""The two worked families: the Stein traces X_n and the knot-surgery fixture Z."""

from __future__ import annotations

from .legendrian import FrontDiagram, stein_trace, xn_front
from .linalg import IntMatrix
from .presentation import CapData, LinkTrace

Z_FORM = IntMatrix.block_diag(IntMatrix([[0, 1], [1, -2]]), IntMatrix.zeros(2, 2))

# Restriction of the basic class E1 + E2 to Z.  The form is even, so any
# characteristic restriction has even coordinates; on the boundary it lands
# on -2(v1 + v2) with v1, v2 the meridians of the two 0-framed summands.
Z_BASIC_CLASS_RESTRICTION = (0, 0, -2, -2)


def xn_family(n: int) -> tuple[LinkTrace, FrontDiagram]:
    """Two-component, 0-framed, algebraically unlinked Stein trace ``X_n``."""
    front = xn_front(n)
    trace = stein_trace(front)
    assert trace.linking.is_zero(), trace.linking
    return trace, front


def z_fixture() -> tuple[LinkTrace, CapData]:
    """Trace with form ``[[0,1],[1,-2]] + 0`` and the cap data used for ``Z_n``.

    Only the homological consequences of the diagram are encoded: the form,
    the boundary generators and the restriction of the basic class.  The cap
    is built from 2-handles and one 4-handle, so its ``H^1`` vanishes.
    """
    trace = LinkTrace(Z_FORM, ("A", "B", "C", "D"))
    cap = CapData(
        cap_h1_vanishes=True,
        basic_class_restriction=Z_BASIC_CLASS_RESTRICTION,
        provenance="cap Q = K3 # 2CP^2-bar minus Z: 2-handles and one 4-handle",
        boundary_generators={"v1": (0, 0, 1, 0), "v2": (0, 0, 0, 1)},
    )
    return trace, cap
