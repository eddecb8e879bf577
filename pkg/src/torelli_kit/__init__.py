"""Exact computations with topological Torelli groups of link traces."""

from .certificate import (BoundaryProfile, Certificate, CertificateInput, Realizability, certify,
                          dehn_twist_realizability, stein_certify, xn_input, zn_input)
from .errors import *  # noqa: F401,F403
from .families import xn_family, z_fixture
from .groupring import (AlexanderPolynomial, GroupRingElement, alexander_twist, blowup,
                        knot_surgery, pairwise_distinct, sw_knot_surgery_family)
from .legendrian import (FrontDiagram, adjunction_lower_bound, chern_class, classical_invariants,
                         distinguish_boundaries, nontorsion_test, stein_trace, xn_front)
from .linalg import (FGAbelianGroup, IntMatrix, cokernel, complete_to_basis, kernel_basis,
                     smith_normal_form)
from .presentation import SCHEMA, BoundaryData, CapData, LinkTrace, boundary_homology
from .variation import (SkewForm, Variation, compose, gluing_displacement, identity,
                        induced_automorphism, inverse, is_poincare, is_torelli, skew_from_variation,
                        stabilize, torelli_rank, umkehr, variation_from_skew)

__version__ = "0.1.0"
