"""Real loci of Kato-Nakayama spaces of toric degenerations, computed exactly.

Submodules:

``exact_linalg``   checked integer matrices and GF(2) elimination
``affine_complex`` polyhedral complexes, kinks and focus-focus markers
``monodromy``      affine monodromy triples and Z/2 cohomology of theta
``real_cover``     permutation action on the real fiber, components, genus
``toric_monoid``   cones, dual cones, monoids and local models
``scenario``       JSON scenario files and builtin examples
"""

from .affine_complex import builtin_quartic_k3, validate_balancing
from .exact_linalg import IntMatrix, gf2_solve, mat_mul, unimodular_inverse
from .monodromy import (
    AffineMonodromyRep,
    Presentation,
    compose,
    focus_focus_shear,
    h1_theta,
    livne_moishezon_rep,
    sphere_presentation,
    verify,
)
from .real_cover import build_action, classify, orbits, theta_shift
from .toric_monoid import (
    LocalModelSpec,
    RationalCone,
    build_local_model,
    dual_cone,
    ghost_rank,
    monodromy_cone,
    monoid_generators,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMonodromyRep",
    "IntMatrix",
    "LocalModelSpec",
    "Presentation",
    "RationalCone",
    "build_action",
    "build_local_model",
    "builtin_quartic_k3",
    "classify",
    "compose",
    "dual_cone",
    "focus_focus_shear",
    "ghost_rank",
    "gf2_solve",
    "h1_theta",
    "livne_moishezon_rep",
    "mat_mul",
    "monodromy_cone",
    "monoid_generators",
    "orbits",
    "sphere_presentation",
    "theta_shift",
    "unimodular_inverse",
    "validate_balancing",
    "verify",
]
