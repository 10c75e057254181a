"""hyperinv: contact-invariant classification and equivalence testing for
linear hyperbolic equations u_tx = T*u_t + X*u_x + U*u."""

from . import expr
from .equations import (
    HyperbolicEquation,
    equation_from_json,
    equation_to_json,
    gauge_transform,
    make_equation,
    reparametrize,
    swap_variables,
)
from .invariants import (
    InvariantFrame,
    commutator_residual,
    derived_invariant,
    ibragimov_relations,
    invariant_derivative,
    jmws_relations,
    laplace_invariants,
    ovsiannikov_invariants,
    subclass_invariants,
    syzygy_residual,
)
from .classify import ClassificationReport, Subclass, canonical_form, classify
from .manifold import (
    ClassifyingManifold,
    EquivalenceVerdict,
    build_manifold,
    decide_equivalence,
    overlap_residual,
)
from .cartan import cartan_test_identity, degree_of_indeterminacy, reduced_characters

__version__ = "0.1.0"

__all__ = [
    "expr",
    "HyperbolicEquation",
    "make_equation",
    "gauge_transform",
    "reparametrize",
    "swap_variables",
    "equation_from_json",
    "equation_to_json",
    "InvariantFrame",
    "laplace_invariants",
    "ovsiannikov_invariants",
    "subclass_invariants",
    "invariant_derivative",
    "derived_invariant",
    "commutator_residual",
    "syzygy_residual",
    "jmws_relations",
    "ibragimov_relations",
    "Subclass",
    "ClassificationReport",
    "classify",
    "canonical_form",
    "ClassifyingManifold",
    "EquivalenceVerdict",
    "build_manifold",
    "overlap_residual",
    "decide_equivalence",
    "reduced_characters",
    "degree_of_indeterminacy",
    "cartan_test_identity",
]
