"""Exact cocycle calculus for torus duality over finite groups.

Circle values are exact rationals mod 1; cohomology is computed from the
normalized bar complex by Smith normal form.
"""

__version__ = "0.1.0"

from .arith import pair, pair_lift, reduce_mod1, section_lift
from .cohomology import (
    Cochain,
    CohomologyGroup,
    UnipotentModule,
    bimodule,
    character_module,
    coboundary,
    cohomology_group,
    is_cocycle,
    schur_multiplier,
    solve_coboundary,
    trivial_module,
)
from .duality import (
    DynCocycle,
    MackeyObstruction,
    conjugate,
    dual_hom,
    dualize,
    is_cohomologous_dyn,
    mackey_vanishes,
    make_dyn,
    tensor,
    validate_dyn,
)
from .errors import InvariantBreach
from .groups import FiniteGroup, TorusHom, bockstein, product_cyclic, symmetric_group, validate_group, validate_hom
from .triples import (
    BiCocycle,
    TopTriple,
    beta_eval,
    connecting_C,
    cup3,
    dyn_to_triple,
    exists_triple,
    l_star,
    lhat_star,
    order_change,
    poincare_pullback,
    sqcup,
    strictify,
    torsor_action,
    triple_difference,
    triple_to_dyn,
    validate_triple,
)

__all__ = [
    "beta_eval",
    "BiCocycle",
    "bimodule",
    "bockstein",
    "character_module",
    "coboundary",
    "Cochain",
    "cohomology_group",
    "CohomologyGroup",
    "conjugate",
    "connecting_C",
    "cup3",
    "dual_hom",
    "dualize",
    "dyn_to_triple",
    "DynCocycle",
    "exists_triple",
    "FiniteGroup",
    "InvariantBreach",
    "is_cocycle",
    "is_cohomologous_dyn",
    "l_star",
    "lhat_star",
    "mackey_vanishes",
    "MackeyObstruction",
    "make_dyn",
    "order_change",
    "pair",
    "pair_lift",
    "poincare_pullback",
    "product_cyclic",
    "reduce_mod1",
    "schur_multiplier",
    "section_lift",
    "solve_coboundary",
    "sqcup",
    "strictify",
    "symmetric_group",
    "tensor",
    "TopTriple",
    "torsor_action",
    "TorusHom",
    "triple_difference",
    "triple_to_dyn",
    "trivial_module",
    "UnipotentModule",
    "validate_dyn",
    "validate_group",
    "validate_hom",
    "validate_triple",
]
