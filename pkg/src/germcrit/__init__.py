"""Exact critical loci, discriminants and the higher critical tower of polynomial map-germs."""

from .classify import SingTypeReport, classify, is_finite_restriction
from .crit import (
    CritLevel,
    CritResult,
    CritTower,
    CoveringReport,
    crit_via_covering,
    critical_locus,
    critical_module,
    critical_tower,
    discriminant,
    reduce_ideal,
)
from .gb import LocalIdeal, ideal_equal, local_quotient_dimension
from .germ import GermMap, image_ideal, is_dominant, log_derivations, relative_differentials_fitting, validate
from .jetlab import (
    JetAutomorphism,
    JetContext,
    JetDerivation,
    determinacy_probe,
    exp_derivation,
    lift_along_chain,
    lift_automorphism,
    log_automorphism,
    lr_solver,
    right_solver,
)
from .ring import GF, QQ, Poly, PolyRing

__all__ = [
    "SingTypeReport",
    "classify",
    "is_finite_restriction",
    "CritLevel",
    "CritResult",
    "CritTower",
    "CoveringReport",
    "crit_via_covering",
    "critical_locus",
    "critical_module",
    "critical_tower",
    "discriminant",
    "reduce_ideal",
    "LocalIdeal",
    "ideal_equal",
    "local_quotient_dimension",
    "GermMap",
    "image_ideal",
    "is_dominant",
    "log_derivations",
    "relative_differentials_fitting",
    "validate",
    "JetAutomorphism",
    "JetContext",
    "JetDerivation",
    "determinacy_probe",
    "exp_derivation",
    "lift_along_chain",
    "lift_automorphism",
    "log_automorphism",
    "lr_solver",
    "right_solver",
    "GF",
    "QQ",
    "Poly",
    "PolyRing",
]

__version__ = "0.1.0"
