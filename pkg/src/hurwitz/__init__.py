"""Branched coverings of the sphere, their boundary degenerations, and the Lyashko-Looijenga map."""
from .boundary import BoundaryClass, CriticalFiberDatum, SingularPointDatum, degenerate, perturb_general, perturb_simple
from .covering import BranchPoint, Constellation, enumerate_coverings, hurwitz_number
from .perm import Permutation, PermTuple
from .polyalg import GaussianRational, HomogeneousPolynomial, MoebiusTransform, RationalMapClass, SpherePoint, ll_hom
from .space import BranchDivisor, DecoratedClass, DiskGrouping, Verdict, ll, ll_fiber, nu, nu_inverse, q

__version__ = "0.1.0"

__all__ = [
    "BoundaryClass", "BranchDivisor", "BranchPoint", "Constellation", "CriticalFiberDatum", "DecoratedClass",
    "DiskGrouping", "GaussianRational", "HomogeneousPolynomial", "MoebiusTransform", "PermTuple", "Permutation",
    "RationalMapClass", "SingularPointDatum", "SpherePoint", "Verdict", "degenerate", "enumerate_coverings",
    "hurwitz_number", "ll", "ll_fiber", "ll_hom", "nu", "nu_inverse", "perturb_general", "perturb_simple", "q",
]
