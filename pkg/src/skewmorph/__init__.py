"""Skew-morphisms of finite groups: invariants, exhaustive enumeration and
the classification of smooth skew-morphisms of dihedral groups."""

from .groups import (
    BoundExceeded,
    FiniteGroup,
    GroupError,
    GroupMap,
    Subgroup,
    automorphisms,
    cyclic,
    dihedral,
    dihedral_automorphism,
    dihedral_normal_subgroups,
    is_normal,
    make_group,
    quotient,
    subgroup_generated,
)
from .oracle import EnumConfig, enumerate_skew_morphisms, enumerate_with_filter
from .skew import (
    NotSkewMorphism,
    SkewMorphism,
    conjugate,
    core,
    fix,
    is_covering,
    is_invariant,
    is_kernel_preserving,
    is_smooth,
    kernel,
    orbit_pi_subgroup,
    orbits,
    periodicity,
    power,
    quotient_skew,
    sigma,
    smooth_subgroup,
    verify,
)

__version__ = "0.1.0"
