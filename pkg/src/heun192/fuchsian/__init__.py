"""Asymmetric Fuchsian equations, the D_n action on them, and the tables of
local solutions derived from it."""
from .equations import (
    AsymEquation,
    HeunParams,
    HypergeomParams,
    NotAsymShape,
    NotHeunShape,
    RawEquation,
    extract_heun_params,
    extract_hypergeom_params,
    gauge,
    heun_equation,
    hypergeometric_equation,
    indicial_roots_sum_product,
    pullback,
    read_asym,
    residue,
)
from .solutions import (
    A_HOMOGRAPHY,
    FIRST,
    SECOND,
    LocalSolution,
    class_of,
    class_order,
    classify,
    conjugation_identity_check,
    conjugation_identity_steps,
    generate_all,
    group_classes,
    homography_image,
    homomorphism_check,
    local_solution,
    pair_partner,
    pairing_stats,
    prefactor_bases,
    row_record,
    twisted_composition_check,
)
from .transform import Transform, apply_element, compose_transforms, predict, prefactor_from_shifts

__all__ = [name for name in dir() if not name.startswith("_")]
