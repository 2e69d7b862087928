"""Exact divisor-intersection calculus over truncated graded rings."""

from divint._core import (
    Divisor,
    Poly,
    Ring,
    StructuralError,
    divisor_sum,
    intersection_rank,
    laurent_coeffs,
    obstruction_ideal,
    phi_determinant,
    phi_map,
    pkd_basis_count,
    pkd_invariant_dims,
    pkd_relators,
    poly,
    resultant,
    run_job,
    thom_porteous_minor,
    universal_divisor,
    verify_int_basis,
    verify_phi_iso,
    verify_pi_split_mono,
    verify_ps_identity,
)

__all__ = [
    "Divisor",
    "Poly",
    "Ring",
    "StructuralError",
    "divisor_sum",
    "intersection_rank",
    "laurent_coeffs",
    "obstruction_ideal",
    "phi_determinant",
    "phi_map",
    "pkd_basis_count",
    "pkd_invariant_dims",
    "pkd_relators",
    "poly",
    "resultant",
    "run_job",
    "thom_porteous_minor",
    "universal_divisor",
    "verify_int_basis",
    "verify_phi_iso",
    "verify_pi_split_mono",
    "verify_ps_identity",
]
