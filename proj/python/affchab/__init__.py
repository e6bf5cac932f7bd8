"""Affine Chabauty: bounds and p-adic tools for S-integral points."""

from ._core import (
    AffchabError,
    Invariants,
    Padic,
    affine_points_mod,
    bound_thm61,
    chabauty_condition,
    check_d_transversal,
    count_affine_points,
    cusp_invariants,
    hensel_sqrt,
    integral_points,
    iwasawa_log,
    ker_sigma_rank,
    liu_star_checks,
    normalize_fibre,
    ros_condition,
    run_cli,
    selmer_rank,
)

__all__ = [
    "AffchabError",
    "Invariants",
    "Padic",
    "affine_points_mod",
    "bound_thm61",
    "chabauty_condition",
    "check_d_transversal",
    "count_affine_points",
    "cusp_invariants",
    "hensel_sqrt",
    "integral_points",
    "iwasawa_log",
    "ker_sigma_rank",
    "liu_star_checks",
    "normalize_fibre",
    "ros_condition",
    "run_cli",
    "selmer_rank",
]
