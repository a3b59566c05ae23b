"""Low-rank, graph-smooth similarity kernel estimation."""

from graphsim._core import (
    bernstein_hilbert_rhs,
    bernstein_operator_rhs,
    choose_epsilon,
    coherence_profile,
    design_stat,
    error_l2,
    fit,
    klt_rhs,
    laplacian,
    make_target,
    sample_dataset,
    schatten_norm,
    smoothing_operator,
    spectral_soft_threshold,
    sym_eig,
    t_nm,
)

__all__ = [
    "bernstein_hilbert_rhs",
    "bernstein_operator_rhs",
    "choose_epsilon",
    "coherence_profile",
    "design_stat",
    "error_l2",
    "fit",
    "klt_rhs",
    "laplacian",
    "make_target",
    "sample_dataset",
    "schatten_norm",
    "smoothing_operator",
    "spectral_soft_threshold",
    "sym_eig",
    "t_nm",
]
