"""Ideal simplicial volume toolkit."""

from ._core import (
    IsvError,
    Triangulation,
    bounds,
    degree_bounds,
    edge_integrand,
    edge_length,
    ell_g,
    estimate_vl,
    internal_edge_lengths,
    lobachevsky,
    regular_config,
    regular_ell_of_theta,
    regular_theta_of_ell,
    regular_volume,
    truncated_volume,
    v3,
    v8,
)

__all__ = [
    "IsvError",
    "Triangulation",
    "bounds",
    "degree_bounds",
    "edge_integrand",
    "edge_length",
    "ell_g",
    "estimate_vl",
    "internal_edge_lengths",
    "lobachevsky",
    "regular_config",
    "regular_ell_of_theta",
    "regular_theta_of_ell",
    "regular_volume",
    "truncated_volume",
    "v3",
    "v8",
]
