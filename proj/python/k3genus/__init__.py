"""Exact partition functions and elliptic genera of toroidal SCFTs, their
Z2 orbifolds, and K3 geometry.

Exact rationals cross the boundary as "p/q" strings; lift them with
fractions.Fraction when arithmetic is needed.
"""

from ._core import (
    K3GenusError,
    check_spectral_flow,
    elliptic_genus_terms,
    eta_series_text,
    geometric_genus_terms,
    k3_elliptic_genus_terms,
    kummer_report_json,
    lattice_sum_terms,
    narain_check_json,
    theta_series_text,
    todd_text,
    twisted_ground_state_count,
    verify_all,
)

__all__ = [
    "K3GenusError",
    "check_spectral_flow",
    "elliptic_genus_terms",
    "eta_series_text",
    "geometric_genus_terms",
    "k3_elliptic_genus_terms",
    "kummer_report_json",
    "lattice_sum_terms",
    "narain_check_json",
    "theta_series_text",
    "todd_text",
    "twisted_ground_state_count",
    "verify_all",
]
