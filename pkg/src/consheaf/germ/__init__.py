"""Polytopal germ laboratory."""
from .compose import IndicatorComplex, compose_chain, compose_germ
from .fourier import ConicSheaf1D, fourier_sato_1d, fourier_sato_germs, inverse_roundtrip_check
from .kernels import (
    ball_kernel,
    geodesic_U,
    geodesic_Z,
    kinf_line_barcode,
    sample_square_point,
    square_expected,
    square_kernel_stalk,
    square_stratum,
    square_W,
    translation_kernel,
)
from .polytope import Ineq, PolyCell, chi_c, interval_cell, rgamma_c
from .poset import hom_global_poset

__all__ = [
    "ConicSheaf1D",
    "IndicatorComplex",
    "Ineq",
    "PolyCell",
    "ball_kernel",
    "chi_c",
    "compose_chain",
    "compose_germ",
    "fourier_sato_1d",
    "fourier_sato_germs",
    "geodesic_U",
    "geodesic_Z",
    "hom_global_poset",
    "interval_cell",
    "inverse_roundtrip_check",
    "kinf_line_barcode",
    "rgamma_c",
    "sample_square_point",
    "square_W",
    "square_expected",
    "square_kernel_stalk",
    "square_stratum",
    "translation_kernel",
]
