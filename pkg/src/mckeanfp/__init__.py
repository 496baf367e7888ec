"""Spectral toolkit for singular Fokker-Planck equations with rough drift.

Builds distributional drifts of prescribed negative regularity, solves the
associated nonlinear Fokker-Planck equation by mild-formulation Picard
iteration on a periodic grid, and validates the law of the corresponding
stochastic dynamics with particle simulations.
"""

from .fields import Grid, SpectralField, TimeGrid, constant_field, fourier_mode, wrapped_gaussian
from .spectral import (
    divergence,
    duhamel_step,
    gradient,
    heat_semigroup,
    laplacian,
    pointwise_product,
    semigroup_div_commute_check,
)
from .besov import BesovProfile, BlockDecomposition, besov_norm, decompose, holder_norm
from .drift import Drift, MollifiedDrift, mollification_rate, mollify, synthesize

__version__ = "0.1.0"

__all__ = [
    "Grid",
    "TimeGrid",
    "SpectralField",
    "constant_field",
    "fourier_mode",
    "wrapped_gaussian",
    "heat_semigroup",
    "gradient",
    "divergence",
    "laplacian",
    "pointwise_product",
    "duhamel_step",
    "semigroup_div_commute_check",
    "besov_norm",
    "decompose",
    "holder_norm",
    "BesovProfile",
    "BlockDecomposition",
    "Drift",
    "MollifiedDrift",
    "synthesize",
    "mollify",
    "mollification_rate",
]
