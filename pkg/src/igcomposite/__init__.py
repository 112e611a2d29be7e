"""Inverse-gamma composite fading models: baseline fading statistics,
composite PDF/CDF/outage by interchangeable strategies, Monte Carlo
validation, and Cramer-von Mises shadowing fits."""

from .composite import (
    CompositeModel,
    FDistParams,
    FMixture,
    Strategy,
    amplitude_cdf,
    amplitude_pdf,
    composite_cdf,
    composite_pdf,
    f_cdf,
    f_pdf,
    mixture_of_f,
    outage,
    outage_asymptotic,
)
from .fading import (
    TWDP,
    EtaMu,
    FadingModel,
    GammaMixture,
    Hoyt,
    KappaMu,
    KappaMuShadowed,
    NakagamiM,
    Rayleigh,
    Rician,
    TailParams,
    gamma_mixture,
    gmgf,
    tail_params,
)
from .fitting import FitResult, compare_families, cvm_statistic, db_to_natural_log, fit
from .montecarlo import EmpiricalCdf, compare, empirical_cdf, sample_composite
from .numerics import ConvergenceError, Tolerance
from .shadowing import (
    GammaShadowing,
    InverseGamma,
    InverseGaussian,
    Lognormal,
    ShadowingModel,
    sample_inverse_gamma,
)

__all__ = [
    "CompositeModel", "FDistParams", "FMixture", "Strategy",
    "amplitude_cdf", "amplitude_pdf", "composite_cdf", "composite_pdf",
    "f_cdf", "f_pdf", "mixture_of_f", "outage", "outage_asymptotic",
    "TWDP", "EtaMu", "FadingModel", "GammaMixture", "Hoyt", "KappaMu",
    "KappaMuShadowed", "NakagamiM", "Rayleigh", "Rician", "TailParams",
    "gamma_mixture", "gmgf", "tail_params",
    "FitResult", "compare_families", "cvm_statistic", "db_to_natural_log", "fit",
    "EmpiricalCdf", "compare", "empirical_cdf", "sample_composite",
    "ConvergenceError", "Tolerance",
    "GammaShadowing", "InverseGamma", "InverseGaussian", "Lognormal",
    "ShadowingModel", "sample_inverse_gamma",
]

__version__ = "0.1.0"
