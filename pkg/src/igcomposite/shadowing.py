"""Candidate shadowing distributions: lognormal, gamma, inverse Gaussian, inverse gamma.

CDFs accept scalars or numpy arrays (the fitting objective evaluates them in
bulk). The inverse-gamma family requires shape m > 1 so that the mean exists;
m <= 1 is rejected everywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np
import scipy.special as sc

__all__ = [
    "Lognormal",
    "GammaShadowing",
    "InverseGaussian",
    "InverseGamma",
    "ShadowingModel",
    "cdf",
    "pdf",
    "log_domain_cdf",
    "sample_inverse_gamma",
]

# exp() saturation bounds for float64; used when mapping log-domain abscissae
_EXP_LO, _EXP_HI = -745.0, 709.0


@dataclass(frozen=True)
class Lognormal:
    """ln Y ~ Normal(mu, sigma^2)."""

    mu: float
    sigma: float

    def __post_init__(self):
        if not self.sigma > 0:
            raise ValueError(f"Lognormal: sigma must be > 0, got {self.sigma}")


@dataclass(frozen=True)
class GammaShadowing:
    """Gamma with shape k and mean omega."""

    k: float
    omega: float

    def __post_init__(self):
        if not self.k > 0:
            raise ValueError(f"GammaShadowing: k must be > 0, got {self.k}")
        if not self.omega > 0:
            raise ValueError(f"GammaShadowing: omega must be > 0, got {self.omega}")


@dataclass(frozen=True)
class InverseGaussian:
    """Inverse Gaussian with mean mu_i and shape lam."""

    mu_i: float
    lam: float

    def __post_init__(self):
        if not self.mu_i > 0:
            raise ValueError(f"InverseGaussian: mu_i must be > 0, got {self.mu_i}")
        if not self.lam > 0:
            raise ValueError(f"InverseGaussian: lam must be > 0, got {self.lam}")


@dataclass(frozen=True)
class InverseGamma:
    """Inverse gamma with shape m > 1 and mean omega_i."""

    m: float
    omega_i: float

    def __post_init__(self):
        if not self.m > 1:
            raise ValueError(f"InverseGamma: m must be > 1, got {self.m}")
        if not self.omega_i > 0:
            raise ValueError(f"InverseGamma: omega_i must be > 0, got {self.omega_i}")


ShadowingModel = Union[Lognormal, GammaShadowing, InverseGaussian, InverseGamma]


def _as_positive(y, name: str):
    arr = np.asarray(y, dtype=float)
    if np.any(arr <= 0):
        raise ValueError(f"{name}: support is y > 0")
    return arr


def _maybe_scalar(out: np.ndarray, y) -> "float | np.ndarray":
    return float(out) if np.isscalar(y) or np.ndim(y) == 0 else out


def cdf(model: ShadowingModel, y):
    """Model CDF at y > 0; vectorized over y."""
    arr = _as_positive(y, "shadowing.cdf")
    if isinstance(model, Lognormal):
        out = 0.5 + 0.5 * sc.erf((np.log(arr) - model.mu) / np.sqrt(2.0 * model.sigma**2))
    elif isinstance(model, GammaShadowing):
        out = sc.gammainc(model.k, model.k * arr / model.omega)
    elif isinstance(model, InverseGaussian):
        # second term assembled in log space: exp(2 lam/mu) overflows long
        # before the Gaussian tail factor stops cancelling it
        root = np.sqrt(model.lam / arr)
        ratio = arr / model.mu_i
        out = sc.ndtr(root * (ratio - 1.0)) + np.exp(
            2.0 * model.lam / model.mu_i + sc.log_ndtr(-root * (ratio + 1.0))
        )
    elif isinstance(model, InverseGamma):
        with np.errstate(over="ignore"):
            out = sc.gammaincc(model.m, model.omega_i * (model.m - 1.0) / arr)
    else:
        raise TypeError(f"unsupported shadowing model {type(model).__name__}")
    return _maybe_scalar(np.clip(out, 0.0, 1.0), y)


def pdf(model: ShadowingModel, y):
    """Model PDF at y > 0; vectorized over y."""
    arr = _as_positive(y, "shadowing.pdf")
    if isinstance(model, Lognormal):
        z = (np.log(arr) - model.mu) / model.sigma
        out = np.exp(-0.5 * z * z) / (arr * model.sigma * np.sqrt(2.0 * np.pi))
    elif isinstance(model, GammaShadowing):
        k, om = model.k, model.omega
        out = np.exp(
            k * np.log(k / om) + (k - 1.0) * np.log(arr) - k * arr / om - sc.gammaln(k)
        )
    elif isinstance(model, InverseGaussian):
        mu, lam = model.mu_i, model.lam
        out = np.sqrt(lam / (2.0 * np.pi * arr**3)) * np.exp(
            -lam * (arr - mu) ** 2 / (2.0 * mu**2 * arr)
        )
    elif isinstance(model, InverseGamma):
        m, om = model.m, model.omega_i
        rate = om * (m - 1.0)
        out = np.exp(
            m * np.log(rate) - sc.gammaln(m) - (m + 1.0) * np.log(arr) - rate / arr
        )
    else:
        raise TypeError(f"unsupported shadowing model {type(model).__name__}")
    return _maybe_scalar(out, y)


def log_domain_cdf(model: ShadowingModel, t):
    """Theoretical CDF against natural-log-scale abscissae: cdf(model, e^t)."""
    arr = np.asarray(t, dtype=float)
    y = np.exp(np.clip(arr, _EXP_LO, _EXP_HI))
    return _maybe_scalar(np.asarray(cdf(model, y)), t)


def sample_inverse_gamma(m: float, omega_i: float, count: int, seed: int) -> np.ndarray:
    """Draw inverse-gamma samples as reciprocals of gamma draws.

    1/Y is gamma distributed with shape m and rate omega_i (m - 1), so the
    returned samples have mean omega_i. Deterministic per (seed, count).
    """
    if not m > 1:
        raise ValueError(f"sample_inverse_gamma: m must be > 1, got {m}")
    if not omega_i > 0:
        raise ValueError(f"sample_inverse_gamma: omega_i must be > 0, got {omega_i}")
    if count < 1:
        raise ValueError(f"sample_inverse_gamma: count must be >= 1, got {count}")
    rng = np.random.Generator(np.random.Philox(np.random.SeedSequence(seed)))
    g = rng.gamma(shape=m, scale=1.0 / (omega_i * (m - 1.0)), size=count)
    return 1.0 / g
