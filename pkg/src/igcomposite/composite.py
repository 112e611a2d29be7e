"""Inverse-gamma composite fading models.

A composite model multiplies a normalized inverse-gamma shadowing variable
(shape m > 1, unit mean) with a normalized baseline fading power and a mean
power w_bar. PDF/CDF/outage evaluate through three interchangeable routes:

* the general transform route, which feeds the baseline's generalized MGF
  into the shadowing average (CDF as an infinite series);
* the integer-shape route, where the CDF collapses to an m-term sum;
* the mixture route, where a gamma-mixture baseline turns the composite
  into a mixture of Fisher-Snedecor F distributions.

A slow direct-averaging quadrature route is kept as a numeric oracle.
"""

from __future__ import annotations

import dataclasses
import enum
import math

import numpy as np
import scipy.special as sc

from . import fading
from .numerics import DEFAULT_TOL, Tolerance, integrate_semi_infinite, sum_series

__all__ = [
    "CompositeModel",
    "FDistParams",
    "FTerm",
    "FMixture",
    "Strategy",
    "f_pdf",
    "f_cdf",
    "composite_pdf",
    "composite_cdf",
    "amplitude_pdf",
    "amplitude_cdf",
    "outage",
    "outage_asymptotic",
    "mixture_of_f",
]

_INTEGER_EPS = 1e-9


class Strategy(enum.Enum):
    AUTO = "auto"
    GMGF_GENERAL = "gmgf-general"
    GMGF_INTEGER = "gmgf-integer"
    MIXTURE = "mixture"
    NUMERIC_ORACLE = "numeric-oracle"


_frozen = dataclasses.dataclass(frozen=True)


@_frozen
class CompositeModel:
    """Shadowing shape m > 1, mean power w_bar, normalized baseline."""

    m: float
    w_bar: float
    baseline: fading.FadingModel

    def __post_init__(self):
        if not self.m > 1:
            raise ValueError(f"CompositeModel: m must be > 1, got {self.m}")
        if not self.w_bar > 0:
            raise ValueError(f"CompositeModel: w_bar must be > 0, got {self.w_bar}")
        # mean power lives in w_bar only; the baseline is renormalized
        object.__setattr__(
            self, "baseline", dataclasses.replace(self.baseline, omega_x=1.0)
        )

    @property
    def integer_m(self) -> bool:
        return abs(self.m - round(self.m)) < _INTEGER_EPS


@_frozen
class FDistParams:
    """Fisher-Snedecor F distribution: shadowing shape m, fading shape k, mean omega."""

    m: float
    k: float
    omega: float

    def __post_init__(self):
        if not self.m > 1:
            raise ValueError(f"FDistParams: m must be > 1, got {self.m}")
        if not self.k > 0:
            raise ValueError(f"FDistParams: k must be > 0, got {self.k}")
        if not self.omega > 0:
            raise ValueError(f"FDistParams: omega must be > 0, got {self.omega}")


@_frozen
class FTerm:
    weight: float
    params: FDistParams


@_frozen
class FMixture:
    terms: tuple[FTerm, ...]
    prefactor: float
    truncation_error_bound: float


def _as_positive(u, name: str) -> np.ndarray:
    arr = np.asarray(u, dtype=float)
    if np.any(arr <= 0):
        raise ValueError(f"{name}: support is u > 0")
    return arr


def _maybe_scalar(out: np.ndarray, u):
    return float(out) if np.ndim(u) == 0 else out


def f_pdf(params: FDistParams, t):
    """F-distribution PDF; vectorized over t > 0."""
    arr = _as_positive(t, "f_pdf")
    m, k, om = params.m, params.k, params.omega
    out = np.exp(
        m * math.log(m - 1.0)
        + k * math.log(k)
        + m * math.log(om)
        - sc.betaln(m, k)
        + (k - 1.0) * np.log(arr)
        - (m + k) * np.log((m - 1.0) * om + k * arr)
    )
    return _maybe_scalar(out, t)


def f_cdf(params: FDistParams, t):
    """F-distribution CDF; vectorized over t > 0.

    Direct hypergeometric form, with the regularized-incomplete-beta
    identity as a fallback where the t^k * 2F1 product leaves float range.
    """
    arr = _as_positive(t, "f_cdf")
    m, k, om = params.m, params.k, params.omega
    ln_pre = (
        (k - 1.0) * math.log(k)
        + k * np.log(arr)
        - sc.betaln(m, k)
        - k * math.log(m - 1.0)
        - k * math.log(om)
    )
    with np.errstate(over="ignore", invalid="ignore"):
        hyp = sc.hyp2f1(k, k + m, k + 1.0, -k * arr / ((m - 1.0) * om))
        out = np.exp(ln_pre) * hyp
    bad = ~np.isfinite(out) | (ln_pre > 650.0) | (hyp <= 0.0)
    if np.any(bad):
        x = k * arr / (k * arr + (m - 1.0) * om)
        out = np.where(bad, sc.betainc(k, m, x), out)
    return _maybe_scalar(np.clip(out, 0.0, 1.0), t)


def mixture_of_f(model: CompositeModel, tol: Tolerance = DEFAULT_TOL) -> FMixture:
    """Map the baseline's gamma mixture onto F components (means scale by w_bar)."""
    gm = fading.gamma_mixture(model.baseline, tol)
    terms = tuple(
        FTerm(t.weight, FDistParams(model.m, t.shape, t.omega * model.w_bar))
        for t in gm.terms
    )
    return FMixture(terms, gm.prefactor, gm.truncation_error_bound)


def _resolve(model: CompositeModel, strategy: Strategy) -> Strategy:
    if isinstance(strategy, str):
        strategy = Strategy(strategy)
    mixture_ok = isinstance(model.baseline, fading.MIXTURE_MODELS)
    if strategy is Strategy.AUTO:
        if mixture_ok:
            return Strategy.MIXTURE
        if model.integer_m:
            return Strategy.GMGF_INTEGER
        return Strategy.GMGF_GENERAL
    if strategy is Strategy.MIXTURE and not mixture_ok:
        raise ValueError(
            f"mixture strategy unavailable for baseline "
            f"{type(model.baseline).__name__}"
        )
    if strategy is Strategy.GMGF_INTEGER and not model.integer_m:
        raise ValueError(f"gmgf-integer strategy requires integer m, got {model.m}")
    return strategy


def _inv_shadow_pdf(m: float, t: np.ndarray) -> np.ndarray:
    # pdf of 1/xi when xi is unit-mean inverse gamma: gamma(m, rate m-1)
    return np.exp(
        m * math.log(m - 1.0)
        + (m - 1.0) * np.log(t)
        - (m - 1.0) * t
        - sc.gammaln(m)
    )


def composite_pdf(
    model: CompositeModel,
    u,
    strategy: Strategy = Strategy.AUTO,
    tol: Tolerance = DEFAULT_TOL,
):
    """Composite power PDF at u > 0; vectorized over u."""
    arr = _as_positive(u, "composite_pdf")
    strat = _resolve(model, strategy)
    if strat is Strategy.MIXTURE:
        mix = mixture_of_f(model, tol)
        out = mix.prefactor * sum(
            t.weight * np.asarray(f_pdf(t.params, arr)) for t in mix.terms
        )
        return _maybe_scalar(np.asarray(out), u)
    if strat is Strategy.NUMERIC_ORACLE:
        flat = np.atleast_1d(arr)
        out = np.array([_pdf_numeric(model, x, tol) for x in flat]).reshape(arr.shape)
        return _maybe_scalar(out, u)
    m, wb = model.m, model.w_bar
    m_eval = float(round(m)) if strat is Strategy.GMGF_INTEGER else m
    base = m_eval * math.log(wb * (m_eval - 1.0)) - sc.gammaln(m_eval)
    flat = np.atleast_1d(arr)
    vals = np.empty_like(flat)
    for i, x in enumerate(flat):
        if x < 1e-300:  # s would overflow; density is far below float range
            vals[i] = 0.0
            continue
        s = (1.0 - m_eval) * wb / x
        ln_f = base - (m_eval + 1.0) * math.log(x) + fading.gmgf_log(
            model.baseline, m_eval, s, tol
        )
        vals[i] = math.exp(ln_f) if ln_f > -745.0 else 0.0
    return _maybe_scalar(vals.reshape(arr.shape), u)


def _pdf_numeric(model: CompositeModel, u: float, tol: Tolerance) -> float:
    wb, m = model.w_bar, model.m

    def integrand(t: np.ndarray) -> np.ndarray:
        t = np.maximum(t, 1e-300)
        return (t / wb) * fading.pdf(model.baseline, np.maximum(u * t / wb, 1e-300)) \
            * _inv_shadow_pdf(m, t)

    val, _ = integrate_semi_infinite(integrand, tol)
    return val


def composite_cdf(
    model: CompositeModel,
    u,
    strategy: Strategy = Strategy.AUTO,
    tol: Tolerance = DEFAULT_TOL,
):
    """Composite power CDF at u > 0; vectorized over u."""
    arr = _as_positive(u, "composite_cdf")
    strat = _resolve(model, strategy)
    if strat is Strategy.MIXTURE:
        mix = mixture_of_f(model, tol)
        out = mix.prefactor * sum(
            t.weight * np.asarray(f_cdf(t.params, arr)) for t in mix.terms
        )
        return _maybe_scalar(np.clip(np.asarray(out), 0.0, 1.0), u)
    flat = np.atleast_1d(arr)
    if strat is Strategy.GMGF_INTEGER:
        vals = np.array([_cdf_integer(model, x, tol) for x in flat])
    elif strat is Strategy.GMGF_GENERAL:
        vals = np.array([_cdf_series(model, x, tol) for x in flat])
    else:
        vals = np.array([_cdf_numeric(model, x, tol) for x in flat])
    return _maybe_scalar(np.clip(vals.reshape(arr.shape), 0.0, 1.0), u)


def _cdf_series(model: CompositeModel, u: float, tol: Tolerance) -> float:
    # F(u) = 1 - sum_n [(m-1) w_bar / u]^(m+n) / Gamma(m+n+1) * phi^(m+n)(s).
    # Terms are positive and single-peaked in n (each model's GMGF decays
    # like (c - s)^-(q+1), making the term ratio |s|/(c+|s|) * (1+o(1)) < 1
    # past the peak), so the 3-quiet-terms stop rule cannot fire early.
    m, wb = model.m, model.w_bar
    if u < 1e-300:
        return 0.0
    s = (1.0 - m) * wb / u
    ln_r = math.log((m - 1.0) * wb / u)

    def term(n: int) -> float:
        q = m + n
        ln_t = q * ln_r - sc.gammaln(q + 1.0) + fading.gmgf_log(model.baseline, q, s, tol)
        return math.exp(ln_t) if ln_t > -745.0 else 0.0

    total, _ = sum_series(term, tol)
    return 1.0 - total


def _cdf_integer(model: CompositeModel, u: float, tol: Tolerance) -> float:
    m_int = round(model.m)
    wb = model.w_bar
    if u < 1e-300:
        return 0.0
    s = (1.0 - m_int) * wb / u
    ln_r = math.log((m_int - 1.0) * wb / u) if m_int > 1 else -math.inf
    total = 0.0
    for n in range(m_int):
        ln_t = n * ln_r - sc.gammaln(n + 1.0) + fading.gmgf_log(
            model.baseline, float(n), s, tol
        )
        total += math.exp(ln_t) if ln_t > -745.0 else 0.0
    return total


def _cdf_numeric(model: CompositeModel, u: float, tol: Tolerance) -> float:
    # direct averaging: F_W(u) equals the reciprocal-shadowing gamma CDF
    # complement integrated against the baseline pdf
    wb, m = model.w_bar, model.m

    def integrand(y: np.ndarray) -> np.ndarray:
        y = np.maximum(y, 1e-300)
        return sc.gammaincc(m, (m - 1.0) * wb * y / u) * fading.pdf(model.baseline, y)

    val, _ = integrate_semi_infinite(integrand, tol)
    return val


def amplitude_pdf(model, r, strategy=Strategy.AUTO, tol=DEFAULT_TOL):
    """PDF of the received amplitude R = sqrt(W): 2 r f_W(r^2)."""
    arr = _as_positive(r, "amplitude_pdf")
    out = 2.0 * arr * np.asarray(composite_pdf(model, arr * arr, strategy, tol))
    return _maybe_scalar(out, r)


def amplitude_cdf(model, r, strategy=Strategy.AUTO, tol=DEFAULT_TOL):
    """CDF of the received amplitude R = sqrt(W): F_W(r^2)."""
    arr = _as_positive(r, "amplitude_cdf")
    out = np.asarray(composite_cdf(model, arr * arr, strategy, tol))
    return _maybe_scalar(out, r)


def outage(
    model: CompositeModel,
    gamma_th: float,
    gamma_bar: float,
    strategy: Strategy = Strategy.AUTO,
    tol: Tolerance = DEFAULT_TOL,
):
    """Outage probability P(SNR < gamma_th) = F_W(w_bar gamma_th / gamma_bar)."""
    if not gamma_th > 0:
        raise ValueError(f"outage: gamma_th must be > 0, got {gamma_th}")
    if not gamma_bar > 0:
        raise ValueError(f"outage: gamma_bar must be > 0, got {gamma_bar}")
    return composite_cdf(model, model.w_bar * gamma_th / gamma_bar, strategy, tol)


def outage_asymptotic(model: CompositeModel, gamma_th: float, gamma_bar: float) -> float:
    """High-mean-SNR outage power law; slope beta+1 is the baseline's
    diversity order, shadowing only scales the intercept."""
    if not gamma_th > 0:
        raise ValueError(f"outage_asymptotic: gamma_th must be > 0, got {gamma_th}")
    if not gamma_bar > 0:
        raise ValueError(f"outage_asymptotic: gamma_bar must be > 0, got {gamma_bar}")
    tp = fading.tail_params(model.baseline)
    m = model.m
    scale = math.exp(
        sc.gammaln(tp.beta + m + 1.0)
        - sc.gammaln(m)
        - (tp.beta + 1.0) * math.log(m - 1.0)
    )
    return scale * tp.alpha / (tp.beta + 1.0) * (gamma_th / gamma_bar) ** (tp.beta + 1.0)
