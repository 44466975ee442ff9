"""Cosine, sine and Laplace companions of the transform oracle.

All three are numeric only: the cosine/sine kernels integrate over the whole
line, the Laplace kernel over the nonnegative half-line.  The relation
checks tie them back to the main transform for even, odd and causal
signals respectively.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import CausalityViolation, NoConvergence, ParityViolation
from .quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    QuadratureResult,
    finite_integral,
    improper_integral,
    numeric_ft,
)
from .signals import DecayBound, Parity, SignalExpr
from .spectrum import PropertyReport, scaled_residual

__all__ = [
    "LaplacePoint",
    "numeric_cosine_ft",
    "numeric_sine_ft",
    "numeric_laplace",
    "laplace_truncated",
    "check_even_relation",
    "check_odd_relation",
    "check_laplace_relation",
]

_INF = float("inf")


@dataclass(frozen=True)
class LaplacePoint:
    """A point s in the complex transform plane."""

    s: complex

    def __post_init__(self):
        object.__setattr__(self, "s", complex(self.s))

    @property
    def re_zero(self) -> bool:
        return self.s.real == 0.0


def _cap(omega: float):
    return math.pi / abs(omega) if omega != 0.0 else None


def numeric_cosine_ft(f: SignalExpr, omega: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadratureResult:
    """Quadrature of f(t)*cos(omega*t) over the whole line."""
    w = float(omega)
    meta = f.meta
    return improper_integral(
        lambda t: f._eval(t) * np.cos(w * t),
        meta.breakpoints,
        cfg,
        support=meta.support,
        decay=meta.decay,
        abs_envelope=lambda t: np.abs(f._eval(t)),
        max_panel_width=_cap(w),
    )


def numeric_sine_ft(f: SignalExpr, omega: float, cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadratureResult:
    """Quadrature of f(t)*sin(omega*t) over the whole line."""
    w = float(omega)
    meta = f.meta
    return improper_integral(
        lambda t: f._eval(t) * np.sin(w * t),
        meta.breakpoints,
        cfg,
        support=meta.support,
        decay=meta.decay,
        abs_envelope=lambda t: np.abs(f._eval(t)),
        max_panel_width=_cap(w),
    )


def _laplace_setup(f: SignalExpr, s: complex):
    meta = f.meta
    lo = max(0.0, meta.support[0])
    hi = meta.support[1]
    bps = tuple(b for b in meta.breakpoints if b > lo)
    decay = None
    if math.isinf(hi) and meta.decay is not None:
        rate = meta.decay.rate + s.real
        if rate <= 0:
            raise NoConvergence(
                f"Re s = {s.real} is too small: the integrand decays at rate "
                f"{meta.decay.rate}, so convergence needs Re s > {-meta.decay.rate}"
            )
        decay = DecayBound(rate, meta.decay.amplitude, max(0.0, meta.decay.beyond))
    return lo, hi, bps, decay


def numeric_laplace(
    f: SignalExpr,
    s: Union[complex, LaplacePoint],
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> QuadratureResult:
    """Quadrature of f(t)*exp(-s*t) over t >= 0.

    The half-line domain is intrinsic: anything before t = 0 is ignored, so
    for causal signals this is the full transform.
    """
    sv = s.s if isinstance(s, LaplacePoint) else complex(s)
    lo, hi, bps, decay = _laplace_setup(f, sv)

    def integrand(t: np.ndarray) -> np.ndarray:
        return f._eval(t) * np.exp(-sv * t)

    return improper_integral(
        integrand,
        bps,
        cfg,
        support=(lo, hi),
        decay=decay,
        abs_envelope=lambda t: np.abs(f._eval(t)) * np.exp(-sv.real * t),
        max_panel_width=_cap(sv.imag),
    )


def laplace_truncated(
    f: SignalExpr,
    s: Union[complex, LaplacePoint],
    T: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> complex:
    """Proper integral of f(t)*exp(-s*t) over [0, T].

    Companion of :func:`numeric_laplace` for checking that the half-line
    value is the limit of truncated integrals.
    """
    sv = s.s if isinstance(s, LaplacePoint) else complex(s)
    meta = f.meta
    hi = min(T, meta.support[1])
    lo = max(0.0, meta.support[0])
    if hi <= lo:
        return 0j
    bps = tuple(b for b in meta.breakpoints if lo < b < hi)
    res = finite_integral(
        lambda t: f._eval(t) * np.exp(-sv * t),
        lo,
        hi,
        bps,
        cfg,
        max_panel_width=_cap(sv.imag),
    )
    return res.value


# ---------------------------------------------------------------------------
# relation checks


def check_even_relation(
    f: SignalExpr,
    grid: Sequence[float],
    tol: float = 1e-6,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> PropertyReport:
    """For even signals the transform equals its cosine companion."""
    if f.meta.parity is not Parity.EVEN:
        raise ParityViolation(f"{f} is not even (parity={f.meta.parity.value})")
    residual = 0.0
    for w in grid:
        lhs = numeric_ft(f, w, cfg).value
        rhs = numeric_cosine_ft(f, w, cfg).value
        residual = max(residual, scaled_residual(lhs, rhs))
    return PropertyReport.from_residual(
        "even-signal cosine identity", str(f), grid, residual, tol
    )


def check_odd_relation(
    f: SignalExpr,
    grid: Sequence[float],
    tol: float = 1e-6,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> PropertyReport:
    """For odd signals the transform equals -i times its sine companion."""
    if f.meta.parity is not Parity.ODD:
        raise ParityViolation(f"{f} is not odd (parity={f.meta.parity.value})")
    residual = 0.0
    for w in grid:
        lhs = numeric_ft(f, w, cfg).value
        rhs = -1j * numeric_sine_ft(f, w, cfg).value
        residual = max(residual, scaled_residual(lhs, rhs))
    return PropertyReport.from_residual(
        "odd-signal sine identity", str(f), grid, residual, tol
    )


def check_laplace_relation(
    f: SignalExpr,
    grid: Sequence[float],
    tol: float = 1e-6,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> PropertyReport:
    """For causal signals the transform at w equals the Laplace value at s = i*w."""
    if not f.meta.causal:
        raise CausalityViolation(f"{f} is not causal")
    residual = 0.0
    for w in grid:
        lhs = numeric_ft(f, w, cfg).value
        rhs = numeric_laplace(f, LaplacePoint(1j * w), cfg).value
        residual = max(residual, scaled_residual(lhs, rhs))
    return PropertyReport.from_residual(
        "causal-signal boundary identity", str(f), grid, residual, tol
    )
