"""Time-domain oracle for frequency responses.

A differential system is recast in controllable companion form, driven with
a sinusoid by a fixed-step classic Runge-Kutta integrator from rest, and the
steady-state window is fit with a single sinusoid.  The measured amplitude
ratio and phase lag are then compared against the rational frequency
response evaluated at the drive frequency.

The companion form folds the input-derivative coefficients into the output
matrix, so no input derivative is ever sampled numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

import numpy as np

from .errors import NotSettled, StepTooLarge, UnstableSystem
from .spectrum import PropertyReport
from .systems import DiffEqSystem, RationalResponse, derive_freq_response, eval_freq_response, poles

__all__ = [
    "SimConfig",
    "SteadyStateMeasurement",
    "Trajectory",
    "companion_form",
    "simulate_lti",
    "measure_steady_state",
    "cross_validate",
]

_TAU = 2.0 * math.pi


@dataclass(frozen=True)
class SimConfig:
    step: float = 1e-3
    settle_time: Optional[float] = None  # default: 20 time constants of the slowest pole
    measure_periods: int = 8

    def __post_init__(self):
        if not self.step > 0:
            raise ValueError("step must be positive")
        if self.settle_time is not None and not self.settle_time > 0:
            raise ValueError("settle time must be positive")
        if self.measure_periods < 2:
            raise ValueError("need at least two measurement periods")


@dataclass(frozen=True)
class SteadyStateMeasurement:
    amplitude_ratio: float
    phase_lag: float  # radians, wrapped to (-pi, pi]
    residual: float   # rms non-periodicity relative to the fitted amplitude


@dataclass(frozen=True, eq=False)
class Trajectory:
    times: np.ndarray
    output: np.ndarray


def _wrap_phase(phi: float) -> float:
    w = math.remainder(phi, _TAU)
    if w <= -math.pi:
        w += _TAU
    return w


def companion_form(sys: DiffEqSystem) -> Tuple[np.ndarray, np.ndarray, np.ndarray, float]:
    """Controllable companion matrices (A, B, C, D) of the system."""
    n = sys.order
    lead = sys.out_coeffs[-1]
    a = np.array(sys.out_coeffs, dtype=float) / lead
    b = np.zeros(n + 1)
    b[: len(sys.in_coeffs)] = np.array(sys.in_coeffs, dtype=float) / lead
    D = float(b[n])
    if n == 0:
        return np.zeros((0, 0)), np.zeros(0), np.zeros(0), D
    A = np.zeros((n, n))
    if n > 1:
        A[:-1, 1:] = np.eye(n - 1)
    A[-1, :] = -a[:n]
    B = np.zeros(n)
    B[-1] = 1.0
    C = b[:n] - D * a[:n]
    return A, B, C, D


def _slowest_pole_settle(H: RationalResponse) -> Tuple[float, float]:
    """(settle time, fastest pole magnitude); raises if any pole is unstable."""
    ps = poles(H)
    if not ps.stable:
        raise UnstableSystem(f"poles {ps.roots} are not all in the open left half-plane")
    reals = [abs(r.real) for r, _ in ps.roots]
    mags = [abs(r) for r, _ in ps.roots]
    return 20.0 / min(reals), max(mags)


def simulate_lti(
    sys: DiffEqSystem,
    input_fn: Callable[[float], float],
    t_end: float,
    cfg: SimConfig = SimConfig(),
) -> Trajectory:
    """Zero-initial-condition response sampled at the configured step."""
    A, B, C, D = companion_form(sys)
    n = A.shape[0]
    h = cfg.step
    steps = max(1, int(round(t_end / h)))
    t = np.arange(steps + 1) * h

    if n == 0:
        y = D * np.array([input_fn(tk) for tk in t])
        return Trajectory(times=t, output=y)

    H = derive_freq_response(sys)
    _, fastest = _slowest_pole_settle(H)
    if h * fastest > 0.1:
        raise StepTooLarge(
            f"step {h} too coarse for pole magnitude {fastest:.3g} "
            f"(need h*|pole| <= 0.1)"
        )

    y = np.empty(steps + 1)
    x = np.zeros(n)
    u0 = input_fn(0.0)
    y[0] = C @ x + D * u0
    half = 0.5 * h
    sixth = h / 6.0
    for i in range(steps):
        ti = t[i]
        u1 = input_fn(ti)
        um = input_fn(ti + half)
        u2 = input_fn(ti + h)
        k1 = A @ x + B * u1
        k2 = A @ (x + half * k1) + B * um
        k3 = A @ (x + half * k2) + B * um
        k4 = A @ (x + h * k3) + B * u2
        x = x + sixth * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        y[i + 1] = C @ x + D * u2
    return Trajectory(times=t, output=y)


def measure_steady_state(
    traj: Trajectory,
    omega: float,
    cfg: SimConfig = SimConfig(),
) -> SteadyStateMeasurement:
    """Least-squares sinusoid fit over the last ``measure_periods`` cycles.

    Fits y ~ a*sin(w t) + b*cos(w t) + c; amplitude and phase come from
    (a, b), the constant soaks up any leftover offset.  Raises
    :class:`NotSettled` when the rms misfit exceeds 1% of the amplitude.
    """
    w = float(omega)
    if w == 0:
        raise ValueError("steady-state measurement needs a nonzero drive frequency")
    window = cfg.measure_periods * _TAU / abs(w)
    t_end = traj.times[-1]
    if window > t_end:
        raise NotSettled(
            f"trajectory of length {t_end:.3g} is shorter than the "
            f"{window:.3g} measurement window"
        )
    mask = traj.times >= t_end - window
    t = traj.times[mask]
    y = traj.output[mask]
    design = np.column_stack([np.sin(w * t), np.cos(w * t), np.ones_like(t)])
    coef, *_ = np.linalg.lstsq(design, y, rcond=None)
    a, b, _c = coef
    amplitude = math.hypot(a, b)
    phase = _wrap_phase(math.atan2(b, a))
    misfit = y - design @ coef
    residual = math.sqrt(float(np.mean(misfit**2))) / max(amplitude, 1e-300)
    if residual > 0.01:
        raise NotSettled(
            f"non-periodic residual {residual:.3%} of amplitude; "
            "simulate longer before measuring"
        )
    return SteadyStateMeasurement(amplitude_ratio=amplitude, phase_lag=phase, residual=residual)


def cross_validate(
    sys: DiffEqSystem,
    omegas: Sequence[float],
    tol: float = 0.01,
    cfg: SimConfig = SimConfig(),
) -> PropertyReport:
    """Measured steady-state gain and phase vs the rational response.

    The amplitude budget is ``tol`` (relative); the phase budget is
    ``2*tol`` radians.  The report residual is the worst fraction of either
    budget, scaled so that ``residual <= tol`` means both budgets hold.
    """
    H = derive_freq_response(sys)
    if sys.order >= 1:
        settle, _ = _slowest_pole_settle(H)
    else:
        settle = 0.0
    if cfg.settle_time is not None:
        settle = cfg.settle_time

    residual = 0.0
    for w in omegas:
        w = float(w)
        predicted = eval_freq_response(H, w)
        window = cfg.measure_periods * _TAU / abs(w)
        traj = simulate_lti(sys, lambda t: math.sin(w * t), settle + window, cfg)
        m = measure_steady_state(traj, w, cfg)
        gain = abs(predicted)
        amp_dev = abs(m.amplitude_ratio - gain) / gain if gain > 0 else m.amplitude_ratio
        phase_dev = abs(_wrap_phase(m.phase_lag - math.atan2(predicted.imag, predicted.real)))
        residual = max(residual, amp_dev, 0.5 * phase_dev)
    return PropertyReport.from_residual(
        "steady-state gain and phase vs frequency response",
        str(sys),
        omegas,
        residual,
        tol,
        note="amplitude budget tol, phase budget 2*tol radians",
    )
