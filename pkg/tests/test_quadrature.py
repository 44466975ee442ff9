import math

import numpy as np
import pytest

from fourierkit.errors import ExistenceViolation, NoConvergence
from fourierkit.quadrature import (
    DEFAULT_CONFIG,
    QuadratureConfig,
    abs_integrability_check,
    finite_integral,
    improper_integral,
    numeric_ft,
)
from fourierkit.signals import (
    BilateralExp,
    DampedUnilatSine,
    DecayBound,
    Gaussian,
    Parity,
    RectPulse,
    SignalExpr,
    SignalMeta,
    UnilatNegExp,
)


def test_config_validation():
    with pytest.raises(ValueError):
        QuadratureConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        QuadratureConfig(abs_tol=-1e-9)
    with pytest.raises(ValueError):
        QuadratureConfig(initial_half_width=64.0, max_half_width=32.0)
    with pytest.raises(ValueError):
        QuadratureConfig(max_subdivisions=0)


def test_polynomial_panels_are_essentially_exact():
    # antiderivative of 5t^4 + 2t is t^5 + t^2
    res = finite_integral(lambda t: 5 * t**4 + 2 * t + 0j, -1.0, 2.0)
    assert res.value == pytest.approx((2**5 + 2**2) - (-1 + 1), abs=1e-12)
    assert res.error_estimate <= DEFAULT_CONFIG.target(abs(res.value))


def test_kinked_integrand_split_at_breakpoint():
    res = improper_integral(
        lambda t: np.exp(-np.abs(t)) + 0j,
        [0.0],
        support=(-math.inf, math.inf),
        decay=DecayBound(1.0),
    )
    assert res.value == pytest.approx(2.0, abs=1e-9)
    assert res.tail_bound >= 0
    assert res.error_estimate + res.tail_bound <= DEFAULT_CONFIG.target(abs(res.value))


def test_oscillatory_finite_integral():
    # rect(1) against exp(-i*50*t): analytic value 2*sin(50)/50
    res = finite_integral(
        lambda t: np.exp(-50j * t), -1.0, 1.0, max_panel_width=math.pi / 50
    )
    assert res.value == pytest.approx(2 * math.sin(50) / 50, abs=1e-11)


@pytest.mark.parametrize(
    "f,omega,expected",
    [
        (UnilatNegExp(1.0), 0.0, 1.0 + 0j),
        (RectPulse(1.0), math.pi, 0.0 + 0j),
        (BilateralExp(), 1.0, 1.0 + 0j),
        (Gaussian(), 0.0, math.sqrt(math.pi) + 0j),
    ],
)
def test_numeric_ft_frozen_values(f, omega, expected):
    res = numeric_ft(f, omega)
    assert res.value == pytest.approx(expected, abs=2e-9)
    assert res.error_estimate + res.tail_bound <= DEFAULT_CONFIG.target(abs(res.value))


def test_conjugate_symmetry_of_real_signals(fast_cfg):
    signals = [RectPulse(1.0), UnilatNegExp(1.0), BilateralExp(), DampedUnilatSine(1.0, 2.0)]
    for f in signals:
        for w in (0.3, 1.0, 4.0):
            plus = numeric_ft(f, w, fast_cfg)
            minus = numeric_ft(f, -w, fast_cfg)
            combined = (
                plus.error_estimate + plus.tail_bound
                + minus.error_estimate + minus.tail_bound
            )
            assert abs(minus.value - plus.value.conjugate()) <= combined + 1e-12


def test_monotone_truncation():
    f = BilateralExp()
    small = numeric_ft(f, 0.7, QuadratureConfig(max_half_width=2**10))
    large = numeric_ft(f, 0.7, QuadratureConfig(max_half_width=2**20))
    assert large.value == small.value
    assert (
        large.error_estimate + large.tail_bound
        <= small.error_estimate + small.tail_bound
    )


def test_constant_integrand_does_not_converge():
    with pytest.raises(NoConvergence):
        improper_integral(
            lambda t: np.ones_like(t) + 0j, [], QuadratureConfig(max_half_width=2**12)
        )


def test_slow_decay_without_metadata():
    lorentz = lambda t: 1.0 / (1.0 + t * t) + 0j
    # at the default 1e-9 the needed half-width (~1e9) exceeds the limit
    with pytest.raises(NoConvergence):
        improper_integral(lorentz, [])
    # a loose tolerance converges to pi via the empirical doubling path
    res = improper_integral(lorentz, [], QuadratureConfig(rel_tol=1e-4, abs_tol=1e-6))
    assert res.value == pytest.approx(math.pi, rel=5e-4)
    assert res.truncation_T > 32.0


def test_abs_integrability_frozen_values():
    assert abs_integrability_check(RectPulse(3.0)) == pytest.approx(6.0, abs=1e-8)
    assert abs_integrability_check(BilateralExp()) == pytest.approx(2.0, abs=1e-8)
    damped = abs_integrability_check(DampedUnilatSine(1.0, 5.0))
    assert 0.0 < damped <= 1.0 + 1e-9  # bounded by the L1 norm of exp(-t)


class _FakeNonIntegrable(SignalExpr):
    def _eval(self, t):
        return np.ones_like(t) + 0j

    def _meta(self):
        return SignalMeta(
            support=(-math.inf, math.inf),
            breakpoints=(),
            abs_integrable=False,
            smooth_everywhere=True,
            decays_at_infinity=False,
            causal=False,
            parity=Parity.EVEN,
        )

    def __str__(self):
        return "constant()"


def test_existence_gate():
    with pytest.raises(ExistenceViolation):
        numeric_ft(_FakeNonIntegrable(), 1.0)


def test_subdivision_limit_triggers():
    wild = lambda t: np.sin(1000.0 * t) * np.sin(999.0 * t) + 0j
    with pytest.raises(NoConvergence):
        finite_integral(wild, 0.0, 200.0, cfg=QuadratureConfig(max_subdivisions=50))
