import math

import numpy as np
import pytest

from fourierkit.errors import ExcludedPoint, UnsupportedNode
from fourierkit.quadrature import numeric_ft
from fourierkit.signals import (
    BilateralExp,
    DampedUnilatSine,
    Derivative,
    Gaussian,
    LinComb,
    ModSin,
    Parity,
    RectPulse,
    SignalMeta,
    SignalExpr,
    SineToneBurst,
    TimeReverse,
    TimeScale,
    UnilatNegExp,
)
from fourierkit.spectrum import (
    Add,
    ArgShift,
    Const,
    Div,
    Mul,
    Omega,
    PropertyReport,
    Sinc,
    area_under,
    scaled_residual,
    simplify,
    spectrum_eval,
    symbolic_ft,
    verify_property,
)

GRID = (-5.0, -2.0, -1.0, -0.5, 0.5, 1.0, 2.0, 5.0)


@pytest.mark.parametrize(
    "f,omega,expected",
    [
        (UnilatNegExp(1.0), 0.0, 1.0 + 0j),
        (UnilatNegExp(1.0), 1.0, 0.5 - 0.5j),      # 1/(1+i)
        (BilateralExp(), 1.0, 1.0 + 0j),           # 2/(1+1)
        (RectPulse(1.0), 0.0, 2.0 + 0j),           # sinc limit
        (RectPulse(3.0), 0.0, 6.0 + 0j),
        (DampedUnilatSine(1.0, 2.0), 0.0, 0.4 + 0j),  # 2/(1+4)
    ],
)
def test_closed_form_frozen_values(f, omega, expected):
    assert spectrum_eval(symbolic_ft(f), omega) == pytest.approx(expected, abs=1e-14)


def test_sinc_limit_at_zero():
    F = Mul(Const(2.0), Sinc(1.0))
    assert spectrum_eval(F, 0.0) == 2.0 + 0j
    assert spectrum_eval(F, math.pi) == pytest.approx(0.0, abs=1e-15)


@pytest.mark.parametrize(
    "f",
    [
        RectPulse(1.0),
        UnilatNegExp(1.0),
        BilateralExp(),
        SineToneBurst(1.0, 2.0),
        DampedUnilatSine(1.0, 2.0),
        Gaussian(),
    ],
)
def test_leaf_soundness_against_oracle(f, fast_cfg):
    F = symbolic_ft(f)
    for w in GRID:
        sym = spectrum_eval(F, w)
        num = numeric_ft(f, w, fast_cfg).value
        assert scaled_residual(num, sym) <= 1e-6


@pytest.mark.parametrize(
    "f",
    [
        LinComb(1.0, RectPulse(1.0), 1.0, RectPulse(1.0)),
        ModSin(RectPulse(1.5), 4.0),
        TimeScale(BilateralExp(), -2.0),
        Derivative(Gaussian(), 2),
    ],
)
def test_combinator_rules_against_oracle(f, fast_cfg):
    F = symbolic_ft(f)
    for w in GRID:
        sym = spectrum_eval(F, w)
        num = numeric_ft(f, w, fast_cfg).value
        assert scaled_residual(num, sym) <= 1e-6


def test_linearity_doubling_example():
    f = RectPulse(1.0)
    F = symbolic_ft(LinComb(1.0, f, 1.0, f))
    for w in GRID:
        assert spectrum_eval(F, w) == pytest.approx(2 * spectrum_eval(symbolic_ft(f), w), abs=1e-13)


def test_modulated_rect_matches_tone_burst_spectrum():
    A = symbolic_ft(ModSin(RectPulse(1.5), 4.0))
    B = symbolic_ft(SineToneBurst(1.5, 4.0))
    for w in GRID + (0.0, 4.0, -4.0):
        assert abs(spectrum_eval(A, w) - spectrum_eval(B, w)) <= 1e-12


def test_scale_by_minus_one_is_reversal():
    f = UnilatNegExp(1.0)
    A = symbolic_ft(TimeScale(f, -1.0))
    B = symbolic_ft(TimeReverse(f))
    for w in GRID:
        assert abs(spectrum_eval(A, w) - spectrum_eval(B, w)) <= 1e-14


@pytest.mark.parametrize(
    "f",
    [RectPulse(1.0), BilateralExp(), Gaussian(), SineToneBurst(1.0, 3.0)],
)
def test_spectrum_parity(f):
    F = symbolic_ft(f)
    sign = 1.0 if f.meta.parity is Parity.EVEN else -1.0
    for w in GRID:
        assert spectrum_eval(F, -w) == pytest.approx(sign * spectrum_eval(F, w), abs=1e-13)


def test_area_under_frozen_values():
    assert area_under(BilateralExp()) == pytest.approx(2.0, abs=1e-14)
    assert area_under(RectPulse(3.0)) == pytest.approx(6.0, abs=1e-14)
    assert area_under(UnilatNegExp(2.0)) == pytest.approx(0.5, abs=1e-14)


def test_excluded_point_reporting():
    F = Div(Const(1.0), Omega(), condition="w must be nonzero")
    assert spectrum_eval(F, 2.0) == 0.5 + 0j
    with pytest.raises(ExcludedPoint) as err:
        spectrum_eval(F, 0.0)
    assert "w must be nonzero" in str(err.value)
    assert err.value.omega == 0.0


def test_simplify_local_rules():
    assert simplify(Add(Const(1.0), Const(2.0))) == Const(3.0 + 0j)
    assert simplify(Mul(Const(1.0), Omega())) == Omega()
    assert simplify(Mul(Const(0.0), Sinc(1.0))) == Const(0j)
    nested = ArgShift(ArgShift(Sinc(1.0), 2.0), 3.0)
    assert simplify(nested) == ArgShift(Sinc(1.0), 5.0)
    assert simplify(ArgShift(Const(4.0), 2.0)) == Const(4.0 + 0j)


def test_verify_property_spec_examples():
    rep = verify_property("time_shift", UnilatNegExp(1.0), {"t0": 2.0}, GRID, 1e-6)
    assert rep.passed

    rep = verify_property("time_scale", BilateralExp(), {"a": -1.0}, GRID, 1e-6)
    assert rep.passed
    rev = verify_property("time_reversal", BilateralExp(), {}, GRID, 1e-6)
    assert rev.passed

    rep = verify_property("derivative", Gaussian(), {"order": 1}, GRID, 1e-6)
    assert rep.passed


def test_verify_property_unknown_rule():
    with pytest.raises(UnsupportedNode):
        verify_property("convolution", RectPulse(1.0), {}, GRID, 1e-6)


CATALOG = (
    RectPulse(1.0),
    UnilatNegExp(1.0),
    BilateralExp(),
    SineToneBurst(1.0, 2.0),
    DampedUnilatSine(1.0, 2.0),
    Gaussian(),
)

RULE_PARAMS = [
    ("linearity", {"a": 1.5, "b": 1j, "g": BilateralExp()}),
    ("time_shift", {"t0": 1.5}),
    ("freq_shift", {"w0": 2.0, "sign": -1}),
    ("modulation_cos", {"w0": 1.0}),
    ("modulation_sin", {"w0": 1.0}),
    ("time_scale", {"a": -2.0}),
    ("time_reversal", {}),
    ("area", {}),
]


@pytest.mark.parametrize("rule,params", RULE_PARAMS)
def test_rule_soundness_across_catalog(rule, params, fast_cfg):
    # every rule holds for every catalog signal it applies to (derivative is
    # exercised separately since only the smooth member admits it)
    for f in CATALOG:
        rep = verify_property(rule, f, params, (0.5, 2.0), 1e-5, fast_cfg)
        assert rep.passed, f"{rule} failed on {f}: residual {rep.residual}"


def test_rule_soundness_derivative_orders(fast_cfg):
    for order in (1, 2, 3):
        rep = verify_property("derivative", Gaussian(), {"order": order}, (0.5, 2.0), 1e-5, fast_cfg)
        assert rep.passed


def test_property_report_invariants():
    with pytest.raises(ValueError):
        PropertyReport(
            name="x", subject="y", grid=(1.0,), residual=2.0, tolerance=1.0, passed=True
        )
    with pytest.raises(ValueError):
        PropertyReport(
            name="x", subject="y", grid=(1.0,), residual=-1.0, tolerance=1.0, passed=False
        )
    rep = PropertyReport.from_residual("x", "y", (1.0,), 0.5, 1.0)
    assert rep.passed


class _FakeSignal(SignalExpr):
    def _eval(self, t):
        return np.ones_like(t) + 0j

    def _meta(self):
        return SignalMeta(
            support=(-math.inf, math.inf),
            breakpoints=(),
            abs_integrable=True,
            smooth_everywhere=True,
            decays_at_infinity=False,
            causal=False,
            parity=Parity.EVEN,
        )


def test_symbolic_ft_rejects_foreign_nodes():
    with pytest.raises(UnsupportedNode):
        symbolic_ft(_FakeSignal())
