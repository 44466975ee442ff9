import pytest

from conftest import DSL_CORPUS
from fourierkit.dsl import parse_omega_spec, parse_signal_dsl, parse_system_spec, to_dsl
from fourierkit.errors import ConstraintViolation, DslSyntaxError, InvalidSystem
from fourierkit.signals import (
    Gaussian,
    LinComb,
    ModSin,
    RectPulse,
    TimeShift,
    eval_signal,
)


def test_parse_primitive():
    assert parse_signal_dsl("rect(1)") == RectPulse(1.0)


def test_parse_modulated_rect_is_tone_burst_shape():
    tree = parse_signal_dsl("modsin(rect(2), 5)")
    assert tree == ModSin(RectPulse(2.0), 5.0)


def test_parse_linear_combination():
    tree = parse_signal_dsl("2*rect(1) + shift(gauss(), 1)")
    assert tree == LinComb(2.0, RectPulse(1.0), 1.0, TimeShift(Gaussian(), 1.0))


def test_parse_complex_coefficients():
    tree = parse_signal_dsl("(1+2i)*rect(1)")
    assert isinstance(tree, LinComb)
    assert tree.a == 1 + 2j and tree.b == 0
    tree = parse_signal_dsl("(0.5-1.5i)*gauss()")
    assert tree.a == 0.5 - 1.5j
    tree = parse_signal_dsl("(2i)*gauss()")
    assert tree.a == 2j
    tree = parse_signal_dsl("-3*gauss()")
    assert tree.a == -3 + 0j


def test_whitespace_insensitive():
    a = parse_signal_dsl("modcos( scale( bilateral_exp( ) , 2 ) , 3 )")
    b = parse_signal_dsl("modcos(scale(bilateral_exp(),2),3)")
    assert a == b


@pytest.mark.parametrize("text", DSL_CORPUS)
def test_round_trip_corpus(text):
    tree = parse_signal_dsl(text)
    printed = to_dsl(tree)
    again = parse_signal_dsl(printed)
    assert again == tree
    assert to_dsl(again) == printed  # printing is a fixed point


@pytest.mark.parametrize("text", DSL_CORPUS)
def test_corpus_trees_evaluate(text):
    tree = parse_signal_dsl(text)
    value = eval_signal(tree, 0.37)
    assert value == value  # not NaN


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("rect(", "expected"),
        ("rect(1", "expected"),
        ("nosuch(1)", "unknown signal constructor"),
        ("rect(1) +", "expected"),
        ("rect(1) rect(2)", "trailing input"),
        ("2 rect(1)", "expected"),
        ("shift(rect(1))", "expected"),
        ("deriv(gauss(), 1.5)", "integer"),
        ("", "expected"),
    ],
)
def test_syntax_errors_carry_position(text, fragment):
    with pytest.raises(DslSyntaxError) as err:
        parse_signal_dsl(text)
    assert fragment in str(err.value)
    assert err.value.position >= 0
    assert err.value.line == 1
    assert err.value.expected


def test_constraint_violations_carry_span():
    with pytest.raises(ConstraintViolation) as err:
        parse_signal_dsl("scale(rect(1), 0)")
    assert err.value.span is not None
    start, end = err.value.span
    assert "scale(rect(1), 0)"[start:end].startswith("scale")
    with pytest.raises(ConstraintViolation):
        parse_signal_dsl("rect(-1)")
    with pytest.raises(ConstraintViolation):
        parse_signal_dsl("deriv(rect(1), 1)")


def test_parse_system_specs():
    sys = parse_system_spec("builtin:bandpass(wc=2)")
    assert sys.out_coeffs == (4.0, 4.0, 1.0)
    assert sys.in_coeffs == (0.0, 2.0)

    sys = parse_system_spec("builtin:mems(K=1, D=1, M=1)")
    assert sys.out_coeffs == (1.0, 1.0, 1.0)

    sys = parse_system_spec("out=[1,1]; in=[1]")
    assert sys.out_coeffs == (1.0, 1.0) and sys.in_coeffs == (1.0,)

    with pytest.raises(InvalidSystem):
        parse_system_spec("out=[1]; in=[1,1]")
    with pytest.raises(DslSyntaxError):
        parse_system_spec("builtin:bandpass wc=2")
    with pytest.raises(DslSyntaxError):
        parse_system_spec("out=[1,oops]; in=[1]")
    with pytest.raises(DslSyntaxError):
        parse_system_spec("gibberish")


def test_system_spec_round_trip():
    sys = parse_system_spec("builtin:bandpass(wc=2)")
    assert parse_system_spec(str(sys)) == sys


def test_omega_specs():
    assert parse_omega_spec("1, 2, 3.5") == (1.0, 2.0, 3.5)
    assert parse_omega_spec([0.5, 1]) == (0.5, 1.0)
    grid = parse_omega_spec("0:0.1:10")
    assert len(grid) == 101
    assert grid[0] == 0.0
    assert grid[-1] == pytest.approx(10.0, abs=1e-12)
    down = parse_omega_spec("1:-0.5:0")
    assert down == (1.0, 0.5, 0.0)
    with pytest.raises(DslSyntaxError):
        parse_omega_spec("0:0:1")
    with pytest.raises(DslSyntaxError):
        parse_omega_spec("0:-1:10")
    with pytest.raises(DslSyntaxError):
        parse_omega_spec("")
    with pytest.raises(DslSyntaxError):
        parse_omega_spec("1:2:3:4")
