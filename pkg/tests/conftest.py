import numpy as np
import pytest

from fourierkit.quadrature import QuadratureConfig

STANDARD_GRID = (-10.0, -5.0, -2.0, -1.0, -0.5, -0.1, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0)

# 50 expressions covering every production of the signal grammar
DSL_CORPUS = [
    "rect(1)",
    "rect(0.5)",
    "rect(3)",
    "unilat_exp(1)",
    "unilat_exp(2.5)",
    "bilateral_exp()",
    "sine_burst(1, 5)",
    "sine_burst(2.5, 0.5)",
    "damped_sine(1, 2)",
    "damped_sine(0.5, 10)",
    "gauss()",
    "shift(rect(1), 2)",
    "shift(gauss(), -1.5)",
    "shift(unilat_exp(1), 3)",
    "scale(rect(1), 2)",
    "scale(bilateral_exp(), -3)",
    "scale(gauss(), 0.5)",
    "reverse(unilat_exp(1))",
    "reverse(damped_sine(1, 3))",
    "modcos(rect(1), 4)",
    "modcos(bilateral_exp(), 1)",
    "modsin(rect(2), 5)",
    "modsin(bilateral_exp(), 2)",
    "cexp_shift(bilateral_exp(), 3, +)",
    "cexp_shift(gauss(), 1.5, -)",
    "deriv(gauss(), 1)",
    "deriv(gauss(), 3)",
    "2*rect(1)",
    "-0.5*gauss()",
    "(1+2i)*bilateral_exp()",
    "(0.5-1.5i)*unilat_exp(2)",
    "(2i)*rect(1)",
    "(i)*gauss()",
    "rect(1) + gauss()",
    "2*rect(1) + shift(gauss(), 1)",
    "rect(1) + rect(2) + rect(3)",
    "unilat_exp(1) + -1*reverse(unilat_exp(1))",
    "modsin(rect(2), 5) + modcos(rect(2), 5)",
    "(1+1i)*gauss() + (1-1i)*gauss()",
    "0.25*bilateral_exp() + (0+0.5i)*sine_burst(1, 2)",
    "reverse(shift(rect(1), 1))",
    "scale(shift(gauss(), 1), 2)",
    "modcos(scale(bilateral_exp(), 2), 3)",
    "deriv(modcos(gauss(), 2), 1)",
    "deriv(scale(gauss(), 2), 2)",
    "cexp_shift(modsin(gauss(), 1), 2, -)",
    "shift(shift(gauss(), 1), -2)",
    "scale(scale(rect(1), 2), -0.5)",
    "shift(sine_burst(1, 2), 0.5)",
    "scale(damped_sine(2, 3), -1)",
]

assert len(DSL_CORPUS) == 50


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def fast_cfg():
    """Looser quadrature for tests where 1e-6 accuracy is plenty."""
    return QuadratureConfig(rel_tol=1e-7, abs_tol=1e-9)
