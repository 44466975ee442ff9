import math

import numpy as np
import pytest

from fourierkit.errors import (
    ConstraintViolation,
    ExcludedPoint,
    InvalidSystem,
    RootFindingFailure,
)
from fourierkit.systems import (
    DiffEqSystem,
    RationalResponse,
    builtin_system,
    derive_freq_response,
    eval_freq_response,
    poles,
    polynomial_roots,
)


def test_builtin_coefficient_lists():
    bp = builtin_system("bandpass", wc=2.0)
    assert bp.out_coeffs == (4.0, 4.0, 1.0)
    assert bp.in_coeffs == (0.0, 2.0)

    me = builtin_system("mems", K=2.0, D=3.0, M=4.0)
    assert me.out_coeffs == (0.5, 0.75, 1.0)
    assert me.in_coeffs == (1.0,)

    lp = builtin_system("lowpass", wc=3.0)
    assert lp.out_coeffs == (3.0, 1.0) and lp.in_coeffs == (3.0,)
    hp = builtin_system("highpass", wc=3.0)
    assert hp.out_coeffs == (3.0, 1.0) and hp.in_coeffs == (0.0, 1.0)


def test_builtin_parameter_gates():
    with pytest.raises(ConstraintViolation):
        builtin_system("bandpass", wc=0.0)
    with pytest.raises(ConstraintViolation):
        builtin_system("mems", K=1.0, D=-1.0, M=1.0)
    with pytest.raises(ConstraintViolation):
        builtin_system("mems", K=1.0, M=1.0)
    with pytest.raises(ConstraintViolation):
        builtin_system("nosuch", wc=1.0)


def test_invalid_systems():
    with pytest.raises(InvalidSystem):
        DiffEqSystem(out_coeffs=(1.0,), in_coeffs=(1.0, 1.0))  # m > n
    with pytest.raises(InvalidSystem):
        DiffEqSystem(out_coeffs=(1.0, 0.0), in_coeffs=(1.0,))  # leading zero
    with pytest.raises(InvalidSystem):
        DiffEqSystem(out_coeffs=(), in_coeffs=(1.0,))
    with pytest.raises(InvalidSystem):
        DiffEqSystem(out_coeffs=(1.0, 1.0), in_coeffs=(1.0, 0.0))


def test_identity_system():
    H = derive_freq_response(DiffEqSystem(out_coeffs=(1.0,), in_coeffs=(1.0,)))
    for w in (0.0, 1.0, 100.0):
        assert eval_freq_response(H, w) == 1.0 + 0j


@pytest.mark.parametrize("wc", [0.5, 1.0, 10.0])
def test_bandpass_peak_value_is_exact(wc):
    H = derive_freq_response(builtin_system("bandpass", wc=wc))
    assert eval_freq_response(H, wc) == 0.5 + 0j
    assert abs(eval_freq_response(H, wc / 10)) < 0.5
    assert abs(eval_freq_response(H, 10 * wc)) < 0.5


def test_mems_frozen_values():
    H = derive_freq_response(builtin_system("mems", K=1.0, D=1.0, M=1.0))
    assert eval_freq_response(H, 0.0) == 1.0 + 0j
    z = eval_freq_response(H, 1.0)
    assert z == pytest.approx(-1j, abs=1e-15)  # 1/((i)^2 + i + 1) = 1/i
    assert abs(z) == pytest.approx(1.0, abs=1e-15)
    assert math.atan2(z.imag, z.real) == pytest.approx(-math.pi / 2, abs=1e-15)


def test_dc_and_asymptotic_limits():
    lp = derive_freq_response(builtin_system("lowpass", wc=2.0))
    assert abs(eval_freq_response(lp, 1e-9)) == pytest.approx(1.0, abs=1e-9)
    me = derive_freq_response(builtin_system("mems", K=3.0, D=1.0, M=2.0))
    assert eval_freq_response(me, 0.0) == pytest.approx(2.0 / 3.0, abs=1e-15)
    # strictly proper responses vanish at high frequency
    for H in (lp, me, derive_freq_response(builtin_system("bandpass", wc=1.0))):
        if len(H.num) < len(H.den):
            assert abs(eval_freq_response(H, 1e6)) < 1e-5


def test_conjugate_symmetry(rng):
    H = derive_freq_response(builtin_system("mems", K=2.0, D=0.5, M=1.0))
    for w in rng.uniform(0.01, 50, size=50):
        assert eval_freq_response(H, -w) == eval_freq_response(H, w).conjugate()


def test_factored_form_matches_expanded_bandpass():
    wc = 1.0
    lp = derive_freq_response(builtin_system("lowpass", wc=wc))
    hp = derive_freq_response(builtin_system("highpass", wc=wc))
    bp = derive_freq_response(builtin_system("bandpass", wc=wc))
    for w in np.arange(0.0, 10.0 + 1e-9, 0.1):
        factored = eval_freq_response(lp, w) * eval_freq_response(hp, w)
        assert abs(factored - eval_freq_response(bp, w)) <= 1e-12


def test_excluded_frequency():
    H = RationalResponse(num=(1.0,), den=(0.0, 1.0))  # 1/(i*w)
    assert eval_freq_response(H, 2.0) == pytest.approx(-0.5j, abs=1e-16)
    with pytest.raises(ExcludedPoint):
        eval_freq_response(H, 0.0)


def test_poles_frozen_cases():
    bp = poles(derive_freq_response(builtin_system("bandpass", wc=1.0)))
    assert bp.stable
    assert len(bp.roots) == 1
    root, mult = bp.roots[0]
    assert mult == 2 and root == pytest.approx(-1.0, abs=1e-8)

    me = poles(derive_freq_response(builtin_system("mems", K=1.0, D=1.0, M=1.0)))
    assert me.stable
    expected = {complex(-0.5, math.sqrt(3) / 2), complex(-0.5, -math.sqrt(3) / 2)}
    got = {r for r, _ in me.roots}
    for e in expected:
        assert any(abs(g - e) < 1e-12 for g in got)

    unstable = poles(RationalResponse(num=(1.0,), den=(-1.0, 0.0, 1.0)))
    assert not unstable.stable
    assert sorted(r.real for r, _ in unstable.roots) == pytest.approx([-1.0, 1.0])


def test_durand_kerner_recovers_known_roots():
    wanted = [-1.0 + 0j, -2.0 + 0j, -3.0 + 4.0j, -3.0 - 4.0j, -0.5 + 0j]
    coeffs = np.array([1.0 + 0j])
    for r in wanted:
        coeffs = np.convolve(coeffs, np.array([-r, 1.0 + 0j]))
    got = sorted(polynomial_roots([c.real for c in coeffs]), key=lambda z: (z.real, z.imag))
    for g, w in zip(got, sorted(wanted, key=lambda z: (z.real, z.imag))):
        assert abs(g - w) < 1e-8


def test_pole_residual_invariant():
    H = derive_freq_response(builtin_system("mems", K=7.0, D=0.3, M=2.0))
    ps = poles(H)
    scale = sum(abs(c) for c in H.den)
    for r, _ in ps.roots:
        acc = 0j
        for c in reversed(H.den):
            acc = acc * r + c
        assert abs(acc) <= 1e-8 * scale * max(1.0, abs(r)) ** 2


def test_positive_parameters_imply_stability(rng):
    for _ in range(25):
        wc = float(rng.uniform(0.01, 50))
        assert poles(derive_freq_response(builtin_system("bandpass", wc=wc))).stable
        K, D, M = (float(x) for x in rng.uniform(0.01, 20, size=3))
        assert poles(derive_freq_response(builtin_system("mems", K=K, D=D, M=M))).stable


def test_root_finding_failure_when_iteration_starved():
    with pytest.raises(RootFindingFailure):
        polynomial_roots([1.0, 2.0, 3.0, 4.0, 5.0], max_iter=0)


def test_poles_requires_dynamics():
    with pytest.raises(InvalidSystem):
        poles(RationalResponse(num=(1.0,), den=(1.0,)))
