"""Linear constant-coefficient differential systems and their frequency responses.

A system is a pair of real coefficient lists: ``out_coeffs`` weights the
output derivatives, ``in_coeffs`` the input derivatives, both in ascending
order.  The input order may not exceed the output order and the leading
output coefficient must be nonzero.  The frequency response is the rational
function of i*omega built from exactly those lists; stability is read off
the denominator roots.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Dict, Sequence, Tuple

from .errors import (
    ConstraintViolation,
    ExcludedPoint,
    InvalidSystem,
    RootFindingFailure,
)

__all__ = [
    "DiffEqSystem",
    "RationalResponse",
    "PoleSet",
    "derive_freq_response",
    "eval_freq_response",
    "poles",
    "polynomial_roots",
    "builtin_system",
    "BUILTIN_SYSTEMS",
]


@dataclass(frozen=True)
class DiffEqSystem:
    """sum_k out_coeffs[k] * y^(k) = sum_k in_coeffs[k] * x^(k)."""

    out_coeffs: Tuple[float, ...]
    in_coeffs: Tuple[float, ...]

    def __post_init__(self):
        out = tuple(float(c) for c in self.out_coeffs)
        inp = tuple(float(c) for c in self.in_coeffs)
        object.__setattr__(self, "out_coeffs", out)
        object.__setattr__(self, "in_coeffs", inp)
        if not out or not inp:
            raise InvalidSystem("coefficient lists must be nonempty")
        if len(inp) > len(out):
            raise InvalidSystem(
                f"input order {len(inp) - 1} exceeds output order {len(out) - 1}"
            )
        if out[-1] == 0.0:
            raise InvalidSystem("leading output coefficient must be nonzero")
        if len(inp) > 1 and inp[-1] == 0.0:
            raise InvalidSystem("leading input coefficient must be nonzero")

    @property
    def order(self) -> int:
        return len(self.out_coeffs) - 1

    @property
    def input_order(self) -> int:
        return len(self.in_coeffs) - 1

    def __str__(self) -> str:
        out = ",".join(repr(c) for c in self.out_coeffs)
        inp = ",".join(repr(c) for c in self.in_coeffs)
        return f"out=[{out}]; in=[{inp}]"


@dataclass(frozen=True)
class RationalResponse:
    """H(w) = num(i*w) / den(i*w), coefficients ascending in (i*w)^k."""

    num: Tuple[float, ...]
    den: Tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "num", tuple(float(c) for c in self.num))
        object.__setattr__(self, "den", tuple(float(c) for c in self.den))
        if not self.den or all(c == 0.0 for c in self.den):
            raise InvalidSystem("response denominator must not vanish identically")


def derive_freq_response(sys: DiffEqSystem) -> RationalResponse:
    """Repackage the coefficient lists as the system's rational response."""
    return RationalResponse(num=sys.in_coeffs, den=sys.out_coeffs)


def _horner(coeffs: Sequence[float], s: complex) -> complex:
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * s + c
    return acc


def eval_freq_response(H: RationalResponse, omega: float) -> complex:
    """Complex gain at a frequency; the caller derives magnitude and phase."""
    s = 1j * float(omega)
    den = _horner(H.den, s)
    if den == 0:
        raise ExcludedPoint(float(omega), "response denominator vanishes at this frequency")
    return _horner(H.num, s) / den


# ---------------------------------------------------------------------------
# poles and stability


@dataclass(frozen=True)
class PoleSet:
    """Denominator roots with multiplicities; stable iff all real parts < 0."""

    roots: Tuple[Tuple[complex, int], ...]
    stable: bool

    @property
    def flat(self) -> Tuple[complex, ...]:
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return tuple(out)


def _poly_scale(coeffs: Sequence[float], r: complex) -> float:
    return sum(abs(c) * max(1.0, abs(r)) ** k for k, c in enumerate(coeffs))


def polynomial_roots(coeffs: Sequence[float], tol: float = 1e-10, max_iter: int = 500) -> Tuple[complex, ...]:
    """All complex roots of sum_k coeffs[k] * s^k.

    Degree one and two are solved analytically; higher degrees use
    simultaneous (Durand-Kerner) iteration followed by a residual check.
    """
    c = [complex(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if len(c) < 2:
        raise InvalidSystem("root finding needs degree >= 1")
    n = len(c) - 1
    c = [x / c[-1] for x in c]  # monic

    if n == 1:
        return (-c[0],)
    if n == 2:
        b, a0 = c[1], c[0]
        disc = cmath.sqrt(b * b - 4 * a0)
        if abs(-b - disc) > abs(-b + disc):  # stable formula: big root first
            r1 = (-b - disc) / 2
        else:
            r1 = (-b + disc) / 2
        r2 = a0 / r1 if r1 != 0 else -b - r1
        return (r1, r2)

    # Durand-Kerner from a scaled, detuned start
    radius = 1.0 + max(abs(x) for x in c[:-1])
    start = 0.4 + 0.9j
    roots = [radius * start ** k for k in range(1, n + 1)]
    for _ in range(max_iter):
        moved = 0.0
        for i in range(n):
            p = _horner(c, roots[i])
            d = 1.0 + 0j
            for j in range(n):
                if j != i:
                    d *= roots[i] - roots[j]
            if d == 0:
                roots[i] += 1e-8 * (1 + 1j)
                continue
            delta = p / d
            roots[i] -= delta
            moved = max(moved, abs(delta))
        if moved < 1e-14 * radius:
            break
    for r in roots:
        if abs(_horner(c, r)) > tol * _poly_scale(c, r):
            raise RootFindingFailure(
                f"root {r} has residual {abs(_horner(c, r)):.3g} above tolerance"
            )
    return tuple(roots)


def poles(H: RationalResponse, cluster_tol: float = 1e-6) -> PoleSet:
    """Denominator roots grouped by multiplicity, plus the stability flag."""
    if len(H.den) < 2:
        raise InvalidSystem("pole analysis needs denominator degree >= 1")
    raw = sorted(polynomial_roots(H.den), key=lambda z: (z.real, z.imag))
    groups = []
    for r in raw:
        for k, (rep, count, members) in enumerate(groups):
            if abs(r - rep) <= cluster_tol * max(1.0, abs(rep)):
                members.append(r)
                groups[k] = (sum(members) / len(members), count + 1, members)
                break
        else:
            groups.append((r, 1, [r]))
    scale = _poly_scale(H.den, max((g[0] for g in groups), key=abs))
    for rep, _, _ in groups:
        resid = abs(_horner(H.den, rep))
        if resid > 1e-8 * max(scale, 1e-300):
            raise RootFindingFailure(f"pole {rep} residual {resid:.3g} too large")
    grouped = tuple((rep, count) for rep, count, _ in groups)
    stable = all(rep.real < 0 for rep, _ in grouped)
    return PoleSet(roots=grouped, stable=stable)


# ---------------------------------------------------------------------------
# built-in applications


def _require_positive(params: Dict[str, float], names: Sequence[str]):
    for name in names:
        if name not in params:
            raise ConstraintViolation(f"missing parameter {name!r}")
        if not params[name] > 0:
            raise ConstraintViolation(f"parameter {name} must be positive, got {params[name]}")
    extra = set(params) - set(names)
    if extra:
        raise ConstraintViolation(f"unexpected parameters {sorted(extra)}")


def builtin_system(name: str, **params: float) -> DiffEqSystem:
    """Named coefficient lists for the bundled applications.

    bandpass: out=[wc^2, 2*wc, 1], in=[0, wc] (cutoff wc > 0)
    lowpass:  out=[wc, 1], in=[wc]
    highpass: out=[wc, 1], in=[0, 1]
    mems:     out=[K/M, D/M, 1], in=[1] (accelerometer; K, D, M > 0)
    """
    key = name.strip().lower()
    if key == "bandpass":
        _require_positive(params, ("wc",))
        wc = params["wc"]
        return DiffEqSystem(out_coeffs=(wc * wc, 2.0 * wc, 1.0), in_coeffs=(0.0, wc))
    if key == "lowpass":
        _require_positive(params, ("wc",))
        wc = params["wc"]
        return DiffEqSystem(out_coeffs=(wc, 1.0), in_coeffs=(wc,))
    if key == "highpass":
        _require_positive(params, ("wc",))
        wc = params["wc"]
        return DiffEqSystem(out_coeffs=(wc, 1.0), in_coeffs=(0.0, 1.0))
    if key == "mems":
        _require_positive(params, ("K", "D", "M"))
        K, D, M = params["K"], params["D"], params["M"]
        return DiffEqSystem(out_coeffs=(K / M, D / M, 1.0), in_coeffs=(1.0,))
    raise ConstraintViolation(f"unknown builtin system {name!r}")


BUILTIN_SYSTEMS = ("bandpass", "lowpass", "highpass", "mems")
