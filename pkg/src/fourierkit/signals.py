"""Time-domain signal grammar: catalog primitives, combinators, metadata.

Signals are immutable expression trees.  Every node validates its parameters
at construction and derives a :class:`SignalMeta` describing support,
breakpoints, integrability, smoothness, parity, causality and tail decay.
Downstream numeric code trusts this metadata instead of probing the
evaluator, which keeps existence checks decidable: everything in the grammar
is built from a known catalog.

Piecewise primitives use closed-boundary semantics (the boundary point
belongs to the nonzero branch); quadrature is insensitive to this
measure-zero choice, evaluation is deterministic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Optional, Tuple

import numpy as np

from .errors import ConstraintViolation, UnsupportedNode

__all__ = [
    "Parity",
    "DecayBound",
    "SignalMeta",
    "SignalExpr",
    "RectPulse",
    "UnilatNegExp",
    "BilateralExp",
    "SineToneBurst",
    "DampedUnilatSine",
    "Gaussian",
    "LinComb",
    "TimeShift",
    "FreqShiftExp",
    "ModCos",
    "ModSin",
    "TimeScale",
    "TimeReverse",
    "Derivative",
    "eval_signal",
    "signal_metadata",
    "differentiate",
]

_INF = float("inf")


class Parity(Enum):
    EVEN = "even"
    ODD = "odd"
    NEITHER = "neither"

    def flipped(self) -> "Parity":
        if self is Parity.EVEN:
            return Parity.ODD
        if self is Parity.ODD:
            return Parity.EVEN
        return Parity.NEITHER

    def times(self, other: "Parity") -> "Parity":
        """Parity of a pointwise product."""
        if self is Parity.NEITHER or other is Parity.NEITHER:
            return Parity.NEITHER
        return Parity.EVEN if self is other else Parity.ODD


@dataclass(frozen=True)
class DecayBound:
    """Exponential tail bound: |f(t)| <= amplitude * exp(-rate*|t|) for |t| >= beyond."""

    rate: float
    amplitude: float = 1.0
    beyond: float = 0.0


@dataclass(frozen=True)
class SignalMeta:
    support: Tuple[float, float]
    breakpoints: Tuple[float, ...]
    abs_integrable: bool
    smooth_everywhere: bool
    decays_at_infinity: bool
    causal: bool
    parity: Parity
    decay: Optional[DecayBound] = None

    @property
    def decay_rate(self) -> Optional[float]:
        return None if self.decay is None else self.decay.rate

    @property
    def compact_support(self) -> bool:
        lo, hi = self.support
        return math.isfinite(lo) and math.isfinite(hi)


def _combine_decay(a: complex, fm: SignalMeta, b: complex, gm: SignalMeta) -> Optional[DecayBound]:
    """Tail bound for a*f + b*g from the operands' bounds.

    A compactly supported operand contributes nothing beyond its support
    edge, so only the other operand's bound matters out there.
    """

    def extent(m: SignalMeta) -> float:
        return max(abs(m.support[0]), abs(m.support[1]))

    if fm.compact_support and gm.compact_support:
        return None
    if fm.compact_support:
        if gm.decay is None:
            return None
        d = gm.decay
        return DecayBound(d.rate, abs(b) * d.amplitude, max(d.beyond, extent(fm)))
    if gm.compact_support:
        if fm.decay is None:
            return None
        d = fm.decay
        return DecayBound(d.rate, abs(a) * d.amplitude, max(d.beyond, extent(gm)))
    if fm.decay is None or gm.decay is None:
        return None
    df, dg = fm.decay, gm.decay
    return DecayBound(
        min(df.rate, dg.rate),
        abs(a) * df.amplitude + abs(b) * dg.amplitude,
        max(df.beyond, dg.beyond),
    )


class SignalExpr:
    """Base class of all signal nodes.  Immutable and freely shareable."""

    @cached_property
    def meta(self) -> SignalMeta:
        return self._meta()

    def _meta(self) -> SignalMeta:
        raise NotImplementedError

    def _eval(self, t: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __str__(self) -> str:
        return _to_text(self)


def eval_signal(f: SignalExpr, t):
    """Pointwise value of *f*; accepts a scalar time or an array of times."""
    arr = np.asarray(t, dtype=float)
    out = np.asarray(f._eval(arr), dtype=np.complex128)
    if arr.ndim == 0:
        return complex(out[()])
    return out


def signal_metadata(f: SignalExpr) -> SignalMeta:
    """Propagated metadata for *f* (same object the node caches)."""
    return f.meta


# ---------------------------------------------------------------------------
# catalog primitives


@dataclass(frozen=True)
class RectPulse(SignalExpr):
    """1 on |t| <= half_width, 0 elsewhere."""

    half_width: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise ConstraintViolation(
                f"rect pulse half-width must be positive, got {self.half_width}"
            )

    def _eval(self, t):
        return np.where(np.abs(t) <= self.half_width, 1.0 + 0.0j, 0.0 + 0.0j)

    def _meta(self):
        T1 = self.half_width
        return SignalMeta(
            support=(-T1, T1),
            breakpoints=(-T1, T1),
            abs_integrable=True,
            smooth_everywhere=False,
            decays_at_infinity=True,
            causal=False,
            parity=Parity.EVEN,
        )


@dataclass(frozen=True)
class UnilatNegExp(SignalExpr):
    """exp(-rate*t) for t >= 0, 0 for t < 0; rate > 0."""

    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise ConstraintViolation(
                f"unilateral exponential rate must be positive, got {self.rate}"
            )

    def _eval(self, t):
        safe = np.maximum(t, 0.0)
        return np.where(t >= 0.0, np.exp(-self.rate * safe), 0.0) + 0.0j

    def _meta(self):
        return SignalMeta(
            support=(0.0, _INF),
            breakpoints=(0.0,),
            abs_integrable=True,
            smooth_everywhere=False,
            decays_at_infinity=True,
            causal=True,
            parity=Parity.NEITHER,
            decay=DecayBound(rate=self.rate),
        )


@dataclass(frozen=True)
class BilateralExp(SignalExpr):
    """exp(-|t|) on the whole line."""

    def _eval(self, t):
        return np.exp(-np.abs(t)) + 0.0j

    def _meta(self):
        return SignalMeta(
            support=(-_INF, _INF),
            breakpoints=(0.0,),
            abs_integrable=True,
            smooth_everywhere=False,
            decays_at_infinity=True,
            causal=False,
            parity=Parity.EVEN,
            decay=DecayBound(rate=1.0),
        )


@dataclass(frozen=True)
class SineToneBurst(SignalExpr):
    """sin(frequency*t) on |t| <= half_width, 0 elsewhere."""

    half_width: float
    frequency: float

    def __post_init__(self):
        if not self.half_width > 0:
            raise ConstraintViolation(
                f"tone burst half-width must be positive, got {self.half_width}"
            )

    def _eval(self, t):
        return np.where(np.abs(t) <= self.half_width, np.sin(self.frequency * t), 0.0) + 0.0j

    def _meta(self):
        T1 = self.half_width
        return SignalMeta(
            support=(-T1, T1),
            breakpoints=(-T1, T1),
            abs_integrable=True,
            smooth_everywhere=False,
            decays_at_infinity=True,
            causal=False,
            parity=Parity.ODD,
        )


@dataclass(frozen=True)
class DampedUnilatSine(SignalExpr):
    """exp(-rate*t)*sin(frequency*t) for t >= 0, 0 for t < 0; rate > 0."""

    rate: float
    frequency: float

    def __post_init__(self):
        if not self.rate > 0:
            raise ConstraintViolation(
                f"damped sine rate must be positive, got {self.rate}"
            )

    def _eval(self, t):
        safe = np.maximum(t, 0.0)
        return np.where(t >= 0.0, np.exp(-self.rate * safe) * np.sin(self.frequency * t), 0.0) + 0.0j

    def _meta(self):
        return SignalMeta(
            support=(0.0, _INF),
            breakpoints=(0.0,),
            abs_integrable=True,
            smooth_everywhere=False,
            decays_at_infinity=True,
            causal=True,
            parity=Parity.NEITHER,
            decay=DecayBound(rate=self.rate),
        )


@dataclass(frozen=True)
class Gaussian(SignalExpr):
    """exp(-t^2); the smooth, rapidly decaying member of the catalog."""

    def _eval(self, t):
        return np.exp(-t * t) + 0.0j

    def _meta(self):
        # exp(-t^2) <= exp(-|t|) once |t| >= 1, which is all the tail code needs.
        return SignalMeta(
            support=(-_INF, _INF),
            breakpoints=(),
            abs_integrable=True,
            smooth_everywhere=True,
            decays_at_infinity=True,
            causal=False,
            parity=Parity.EVEN,
            decay=DecayBound(rate=1.0, amplitude=1.0, beyond=1.0),
        )


# ---------------------------------------------------------------------------
# combinators


@dataclass(frozen=True)
class LinComb(SignalExpr):
    """a*f + b*g with complex scale factors."""

    a: complex
    f: SignalExpr
    b: complex
    g: SignalExpr

    def __post_init__(self):
        object.__setattr__(self, "a", complex(self.a))
        object.__setattr__(self, "b", complex(self.b))

    def _eval(self, t):
        return self.a * self.f._eval(t) + self.b * self.g._eval(t)

    def _meta(self):
        fm, gm = self.f.meta, self.g.meta
        lo = min(fm.support[0], gm.support[0])
        hi = max(fm.support[1], gm.support[1])
        parity = fm.parity if fm.parity is gm.parity else Parity.NEITHER
        return SignalMeta(
            support=(lo, hi),
            breakpoints=tuple(sorted(set(fm.breakpoints) | set(gm.breakpoints))),
            abs_integrable=fm.abs_integrable and gm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere and gm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity and gm.decays_at_infinity,
            causal=fm.causal and gm.causal,
            parity=parity,
            decay=_combine_decay(self.a, fm, self.b, gm),
        )


@dataclass(frozen=True)
class TimeShift(SignalExpr):
    """f(t - shift): delay for shift > 0, advance for shift < 0."""

    f: SignalExpr
    shift: float

    def _eval(self, t):
        return self.f._eval(t - self.shift)

    def _meta(self):
        fm = self.f.meta
        t0 = self.shift
        decay = fm.decay
        if decay is not None and t0 != 0.0:
            decay = DecayBound(
                decay.rate,
                decay.amplitude * math.exp(decay.rate * abs(t0)),
                decay.beyond + abs(t0),
            )
        return SignalMeta(
            support=(fm.support[0] + t0, fm.support[1] + t0),
            breakpoints=tuple(sorted(b + t0 for b in fm.breakpoints)),
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=fm.causal and t0 >= 0.0,
            parity=fm.parity if t0 == 0.0 else Parity.NEITHER,
            decay=decay,
        )


@dataclass(frozen=True)
class FreqShiftExp(SignalExpr):
    """exp(sign*i*frequency*t) * f(t); sign is +1 or -1."""

    f: SignalExpr
    frequency: float
    sign: int = 1

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ConstraintViolation(f"frequency shift sign must be +1 or -1, got {self.sign}")

    def _eval(self, t):
        return np.exp((1j * self.sign * self.frequency) * t) * self.f._eval(t)

    def _meta(self):
        fm = self.f.meta
        parity = fm.parity if self.frequency == 0.0 else Parity.NEITHER
        return SignalMeta(
            support=fm.support,
            breakpoints=fm.breakpoints,
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=fm.causal,
            parity=parity,
            decay=fm.decay,
        )


@dataclass(frozen=True)
class ModCos(SignalExpr):
    """cos(frequency*t) * f(t)."""

    f: SignalExpr
    frequency: float

    def _eval(self, t):
        return np.cos(self.frequency * t) * self.f._eval(t)

    def _meta(self):
        fm = self.f.meta
        return SignalMeta(
            support=fm.support,
            breakpoints=fm.breakpoints,
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=fm.causal,
            parity=fm.parity,
            decay=fm.decay,
        )


@dataclass(frozen=True)
class ModSin(SignalExpr):
    """sin(frequency*t) * f(t); flips parity."""

    f: SignalExpr
    frequency: float

    def _eval(self, t):
        return np.sin(self.frequency * t) * self.f._eval(t)

    def _meta(self):
        fm = self.f.meta
        return SignalMeta(
            support=fm.support,
            breakpoints=fm.breakpoints,
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=fm.causal,
            parity=fm.parity.flipped(),
            decay=fm.decay,
        )


@dataclass(frozen=True)
class TimeScale(SignalExpr):
    """f(factor*t) with factor != 0."""

    f: SignalExpr
    factor: float

    def __post_init__(self):
        if self.factor == 0:
            raise ConstraintViolation("time scale factor must be nonzero")

    def _eval(self, t):
        return self.f._eval(self.factor * t)

    def _meta(self):
        fm = self.f.meta
        a = self.factor
        lo, hi = sorted((fm.support[0] / a, fm.support[1] / a))
        decay = fm.decay
        if decay is not None:
            decay = DecayBound(decay.rate * abs(a), decay.amplitude, decay.beyond / abs(a))
        return SignalMeta(
            support=(lo, hi),
            breakpoints=tuple(sorted(b / a for b in fm.breakpoints)),
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=fm.causal and a > 0,
            parity=fm.parity,
            decay=decay,
        )


@dataclass(frozen=True)
class TimeReverse(SignalExpr):
    """f(-t)."""

    f: SignalExpr

    def _eval(self, t):
        return self.f._eval(-t)

    def _meta(self):
        fm = self.f.meta
        return SignalMeta(
            support=(-fm.support[1], -fm.support[0]),
            breakpoints=tuple(sorted(-b for b in fm.breakpoints)),
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=False,
            parity=fm.parity,
            decay=fm.decay,
        )


@dataclass(frozen=True)
class Derivative(SignalExpr):
    """Exact order-th derivative of a smooth, decaying subtree.

    Construction is rejected for non-smooth operands (a jump makes the
    classical derivative meaningless at the breakpoints) and for operands
    without decay at infinity.  Evaluation goes through exact symbolic
    differentiation of the grammar, never finite differences.
    """

    f: SignalExpr
    order: int

    def __post_init__(self):
        if not (isinstance(self.order, int) and self.order >= 1):
            raise ConstraintViolation(f"derivative order must be a positive integer, got {self.order}")
        fm = self.f.meta
        if not fm.smooth_everywhere:
            raise ConstraintViolation(
                "derivative requires a smooth operand; this one has breakpoints "
                f"or kinks (smooth_everywhere={fm.smooth_everywhere})"
            )
        if not fm.decays_at_infinity:
            raise ConstraintViolation("derivative requires an operand that decays at infinity")

    @cached_property
    def expanded(self) -> SignalExpr:
        return differentiate(self.f, self.order)

    def _eval(self, t):
        return self.expanded._eval(t)

    def _meta(self):
        fm = self.f.meta
        parity = fm.parity
        for _ in range(self.order):
            parity = parity.flipped()
        return SignalMeta(
            support=fm.support,
            breakpoints=fm.breakpoints,
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=True,
            decays_at_infinity=True,
            causal=fm.causal,
            parity=parity,
            decay=None,  # polynomial factors break the exponential amplitude bookkeeping
        )


@dataclass(frozen=True)
class PolyMul(SignalExpr):
    """Internal node: polynomial(t) * inner, produced by exact differentiation.

    Not part of the DSL grammar; coefficient k is the weight of t**k.
    """

    coeffs: Tuple[complex, ...]
    inner: SignalExpr

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.coeffs:
            raise ConstraintViolation("polynomial factor needs at least one coefficient")

    def _eval(self, t):
        p = np.zeros_like(t, dtype=np.complex128)
        for c in reversed(self.coeffs):
            p = p * t + c
        return p * self.inner._eval(t)

    def _poly_parity(self) -> Parity:
        even = all(c == 0 for i, c in enumerate(self.coeffs) if i % 2 == 1)
        odd = all(c == 0 for i, c in enumerate(self.coeffs) if i % 2 == 0)
        if even and not odd:
            return Parity.EVEN
        if odd and not even:
            return Parity.ODD
        return Parity.NEITHER

    def _meta(self):
        fm = self.inner.meta
        if len(self.coeffs) == 1:
            decay = fm.decay
            if decay is not None:
                decay = DecayBound(decay.rate, decay.amplitude * abs(self.coeffs[0]), decay.beyond)
        else:
            decay = None
        return SignalMeta(
            support=fm.support,
            breakpoints=fm.breakpoints,
            abs_integrable=fm.abs_integrable,
            smooth_everywhere=fm.smooth_everywhere,
            decays_at_infinity=fm.decays_at_infinity,
            causal=fm.causal,
            parity=self._poly_parity().times(fm.parity),
            decay=decay,
        )


# ---------------------------------------------------------------------------
# exact differentiation over the grammar


def _poly_mul(coeffs, f: SignalExpr) -> Optional[SignalExpr]:
    coeffs = tuple(complex(c) for c in coeffs)
    while coeffs and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if not coeffs:
        return None
    if coeffs == (1 + 0j,):
        return f
    if isinstance(f, PolyMul):
        # collapse nested polynomial factors: p * (q * g) = (p*q) * g
        prod = [0j] * (len(coeffs) + len(f.coeffs) - 1)
        for i, ci in enumerate(coeffs):
            for j, cj in enumerate(f.coeffs):
                prod[i + j] += ci * cj
        return _poly_mul(tuple(prod), f.inner)
    return PolyMul(coeffs, f)


def _add(f: Optional[SignalExpr], g: Optional[SignalExpr]) -> Optional[SignalExpr]:
    if f is None:
        return g
    if g is None:
        return f
    return LinComb(1.0, f, 1.0, g)


def _diff_once(f: SignalExpr) -> Optional[SignalExpr]:
    if isinstance(f, Gaussian):
        return _poly_mul((0.0, -2.0), f)
    if isinstance(f, PolyMul):
        dp = tuple(k * c for k, c in enumerate(f.coeffs))[1:]
        term1 = _poly_mul(dp, f.inner) if dp else None
        di = _diff_once(f.inner)
        term2 = _poly_mul(f.coeffs, di) if di is not None else None
        return _add(term1, term2)
    if isinstance(f, LinComb):
        df, dg = _diff_once(f.f), _diff_once(f.g)
        left = _poly_mul((f.a,), df) if df is not None else None
        right = _poly_mul((f.b,), dg) if dg is not None else None
        return _add(left, right)
    if isinstance(f, TimeShift):
        di = _diff_once(f.f)
        return None if di is None else TimeShift(di, f.shift)
    if isinstance(f, TimeScale):
        di = _diff_once(f.f)
        return None if di is None else _poly_mul((f.factor,), TimeScale(di, f.factor))
    if isinstance(f, TimeReverse):
        di = _diff_once(f.f)
        return None if di is None else _poly_mul((-1.0,), TimeReverse(di))
    if isinstance(f, ModCos):
        di = _diff_once(f.f)
        term1 = ModCos(di, f.frequency) if di is not None else None
        term2 = _poly_mul((-f.frequency,), ModSin(f.f, f.frequency))
        return _add(term1, term2)
    if isinstance(f, ModSin):
        di = _diff_once(f.f)
        term1 = ModSin(di, f.frequency) if di is not None else None
        term2 = _poly_mul((f.frequency,), ModCos(f.f, f.frequency))
        return _add(term1, term2)
    if isinstance(f, FreqShiftExp):
        di = _diff_once(f.f)
        term1 = FreqShiftExp(di, f.frequency, f.sign) if di is not None else None
        term2 = _poly_mul((1j * f.sign * f.frequency,), FreqShiftExp(f.f, f.frequency, f.sign))
        return _add(term1, term2)
    if isinstance(f, Derivative):
        return _diff_once(f.expanded)
    raise UnsupportedNode(f"cannot differentiate node {type(f).__name__}")


def differentiate(f: SignalExpr, order: int = 1) -> SignalExpr:
    """Exact symbolic derivative of a smooth signal tree.

    Only meaningful for subtrees whose metadata reports smoothness; the
    :class:`Derivative` constructor enforces that gate.
    """
    if not f.meta.smooth_everywhere:
        raise ConstraintViolation("cannot differentiate a non-smooth signal")
    g: Optional[SignalExpr] = f
    for _ in range(order):
        g = _diff_once(g)
        if g is None:  # derivative is identically zero
            return LinComb(0.0, f, 0.0, f)
    return g


# ---------------------------------------------------------------------------
# canonical text rendering (DSL syntax where one exists)


def _fmt_real(x: float) -> str:
    return repr(float(x))


def _fmt_coeff(c: complex) -> str:
    if c.imag == 0.0:
        return _fmt_real(c.real)
    sign = "+" if c.imag >= 0 else "-"
    return f"({_fmt_real(c.real)}{sign}{_fmt_real(abs(c.imag))}i)"


def _flatten_sum(f: SignalExpr, scale: complex):
    if isinstance(f, LinComb):
        out = []
        if f.a != 0:
            out.extend(_flatten_sum(f.f, scale * f.a))
        if f.b != 0:
            out.extend(_flatten_sum(f.g, scale * f.b))
        if not out:
            out = [(0j, f.f)]
        return out
    return [(scale, f)]


def _to_text(f: SignalExpr) -> str:
    if isinstance(f, LinComb):
        terms = []
        for coeff, atom in _flatten_sum(f, 1.0 + 0j):
            body = _to_text(atom)
            terms.append(body if coeff == 1 else f"{_fmt_coeff(coeff)}*{body}")
        return " + ".join(terms)
    if isinstance(f, RectPulse):
        return f"rect({_fmt_real(f.half_width)})"
    if isinstance(f, UnilatNegExp):
        return f"unilat_exp({_fmt_real(f.rate)})"
    if isinstance(f, BilateralExp):
        return "bilateral_exp()"
    if isinstance(f, SineToneBurst):
        return f"sine_burst({_fmt_real(f.half_width)}, {_fmt_real(f.frequency)})"
    if isinstance(f, DampedUnilatSine):
        return f"damped_sine({_fmt_real(f.rate)}, {_fmt_real(f.frequency)})"
    if isinstance(f, Gaussian):
        return "gauss()"
    if isinstance(f, TimeShift):
        return f"shift({_to_text(f.f)}, {_fmt_real(f.shift)})"
    if isinstance(f, TimeScale):
        return f"scale({_to_text(f.f)}, {_fmt_real(f.factor)})"
    if isinstance(f, TimeReverse):
        return f"reverse({_to_text(f.f)})"
    if isinstance(f, ModCos):
        return f"modcos({_to_text(f.f)}, {_fmt_real(f.frequency)})"
    if isinstance(f, ModSin):
        return f"modsin({_to_text(f.f)}, {_fmt_real(f.frequency)})"
    if isinstance(f, FreqShiftExp):
        sign = "+" if f.sign > 0 else "-"
        return f"cexp_shift({_to_text(f.f)}, {_fmt_real(f.frequency)}, {sign})"
    if isinstance(f, Derivative):
        return f"deriv({_to_text(f.f)}, {f.order})"
    if isinstance(f, PolyMul):
        poly = " + ".join(f"{_fmt_coeff(c)}*t^{k}" for k, c in enumerate(f.coeffs) if c != 0)
        return f"[{poly}]*({_to_text(f.inner)})"
    raise UnsupportedNode(f"no text form for {type(f).__name__}")
