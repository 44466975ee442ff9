"""Textual front end: signal expressions, system specs, frequency grids.

The signal grammar (recursive descent, single pass):

    signal     := term ("+" term)*
    term       := [coeff "*"] atom
    coeff      := NUMBER | "(" complex ")"
    complex    := NUMBER ["i"] [("+"|"-") NUMBER "i"] | "i"
    atom       := primitive | combinator
    primitive  := rect(num) | unilat_exp(num) | bilateral_exp()
                | sine_burst(num, num) | damped_sine(num, num) | gauss()
    combinator := shift(signal, num) | scale(signal, num) | reverse(signal)
                | modcos(signal, num) | modsin(signal, num)
                | cexp_shift(signal, num, ("+"|"-")) | deriv(signal, int)

Terms fold into nested two-slot linear combinations, left associated; a
single scaled term becomes ``LinComb(c, atom, 0, atom)``.  Printing a parsed
tree with ``str()`` and re-parsing reproduces the tree exactly.

System specs are either ``builtin:<name>(k=v, ...)`` or explicit
``out=[b0,b1,...]; in=[a0,a1,...]`` coefficient lists.  Frequency grids are
comma lists or inclusive ``start:step:stop`` ranges.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .errors import ConstraintViolation, DslSyntaxError
from .signals import (
    BilateralExp,
    DampedUnilatSine,
    Derivative,
    FreqShiftExp,
    Gaussian,
    LinComb,
    ModCos,
    ModSin,
    RectPulse,
    SignalExpr,
    SineToneBurst,
    TimeReverse,
    TimeScale,
    TimeShift,
    UnilatNegExp,
)
from .systems import DiffEqSystem, builtin_system

__all__ = ["parse_signal_dsl", "parse_system_spec", "parse_omega_spec", "to_dsl"]

_NUMBER = re.compile(r"\d+(\.\d*)?([eE][+-]?\d+)?|\.\d+([eE][+-]?\d+)?")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


@dataclass(frozen=True)
class _Token:
    kind: str  # NUMBER, IDENT, or a literal symbol
    text: str
    pos: int


def _tokenize(text: str) -> List[_Token]:
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        m = _NUMBER.match(text, i)
        if m:
            tokens.append(_Token("NUMBER", m.group(), i))
            i = m.end()
            continue
        m = _IDENT.match(text, i)
        if m:
            tokens.append(_Token("IDENT", m.group(), i))
            i = m.end()
            continue
        if ch in "()+-*,":
            tokens.append(_Token(ch, ch, i))
            i += 1
            continue
        raise _error(text, i, f"unexpected character {ch!r}", ["number", "name", "( ) + - * ,"])
    tokens.append(_Token("EOF", "", len(text)))
    return tokens


def _line_col(text: str, pos: int) -> Tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def _error(text: str, pos: int, message: str, expected=()) -> DslSyntaxError:
    line, col = _line_col(text, pos)
    return DslSyntaxError(message, pos, line, col, expected)


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Token:
        return self.tokens[self.i]

    def bump(self) -> _Token:
        tok = self.cur
        self.i += 1
        return tok

    def expect(self, kind: str) -> _Token:
        if self.cur.kind != kind:
            raise _error(
                self.text,
                self.cur.pos,
                f"expected {kind!r}, found {self.cur.text or 'end of input'!r}",
                [kind],
            )
        return self.bump()

    def fail(self, message: str, expected=()):
        raise _error(self.text, self.cur.pos, message, expected)

    # numbers ---------------------------------------------------------------

    def number(self) -> float:
        sign = 1.0
        if self.cur.kind in "+-":
            sign = -1.0 if self.bump().kind == "-" else 1.0
        tok = self.expect("NUMBER")
        return sign * float(tok.text)

    def integer(self) -> int:
        start = self.cur.pos
        x = self.number()
        if x != int(x):
            raise _error(self.text, start, f"expected an integer, found {x}", ["integer"])
        return int(x)

    def _complex_body(self) -> complex:
        # inside parentheses: re [i] [(+|-) im i]  |  i
        if self.cur.kind == "IDENT" and self.cur.text == "i":
            self.bump()
            return 1j
        re_part = self.number()
        if self.cur.kind == "IDENT" and self.cur.text == "i":
            self.bump()
            return complex(0.0, re_part)
        if self.cur.kind in "+-":
            sign = -1.0 if self.bump().kind == "-" else 1.0
            im = float(self.expect("NUMBER").text)
            tok = self.expect("IDENT")
            if tok.text != "i":
                raise _error(self.text, tok.pos, "expected the imaginary unit 'i'", ["i"])
            return complex(re_part, sign * im)
        return complex(re_part, 0.0)

    def coefficient(self) -> complex:
        if self.cur.kind == "(":
            self.bump()
            value = self._complex_body()
            self.expect(")")
            return value
        return complex(self.number())

    # signal grammar ---------------------------------------------------------

    def signal(self) -> SignalExpr:
        coeff, atom = self.term()
        expr: Optional[SignalExpr] = None
        first = (coeff, atom)
        terms = [first]
        while self.cur.kind == "+":
            self.bump()
            terms.append(self.term())
        if len(terms) == 1:
            c, node = terms[0]
            return node if c == 1 else LinComb(c, node, 0.0, node)
        (c1, n1), (c2, n2) = terms[0], terms[1]
        expr = LinComb(c1, n1, c2, n2)
        for c, node in terms[2:]:
            expr = LinComb(1.0, expr, c, node)
        return expr

    def term(self) -> Tuple[complex, SignalExpr]:
        if self.cur.kind in ("NUMBER", "(", "-"):
            coeff = self.coefficient()
            self.expect("*")
            return coeff, self.atom()
        if self.cur.kind == "IDENT":
            return 1.0 + 0j, self.atom()
        self.fail(
            f"expected a coefficient or signal name, found {self.cur.text or 'end of input'!r}",
            ["number", "(re+imi)", "signal name"],
        )

    def atom(self) -> SignalExpr:
        tok = self.expect("IDENT")
        name = tok.text
        self.expect("(")
        try:
            node = self._atom_body(name, tok.pos)
        except ConstraintViolation as exc:
            if exc.span is None:
                exc.span = (tok.pos, self.cur.pos)
            raise
        self.expect(")")
        return node

    def _atom_body(self, name: str, start: int) -> SignalExpr:
        if name == "rect":
            return RectPulse(self.number())
        if name == "unilat_exp":
            return UnilatNegExp(self.number())
        if name == "bilateral_exp":
            return BilateralExp()
        if name == "sine_burst":
            T1 = self.number()
            self.expect(",")
            return SineToneBurst(T1, self.number())
        if name == "damped_sine":
            c = self.number()
            self.expect(",")
            return DampedUnilatSine(c, self.number())
        if name == "gauss":
            return Gaussian()
        if name == "shift":
            f = self.signal()
            self.expect(",")
            return TimeShift(f, self.number())
        if name == "scale":
            f = self.signal()
            self.expect(",")
            return TimeScale(f, self.number())
        if name == "reverse":
            return TimeReverse(self.signal())
        if name == "modcos":
            f = self.signal()
            self.expect(",")
            return ModCos(f, self.number())
        if name == "modsin":
            f = self.signal()
            self.expect(",")
            return ModSin(f, self.number())
        if name == "cexp_shift":
            f = self.signal()
            self.expect(",")
            w0 = self.number()
            self.expect(",")
            if self.cur.kind not in "+-":
                self.fail("expected '+' or '-' for the exponent sign", ["+", "-"])
            sign = 1 if self.bump().kind == "+" else -1
            return FreqShiftExp(f, w0, sign)
        if name == "deriv":
            f = self.signal()
            self.expect(",")
            return Derivative(f, self.integer())
        raise _error(
            self.text,
            start,
            f"unknown signal constructor {name!r}",
            [
                "rect", "unilat_exp", "bilateral_exp", "sine_burst", "damped_sine",
                "gauss", "shift", "scale", "reverse", "modcos", "modsin",
                "cexp_shift", "deriv",
            ],
        )


def parse_signal_dsl(text: str) -> SignalExpr:
    """Parse signal text into an expression tree (constraints included)."""
    p = _Parser(text)
    expr = p.signal()
    if p.cur.kind != "EOF":
        raise _error(text, p.cur.pos, f"trailing input {p.cur.text!r}", ["end of input"])
    return expr


def to_dsl(f: SignalExpr) -> str:
    """Canonical text for a signal tree; parses back to an identical tree."""
    return str(f)


# ---------------------------------------------------------------------------
# system specs


def _parse_float_token(text: str, frag: str, offset: int) -> float:
    try:
        return float(frag)
    except ValueError:
        raise _error(text, offset, f"expected a number, found {frag!r}", ["number"]) from None


def parse_system_spec(text: str) -> DiffEqSystem:
    """Parse ``builtin:<name>(...)`` or explicit coefficient lists."""
    stripped = text.strip()
    if stripped.lower().startswith("builtin:"):
        body = stripped[len("builtin:"):].strip()
        m = re.fullmatch(r"([A-Za-z_][A-Za-z0-9_]*)\s*\((.*)\)", body)
        if not m:
            raise _error(text, text.find(body) if body else 0,
                         "expected builtin:<name>(k=v, ...)", ["builtin:<name>(...)"])
        name, arglist = m.group(1), m.group(2).strip()
        params = {}
        if arglist:
            for piece in arglist.split(","):
                if "=" not in piece:
                    raise _error(text, text.find(piece), "expected key=value", ["key=value"])
                key, val = piece.split("=", 1)
                params[key.strip()] = _parse_float_token(text, val.strip(), text.find(val))
        canon = {"wc": "wc", "k": "K", "d": "D", "m": "M"}
        params = {canon.get(k.lower(), k): v for k, v in params.items()}
        return builtin_system(name, **params)

    m = re.fullmatch(
        r"\s*out\s*=\s*\[([^\]]*)\]\s*;\s*in\s*=\s*\[([^\]]*)\]\s*", stripped
    )
    if not m:
        raise _error(
            text, 0,
            "expected 'out=[b0,b1,...]; in=[a0,a1,...]' or 'builtin:<name>(...)'",
            ["out=[...]; in=[...]", "builtin:<name>(...)"],
        )

    def coeffs(group: str) -> Tuple[float, ...]:
        parts = [p.strip() for p in group.split(",")] if group.strip() else []
        return tuple(_parse_float_token(text, p, text.find(p)) for p in parts)

    return DiffEqSystem(out_coeffs=coeffs(m.group(1)), in_coeffs=coeffs(m.group(2)))


def parse_omega_spec(spec) -> Tuple[float, ...]:
    """A frequency grid from a list, a comma list, or start:step:stop."""
    if isinstance(spec, (list, tuple)):
        return tuple(float(w) for w in spec)
    text = str(spec).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise _error(text, 0, "ranges are start:step:stop", ["start:step:stop"])
        start, step, stop = (_parse_float_token(text, p.strip(), text.find(p)) for p in parts)
        if step == 0:
            raise _error(text, 0, "range step must be nonzero", ["nonzero step"])
        if (stop - start) * step < 0:
            raise _error(text, 0, "range step points away from stop", ["consistent step"])
        count = int(math.floor((stop - start) / step + 0.5))
        values = [start + k * step for k in range(count + 1)]
        # keep endpoints inclusive within half a step
        return tuple(v for v in values if (v - stop) * math.copysign(1.0, step) <= 0.5 * abs(step))
    out = []
    for piece in text.split(","):
        piece = piece.strip()
        if not piece:
            continue
        out.append(_parse_float_token(text, piece, text.find(piece)))
    if not out:
        raise _error(text, 0, "empty frequency specification", ["number", "range"])
    return tuple(out)
