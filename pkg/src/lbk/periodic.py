"""Period-T integrands: expression parsing, sampling, Fourier coefficients.

Coefficients are mean-normalized,

    c_n(p) = (1/T) * integral_{-T/2}^{T/2} p(x) exp(-2 pi i n x / T) dx,

which makes the downstream evaluation identity hold for every period, not
just T = 1.  Catalog constructors carry closed-form coefficient rules so the
numeric quadrature path always has an exact regression target.

Periods are exact rationals: whether a sample node n/T lands on a kernel
breakpoint or an excluded point must be decidable, and floating periods would
make that test ill-posed.  An irrational period has to be approximated by the
caller with a rational (floats convert exactly); the approximation is then
honored bit for bit.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .quadrature import integrate
from .rationals import as_fraction

__all__ = [
    "ParseError",
    "PeriodicFunction",
    "parse_periodic",
    "from_samples",
    "fourier_coefficient",
    "linear_combination",
    "constant",
    "cosine",
    "sine",
    "square_wave",
    "sawtooth",
    "triangle_wave",
    "abs_sine",
    "trig_polynomial",
]

TWO_PI = 2.0 * math.pi


# --------------------------------------------------------------------------
# expression language
# --------------------------------------------------------------------------

class ParseError(ValueError):
    """Syntax error with the 0-based position in the source text."""

    def __init__(self, message: str, source: str, position: int):
        super().__init__(f"{message} at position {position}: {source!r}")
        self.source = source
        self.position = position


class Node:
    pass


@dataclass(frozen=True)
class Literal(Node):
    value: Fraction
    text: str


@dataclass(frozen=True)
class Symbol(Node):
    name: str  # "x" or "pi"


@dataclass(frozen=True)
class Unary(Node):
    op: str
    operand: Node


@dataclass(frozen=True)
class Binary(Node):
    op: str
    left: Node
    right: Node


@dataclass(frozen=True)
class Call(Node):
    func: str  # sin | cos | abs
    arg: Node


_FUNCTIONS = ("sin", "cos", "abs")


def _tokenize(source: str):
    tokens = []
    i, n = 0, len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        if ch in "+-*/^()":
            tokens.append((ch, ch, i))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            j = i
            while j < n and (source[j].isdigit() or source[j] == "."):
                j += 1
            text = source[i:j]
            if text.count(".") > 1 or text == ".":
                raise ParseError(f"malformed number {text!r}", source, i)
            tokens.append(("num", text, i))
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < n and source[j].isalnum():
                j += 1
            tokens.append(("name", source[i:j], i))
            i = j
            continue
        raise ParseError(f"unexpected character {ch!r}", source, i)
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    """Recursive descent over: ^  >  unary -  >  * /  >  + -."""

    def __init__(self, source: str):
        self.source = source
        self.tokens = _tokenize(source)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str):
        tok = self.advance()
        if tok[0] != kind:
            raise ParseError(
                f"expected {kind!r}, found {tok[1]!r}" if tok[1] else f"expected {kind!r}, found end of input",
                self.source,
                tok[2],
            )
        return tok

    def parse(self) -> Node:
        node = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            msg = "unbalanced parenthesis" if tok[0] == ")" else f"unexpected {tok[1]!r}"
            raise ParseError(msg, self.source, tok[2])
        return node

    def expr(self) -> Node:
        node = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.advance()[0]
            node = Binary(op, node, self.term())
        return node

    def term(self) -> Node:
        node = self.factor()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.advance()
            rhs_pos = self.peek()[2]
            rhs = self.factor()
            if op == "/" and isinstance(rhs, Literal) and rhs.value == 0:
                raise ParseError("division by the literal 0", self.source, rhs_pos)
            node = Binary(op, node, rhs)
        return node

    def factor(self) -> Node:
        tok = self.peek()
        if tok[0] == "-":
            self.advance()
            return Unary("-", self.factor())
        return self.power()

    def power(self) -> Node:
        base = self.atom()
        if self.peek()[0] == "^":
            self.advance()
            tok = self.advance()
            if tok[0] != "num":
                raise ParseError("exponent must be a nonnegative integer", self.source, tok[2])
            value = Fraction(tok[1])
            if value.denominator != 1:
                raise ParseError("exponent must be a nonnegative integer", self.source, tok[2])
            return Binary("^", base, Literal(value, tok[1]))
        return base

    def atom(self) -> Node:
        tok = self.advance()
        kind, text, pos = tok
        if kind == "num":
            return Literal(Fraction(text), text)
        if kind == "name":
            if text == "x":
                return Symbol("x")
            if text == "pi":
                return Symbol("pi")
            if text in _FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                closing = self.advance()
                if closing[0] != ")":
                    raise ParseError("unbalanced parenthesis", self.source, closing[2])
                return Call(text, arg)
            raise ParseError(f"unknown name {text!r}", self.source, pos)
        if kind == "(":
            node = self.expr()
            closing = self.advance()
            if closing[0] != ")":
                raise ParseError("unbalanced parenthesis", self.source, closing[2])
            return node
        if kind == "end":
            raise ParseError("unexpected end of input", self.source, pos)
        raise ParseError(f"unexpected {text!r}", self.source, pos)


def parse_expression(source: str) -> Node:
    if not source or not source.strip():
        raise ParseError("empty expression", source, 0)
    return _Parser(source).parse()


def compile_expression(node: Node) -> Callable[[float], float]:
    """Compile the tree into a closure over x."""
    if isinstance(node, Literal):
        v = float(node.value)
        return lambda x: v
    if isinstance(node, Symbol):
        if node.name == "pi":
            return lambda x: math.pi
        return lambda x: x
    if isinstance(node, Unary):
        f = compile_expression(node.operand)
        return lambda x: -f(x)
    if isinstance(node, Call):
        f = compile_expression(node.arg)
        fn = {"sin": math.sin, "cos": math.cos, "abs": abs}[node.func]
        return lambda x: fn(f(x))
    if isinstance(node, Binary):
        lf = compile_expression(node.left)
        if node.op == "^":
            k = int(node.right.value)  # validated at parse time
            return lambda x: lf(x) ** k
        rf = compile_expression(node.right)
        if node.op == "+":
            return lambda x: lf(x) + rf(x)
        if node.op == "-":
            return lambda x: lf(x) - rf(x)
        if node.op == "*":
            return lambda x: lf(x) * rf(x)
        return lambda x: lf(x) / rf(x)
    raise TypeError(f"unknown node {node!r}")


_PRECEDENCE = {"+": 1, "-": 1, "*": 2, "/": 2, "neg": 3, "^": 4}


def to_source(node: Node, parent_prec: int = 0) -> str:
    """Pretty-print with minimal parentheses; re-parsing gives an equal tree."""
    if isinstance(node, Literal):
        return node.text
    if isinstance(node, Symbol):
        return node.name
    if isinstance(node, Call):
        return f"{node.func}({to_source(node.arg)})"
    if isinstance(node, Unary):
        inner = to_source(node.operand, _PRECEDENCE["neg"])
        text = f"-{inner}"
        return f"({text})" if parent_prec > _PRECEDENCE["neg"] else text
    if isinstance(node, Binary):
        prec = _PRECEDENCE[node.op]
        left = to_source(node.left, prec)
        # left-associative: right operand binds one level tighter
        right = to_source(node.right, prec + 1)
        text = f"{left}{node.op}{right}"
        return f"({text})" if parent_prec > prec else text
    raise TypeError(f"unknown node {node!r}")


# --------------------------------------------------------------------------
# periodic functions
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class PeriodicFunction:
    """A period-T integrand with declared jumps and optional exact coefficients.

    `body` evaluates on the fundamental interval [-T/2, T/2); evaluation
    anywhere on the line reduces the argument modulo T first.  `jump_points`
    lists the locations in [-T/2, T/2] where the body may fail to be smooth
    (value jumps or kinks); quadrature splits panels there.
    """

    period: Fraction
    body: Callable[[float], complex]
    jump_points: tuple[Fraction, ...] = ()
    analytic_coeffs: Optional[Callable[[int], complex]] = None
    label: str = ""
    source: Optional[str] = None

    def __post_init__(self):
        T = as_fraction(self.period)
        if T <= 0:
            raise ValueError(f"period must be positive, got {T}")
        half = T / 2
        jumps = tuple(sorted(as_fraction(j) for j in set(self.jump_points)))
        if any(j < -half or j > half for j in jumps):
            raise ValueError("jump points must lie in [-T/2, T/2]")
        object.__setattr__(self, "period", T)
        object.__setattr__(self, "jump_points", jumps)

    def reduce(self, x: float) -> float:
        """Reduce x into [-T/2, T/2)."""
        t = float(self.period)
        return x - t * math.floor(x / t + 0.5)

    def __call__(self, x: float) -> complex:
        return self.body(self.reduce(x))

    def jumps_in(self, a: Fraction, b: Fraction) -> list[Fraction]:
        """All translates j + m*T of declared jumps inside [a, b], exactly."""
        a, b = as_fraction(a), as_fraction(b)
        T = self.period
        out = set()
        for j in self.jump_points:
            m = math.ceil((a - j) / T)
            while j + m * T <= b:
                out.add(j + m * T)
                m += 1
        return sorted(out)

    def magnitude_estimate(self, samples: int = 256) -> float:
        """Crude sup-norm estimate by uniform sampling over one period."""
        t = float(self.period)
        xs = (-t / 2 + t * (i + 0.5) / samples for i in range(samples))
        return max(abs(self.body(x)) for x in xs)


def parse_periodic(
    source: str,
    T,
    jumps: Optional[Sequence] = None,
) -> PeriodicFunction:
    """Parse the expression language into a PeriodicFunction of period T."""
    tree = parse_expression(source)
    f = compile_expression(tree)
    return PeriodicFunction(
        period=as_fraction(T),
        body=f,
        jump_points=tuple(as_fraction(j) for j in (jumps or ())),
        label=source.strip(),
        source=to_source(tree),
    )


def from_samples(values: Sequence[complex], T) -> PeriodicFunction:
    """Piecewise-linear interpolant of uniform samples on [-T/2, T/2).

    The wraparound cell interpolates from the last sample back to the first,
    so a mismatch between the two period ends is allowed and is declared as a
    jump at -T/2.
    """
    vals = np.asarray(list(values), dtype=complex)
    if vals.ndim != 1 or len(vals) < 8:
        raise ValueError(f"need at least 8 samples, got {vals.size}")
    T = as_fraction(T)
    n = len(vals)
    t = float(T)

    def body(x: float) -> complex:
        u = (x / t + 0.5) * n
        j = math.floor(u)
        theta = u - j
        j %= n
        return (1.0 - theta) * vals[j] + theta * vals[(j + 1) % n]

    return PeriodicFunction(
        period=T,
        body=body,
        jump_points=(-T / 2,),
        label=f"samples[{n}]",
    )


def fourier_coefficient(p: PeriodicFunction, n: int, tol: float = 1e-10) -> complex:
    """Mean-normalized coefficient c_n(p), exact when the catalog rule exists.

    The numeric path integrates over [-T/2, T/2] split at declared jump
    points, to absolute error <= tol.  Raises QuadratureError (with the
    achieved estimate) if the panel budget runs out.
    """
    if not 0.0 < tol <= 1e-2:
        raise ValueError(f"tolerance must lie in (0, 1e-2], got {tol}")
    if p.analytic_coeffs is not None:
        return complex(p.analytic_coeffs(n))
    T = float(p.period)
    half = p.period / 2
    omega = TWO_PI * n / T
    body = p.body

    def integrand(x: float) -> complex:
        return body(x) * cmath.exp(-1j * omega * x) / T

    splits = [float(j) for j in p.jump_points if -half < j < half]
    # pre-split once per oscillation so the adaptive pass starts well resolved
    oscillations = max(1, min(abs(n), 64))
    if oscillations > 1:
        width = float(half) * 2 / oscillations
        splits.extend(float(-half) + i * width for i in range(1, oscillations))
    value, _err = integrate(
        integrand, -float(half), float(half), tol, split_points=splits
    )
    return value


# --------------------------------------------------------------------------
# catalog
# --------------------------------------------------------------------------

def _catalog(T, body, coeffs, label, jumps=()) -> PeriodicFunction:
    return PeriodicFunction(
        period=as_fraction(T),
        body=body,
        jump_points=jumps,
        analytic_coeffs=coeffs,
        label=label,
    )


def constant(T, value: complex = 1.0) -> PeriodicFunction:
    v = complex(value)
    return _catalog(T, lambda x: v, lambda n: v if n == 0 else 0.0, f"constant({value})")


def cosine(T, m: int = 1) -> PeriodicFunction:
    """cos(2 pi m x / T); coefficients 1/2 at n = +-m."""
    w = TWO_PI * m / float(as_fraction(T))
    return _catalog(
        T,
        lambda x: math.cos(w * x),
        lambda n: 0.5 if abs(n) == m else 0.0,
        f"cos(2*pi*{m}*x/T)",
    )


def sine(T, m: int = 1) -> PeriodicFunction:
    """sin(2 pi m x / T); coefficients -i/2 at n = m, i/2 at n = -m."""
    w = TWO_PI * m / float(as_fraction(T))

    def coeffs(n: int) -> complex:
        if n == m:
            return -0.5j
        if n == -m:
            return 0.5j
        return 0.0

    return _catalog(T, lambda x: math.sin(w * x), coeffs, f"sin(2*pi*{m}*x/T)")


def square_wave(T) -> PeriodicFunction:
    """+1 on (0, T/2), -1 on (-T/2, 0); c_n = 2/(i pi n) for odd n."""
    T = as_fraction(T)

    def body(x: float) -> float:
        if x == 0.0 or abs(x) == float(T) / 2:
            return 0.0
        return 1.0 if x > 0 else -1.0

    def coeffs(n: int) -> complex:
        if n % 2 == 0:
            return 0.0
        return 2.0 / (1j * math.pi * n)

    return _catalog(T, body, coeffs, "square", jumps=(-T / 2, Fraction(0), T / 2))


def sawtooth(T) -> PeriodicFunction:
    """2x/T on (-T/2, T/2); c_n = i (-1)^n / (pi n) for n != 0."""
    T = as_fraction(T)
    t = float(T)

    def coeffs(n: int) -> complex:
        if n == 0:
            return 0.0
        sign = 1.0 if n % 2 == 0 else -1.0
        return 1j * sign / (math.pi * n)

    return _catalog(
        T, lambda x: 2.0 * x / t, coeffs, "sawtooth", jumps=(-T / 2, T / 2)
    )


def triangle_wave(T) -> PeriodicFunction:
    """1 - 4|x|/T on [-T/2, T/2]; c_n = 4/(pi^2 n^2) for odd n."""
    T = as_fraction(T)
    t = float(T)

    def coeffs(n: int) -> complex:
        if n == 0 or n % 2 == 0:
            return 0.0
        return 4.0 / (math.pi * n) ** 2

    return _catalog(
        T,
        lambda x: 1.0 - 4.0 * abs(x) / t,
        coeffs,
        "triangle",
        jumps=(-T / 2, Fraction(0), T / 2),
    )


def abs_sine(T) -> PeriodicFunction:
    """|sin(pi x / T)|; c_n = 2 / (pi (1 - 4 n^2))."""
    T = as_fraction(T)
    w = math.pi / float(T)
    return _catalog(
        T,
        lambda x: abs(math.sin(w * x)),
        lambda n: 2.0 / (math.pi * (1.0 - 4.0 * n * n)),
        "abs-sine",
        jumps=(-T / 2, Fraction(0), T / 2),
    )


def trig_polynomial(T, cos_coeffs: Sequence[float], sin_coeffs: Sequence[float] = ()) -> PeriodicFunction:
    """a_0 + sum_j a_j cos(2 pi j x / T) + b_j sin(2 pi j x / T).

    cos_coeffs[0] is the constant term; sin_coeffs[0] is ignored if present.
    """
    a = [float(c) for c in cos_coeffs]
    b = [float(c) for c in sin_coeffs]
    w = TWO_PI / float(as_fraction(T))

    def body(x: float) -> float:
        total = a[0] if a else 0.0
        for j in range(1, len(a)):
            total += a[j] * math.cos(w * j * x)
        for j in range(1, len(b)):
            total += b[j] * math.sin(w * j * x)
        return total

    def coeffs(n: int) -> complex:
        m = abs(n)
        if m == 0:
            return complex(a[0]) if a else 0.0
        am = a[m] if m < len(a) else 0.0
        bm = b[m] if m < len(b) else 0.0
        if n > 0:
            return 0.5 * (am - 1j * bm)
        return 0.5 * (am + 1j * bm)

    return _catalog(T, body, coeffs, "trig-polynomial")


def linear_combination(pairs: Sequence[tuple[complex, PeriodicFunction]]) -> PeriodicFunction:
    """alpha*p + beta*q + ... for functions sharing one period."""
    if not pairs:
        raise ValueError("need at least one (coefficient, function) pair")
    T = pairs[0][1].period
    if any(p.period != T for _, p in pairs):
        raise ValueError("all combined functions must share the same period")
    funcs = [(complex(c), p) for c, p in pairs]

    def body(x: float) -> complex:
        return sum(c * p.body(x) for c, p in funcs)

    coeffs = None
    if all(p.analytic_coeffs is not None for _, p in funcs):
        def coeffs(n: int) -> complex:
            return sum(c * p.analytic_coeffs(n) for c, p in funcs)

    jumps = tuple(sorted({j for _, p in funcs for j in p.jump_points}))
    return PeriodicFunction(
        period=T,
        body=body,
        jump_points=jumps,
        analytic_coeffs=coeffs,
        label=" + ".join(f"{c}*{p.label}" for c, p in funcs),
    )
