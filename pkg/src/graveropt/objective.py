"""Separable objectives built from one-dimensional discrete-convex pieces.

Every piece g maps Z to Q with g(0) = 0, has nondecreasing increments
g(j) - g(j-1), and attains its minimum at 0 (increments are <= 0 left
of the origin, >= 0 right of it).  An objective is a sum of pieces
composed with integer linear forms, plus a rational linear part.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .core import IntMatrix, ParseError, Vec, dot


class DiscreteConvexFn:
    """One-dimensional piece; subclasses define value(x)."""

    def value(self, x: int) -> Fraction:
        raise NotImplementedError

    def increment(self, j: int) -> Fraction:
        """g(j) - g(j-1)."""
        return self.value(j) - self.value(j - 1)


@dataclass(frozen=True)
class Zero(DiscreteConvexFn):
    def value(self, x: int) -> Fraction:
        return Fraction(0)


@dataclass(frozen=True)
class ScaledEvenPower(DiscreteConvexFn):
    """alpha * x**exponent with alpha > 0 and an even exponent >= 2."""

    alpha: Fraction
    exponent: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError("ScaledEvenPower: alpha must be positive")
        if self.exponent < 2 or self.exponent % 2:
            raise ValueError("ScaledEvenPower: exponent must be even and >= 2")

    def value(self, x: int) -> Fraction:
        return self.alpha * x ** self.exponent


@dataclass(frozen=True)
class ScaledAbs(DiscreteConvexFn):
    alpha: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", Fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError("ScaledAbs: alpha must be positive")

    def value(self, x: int) -> Fraction:
        return self.alpha * abs(x)


@dataclass(frozen=True)
class GeometricAbs(DiscreteConvexFn):
    """base**|x| - 1 for a rational base > 1."""

    base: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", Fraction(self.base))
        if self.base <= 1:
            raise ValueError("GeometricAbs: base must exceed 1")

    def value(self, x: int) -> Fraction:
        return self.base ** abs(x) - 1


@dataclass(frozen=True)
class PiecewiseTable(DiscreteConvexFn):
    """Increments tabulated on a finite window of integers.

    increments maps j to g(j) - g(j-1).  Queries outside the window
    raise unless extend=True, which continues with the boundary
    increment (a convexity-preserving growth rule).  Tables are not
    validated here; check_convex_window reports on them.
    """

    increments: tuple[tuple[int, Fraction], ...]
    extend: bool = False

    def __post_init__(self) -> None:
        if isinstance(self.increments, dict):
            items = self.increments.items()
        else:
            items = self.increments
        norm = tuple(sorted((int(j), Fraction(v)) for j, v in items))
        if not norm:
            raise ValueError("PiecewiseTable: empty increment table")
        keys = [j for j, _ in norm]
        if keys != list(range(keys[0], keys[-1] + 1)):
            raise ValueError("PiecewiseTable: window must be contiguous")
        object.__setattr__(self, "increments", norm)

    def _table(self) -> dict[int, Fraction]:
        return dict(self.increments)

    def increment(self, j: int) -> Fraction:
        table = self._table()
        if j in table:
            return table[j]
        lo = self.increments[0][0]
        hi = self.increments[-1][0]
        if not self.extend:
            raise ValueError("PiecewiseTable: increment %d outside window [%d, %d]"
                             % (j, lo, hi))
        return table[lo if j < lo else hi]

    def value(self, x: int) -> Fraction:
        total = Fraction(0)
        if x >= 0:
            for j in range(1, x + 1):
                total += self.increment(j)
        else:
            for j in range(x + 1, 1):
                total -= self.increment(j)
        return total


def check_convex_window(g: DiscreteConvexFn, lo: int, hi: int) -> bool:
    """Nondecreasing increments on [lo, hi], minimum at 0.

    Examines g(j) - g(j-1) for lo < j <= hi; increments must not
    decrease, must be <= 0 for j <= 0 and >= 0 for j >= 1.
    """
    if lo >= hi:
        raise ValueError("check_convex_window: need lo < hi")
    prev = None
    for j in range(lo + 1, hi + 1):
        inc = g.increment(j)
        if prev is not None and inc < prev:
            return False
        if j <= 0 and inc > 0:
            return False
        if j >= 1 and inc < 0:
            return False
        prev = inc
    return True


@dataclass(frozen=True)
class Term:
    """One composed piece: fn(coeffs . z + offset)."""

    fn: DiscreteConvexFn
    coeffs: Vec
    offset: int = 0

    def argument(self, z: Sequence[int]) -> int:
        return dot(self.coeffs, z) + self.offset


@dataclass(frozen=True)
class SeparableObjective:
    n: int
    terms: tuple[Term, ...]
    linear: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "linear", tuple(Fraction(x) for x in self.linear))
        if len(self.linear) != self.n:
            raise ValueError("SeparableObjective: linear part has wrong length")
        for t in self.terms:
            if len(t.coeffs) != self.n:
                raise ValueError("SeparableObjective: term coefficients have wrong length")

    def value(self, z: Sequence[int]) -> Fraction:
        if len(z) != self.n:
            raise ValueError("objective value: point has wrong dimension")
        total = sum((t.fn.value(t.argument(z)) for t in self.terms), Fraction(0))
        return total + sum((c * x for c, x in zip(self.linear, z)), Fraction(0))

    def coefficient_matrix(self) -> IntMatrix:
        """Rows are the terms' composition vectors, in term order."""
        return IntMatrix(len(self.terms), self.n,
                         tuple(t.coeffs for t in self.terms))

    def extended(self, total: int) -> "SeparableObjective":
        """Same objective over a wider variable vector (zero padding)."""
        if total < self.n:
            raise ValueError("extended: cannot shrink")
        pad = (0,) * (total - self.n)
        terms = tuple(Term(t.fn, t.coeffs + pad, t.offset) for t in self.terms)
        return SeparableObjective(total, terms,
                                  self.linear + (Fraction(0),) * (total - self.n))


def linear_objective(c: Sequence) -> SeparableObjective:
    cs = tuple(Fraction(x) for x in c)
    return SeparableObjective(len(cs), (), cs)


# ---------------------------------------------------------------------------
# text format: one line per term "<kind> <params> | coeffs | offset",
# one final line "linear | coeffs"; rational entries allowed as p/q.

def _format_fn(fn: DiscreteConvexFn) -> str:
    if isinstance(fn, Zero):
        return "zero"
    if isinstance(fn, ScaledEvenPower):
        return "evenpower %s %d" % (fn.alpha, fn.exponent)
    if isinstance(fn, ScaledAbs):
        return "abs %s" % fn.alpha
    if isinstance(fn, GeometricAbs):
        return "geomabs %s" % fn.base
    if isinstance(fn, PiecewiseTable):
        cells = " ".join("%d:%s" % (j, v) for j, v in fn.increments)
        return "table %s%s" % ("extend " if fn.extend else "", cells)
    raise ValueError("unknown function kind: %r" % (fn,))


def _parse_fn(text: str) -> DiscreteConvexFn:
    parts = text.split()
    if not parts:
        raise ParseError("objective term: missing function kind")
    kind, args = parts[0], parts[1:]
    try:
        if kind == "zero":
            return Zero()
        if kind == "evenpower":
            return ScaledEvenPower(Fraction(args[0]), int(args[1]))
        if kind == "abs":
            return ScaledAbs(Fraction(args[0]))
        if kind == "geomabs":
            return GeometricAbs(Fraction(args[0]))
        if kind == "table":
            extend = False
            if args and args[0] == "extend":
                extend = True
                args = args[1:]
            cells = []
            for cell in args:
                j, _, v = cell.partition(":")
                cells.append((int(j), Fraction(v)))
            return PiecewiseTable(tuple(cells), extend=extend)
    except (IndexError, ValueError, ZeroDivisionError) as e:
        raise ParseError("objective term %r: %s" % (text, e)) from None
    raise ParseError("objective term: unknown kind %r" % kind)


def format_objective(obj: SeparableObjective) -> str:
    lines = []
    for t in obj.terms:
        lines.append("%s | %s | %d" % (_format_fn(t.fn),
                                       " ".join(str(x) for x in t.coeffs),
                                       t.offset))
    lines.append("linear | %s" % " ".join(str(x) for x in obj.linear))
    return "\n".join(lines) + "\n"


def parse_objective(text: str) -> SeparableObjective:
    terms: list[Term] = []
    linear: tuple[Fraction, ...] | None = None
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if linear is not None:
            raise ParseError("objective: content after the linear line")
        parts = [p.strip() for p in line.split("|")]
        if parts[0] == "linear":
            if len(parts) != 2:
                raise ParseError("objective: linear line needs one | separator")
            try:
                linear = tuple(Fraction(x) for x in parts[1].split())
            except (ValueError, ZeroDivisionError) as e:
                raise ParseError("objective linear part: %s" % e) from None
            continue
        if len(parts) != 3:
            raise ParseError("objective term needs two | separators: %r" % line)
        fn = _parse_fn(parts[0])
        try:
            coeffs = tuple(int(x) for x in parts[1].split())
            offset = int(parts[2])
        except ValueError as e:
            raise ParseError("objective term %r: %s" % (line, e)) from None
        terms.append(Term(fn, coeffs, offset))
    if linear is None:
        raise ParseError("objective: missing linear line")
    n = len(linear)
    for t in terms:
        if len(t.coeffs) != n:
            raise ParseError("objective: term width %d != linear width %d"
                             % (len(t.coeffs), n))
    return SeparableObjective(n, tuple(terms), linear)
