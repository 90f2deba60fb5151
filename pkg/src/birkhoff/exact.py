"""Exact integers, rationals and dense univariate polynomials.

Python ints are already arbitrary precision and ``fractions.Fraction`` keeps
itself in lowest terms with a positive denominator, so both are used directly
as the scalar types. This module adds the canonical constructors, the decimal
string wire form, a small immutable polynomial type and Newton interpolation.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence, Tuple, Union

Rational = Fraction
Number = Union[int, Fraction]


def canonicalize(num: int, den: int) -> Fraction:
    """Return num/den in canonical form (den > 0, reduced, zero as 0/1)."""
    if den == 0:
        raise ZeroDivisionError(f"canonicalize({num}, 0)")
    return Fraction(num, den)


def binomial(a: int, k: int) -> int:
    if a < 0 or k < 0:
        raise ValueError(f"binomial requires a, k >= 0, got ({a}, {k})")
    return math.comb(a, k)


def format_int(value: int) -> str:
    return str(int(value))


def parse_int(text: str) -> int:
    text = text.strip()
    body = text[1:] if text.startswith("-") else text
    if not body.isdigit() or not body.isascii():
        raise ValueError(f"not a decimal integer: {text!r}")
    return int(text)


def format_rational(value: Number) -> str:
    q = Fraction(value)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a bare integer. The result is always reduced."""
    text = text.strip()
    if "/" in text:
        num, den = text.split("/", 1)
        return canonicalize(parse_int(num), parse_int(den))
    return Fraction(parse_int(text))


def weak_compositions(total: int, parts: int, descending: bool = False) -> Iterator[Tuple[int, ...]]:
    """Yield all weak compositions of ``total`` into ``parts`` parts in lexicographic order."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    firsts = range(total, -1, -1) if descending else range(total + 1)
    for first in firsts:
        for rest in weak_compositions(total - first, parts - 1, descending):
            yield (first,) + rest


class Polynomial:
    """Immutable dense polynomial with rational coefficients, ascending degree."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[Number] = ()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self._coeffs: Tuple[Fraction, ...] = tuple(cs)

    @property
    def coeffs(self) -> Tuple[Fraction, ...]:
        return self._coeffs

    @property
    def degree(self) -> int:
        # the zero polynomial gets degree -1
        return len(self._coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self._coeffs[-1] if self._coeffs else Fraction(0)

    def __call__(self, x: Number) -> Fraction:
        return evaluate(self, x)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        return hash(self._coeffs)

    def __repr__(self) -> str:
        return f"Polynomial([{', '.join(format_rational(c) for c in self._coeffs)}])"

    def __add__(self, other: Polynomial) -> Polynomial:
        a, b = self._coeffs, other._coeffs
        if len(a) < len(b):
            a, b = b, a
        return Polynomial([x + (b[i] if i < len(b) else 0) for i, x in enumerate(a)])

    def __neg__(self) -> Polynomial:
        return Polynomial([-c for c in self._coeffs])

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other: Union[Polynomial, Number]) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial([c * other for c in self._coeffs])
        if not self._coeffs or not other._coeffs:
            return Polynomial()
        out = [Fraction(0)] * (len(self._coeffs) + len(other._coeffs) - 1)
        for i, x in enumerate(self._coeffs):
            for j, y in enumerate(other._coeffs):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__


def evaluate(p: Polynomial, x: Number) -> Fraction:
    """Horner evaluation, exact."""
    acc = Fraction(0)
    for c in reversed(p.coeffs):
        acc = acc * x + c
    return acc


def divided_differences(xs: Sequence[Fraction], ys: Sequence[Fraction]) -> list[Fraction]:
    """Newton coefficients [y0], [y0,y1], ..., [y0..yk] for the nodes ``xs``."""
    table = list(ys)
    out = [table[0]]
    for level in range(1, len(xs)):
        table = [
            (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            for i in range(len(table) - 1)
        ]
        out.append(table[0])
    return out


def interpolate(points: Sequence[Tuple[Number, Number]]) -> Polynomial:
    """Unique polynomial of degree < len(points) through ``points``.

    Raises ValueError on an empty point list or repeated abscissae.
    """
    if not points:
        raise ValueError("interpolate needs at least one point")
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation abscissae must be pairwise distinct")
    newton = divided_differences(xs, ys)
    # expand the Newton form into the monomial basis, innermost term first
    coeffs = [newton[-1]]
    for k in range(len(xs) - 2, -1, -1):
        # coeffs <- coeffs * (t - xs[k]) + newton[k]
        shifted = [Fraction(0)] + coeffs
        for i, c in enumerate(coeffs):
            shifted[i] -= xs[k] * c
        shifted[0] += newton[k]
        coeffs = shifted
    return Polynomial(coeffs)
