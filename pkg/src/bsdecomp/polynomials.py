"""Exact univariate polynomials over Q.

These carry the coefficients of translated Betti table families: everything is
a polynomial in the power exponent k, stored constant term first, and all
arithmetic is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"not an exact rational: {value!r}")


@dataclass(frozen=True)
class PolynomialQ:
    """Polynomial in one variable with rational coefficients, constant first.

    The zero polynomial is the empty tuple; otherwise the last coefficient is
    nonzero. Instances are immutable and hashable.
    """

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self):
        coeffs = tuple(_as_fraction(c) for c in self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    def __bool__(self) -> bool:
        return bool(self.coefficients)

    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def __call__(self, point) -> Fraction:
        x = _as_fraction(point)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def __add__(self, other: PolynomialQ) -> PolynomialQ:
        a, b = self.coefficients, other.coefficients
        if len(a) < len(b):
            a, b = b, a
        merged = list(a)
        for m, c in enumerate(b):
            merged[m] += c
        return PolynomialQ(tuple(merged))

    def __neg__(self) -> PolynomialQ:
        return PolynomialQ(tuple(-c for c in self.coefficients))

    def __sub__(self, other: PolynomialQ) -> PolynomialQ:
        return self + (-other)

    def __mul__(self, other) -> PolynomialQ:
        if isinstance(other, (int, Fraction)):
            q = _as_fraction(other)
            return PolynomialQ(tuple(c * q for c in self.coefficients))
        if not isinstance(other, PolynomialQ):
            return NotImplemented
        if not self or not other:
            return PolynomialQ()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for m, c in enumerate(self.coefficients):
            if c == 0:
                continue
            for p, d in enumerate(other.coefficients):
                out[m + p] += c * d
        return PolynomialQ(tuple(out))

    __rmul__ = __mul__

    def text(self, variable: str = "k") -> str:
        """Human-readable form in ascending degree, e.g. ``2*k - 3*k^2 + k^3``."""
        if not self.coefficients:
            return "0"
        parts: list[str] = []
        for m, c in enumerate(self.coefficients):
            if c == 0:
                continue
            mag = abs(c)
            if m == 0:
                body = str(mag)
            else:
                power = variable if m == 1 else f"{variable}^{m}"
                body = power if mag == 1 else f"{mag}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"PolynomialQ({self.text()})"


def constant(value) -> PolynomialQ:
    return PolynomialQ((_as_fraction(value),))


def interpolate_consecutive(start: int, values: Sequence) -> PolynomialQ:
    """Unique polynomial of degree < len(values) through (start+t, values[t]).

    Newton forward differences on the integer grid; exact, no pivoting needed.
    """
    ys = [_as_fraction(v) for v in values]
    if not ys:
        raise ValueError("need at least one sample")
    deltas: list[Fraction] = []
    row = ys
    while row:
        deltas.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    # p(x) = sum_m deltas[m] * binom(x - start, m)
    result = PolynomialQ()
    binom = constant(1)
    for m, d in enumerate(deltas):
        if m > 0:
            binom = binom * PolynomialQ((Fraction(-(start + m - 1)), Fraction(1))) * Fraction(1, m)
        if d:
            result = result + binom * d
    return result


def cauchy_threshold(p: PolynomialQ) -> int:
    """Integer T >= 0 with no real root of p beyond T.

    For every integer k > T the sign of p(k) equals the sign of the leading
    coefficient (Cauchy root bound, floored). Constants and zero get T = 0.
    """
    if p.degree() <= 0:
        return 0
    lead = abs(p.coefficients[-1])
    bound = 1 + max(abs(c) for c in p.coefficients[:-1]) / lead
    return max(0, math.floor(bound))


_WALK_LIMIT = 4096  # refinement steps; any early stop still returns a sound bound


def sign_threshold(p: PolynomialQ) -> int:
    """Least integer T >= 0 (best effort) with sign(p(k)) fixed for all k > T.

    The Cauchy bound certifies everything beyond it; the integers below are
    then checked one by one, so the certificate stays exact while the
    threshold drops to where the sign actually settles. The downward walk is
    capped, which can only leave the threshold larger than necessary.
    """
    if p.degree() <= 0:
        return 0
    positive = p.leading_coefficient() > 0
    t = cauchy_threshold(p)
    for _ in range(_WALK_LIMIT):
        if t == 0:
            break
        value = p(t)
        if value == 0 or (value > 0) != positive:
            break
        t -= 1
    return t


def eventually_positive(p: PolynomialQ) -> bool:
    return bool(p) and p.leading_coefficient() > 0


def eventually_nonnegative(p: PolynomialQ) -> bool:
    return not p or p.leading_coefficient() > 0


def eventual_min(polys: Sequence[PolynomialQ]) -> tuple[int, int]:
    """Index of the eventually smallest polynomial, with a sign-change bound.

    Returns ``(index, threshold)``: for every integer k > threshold,
    ``polys[index](k) <= polys[j](k)`` for all j. Ties between identical
    polynomials go to the lowest index. The threshold covers every pairwise
    comparison (no difference changes sign beyond it, by the Cauchy bound),
    so it certifies the whole family at once.
    """
    if not polys:
        raise ValueError("need at least one polynomial")
    best = 0
    for j in range(1, len(polys)):
        diff = polys[j] - polys[best]
        if diff and diff.leading_coefficient() < 0:
            best = j
    threshold = 0
    for a in range(len(polys)):
        for b in range(a + 1, len(polys)):
            threshold = max(threshold, sign_threshold(polys[a] - polys[b]))
    return best, threshold
