"""Exact piecewise-linear models of the continuous examples.

* the family ``f_t`` on ``[0, 3]`` (``t`` in ``[0, 2]``) whose fixed points
  jump from 2 to 1 as ``t`` crosses 1,
* the radial retraction ``x -> λ(|x|) x`` onto the closed unit ball,
* fixed points of piecewise-linear contractions of ``[0, 1]`` and the bound
  ``|p(f) - p(g)| <= sup|f - g| / (1 - K)``.

All arithmetic is in :class:`fractions.Fraction`. The only inexact step is
the Euclidean norm in the middle band of the radial retraction; see
:func:`radial_retraction`.
"""
from __future__ import annotations

import math
import random
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import NotAContraction, OutOfDomain

Rational = Fraction

NORM_FRACTION_BITS = 64


def as_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass a Fraction, an int or a 'num/den' string")
    return Fraction(value)


def fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of closed intervals, kept sorted, disjoint and non-touching."""

    intervals: tuple[tuple[Fraction, Fraction], ...]

    def __post_init__(self):
        items = sorted((as_rational(a), as_rational(b)) for a, b in self.intervals)
        merged: list[list[Fraction]] = []
        for a, b in items:
            if a > b:
                raise ValueError(f"empty interval [{a}, {b}]")
            if merged and a <= merged[-1][1]:
                merged[-1][1] = max(merged[-1][1], b)
            else:
                merged.append([a, b])
        object.__setattr__(self, "intervals", tuple((a, b) for a, b in merged))

    @classmethod
    def point(cls, x) -> "IntervalSet":
        x = as_rational(x)
        return cls(((x, x),))

    def __contains__(self, x) -> bool:
        x = as_rational(x)
        return any(a <= x <= b for a, b in self.intervals)

    def is_singleton(self) -> bool:
        return len(self.intervals) == 1 and self.intervals[0][0] == self.intervals[0][1]

    def __str__(self) -> str:
        if not self.intervals:
            return "∅"
        return " ∪ ".join(f"[{fmt(a)}, {fmt(b)}]" for a, b in self.intervals)


class PiecewiseLinear:
    """Continuous piecewise-linear function through ``(breakpoints[i], values[i])``.

    Constant beyond the first and last breakpoint.
    """

    def __init__(self, breakpoints: Sequence, values: Sequence):
        xs = [as_rational(b) for b in breakpoints]
        ys = [as_rational(v) for v in values]
        if len(xs) != len(ys) or not xs:
            raise ValueError("need matching, non-empty breakpoint and value lists")
        if any(b <= a for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        self.breakpoints = tuple(xs)
        self.values = tuple(ys)

    @classmethod
    def affine(cls, slope, intercept, lo=0, hi=1) -> "PiecewiseLinear":
        slope, intercept = as_rational(slope), as_rational(intercept)
        lo, hi = as_rational(lo), as_rational(hi)
        return cls([lo, hi], [slope * lo + intercept, slope * hi + intercept])

    def __call__(self, x) -> Fraction:
        x = as_rational(x)
        xs, ys = self.breakpoints, self.values
        if x <= xs[0]:
            return ys[0]
        if x >= xs[-1]:
            return ys[-1]
        i = bisect_right(xs, x) - 1
        a, b = xs[i], xs[i + 1]
        return ys[i] + (ys[i + 1] - ys[i]) * (x - a) / (b - a)

    def pieces(self):
        for i in range(len(self.breakpoints) - 1):
            yield self.breakpoints[i], self.breakpoints[i + 1], self.values[i], self.values[i + 1]

    def slopes(self) -> list[Fraction]:
        return [(fb - fa) / (b - a) for a, b, fa, fb in self.pieces()]

    def fixed_points(self) -> IntervalSet:
        """Intersection of the graph with the diagonal over ``[first, last breakpoint]``."""
        found = []
        xs, ys = self.breakpoints, self.values
        if len(xs) == 1:
            return IntervalSet(((xs[0], xs[0]),) if ys[0] == xs[0] else ())
        for a, b, fa, fb in self.pieces():
            ga, gb = fa - a, fb - b
            if ga == 0 and gb == 0:
                found.append((a, b))
            elif ga == 0:
                found.append((a, a))
            elif gb == 0:
                found.append((b, b))
            elif (ga > 0) != (gb > 0):
                root = a + (b - a) * ga / (ga - gb)
                found.append((root, root))
        return IntervalSet(tuple(found))

    def sup_distance(self, other: "PiecewiseLinear") -> Fraction:
        """``sup |self - other|``; the difference is linear between merged breakpoints."""
        grid = sorted(set(self.breakpoints) | set(other.breakpoints))
        return max(abs(self(x) - other(x)) for x in grid)

    def __repr__(self) -> str:
        pts = ", ".join(f"({fmt(a)}, {fmt(b)})" for a, b in zip(self.breakpoints, self.values))
        return f"PiecewiseLinear[{pts}]"


# --- the jumping family ------------------------------------------------------

def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise OutOfDomain(f"{name}={value} outside [{lo}, {hi}]")


def family_f(t, x) -> Fraction:
    """``f_t(x)``: 1 up to ``t``, rising with slope one to 2 at ``t + 1``, then 2."""
    t, x = as_rational(t), as_rational(x)
    _check_range("t", t, 0, 2)
    _check_range("x", x, 0, 3)
    if x <= t:
        return Fraction(1)
    if x <= t + 1:
        return 1 + (x - t)
    return Fraction(2)


def family_slice(t) -> PiecewiseLinear:
    """``f_t`` on ``[0, 3]`` as a piecewise-linear function."""
    t = as_rational(t)
    _check_range("t", t, 0, 2)
    xs = sorted({Fraction(0), t, t + 1, Fraction(3)})
    return PiecewiseLinear(xs, [family_f(t, x) for x in xs])


def fixed_point_set(t) -> IntervalSet:
    return family_slice(t).fixed_points()


def sample_grid() -> list[Fraction]:
    """``t = k/100`` for ``k = 0..200``."""
    return [Fraction(k, 100) for k in range(201)]


def no_selection_certificate() -> tuple[Fraction, Fraction]:
    """Unique fixed points just left and right of ``t = 1``.

    Every grid point ``t < 1`` has the single fixed point 2 and every
    ``t > 1`` the single fixed point 1, so no continuous choice exists.
    """
    left, right = set(), set()
    for t in sample_grid():
        if t == 1:
            continue
        fix = fixed_point_set(t)
        assert fix.is_singleton(), (t, str(fix))
        side = left if t < 1 else right
        side.add(fix.intervals[0][0])
    assert len(left) == 1 and len(right) == 1
    return left.pop(), right.pop()


# --- radial retraction -------------------------------------------------------

def lam(t) -> Fraction:
    """Tent cutoff on ``[0, 3]``: ``t`` up to 1, ``2 - t`` up to 2, then 0."""
    t = as_rational(t)
    _check_range("t", t, 0, 3)
    if t <= 1:
        return t
    if t <= 2:
        return 2 - t
    return Fraction(0)


def _exact_sqrt(q: Fraction) -> Fraction | None:
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _sqrt_upper(q: Fraction, frac_bits: int = NORM_FRACTION_BITS) -> Fraction:
    """Smallest multiple of ``2**-frac_bits`` that is ``>= sqrt(q)``."""
    scaled = Fraction(q.numerator << (2 * frac_bits), q.denominator)
    r = math.isqrt(math.floor(scaled))
    if r * r < scaled:
        r += 1
    return Fraction(r, 1 << frac_bits)


def radial_retraction(x: Sequence, outside: bool = False, with_error: bool = False):
    """``x -> λ(|x|) x`` for points of ``R^n``, ``n <= 3``.

    Identity on the closed unit ball and zero outside radius 2; the case is
    chosen exactly from ``|x|^2``. Between radii 1 and 2 the norm is usually
    irrational: it is then rounded *up* to a multiple of ``2**-64``, which
    keeps the image inside the unit ball. With ``with_error`` the function
    returns ``(point, bound)`` where ``bound`` limits the per-coordinate error
    (zero whenever the result is exact). Points with ``|x| >= 3`` need
    ``outside=True`` and are sent to the origin.
    """
    pt = tuple(as_rational(c) for c in x)
    if not 1 <= len(pt) <= 3:
        raise OutOfDomain(f"dimension {len(pt)} not in 1..3")
    sq = sum(c * c for c in pt)
    err = Fraction(0)
    zero = tuple(Fraction(0) for _ in pt)
    if sq >= 9 and not outside:
        raise OutOfDomain("point lies outside the radius-3 chart")
    if sq <= 1:
        out = pt
    elif sq >= 4:
        out = zero
    else:
        norm = _exact_sqrt(sq)
        if norm is None:
            norm = _sqrt_upper(sq)
            err = Fraction(1, 1 << (NORM_FRACTION_BITS - 1)) * max(abs(c) for c in pt)
        scale = lam(min(norm, Fraction(2)))
        out = tuple(scale * c for c in pt)
    return (out, err) if with_error else out


# --- contractions of [0, 1] --------------------------------------------------

def check_contraction(f: PiecewiseLinear, K) -> Fraction:
    """Validate a ``K``-contraction of ``[0, 1]``; return its steepest absolute slope."""
    K = as_rational(K)
    if not 0 <= K < 1:
        raise OutOfDomain(f"contraction constant {K} not in [0, 1)")
    if f.breakpoints[0] != 0 or f.breakpoints[-1] != 1:
        raise OutOfDomain("contraction must be given on exactly [0, 1]")
    if any(not 0 <= v <= 1 for v in f.values):
        raise OutOfDomain("contraction must map [0, 1] into itself")
    steepest = Fraction(0)
    for s in f.slopes():
        if abs(s) > K:
            raise NotAContraction(s, K)
        steepest = max(steepest, abs(s))
    return steepest


def banach_fixed_point(f: PiecewiseLinear, K) -> Fraction:
    """The unique fixed point, solved exactly on the piece crossing the diagonal."""
    check_contraction(f, K)
    for a, b, fa, fb in f.pieces():
        ga, gb = fa - a, fb - b
        if ga == 0:
            return a
        if ga > 0 >= gb:
            return a + (b - a) * ga / (ga - gb)
    raise AssertionError("a self-map of [0, 1] must cross the diagonal")


def banach_iterate(f: PiecewiseLinear, x0, steps: int) -> list[Fraction]:
    xs = [as_rational(x0)]
    for _ in range(steps):
        xs.append(f(xs[-1]))
    return xs


def banach_stability_gap(f: PiecewiseLinear, g: PiecewiseLinear, K) -> tuple[Fraction, Fraction]:
    """``(|p(f) - p(g)|, sup|f - g| / (1 - K))``; the first never exceeds the second."""
    K = as_rational(K)
    lhs = abs(banach_fixed_point(f, K) - banach_fixed_point(g, K))
    rhs = f.sup_distance(g) / (1 - K)
    assert lhs <= rhs, (lhs, rhs)
    return lhs, rhs


def random_contraction(rng: random.Random, K, pieces: int = 4, denominator: int = 64) -> PiecewiseLinear:
    """Random piecewise-linear ``K``-contraction of ``[0, 1]`` with rational data."""
    K = as_rational(K)
    inner = sorted(rng.sample(range(1, denominator), min(pieces - 1, denominator - 1)))
    xs = [Fraction(0)] + [Fraction(k, denominator) for k in inner] + [Fraction(1)]
    ys = [Fraction(rng.randint(0, denominator), denominator)]
    for a, b in zip(xs, xs[1:]):
        slope = K * Fraction(rng.randint(-denominator, denominator), denominator)
        ys.append(min(Fraction(1), max(Fraction(0), ys[-1] + slope * (b - a))))
    return PiecewiseLinear(xs, ys)
