"""Exact piecewise-linear maps with dyadic breakpoints and power-of-2 slopes."""

from __future__ import annotations

from bisect import bisect_right
from typing import Iterable

from ..errors import StructureError
from .dyadic import Dyadic, ONE, ZERO
from .element import Element
from .trees import LEAF, Tree

KINDS = ("unit", "half", "line")


def _slope_exponent(dx: Dyadic, dy: Dyadic) -> int:
    q = dy.to_fraction() / dx.to_fraction()
    num, den = q.numerator, q.denominator
    if num <= 0 or num & (num - 1) or den & (den - 1):
        raise StructureError(f"slope {q} is not a positive power of 2")
    return num.bit_length() - den.bit_length()


class PLMap:
    """An increasing PL homeomorphism of [0,1], [0,inf) or the real line.

    Outside its listed breakpoints a half-line map is ``t + right_shift`` and a
    line map is ``t + left_shift`` on the left and ``t + right_shift`` on the
    right.  Breakpoints are canonical: no listed point has equal slopes on
    both sides, except the endpoints of the unit interval.
    """

    __slots__ = ("kind", "xs", "ys", "slopes", "left_shift", "right_shift")

    def __init__(self, kind: str, points: Iterable[tuple], left_shift: int = 0,
                 right_shift: int = 0) -> None:
        if kind not in KINDS:
            raise ValueError(f"kind must be one of {KINDS}")
        pts = sorted((Dyadic.coerce(x), Dyadic.coerce(y)) for x, y in points)
        self.kind = kind
        self.left_shift = Dyadic.coerce(left_shift)
        self.right_shift = Dyadic.coerce(right_shift)
        self._canonicalize(pts)

    def _canonicalize(self, pts: list[tuple[Dyadic, Dyadic]]) -> None:
        if self.kind == "unit":
            if not pts or pts[0] != (ZERO, ZERO) or pts[-1] != (ONE, ONE):
                raise StructureError("a unit-interval map must fix 0 and 1")
        if self.kind == "half" and (not pts or pts[0] != (ZERO, ZERO)):
            raise StructureError("a half-line map must fix 0")
        for (x1, y1), (x2, y2) in zip(pts, pts[1:]):
            if not (x1 < x2 and y1 < y2):
                raise StructureError("breakpoints must increase strictly")
        exps = [_slope_exponent(x2 - x1, y2 - y1) for (x1, y1), (x2, y2) in zip(pts, pts[1:])]
        if self.kind != "unit" and pts:
            if pts[-1][1] - pts[-1][0] != self.right_shift:
                raise StructureError("right translation disagrees with last breakpoint")
            if self.kind == "line" and pts[0][1] - pts[0][0] != self.left_shift:
                raise StructureError("left translation disagrees with first breakpoint")
        last = len(pts) - 1

        def bends(i: int) -> bool:
            if self.kind == "unit" and i in (0, last):
                return True
            if self.kind == "half" and i == 0:
                return True
            before = exps[i - 1] if i > 0 else 0
            after = exps[i] if i < last else 0
            return before != after

        keep = [i for i in range(len(pts)) if bends(i)]
        self.xs = tuple(pts[i][0] for i in keep)
        self.ys = tuple(pts[i][1] for i in keep)
        self.slopes = tuple(_slope_exponent(x2 - x1, y2 - y1)
                            for x1, y1, x2, y2 in zip(self.xs, self.ys, self.xs[1:], self.ys[1:]))
        if self.kind == "line" and not self.xs and self.left_shift != self.right_shift:
            raise StructureError("a breakpoint-free line map is a single translation")

    def __call__(self, t) -> Dyadic:
        t = Dyadic.coerce(t)
        xs = self.xs
        if self.kind == "unit" and not ZERO <= t <= ONE:
            raise ValueError(f"{t} is outside [0, 1]")
        if self.kind == "half" and t < ZERO:
            raise ValueError(f"{t} is negative")
        if self.kind == "line" and (not xs or t <= xs[0]):
            return t + self.left_shift
        if t >= xs[-1]:
            return t + self.right_shift
        i = bisect_right(xs, t) - 1
        return self.ys[i] + (t - xs[i]).scale(self.slopes[i])

    def inverse(self) -> "PLMap":
        return PLMap(self.kind, zip(self.ys, self.xs), -self.left_shift, -self.right_shift)

    def then(self, other: "PLMap") -> "PLMap":
        """The map ``self`` followed by ``other``."""
        if self.kind != other.kind:
            raise StructureError("cannot compose maps on different domains")
        inv = self.inverse()
        xs = set(self.xs) | {inv(y) for y in other.xs}
        pts = [(x, other(self(x))) for x in sorted(xs)]
        return PLMap(self.kind, pts, self.left_shift + other.left_shift,
                     self.right_shift + other.right_shift)

    def is_identity(self) -> bool:
        return self.xs == self.ys and not self.left_shift and not self.right_shift

    def breakpoints(self) -> list[tuple[Dyadic, Dyadic]]:
        return list(zip(self.xs, self.ys))

    def _key(self):
        return (self.kind, self.xs, self.ys, self.left_shift, self.right_shift)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PLMap):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        pts = ", ".join(f"({x}, {y})" for x, y in zip(self.xs, self.ys))
        return f"PLMap({self.kind!r}, [{pts}], {self.left_shift}, {self.right_shift})"


def leaf_points(tree: Tree, lo: Dyadic = ZERO, size_exp: int = 0) -> list[Dyadic]:
    """Left endpoints of the leaf intervals of ``tree`` laid over ``[lo, lo + 2**-size_exp]``."""
    out: list[Dyadic] = []
    stack = [(tree, lo, size_exp)]
    while stack:
        t, a, e = stack.pop()
        if t is LEAF:
            out.append(a)
        else:
            stack.append((t.right, a + Dyadic(1, e + 1), e + 1))
            stack.append((t.left, a, e + 1))
    return out


def _forest_points(trees, start: int) -> list[Dyadic]:
    out: list[Dyadic] = []
    for i, t in enumerate(trees):
        out.extend(leaf_points(t, Dyadic(start + i)))
    out.append(Dyadic(start + len(trees)))
    return out


def to_pl_unit(f: Element) -> PLMap:
    xs = leaf_points(f.top) + [ONE]
    ys = leaf_points(f.bottom) + [ONE]
    return PLMap("unit", zip(xs, ys))


def to_pl_half(f: Element) -> PLMap:
    top, bot = f.oneway
    xs, ys = _forest_points(top, 0), _forest_points(bot, 0)
    return PLMap("half", zip(xs, ys), 0, len(bot) - len(top))


def to_pl_line(f: Element) -> PLMap:
    top, tp, bot, bp = f.twoway
    xs, ys = _forest_points(top, -tp), _forest_points(bot, -bp)
    return PLMap("line", zip(xs, ys), tp - bp, (len(bot) - bp) - (len(top) - tp))


def line_to_unit(t) -> Dyadic:
    """The fixed conjugator from the line onto (0, 1); [0, 1] goes to [1/2, 3/4]."""
    t = Dyadic.coerce(t)
    n = _floor(t)
    if n >= 0:
        return ONE - Dyadic(1, n + 1) + (t - n).scale(-n - 2)
    m = -n - 1
    return Dyadic(1, m + 2) + (t - n).scale(-m - 2)


def unit_to_line(u) -> Dyadic:
    u = Dyadic.coerce(u)
    if not ZERO < u < ONE:
        raise ValueError(f"{u} is outside (0, 1)")
    if u >= Dyadic(1, 1):
        n = 0
        while u >= ONE - Dyadic(1, n + 2):
            n += 1
        return Dyadic(n) + (u - (ONE - Dyadic(1, n + 1))).scale(n + 2)
    m = 0
    while u < Dyadic(1, m + 2):
        m += 1
    return Dyadic(-m - 1) + (u - Dyadic(1, m + 2)).scale(m + 2)


def half_to_unit(t) -> Dyadic:
    """The fixed conjugator from [0, inf) onto [0, 1)."""
    t = Dyadic.coerce(t)
    n = _floor(t)
    return ONE - Dyadic(1, n) + (t - n).scale(-n - 1)


def _floor(t: Dyadic) -> int:
    return t.numerator >> t.exponent
