"""Growth of the positive monoid and isoperimetric estimates from tree counts."""

from __future__ import annotations

import random
from fractions import Fraction
from math import isqrt
from typing import Callable, Iterable, Iterator, NamedTuple, Sequence

from .cayley import Ball, ball
from .core.element import positive_twoway
from .core.forests import TwoWayDiagram, trim_twoway, twoway_apply
from .core.trees import LEAF, Tree, random_tree, subtrees, trees_bounded
from .errors import DomainError, NumericError, ResourceLimitError

# Full tree polynomials beyond this height have coefficients too large to store.
MAX_FULL_HEIGHT = 12
# Exact Horner evaluation of the full polynomial is used up to this height.
HORNER_MAX_HEIGHT = 10
DEFAULT_TOL = 1e-12
MAX_BISECTIONS = 200
DEFAULT_ENUM_BUDGET = 2_000_000


class IntegerPolynomial:
    """Dense polynomial over the integers, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()) -> None:
        c = [int(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def x(cls) -> "IntegerPolynomial":
        return cls((0, 1))

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def coefficient(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def truncate(self, max_degree: int) -> "IntegerPolynomial":
        return IntegerPolynomial(self.coeffs[:max_degree + 1])

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return IntegerPolynomial([u + (b[i] if i < len(b) else 0) for i, u in enumerate(a)])

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return self + IntegerPolynomial(-c for c in other.coeffs)

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntegerPolynomial()
        if min(a) >= 0 and min(b) >= 0 and len(a) * len(b) > 4096:
            return IntegerPolynomial(_kronecker(a, b))
        out = [0] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            if u:
                for j, v in enumerate(b):
                    out[i + j] += u * v
        return IntegerPolynomial(out)

    def __call__(self, x):
        """Horner evaluation; exact for ``int`` and ``Fraction`` arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def compare_at(self, num: int, den: int, target: int = 1) -> int:
        """Sign of ``self(num/den) - target`` using integers only, for ``den > 0``."""
        d = self.degree
        if d < 0:
            return (0 > target) - (0 < target)
        acc = self.coeffs[d]
        scale = 1
        for c in reversed(self.coeffs[:d]):
            scale *= den
            acc = acc * num + c * scale
        lhs, rhs = acc, target * scale
        return (lhs > rhs) - (lhs < rhs)

    def __eq__(self, other) -> bool:
        if isinstance(other, IntegerPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntegerPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            coef = str(c) if (c != 1 or i == 0) else ""
            terms.append(f"{coef}{mono}")
        return " + ".join(terms) if terms else "0"


def _kronecker(a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Product of non-negative coefficient lists by packing into one big integer."""
    bound = max(a).bit_length() + max(b).bit_length() + min(len(a), len(b)).bit_length() + 1
    width = (bound + 7) // 8

    def pack(c: Sequence[int]) -> int:
        return int.from_bytes(b"".join(x.to_bytes(width, "little") for x in c), "little")

    n = len(a) + len(b) - 1
    raw = (pack(a) * pack(b)).to_bytes(n * width, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") for i in range(n)]


# Growth series of the positive monoid.

SERIES_NUMERATOR = (1, 0, -1)
SERIES_DENOMINATOR = (1, -2, -1, 1)


class SeriesCoefficients(NamedTuple):
    values: tuple[int, ...]
    numerator: tuple[int, ...] = SERIES_NUMERATOR
    denominator: tuple[int, ...] = SERIES_DENOMINATOR

    def recurrence_holds(self) -> bool:
        p = self.values
        return all(p[n] == 2 * p[n - 1] + p[n - 2] - p[n - 3] for n in range(3, len(p)))

    def identity_holds(self) -> bool:
        """``p(x) * denominator == numerator`` up to the computed degree."""
        prod = IntegerPolynomial(self.values) * IntegerPolynomial(self.denominator)
        return prod.truncate(len(self.values) - 1) == \
            IntegerPolynomial(self.numerator).truncate(len(self.values) - 1)


def series_coefficients(max_n: int) -> SeriesCoefficients:
    """Power-series expansion of the rational growth function up to ``x^max_n``."""
    if max_n < 0:
        raise DomainError("max_n must be non-negative")
    num, den = SERIES_NUMERATOR, SERIES_DENOMINATOR
    p: list[int] = []
    for n in range(max_n + 1):
        acc = num[n] if n < len(num) else 0
        for j in range(1, min(n, len(den) - 1) + 1):
            acc -= den[j] * p[n - j]
        p.append(acc)
    return SeriesCoefficients(tuple(p))


def count_positive_by_length(max_n: int, b: Ball | None = None) -> list[int]:
    """Positive elements of each length, counted inside the Cayley ball."""
    if max_n < 0:
        raise DomainError("max_n must be non-negative")
    if b is None or b.radius < max_n:
        b = ball(max_n)
    return [sum(1 for d in b.sphere(r) if positive_twoway(d)) for r in range(max_n + 1)]


# Tree-counting polynomials and their roots.

def height_polynomial(k: int, max_degree: int | None = None) -> IntegerPolynomial:
    """Leaf-count census of trees of height at most ``k``, optionally truncated.

    Without truncation ``k`` is capped at ``MAX_FULL_HEIGHT``.
    """
    if k < -1:
        raise DomainError("height must be at least -1")
    if max_degree is None and k > MAX_FULL_HEIGHT:
        raise ResourceLimitError(
            f"the height-{k} polynomial has degree 2^{k}; pass max_degree or use k <= {MAX_FULL_HEIGHT}",
            {"k": k, "max_full_height": MAX_FULL_HEIGHT})
    x = IntegerPolynomial.x()
    t = IntegerPolynomial()
    for _ in range(k + 1):
        t = t * t + x
        if max_degree is not None:
            t = t.truncate(max_degree)
    return t


def _iterate_sign(k: int, num: int, exp: int) -> int:
    """Sign of ``poly_k(c) - 1`` (the height-``k`` tree polynomial) for ``c = num / 2**exp`` via ``t -> t*t + c``.

    Uses directed rounding on fixed-point integers and raises precision until
    the enclosure decides the sign.
    """
    bits = max(64, 2 * exp + 2 * k + 16)
    while bits <= 1 << 16:
        one = 1 << bits
        shift = bits - exp
        c_lo = num << shift if shift >= 0 else num >> -shift
        c_hi = c_lo if shift >= 0 or num % (1 << -shift) == 0 else c_lo + 1
        lo = hi = 0
        escaped = False
        for _ in range(k + 1):
            lo = ((lo * lo) >> bits) + c_lo
            hi = -((-hi * hi) >> bits) + c_hi
            if lo > one:
                escaped = True
                break
        if escaped or lo > one:
            return 1
        if hi < one:
            return -1
        if lo == hi == one:
            return 0
        bits *= 2
    raise NumericError(f"interval evaluation at height {k} did not separate from 1")


def _bisect(sign_at: Callable[[int, int], int], tol: float,
            max_iter: int = MAX_BISECTIONS) -> tuple[Fraction, Fraction]:
    """Bracket the root of an increasing function on [0, 1] with dyadic probes."""
    if tol <= 0:
        raise DomainError("tolerance must be positive")
    lo, hi, exp = 0, 1, 0
    if sign_at(1, 0) <= 0:
        return Fraction(1), Fraction(1)
    for _ in range(max_iter):
        if Fraction(hi - lo, 1 << exp) < tol:
            return Fraction(lo, 1 << exp), Fraction(hi, 1 << exp)
        lo, hi, exp = 2 * lo, 2 * hi, exp + 1
        mid = lo + 1
        s = sign_at(mid, exp)
        if s == 0:
            return Fraction(mid, 1 << exp), Fraction(mid, 1 << exp)
        if s < 0:
            lo = mid
        else:
            hi = mid
    raise NumericError(f"bisection did not reach width {tol} in {max_iter} steps")


def root_bracket(k: int, tol: float = DEFAULT_TOL, method: str = "auto") -> tuple[Fraction, Fraction]:
    """Dyadic bracket of width below ``tol`` around the positive root of ``height_polynomial(k) = 1``.

    ``method`` is ``horner`` (exact polynomial), ``iteration`` (the quadratic
    map) or ``auto``, which picks Horner for small heights.
    """
    if k < 0:
        raise DomainError("k must be non-negative")
    if method == "auto":
        method = "horner" if k <= HORNER_MAX_HEIGHT else "iteration"
    if method == "horner":
        poly = height_polynomial(k)
        return _bisect(lambda num, exp: poly.compare_at(num, 1 << exp), tol)
    if method == "iteration":
        return _bisect(lambda num, exp: _iterate_sign(k, num, exp), tol)
    raise DomainError(f"unknown root method {method!r}")


def solve_pk(k: int, tol: float = DEFAULT_TOL, method: str = "auto") -> float:
    lo, hi = root_bracket(k, tol, method)
    return float((lo + hi) / 2)


def polynomial_root(poly: IntegerPolynomial, tol: float = DEFAULT_TOL) -> tuple[Fraction, Fraction]:
    """Bracket for the root in (0, 1] of ``poly = 1``; ``poly`` must increase there."""
    if poly.coefficient(0) != 0 or any(c < 0 for c in poly.coeffs) or poly.degree < 1:
        raise DomainError("expected non-negative coefficients, no constant term")
    return _bisect(lambda num, exp: poly.compare_at(num, 1 << exp), tol)


# Subtree-closed families.

def is_subtree_closed(trees: set[Tree]) -> bool:
    return all(s in trees for t in trees for s in subtrees(t))


def census_polynomial(trees: Iterable[Tree]) -> IntegerPolynomial:
    counts: dict[int, int] = {}
    for t in trees:
        counts[t.leaves] = counts.get(t.leaves, 0) + 1
    top = max(counts, default=0)
    return IntegerPolynomial(counts.get(i, 0) for i in range(top + 1))


def subtree_closed_bound(trees: Iterable[Tree], tol: float = DEFAULT_TOL) -> float:
    """Twice the root of ``a(p) = 1`` where ``a`` counts the family by leaves."""
    family = set(trees)
    if LEAF not in family:
        raise DomainError("the family must contain the trivial tree")
    if not is_subtree_closed(family):
        raise DomainError("the family is not closed under subtrees")
    lo, hi = polynomial_root(census_polynomial(family), tol)
    bound = float(lo + hi)
    if not bound > 0.5:
        raise NumericError(f"bound {bound} does not exceed 1/2")
    return bound


def random_subtree_closed_family(rng: random.Random, seeds: int = 3,
                                 max_carets: int = 6) -> set[Tree]:
    """Closure under subtrees of a few random trees, always containing the trivial tree."""
    family = {LEAF}
    for _ in range(seeds):
        family.update(subtrees(random_tree(rng.randint(0, max_carets), rng)))
    return family


# Pointed forests with bounded heights and their boundary.

PointedForest = tuple[tuple[Tree, ...], int]


def tree_counts(k: int, leaves: int) -> list[int]:
    """Entry ``l`` counts trees with ``l`` leaves and height at most ``k``; entry 0 is 0."""
    c = list(height_polynomial(k, max_degree=leaves).coeffs)
    return c + [0] * (leaves + 1 - len(c))


def forest_counts(k: int, leaves: int) -> list[int]:
    """Entry ``m`` counts forests with ``m`` leaves, trees of height at most ``k``."""
    t = tree_counts(k, leaves)
    f = [1] + [0] * leaves
    for m in range(1, leaves + 1):
        f[m] = sum(t[l] * f[m - l] for l in range(1, m + 1))
    return f


class PointedCounts(NamedTuple):
    leaves: int
    forests: int
    pointed: int
    trivial_current: int


def pointed_counts(leaves: int, k: int) -> PointedCounts:
    """Forest counts and pointer counts by convolution."""
    if leaves < 1:
        raise DomainError("a pointed forest has at least one leaf")
    f = forest_counts(k, leaves)
    r = sum(f[j] * f[leaves - j] for j in range(leaves))
    rs = sum(f[j] * f[leaves - 1 - j] for j in range(leaves))
    return PointedCounts(leaves, f[leaves], r, rs)


def pointed_forests(leaves: int, k: int) -> Iterator[PointedForest]:
    """Every forest with ``leaves`` leaves and heights at most ``k``, with each pointer."""
    for forest in _forests(leaves, k):
        for p in range(len(forest)):
            yield forest, p


def _forests(leaves: int, k: int) -> Iterator[tuple[Tree, ...]]:
    if leaves == 0:
        yield ()
        return
    for first in range(1, min(leaves, 1 << k) + 1):
        heads = trees_bounded(first, k)
        if not heads:
            continue
        for rest in _forests(leaves - first, k):
            for t in heads:
                yield (t,) + rest


def exits(pf: PointedForest, k: int) -> tuple[bool, bool, bool, bool]:
    """Whether x0, x0^-1, x1, x1^-1 take the element outside the bounded set."""
    trees, p = pf
    last = p == len(trees) - 1
    cur = trees[p]
    x1_out = last or 1 + max(cur.height, trees[p + 1].height) > k
    return last, p == 0, x1_out, cur is LEAF


def pointed_to_twoway(pf: PointedForest) -> TwoWayDiagram:
    """The positive element a pointed forest stands for."""
    trees, p = pf
    n = sum(t.leaves for t in trees)
    return trim_twoway(trees, p, (LEAF,) * n, 0)


def in_bounded_forest_set(d: TwoWayDiagram, n: int, k: int) -> bool:
    """Whether a two-way diagram is positive, at most ``n`` wide, with top trees of height at most ``k``."""
    if not positive_twoway(d):
        return False
    if any(t.height > k for t in d.top):
        return False
    return d.width <= n


class FolnerResult(NamedTuple):
    n: int
    k: int
    size: int
    boundary: int
    exit_counts: tuple[int, int, int, int] | None
    ratio: Fraction
    trivial_probability: Fraction
    first_tree_probability: Fraction
    method: str
    fell_back: bool

    def identity_residual(self) -> Fraction:
        """Ratio minus twice the two inverse-generator exit probabilities."""
        return self.ratio - 2 * self.trivial_probability - 2 * self.first_tree_probability


def folner_direct(n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> FolnerResult:
    """Boundary ratio by visiting every pointed forest with ``n + 1`` leaves."""
    _check_nk(n, k)
    c = pointed_counts(n + 1, k)
    if c.pointed > budget:
        raise ResourceLimitError(f"the set for n={n}, k={k} has {c.pointed} elements, budget {budget}",
                                 {"n": n, "k": k, "size": c.pointed})
    tally = [0, 0, 0, 0]
    size = 0
    for pf in pointed_forests(n + 1, k):
        size += 1
        for i, out in enumerate(exits(pf, k)):
            tally[i] += out
    boundary = sum(tally)
    return FolnerResult(n, k, size, boundary, tuple(tally), Fraction(boundary, size),
                        Fraction(tally[3], size), Fraction(tally[1], size), "direct", False)


def folner_counting(n: int, k: int) -> FolnerResult:
    """Boundary ratio from forest counts alone."""
    _check_nk(n, k)
    c = pointed_counts(n + 1, k)
    trivial = Fraction(c.trivial_current, c.pointed)
    first = Fraction(c.forests, c.pointed)
    boundary = 2 * (c.forests + c.trivial_current)
    return FolnerResult(n, k, c.pointed, boundary, None, Fraction(boundary, c.pointed),
                        trivial, first, "counting", False)


def folner_ratio(n: int, k: int, budget: int = DEFAULT_ENUM_BUDGET) -> FolnerResult:
    """Exact boundary-to-size ratio for pointed forests with ``n + 1`` leaves, heights at most ``k``.

    Enumerates when affordable and checks the result against the counts.

    Past the budget the counting path alone is returned with ``fell_back`` set.
    """
    try:
        direct = folner_direct(n, k, budget)
    except ResourceLimitError:
        return folner_counting(n, k)._replace(fell_back=True)
    counted = folner_counting(n, k)
    if (direct.size, direct.boundary, direct.trivial_probability) != \
            (counted.size, counted.boundary, counted.trivial_probability):
        raise NumericError(f"enumeration and counting disagree at n={n}, k={k}")
    return direct


def folner_by_diagrams(n: int, k: int) -> FolnerResult:
    """Slow oracle: build the bounded set as diagrams and left-multiply by each generator."""
    _check_nk(n, k)
    members = {pointed_to_twoway(pf) for pf in pointed_forests(n + 1, k)}
    tally = [0, 0, 0, 0]
    steps = ((0, 1), (0, -1), (1, 1), (1, -1))
    for d in members:
        for i, (g, s) in enumerate(steps):
            e = twoway_apply(d, g, s)
            tally[i] += e not in members
    size = len(members)
    boundary = sum(tally)
    return FolnerResult(n, k, size, boundary, tuple(tally), Fraction(boundary, size),
                        Fraction(tally[3], size), Fraction(tally[1], size), "diagrams", False)


def _check_nk(n: int, k: int) -> None:
    if n < 0 or k < 0:
        raise DomainError("n and k must be non-negative")


def golden_root() -> tuple[Fraction, Fraction]:
    """Rational bracket around (sqrt 5 - 1)/2 accurate to about 1e-30."""
    s = 10 ** 30
    r = isqrt(5 * s * s)
    return Fraction(r - s, 2 * s), Fraction(r + 1 - s, 2 * s)


def height_family(k: int) -> set[Tree]:
    """All trees of height at most ``k``; closed under subtrees."""
    out: set[Tree] = set()
    for leaves in range(1, (1 << k) + 1):
        out.update(trees_bounded(leaves, k))
    return out


__all__ = [
    "IntegerPolynomial", "SeriesCoefficients", "series_coefficients",
    "count_positive_by_length", "height_polynomial", "root_bracket", "solve_pk",
    "polynomial_root", "is_subtree_closed", "census_polynomial", "subtree_closed_bound",
    "random_subtree_closed_family", "tree_counts", "forest_counts", "PointedCounts",
    "pointed_counts", "pointed_forests", "exits", "pointed_to_twoway", "in_bounded_forest_set",
    "FolnerResult", "folner_direct", "folner_counting", "folner_ratio",
    "folner_by_diagrams", "golden_root", "height_family",
]
