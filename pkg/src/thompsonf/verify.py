"""Cross-checks between independent computations, runnable as one batch."""

from __future__ import annotations

import random
from typing import Callable, NamedTuple

from .cayley import ball, dead_ends
from .core.element import Element, multiply
from .core.pl import to_pl_line
from .growth import count_positive_by_length, series_coefficients
from .metric import (diagram_length, generator_effect, geodesic_word, is_dead_end_structural,
                     predicted_effect)
from .strand import from_element, groupoid_compose, to_element
from .words import (X0X1, Word, evaluate, evaluate_by_multiplication, evaluate_oneway,
                    normal_form, normal_form_by_rewriting)


class CheckResult(NamedTuple):
    name: str
    passed: int
    total: int

    @property
    def ok(self) -> bool:
        return self.passed == self.total

    def __str__(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: {self.passed}/{self.total}"


def random_word(rng: random.Random, length: int, max_index: int = 1) -> Word:
    letters = [(rng.randint(0, max_index), rng.choice((1, -1))) for _ in range(length)]
    return Word(letters, X0X1 if max_index <= 1 else "infinite")


def random_element(rng: random.Random, length: int = 12) -> Element:
    return evaluate(random_word(rng, length))


def check_length_formula(radius: int) -> CheckResult:
    b = ball(radius)
    good = sum(diagram_length(d) == r for d, r in b.items())
    return CheckResult("length formula = BFS distance", good, len(b))


def check_effects(radius: int) -> CheckResult:
    b = ball(radius)
    good = total = 0
    for f, _ in b.elements():
        total += 1
        pred, actual = predicted_effect(f), generator_effect(f)
        good += all(pred[k] == (1 if actual[k] > 0 else -1) for k in pred)
    return CheckResult("label-predicted generator effects", good, total)


def check_dead_ends(radius: int) -> CheckResult:
    """Structural dead-end test against BFS on every element within ``radius``."""
    b = ball(radius + 1)
    brute = set(dead_ends(b, radius))
    good = total = 0
    for r in range(radius + 1):
        for d in b.sphere(r):
            total += 1
            good += is_dead_end_structural(Element.from_twoway(d)) == (d in brute)
    return CheckResult("structural dead ends = brute force", good, total)


def check_geodesics(radius: int, rng: random.Random, samples: int = 300) -> CheckResult:
    b = ball(radius)
    order = b.order
    good = 0
    for _ in range(samples):
        d = order[rng.randrange(len(order))]
        f = Element.from_twoway(d)
        w = geodesic_word(f)
        good += len(w) == diagram_length(d) and evaluate(w) == f
    return CheckResult("geodesic words", good, samples)


def check_evaluation(rng: random.Random, samples: int = 200) -> CheckResult:
    good = 0
    for _ in range(samples):
        w = random_word(rng, rng.randint(0, 14), max_index=4)
        a = evaluate(w)
        good += a == evaluate_oneway(w) == evaluate_by_multiplication(w)
    return CheckResult("two-way, one-way and spliced evaluation agree", good, samples)


def check_normal_forms(rng: random.Random, samples: int = 200) -> CheckResult:
    good = 0
    for _ in range(samples):
        w = random_word(rng, rng.randint(0, 14), max_index=4)
        good += normal_form_by_rewriting(w) == normal_form(evaluate(w))
    return CheckResult("rewriting normal form = diagram normal form", good, samples)


def check_pl(rng: random.Random, samples: int = 100) -> CheckResult:
    good = 0
    for _ in range(samples):
        f, g = random_element(rng), random_element(rng)
        good += to_pl_line(multiply(f, g)) == to_pl_line(f).then(to_pl_line(g))
    return CheckResult("line maps compose like products", good, samples)


def check_strands(rng: random.Random, samples: int = 100) -> CheckResult:
    good = 0
    for _ in range(samples):
        f, g = random_element(rng), random_element(rng)
        good += to_element(groupoid_compose(from_element(f), from_element(g))) == multiply(f, g)
    return CheckResult("groupoid composition = multiplication", good, samples)


def check_growth(radius: int) -> CheckResult:
    counts = count_positive_by_length(radius)
    series = series_coefficients(radius).values
    return CheckResult("positive census = growth series", sum(a == b for a, b in zip(counts, series)),
                       radius + 1)


def oracle_suite(radius: int, seed: int = 0) -> list[CheckResult]:
    rng = random.Random(seed)
    checks: list[Callable[[], CheckResult]] = [
        lambda: check_length_formula(radius),
        lambda: check_effects(min(radius, 8)),
        lambda: check_dead_ends(max(radius - 1, 0)),
        lambda: check_geodesics(radius, rng),
        lambda: check_evaluation(rng),
        lambda: check_normal_forms(rng),
        lambda: check_pl(rng),
        lambda: check_strands(rng),
        lambda: check_growth(radius),
    ]
    return [c() for c in checks]


__all__ = ["CheckResult", "random_word", "random_element", "oracle_suite"]
