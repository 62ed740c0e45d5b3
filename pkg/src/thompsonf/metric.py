"""Word length over {x0, x1} read off the two-way forest diagram."""

from __future__ import annotations

from functools import lru_cache
from typing import NamedTuple, Sequence

from .core.element import Element, classify
from .core.forests import TwoWayDiagram, twoway_apply
from .core.trees import LEAF, Tree
from .errors import DomainError, VerificationError
from .words import X0X1, Letter, Word

# Gap labels: left of the pointer, needed before a caret, right exterior, interior.
LEFT, NEEDED, RIGHT, INTERIOR = "L", "N", "R", "I"
LABELS = (LEFT, NEEDED, RIGHT, INTERIOR)

WEIGHTS: dict[str, dict[str, int]] = {
    LEFT: {LEFT: 2, NEEDED: 1, RIGHT: 1, INTERIOR: 1},
    NEEDED: {LEFT: 1, NEEDED: 2, RIGHT: 2, INTERIOR: 2},
    RIGHT: {LEFT: 1, NEEDED: 2, RIGHT: 2, INTERIOR: 0},
    INTERIOR: {LEFT: 1, NEEDED: 2, RIGHT: 0, INTERIOR: 0},
}

GENERATORS = {"x0": (0, 1), "x0^-1": (0, -1), "x1": (1, 1), "x1^-1": (1, -1)}


@lru_cache(maxsize=None)
def _interior_labels(t: Tree) -> tuple[str, ...]:
    flags = t.left_child_flags()
    return tuple(NEEDED if flags[j] else INTERIOR for j in range(1, t.leaves))


def forest_labels(trees: Sequence[Tree], pointer: int) -> list[str]:
    """One label per gap between consecutive leaf columns of a pointed forest."""
    out: list[str] = []
    last = len(trees) - 1
    for i, t in enumerate(trees):
        if t is not LEAF:
            out.extend(_interior_labels(t))
        if i < last:
            if i + 1 <= pointer:
                out.append(LEFT)
            elif trees[i + 1] is not LEAF:
                out.append(NEEDED)
            else:
                out.append(RIGHT)
    return out


def diagram_length(d: TwoWayDiagram) -> int:
    top, tp, bot, bp = d
    weight = sum(WEIGHTS[a][b] for a, b in zip(forest_labels(top, tp), forest_labels(bot, bp)))
    return weight + d.carets


class LabeledDiagram(NamedTuple):
    diagram: TwoWayDiagram
    top_labels: tuple[str, ...]
    bottom_labels: tuple[str, ...]
    weights: tuple[int, ...]

    @property
    def weight_sum(self) -> int:
        return sum(self.weights)

    @property
    def carets(self) -> int:
        return self.diagram.carets

    @property
    def length(self) -> int:
        return self.weight_sum + self.carets

    def render(self) -> str:
        """Fixed-width table, one gap per column."""
        top, tp, bot, bp = self.diagram
        rows = [
            "top:    " + " ".join(f"{a:>2}" for a in self.top_labels),
            "bottom: " + " ".join(f"{b:>2}" for b in self.bottom_labels),
            "weight: " + " ".join(f"{w:>2}" for w in self.weights),
        ]
        return "\n".join([str(self.diagram), *rows,
                          f"weights={self.weight_sum} carets={self.carets} length={self.length}"])


def label_spaces(f: Element) -> LabeledDiagram:
    d = f.twoway
    lt = tuple(forest_labels(d.top, d.top_pointer))
    lb = tuple(forest_labels(d.bottom, d.bottom_pointer))
    return LabeledDiagram(d, lt, lb, tuple(WEIGHTS[a][b] for a, b in zip(lt, lb)))


def length(f: Element) -> int:
    return diagram_length(f.twoway)


def length_parts(f: Element) -> tuple[int, int]:
    """The weight sum and the caret count, whose total is the length."""
    lab = label_spaces(f)
    return lab.weight_sum, lab.carets


def length_strongly_positive(f: Element) -> int:
    """Twice the count of exterior or caret-preceding gaps, plus the carets."""
    if not classify(f).strongly_positive:
        raise DomainError("the element is not strongly positive")
    top = f.twoway.top
    needed = sum(1 for lab in forest_labels(top, 0) if lab != INTERIOR)
    return 2 * needed + sum(t.carets for t in top)


# Space queries around the current (top-pointer) tree.

def _offset(trees: Sequence[Tree], i: int) -> int:
    return sum(t.leaves for t in trees[:i])


def right_space(d: TwoWayDiagram) -> tuple[str, str] | None:
    """Label pair of the gap just right of the current tree, or None at the edge."""
    top, tp, bot, bp = d
    if tp == len(top) - 1:
        return None
    g = _offset(top, tp + 1) - 1
    return forest_labels(top, tp)[g], forest_labels(bot, bp)[g]


def left_space(d: TwoWayDiagram) -> tuple[str, str] | None:
    top, tp, bot, bp = d
    if tp == 0:
        return None
    g = _offset(top, tp) - 1
    return forest_labels(top, tp)[g], forest_labels(bot, bp)[g]


def x1_cancels(d: TwoWayDiagram) -> bool:
    """Whether left-multiplying by x1 removes a bottom caret."""
    return twoway_apply(d, 1, 1).carets < d.carets


def predicted_effect(f: Element) -> dict[str, int]:
    """Sign of the length change for each generator, read from the labels."""
    d = f.twoway
    top, tp, bot, bp = d
    rs, ls = right_space(d), left_space(d)
    current_trivial = top[tp] is LEAF
    out = {}

    after = twoway_apply(d, 0, 1)
    grows = after.width > d.width
    removed = after.width < d.width
    up = grows or (rs is not None and rs[1] == LEFT and not removed) or rs == (RIGHT, INTERIOR)
    out["x0"] = 1 if up else -1

    after = twoway_apply(d, 0, -1)
    down = after.width < d.width or ls == (LEFT, LEFT) or (ls == (LEFT, INTERIOR) and current_trivial)
    out["x0^-1"] = -1 if down else 1

    if x1_cancels(d):
        out["x1"] = -1
    else:
        out["x1"] = -1 if rs == (RIGHT, RIGHT) else 1

    if current_trivial:
        out["x1^-1"] = 1
    else:
        out["x1^-1"] = 1 if right_space(twoway_apply(d, 1, -1)) == (RIGHT, RIGHT) else -1
    return out


def generator_effect(f: Element) -> dict[str, int]:
    """Sign of the length change for each generator, by recomputing lengths."""
    d = f.twoway
    base = diagram_length(d)
    return {name: diagram_length(twoway_apply(d, i, s)) - base
            for name, (i, s) in GENERATORS.items()}


def is_dead_end_structural(f: Element) -> bool:
    d = f.twoway
    if d.top[d.top_pointer] is LEAF:
        return False
    if left_space(d) != (LEFT, LEFT) or right_space(d) != (RIGHT, RIGHT):
        return False
    return right_space(twoway_apply(d, 1, -1)) != (RIGHT, RIGHT)


def _descent_step(d: TwoWayDiagram, current: int) -> tuple[int, int]:
    """A generator lowering the length and creating no unwanted caret."""
    if x1_cancels(d):
        return 1, 1
    if d.top[d.top_pointer] is not LEAF:
        if diagram_length(twoway_apply(d, 1, -1)) < current:
            return 1, -1
    for s in (1, -1):
        if diagram_length(twoway_apply(d, 0, s)) < current:
            return 0, s
    raise VerificationError(f"no generator shortens\n{d}")


def geodesic_word(f: Element) -> Word:
    """A minimum-length {x0, x1} word whose x1-letters each create a caret of ``f``."""
    d = f.twoway
    current = diagram_length(d)
    steps: list[Letter] = []
    while current:
        i, s = _descent_step(d, current)
        d = twoway_apply(d, i, s)
        current -= 1
        steps.append(Letter(i, -s))
    return Word(steps, X0X1)


def left_sided_bound_check(f: Element) -> bool:
    """Lower bounds of length by width for one-sided elements; True otherwise."""
    c = classify(f)
    current = length(f)
    if c.left_sided and current < 2 * c.width:
        return False
    if c.right_sided and current < c.width:
        return False
    return True
