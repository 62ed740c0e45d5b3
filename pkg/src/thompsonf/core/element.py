"""Group elements as reduced tree diagrams."""

from __future__ import annotations

from typing import NamedTuple

from ..errors import ParseError
from .diagram import TreeDiagram, parse_diagram, reduce, splice
from .forests import (IDENTITY_TWOWAY, OneWayDiagram, TwoWayDiagram, oneway_apply,
                      oneway_to_tree, parse_oneway, parse_twoway, tree_to_oneway,
                      tree_to_twoway, twoway_apply, twoway_to_tree)
from .trees import LEAF, Tree, add_caret_at_leaf, right_vine


class Element:
    """An element of F, stored as its unique reduced tree diagram.

    Multiplication follows the left-to-right convention: ``f * g`` applies
    ``f`` first, then ``g``.
    """

    __slots__ = ("top", "bottom", "_twoway", "_oneway")

    def __init__(self, top: Tree, bottom: Tree, *, reduced: bool = False) -> None:
        if not reduced:
            top, bottom = reduce(TreeDiagram(top, bottom))
        self.top = top
        self.bottom = bottom
        self._twoway = None
        self._oneway = None

    @classmethod
    def from_diagram(cls, d: TreeDiagram) -> "Element":
        return cls(d.top, d.bottom)

    @classmethod
    def from_twoway(cls, d: TwoWayDiagram) -> "Element":
        """``d`` must be reduced and trimmed; it is cached as the two-way view."""
        e = cls(*twoway_to_tree(d), reduced=True)
        e._twoway = d
        return e

    @classmethod
    def from_oneway(cls, d: OneWayDiagram) -> "Element":
        e = cls(*oneway_to_tree(d), reduced=True)
        e._oneway = d
        return e

    @property
    def diagram(self) -> TreeDiagram:
        return TreeDiagram(self.top, self.bottom)

    @property
    def twoway(self) -> TwoWayDiagram:
        if self._twoway is None:
            self._twoway = tree_to_twoway(self.diagram)
        return self._twoway

    @property
    def oneway(self) -> OneWayDiagram:
        if self._oneway is None:
            self._oneway = tree_to_oneway(self.diagram)
        return self._oneway

    def __eq__(self, other) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.top is other.top and self.bottom is other.bottom

    def __hash__(self) -> int:
        # Trees are interned, so identities are canonical.
        return hash((id(self.top), id(self.bottom)))

    def __mul__(self, other: "Element") -> "Element":
        return multiply(self, other)

    def __pow__(self, n: int) -> "Element":
        base = self if n >= 0 else invert(self)
        out = IDENTITY
        for _ in range(abs(n)):
            out = multiply(out, base)
        return out

    def inverse(self) -> "Element":
        return invert(self)

    @property
    def is_identity(self) -> bool:
        return self.top is LEAF

    def __repr__(self) -> str:
        return f"Element({self.top}, {self.bottom})"

    def __str__(self) -> str:
        return f"{self.top}\n{self.bottom}"


IDENTITY = Element(LEAF, LEAF, reduced=True)
IDENTITY._twoway = IDENTITY_TWOWAY


def multiply(f: Element, g: Element) -> Element:
    """``f`` followed by ``g``."""
    if f.top is LEAF:
        return g
    if g.top is LEAF:
        return f
    return Element.from_diagram(splice(f.diagram, g.diagram))


def invert(f: Element) -> Element:
    return Element(f.bottom, f.top, reduced=True)


def commutator(f: Element, g: Element) -> Element:
    return multiply(multiply(invert(f), invert(g)), multiply(f, g))


def apply_generator(index: int, sign: int, f: Element) -> Element:
    """Left-multiply ``f`` by ``x_index ** sign`` on the two-way diagram."""
    return Element.from_twoway(twoway_apply(f.twoway, index, sign))


def apply_generator_oneway(index: int, sign: int, f: Element) -> Element:
    return Element.from_oneway(oneway_apply(f.oneway, index, sign))


def generator(index: int) -> Element:
    """``x_index``: a right vine with a caret under leaf ``index`` on top."""
    vine = right_vine(index + 2)
    return Element(add_caret_at_leaf(vine, index), right_vine(index + 3), reduced=True)


def abelianize(f: Element) -> tuple[int, int]:
    """Log-2 slopes at 0 and at 1."""
    def depth(t: Tree, side: str) -> int:
        n = 0
        while t is not LEAF:
            t = getattr(t, side)
            n += 1
        return n

    return (depth(f.top, "left") - depth(f.bottom, "left"),
            depth(f.top, "right") - depth(f.bottom, "right"))


def is_commutator_element(f: Element) -> bool:
    return abelianize(f) == (0, 0)


def positive_twoway(d: TwoWayDiagram) -> bool:
    """Bottom forest trivial with its pointer on the first tree."""
    return d.bottom_pointer == 0 and all(t is LEAF for t in d.bottom)


class Classification(NamedTuple):
    positive: bool
    right_sided: bool
    strongly_positive: bool
    left_sided: bool
    width: int
    caret_count: int


def classify(f: Element) -> Classification:
    d = f.twoway
    top, tp, bot, bp = d
    positive = positive_twoway(d)
    right_sided = tp == 0 and bp == 0
    left_sided = tp == len(top) - 1 and bp == len(bot) - 1
    return Classification(positive, right_sided, positive and right_sided, left_sided,
                          d.width, d.carets)


def is_positive(f: Element) -> bool:
    """Bottom tree is a right vine."""
    t = f.bottom
    while t is not LEAF:
        if t.left is not LEAF:
            return False
        t = t.right
    return True


def parse_element(text: str, kind: str = "auto") -> Element:
    """Read an element from any supported notation.

    ``kind`` is one of ``auto``, ``word``, ``tree``, ``twoway``, ``oneway``.
    ``auto`` never guesses ``oneway``, since a pair of single trees is read
    as a tree diagram.
    """
    from ..words import evaluate, parse_word

    stripped = text.strip()
    if kind == "auto":
        if not stripped or stripped[0] not in "(.*":
            kind = "word"
        elif "*" in stripped:
            kind = "twoway"
        else:
            kind = "tree"
    if kind == "word":
        return evaluate(parse_word(stripped))
    if kind == "tree":
        return Element.from_diagram(parse_diagram(stripped))
    if kind == "twoway":
        return Element.from_diagram(twoway_to_tree(parse_twoway(stripped)))
    if kind == "oneway":
        return Element.from_diagram(oneway_to_tree(parse_oneway(stripped)))
    raise ParseError(f"unknown element format {kind!r}")
