"""Tree diagrams: reduction and the splice product."""

from __future__ import annotations

import random
from typing import NamedTuple

from ..errors import ParseError, StructureError
from .trees import LEAF, Tree, add_caret_at_leaf, exposed_carets, graft, leaf_subtrees, parse_tree, \
    remove_exposed_caret, tree_lcm


class TreeDiagram(NamedTuple):
    """``top`` is the domain tree and ``bottom`` the range tree."""

    top: Tree
    bottom: Tree

    def __str__(self) -> str:
        return f"{self.top}\n{self.bottom}"


def check_diagram(d: TreeDiagram) -> None:
    if d.top.leaves != d.bottom.leaves:
        raise StructureError(
            f"leaf counts differ: {d.top.leaves} on top, {d.bottom.leaves} on bottom")


def opposing_pairs(d: TreeDiagram) -> frozenset[int]:
    return exposed_carets(d.top) & exposed_carets(d.bottom)


def is_reduced(d: TreeDiagram) -> bool:
    return not opposing_pairs(d)


def reduce(d: TreeDiagram, rng: random.Random | None = None) -> TreeDiagram:
    """Cancel opposing caret pairs until none remain.

    With ``rng`` the pair cancelled at each step is chosen at random, which
    exercises order independence.
    """
    check_diagram(d)
    top, bottom = d
    while True:
        pairs = exposed_carets(top) & exposed_carets(bottom)
        if not pairs:
            return TreeDiagram(top, bottom)
        i = rng.choice(sorted(pairs)) if rng is not None else min(pairs)
        top = remove_exposed_caret(top, i)
        bottom = remove_exposed_caret(bottom, i)


def expand(d: TreeDiagram, leaf: int) -> TreeDiagram:
    """Hang an opposing caret pair below leaf ``leaf`` of both trees."""
    return TreeDiagram(add_caret_at_leaf(d.top, leaf), add_caret_at_leaf(d.bottom, leaf))


def splice(f: TreeDiagram, g: TreeDiagram) -> TreeDiagram:
    """Diagram for ``f`` followed by ``g``, before reduction."""
    middle = tree_lcm(f.bottom, g.top)
    top = graft(f.top, leaf_subtrees(middle, f.bottom))
    bottom = graft(g.bottom, leaf_subtrees(middle, g.top))
    return TreeDiagram(top, bottom)


def parse_diagram(text: str) -> TreeDiagram:
    parts = [p for p in text.replace("/", "\n").splitlines() if p.strip()]
    if len(parts) != 2:
        raise ParseError("a tree diagram is two trees on separate lines")
    d = TreeDiagram(parse_tree(parts[0]), parse_tree(parts[1]))
    check_diagram(d)
    return d


IDENTITY_DIAGRAM = TreeDiagram(LEAF, LEAF)
