"""Interned finite binary trees.

Every structurally distinct tree exists exactly once, so equality and hashing
are identity based and cost O(1).  Trees are built only through ``caret`` and
the ``LEAF`` singleton.
"""

from __future__ import annotations

import random
from functools import lru_cache
from typing import Iterator, Sequence

from ..errors import ParseError, StructureError


class Tree:
    __slots__ = ("left", "right", "leaves", "height", "_flags", "_text")

    def __init__(self, left: "Tree | None", right: "Tree | None") -> None:
        self.left = left
        self.right = right
        if left is None:
            self.leaves = 1
            self.height = 0
        else:
            self.leaves = left.leaves + right.leaves
            self.height = 1 + max(left.height, right.height)
        self._flags = None
        self._text = None

    @property
    def is_leaf(self) -> bool:
        return self.left is None

    @property
    def carets(self) -> int:
        return self.leaves - 1

    width = carets

    def left_child_flags(self) -> tuple[bool, ...]:
        """Per leaf, whether it hangs as the left child of its parent caret."""
        if self._flags is None:
            if self.left is None:
                self._flags = (False,)
            else:
                lf = (True,) if self.left.left is None else self.left.left_child_flags()
                rf = (False,) if self.right.left is None else self.right.left_child_flags()
                self._flags = lf + rf
        return self._flags

    def __str__(self) -> str:
        if self._text is None:
            self._text = "." if self.left is None else f"({self.left},{self.right})"
        return self._text

    def __repr__(self) -> str:
        return f"Tree({self})"

    def __reduce__(self):
        return (parse_tree, (str(self),))


LEAF = Tree(None, None)
_INTERNED: dict[tuple[int, int], Tree] = {}


def caret(left: Tree, right: Tree) -> Tree:
    """The unique tree whose root has the given subtrees."""
    key = (id(left), id(right))
    t = _INTERNED.get(key)
    if t is None:
        t = Tree(left, right)
        _INTERNED[key] = t
    return t


def parse_tree(text: str) -> Tree:
    s = "".join(text.split())
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise ParseError(f"unexpected end of tree in {text!r}")
        ch = s[pos]
        if ch == ".":
            pos += 1
            return LEAF
        if ch != "(":
            raise ParseError(f"unexpected {ch!r} at offset {pos} in {text!r}")
        pos += 1
        left = node()
        if pos >= len(s) or s[pos] != ",":
            raise ParseError(f"expected ',' at offset {pos} in {text!r}")
        pos += 1
        right = node()
        if pos >= len(s) or s[pos] != ")":
            raise ParseError(f"expected ')' at offset {pos} in {text!r}")
        pos += 1
        return caret(left, right)

    t = node()
    if pos != len(s):
        raise ParseError(f"trailing input after tree in {text!r}")
    return t


def right_vine(leaves: int) -> Tree:
    t = LEAF
    for _ in range(leaves - 1):
        t = caret(LEAF, t)
    return t


def left_vine(leaves: int) -> Tree:
    t = LEAF
    for _ in range(leaves - 1):
        t = caret(t, LEAF)
    return t


def tree_lcm(a: Tree, b: Tree) -> Tree:
    """Smallest tree having both arguments as rooted subtrees."""
    if a is b or b.left is None:
        return a
    if a.left is None:
        return b
    return caret(tree_lcm(a.left, b.left), tree_lcm(a.right, b.right))


def leaf_subtrees(big: Tree, small: Tree) -> list[Tree]:
    """Subtrees of ``big`` hanging below each leaf of ``small``."""
    out: list[Tree] = []

    def walk(b: Tree, s: Tree) -> None:
        if s.left is None:
            out.append(b)
        elif b.left is None:
            raise StructureError(f"{small} is not a rooted subtree of {big}")
        else:
            walk(b.left, s.left)
            walk(b.right, s.right)

    walk(big, small)
    return out


def graft(tree: Tree, subtrees: Sequence[Tree]) -> Tree:
    """Replace the leaves of ``tree``, in order, by ``subtrees``."""
    if len(subtrees) != tree.leaves:
        raise StructureError(f"need {tree.leaves} subtrees, got {len(subtrees)}")
    it = iter(subtrees)

    def walk(t: Tree) -> Tree:
        if t.left is None:
            return next(it)
        left = walk(t.left)
        return caret(left, walk(t.right))

    return walk(tree)


def add_caret_at_leaf(tree: Tree, index: int) -> Tree:
    if not 0 <= index < tree.leaves:
        raise StructureError(f"leaf {index} out of range for {tree}")
    if tree.left is None:
        return caret(LEAF, LEAF)
    n = tree.left.leaves
    if index < n:
        return caret(add_caret_at_leaf(tree.left, index), tree.right)
    return caret(tree.left, add_caret_at_leaf(tree.right, index - n))


@lru_cache(maxsize=None)
def exposed_carets(tree: Tree) -> frozenset[int]:
    """Leaf indices ``i`` such that leaves ``i, i+1`` form a caret."""
    if tree.left is None:
        return frozenset()
    if tree.leaves == 2:
        return frozenset((0,))
    n = tree.left.leaves
    return exposed_carets(tree.left) | frozenset(i + n for i in exposed_carets(tree.right))


def remove_exposed_caret(tree: Tree, index: int) -> Tree:
    """Collapse the caret on leaves ``index, index+1`` to a single leaf."""
    if tree.leaves == 2:
        if index != 0:
            raise StructureError(f"no exposed caret at leaf {index} of {tree}")
        return LEAF
    if tree.left is None:
        raise StructureError(f"no exposed caret at leaf {index}")
    n = tree.left.leaves
    if index < n - 1:
        return caret(remove_exposed_caret(tree.left, index), tree.right)
    if index >= n:
        return caret(tree.left, remove_exposed_caret(tree.right, index - n))
    raise StructureError(f"no exposed caret at leaf {index} of {tree}")


def subtrees(tree: Tree) -> Iterator[Tree]:
    """All rooted subtrees at every node, including leaves, with repeats."""
    stack = [tree]
    while stack:
        t = stack.pop()
        yield t
        if t.left is not None:
            stack.append(t.right)
            stack.append(t.left)


@lru_cache(maxsize=None)
def all_trees(leaves: int) -> tuple[Tree, ...]:
    if leaves == 1:
        return (LEAF,)
    return tuple(caret(a, b) for i in range(1, leaves)
                 for a in all_trees(i) for b in all_trees(leaves - i))


@lru_cache(maxsize=None)
def trees_bounded(leaves: int, height: int) -> tuple[Tree, ...]:
    """Trees with the given leaf count and height at most ``height``."""
    if leaves == 1:
        return (LEAF,) if height >= 0 else ()
    if height <= 0 or leaves > 1 << height:
        return ()
    return tuple(caret(a, b) for i in range(1, leaves)
                 for a in trees_bounded(i, height - 1)
                 for b in trees_bounded(leaves - i, height - 1))


def random_tree(carets: int, rng: random.Random) -> Tree:
    """Grow a tree by attaching carets at uniformly chosen leaves."""
    t = LEAF
    for _ in range(carets):
        t = add_caret_at_leaf(t, rng.randrange(t.leaves))
    return t
