"""One-way and two-way forest diagrams and how generators act on them.

Both diagram types are plain tuples of interned trees so they hash quickly;
the two-way form is the key used for ball enumeration.
"""

from __future__ import annotations

from typing import NamedTuple

from ..errors import ParseError, StructureError
from .diagram import TreeDiagram, reduce
from .trees import LEAF, Tree, add_caret_at_leaf, caret, exposed_carets, parse_tree, \
    remove_exposed_caret

Forest = tuple[Tree, ...]


class TwoWayDiagram(NamedTuple):
    """Pointed top and bottom forests over a shared run of leaf columns."""

    top: Forest
    top_pointer: int
    bottom: Forest
    bottom_pointer: int

    @property
    def leaf_count(self) -> int:
        return sum(t.leaves for t in self.top)

    @property
    def width(self) -> int:
        return self.leaf_count - 1

    @property
    def carets(self) -> int:
        return sum(t.leaves for t in self.top) + sum(t.leaves for t in self.bottom) \
            - len(self.top) - len(self.bottom)

    def __str__(self) -> str:
        return f"{format_forest(self.top, self.top_pointer)}\n" \
               f"{format_forest(self.bottom, self.bottom_pointer)}"


class OneWayDiagram(NamedTuple):
    """Top and bottom forests indexed from 0; trailing trivial trees implicit."""

    top: Forest
    bottom: Forest

    def __str__(self) -> str:
        return f"{format_forest(self.top)}\n{format_forest(self.bottom)}"


IDENTITY_TWOWAY = TwoWayDiagram((LEAF,), 0, (LEAF,), 0)
IDENTITY_ONEWAY = OneWayDiagram((), ())


def format_forest(trees: Forest, pointer: int | None = None) -> str:
    if not trees:
        return "-"
    return " ".join(("*" if i == pointer else "") + str(t) for i, t in enumerate(trees))


def parse_forest(text: str) -> tuple[Forest, int | None]:
    tokens = text.split()
    if tokens == ["-"]:
        return (), None
    trees, pointer = [], None
    for i, tok in enumerate(tokens):
        if tok.startswith("*"):
            if pointer is not None:
                raise ParseError("a forest has at most one pointer")
            pointer = i
            tok = tok[1:]
        trees.append(parse_tree(tok))
    return tuple(trees), pointer


def _two_lines(text: str) -> list[str]:
    lines = [ln for ln in text.replace("/", "\n").splitlines() if ln.strip()]
    if len(lines) != 2:
        raise ParseError("a forest diagram is a top line and a bottom line")
    return lines


def parse_twoway(text: str) -> TwoWayDiagram:
    (top, tp), (bot, bp) = (parse_forest(ln) for ln in _two_lines(text))
    if tp is None or bp is None:
        raise ParseError("both forests of a two-way diagram need a '*' pointer")
    if sum(t.leaves for t in top) != sum(t.leaves for t in bot):
        raise StructureError("top and bottom forests have different leaf counts")
    return trim_twoway(top, tp, bot, bp)


def parse_oneway(text: str) -> OneWayDiagram:
    (top, tp), (bot, bp) = (parse_forest(ln) for ln in _two_lines(text))
    if tp is not None or bp is not None:
        raise ParseError("one-way forests carry no pointer")
    return pad_oneway(top, bot)


def pad_oneway(top: Forest, bottom: Forest) -> OneWayDiagram:
    """Equalize leaf totals with trailing trivial trees, then trim."""
    diff = sum(t.leaves for t in top) - sum(t.leaves for t in bottom)
    if diff > 0:
        bottom = bottom + (LEAF,) * diff
    elif diff < 0:
        top = top + (LEAF,) * -diff
    return trim_oneway(top, bottom)


def trim_twoway(top: Forest, tp: int, bot: Forest, bp: int) -> TwoWayDiagram:
    """Drop edge columns holding only unpointed trivial trees."""
    k = 0
    while k < tp and k < bp and top[k] is LEAF and bot[k] is LEAF:
        k += 1
    nt, nb = len(top), len(bot)
    j = 0
    while top[nt - 1 - j] is LEAF and bot[nb - 1 - j] is LEAF \
            and tp < nt - 1 - j and bp < nb - 1 - j:
        j += 1
    if k or j:
        top = top[k:nt - j]
        bot = bot[k:nb - j]
        tp -= k
        bp -= k
    return TwoWayDiagram(top, tp, bot, bp)


def trim_oneway(top: Forest, bot: Forest) -> OneWayDiagram:
    nt, nb = len(top), len(bot)
    while nt and nb and top[nt - 1] is LEAF and bot[nb - 1] is LEAF:
        nt -= 1
        nb -= 1
    return OneWayDiagram(top[:nt], bot[:nb])


def _locate(trees: Forest, column: int) -> tuple[int, int]:
    """Tree index holding leaf ``column`` and the leaf's offset inside it."""
    for i, t in enumerate(trees):
        if column < t.leaves:
            return i, column
        column -= t.leaves
    raise StructureError("column beyond the forest")


def _pad(top: Forest, bot: Forest, length: int) -> tuple[Forest, Forest]:
    extra = length - len(top)
    if extra > 0:
        top = top + (LEAF,) * extra
        bot = bot + (LEAF,) * extra
    return top, bot


def _merge(top: Forest, bot: Forest, idx: int) -> tuple[Forest, Forest]:
    """Join top trees ``idx`` and ``idx+1``, cancelling an opposing bottom caret."""
    top, bot = _pad(top, bot, idx + 2)
    a, b = top[idx], top[idx + 1]
    if a is LEAF and b is LEAF:
        col = sum(t.leaves for t in top[:idx])
        j, off = _locate(bot, col)
        if off in exposed_carets(bot[j]):
            bot = bot[:j] + (remove_exposed_caret(bot[j], off),) + bot[j + 1:]
            return top[:idx] + (LEAF,) + top[idx + 2:], bot
    return top[:idx] + (caret(a, b),) + top[idx + 2:], bot


def _split(top: Forest, bot: Forest, idx: int) -> tuple[Forest, Forest]:
    """Remove the root caret of top tree ``idx``, or drop a bottom caret under it."""
    top, bot = _pad(top, bot, idx + 1)
    t = top[idx]
    if t is not LEAF:
        return top[:idx] + (t.left, t.right) + top[idx + 1:], bot
    col = sum(u.leaves for u in top[:idx])
    j, off = _locate(bot, col)
    bot = bot[:j] + (add_caret_at_leaf(bot[j], off),) + bot[j + 1:]
    return top[:idx + 1] + (LEAF,) + top[idx + 1:], bot


def twoway_apply(d: TwoWayDiagram, index: int, sign: int) -> TwoWayDiagram:
    """Left-multiply by ``x_index ** sign``."""
    top, tp, bot, bp = d
    if index == 0:
        if sign > 0:
            if tp == len(top) - 1:
                top, bot = top + (LEAF,), bot + (LEAF,)
            return trim_twoway(top, tp + 1, bot, bp)
        if tp == 0:
            return trim_twoway((LEAF,) + top, 0, (LEAF,) + bot, bp + 1)
        return trim_twoway(top, tp - 1, bot, bp)
    if sign > 0:
        top, bot = _merge(top, bot, tp + index - 1)
    else:
        top, bot = _split(top, bot, tp + index - 1)
    return trim_twoway(top, tp, bot, bp)


def oneway_apply(d: OneWayDiagram, index: int, sign: int) -> OneWayDiagram:
    """Left-multiply by ``x_index ** sign`` acting on the half-line picture."""
    top, bot = d
    if sign > 0:
        top, bot = _merge(top, bot, index)
    else:
        top, bot = _split(top, bot, index)
    return trim_oneway(top, bot)


def _spine_left(t: Tree) -> list[Tree]:
    """Right children along the left spine of ``t``, outermost last."""
    out = []
    while t is not LEAF:
        out.append(t.right)
        t = t.left
    out.reverse()
    return out


def _spine_right(t: Tree) -> list[Tree]:
    out = []
    while t is not LEAF:
        out.append(t.left)
        t = t.right
    return out


def _fold_left(trees) -> Tree:
    node = LEAF
    for t in trees:
        node = caret(node, t)
    return node


def _fold_right(trees) -> Tree:
    node = LEAF
    for t in reversed(trees):
        node = caret(t, node)
    return node


def tree_to_twoway(d: TreeDiagram) -> TwoWayDiagram:
    """Two-way view of a reduced tree diagram."""
    top, bot = d
    if top is LEAF:
        return IDENTITY_TWOWAY
    # The pointer tree hangs off the second right-spine caret.
    while top.right is LEAF or bot.right is LEAF:
        top = add_caret_at_leaf(top, top.leaves - 1)
        bot = add_caret_at_leaf(bot, bot.leaves - 1)
    tl, bl = _spine_left(top.left), _spine_left(bot.left)
    return trim_twoway(tuple(tl + _spine_right(top.right)), len(tl),
                       tuple(bl + _spine_right(bot.right)), len(bl))


def twoway_to_tree(d: TwoWayDiagram) -> TreeDiagram:
    top, tp, bot, bp = d
    t = caret(_fold_left(top[:tp]), _fold_right(top[tp:]))
    b = caret(_fold_left(bot[:bp]), _fold_right(bot[bp:]))
    return reduce(TreeDiagram(t, b))


def tree_to_oneway(d: TreeDiagram) -> OneWayDiagram:
    return trim_oneway(tuple(_spine_right(d.top)), tuple(_spine_right(d.bottom)))


def oneway_to_tree(d: OneWayDiagram) -> TreeDiagram:
    return reduce(TreeDiagram(_fold_right(d.top), _fold_right(d.bottom)))


def oneway_to_twoway(d: OneWayDiagram) -> TwoWayDiagram:
    """Peel the left spine of each 0-tree; pointers land on the 1-trees."""
    extra = max(0, 2 - len(d.top), 2 - len(d.bottom))
    top, bot = d.top + (LEAF,) * extra, d.bottom + (LEAF,) * extra
    tl, bl = _spine_left(top[0]), _spine_left(bot[0])
    return trim_twoway(tuple(tl) + top[1:], len(tl), tuple(bl) + bot[1:], len(bl))


def twoway_to_oneway(d: TwoWayDiagram) -> OneWayDiagram:
    top, tp, bot, bp = d
    return trim_oneway((_fold_left(top[:tp]),) + top[tp:],
                       (_fold_left(bot[:bp]),) + bot[bp:])
