"""Binary forests as a category and the groupoid of right fractions built on it.

A forest with ``i`` trees and ``j`` leaves is a morphism ``i -> j``.  The
generator ``x_n^(w)`` is the forest of ``w`` trees whose tree ``n`` is a single
caret.  Composition is written left to right: ``compose(f, g)`` hangs the trees
of ``g`` under the leaves of ``f``.
"""

from __future__ import annotations

import random
import re
from typing import Iterable, Iterator, NamedTuple, Sequence

from .core.element import Element
from .core.forests import format_forest
from .core.trees import (LEAF, Tree, add_caret_at_leaf, caret, exposed_carets, graft,
                         leaf_subtrees, remove_exposed_caret, right_vine, tree_lcm)
from .errors import ParseError, StructureError
from .words import _caret_starts


class ForestMorphism(tuple):
    """A tuple of trees read as a morphism from its tree count to its leaf count."""

    def __new__(cls, trees: Iterable[Tree]) -> "ForestMorphism":
        self = super().__new__(cls, trees)
        if not self:
            raise StructureError("a forest morphism has at least one tree")
        return self

    @property
    def domain(self) -> int:
        return len(self)

    @property
    def codomain(self) -> int:
        return sum(t.leaves for t in self)

    @property
    def carets(self) -> int:
        return self.codomain - self.domain

    @property
    def is_identity(self) -> bool:
        return all(t is LEAF for t in self)

    def __str__(self) -> str:
        return format_forest(self)

    def __repr__(self) -> str:
        return f"ForestMorphism({format_forest(self)!r})"


def identity(width: int) -> ForestMorphism:
    return ForestMorphism((LEAF,) * width)


def forest_generator(n: int, width: int) -> ForestMorphism:
    """``x_n^(width)``: a caret on tree ``n`` among ``width`` trivial trees."""
    if not 0 <= n < width:
        raise StructureError(f"x{n} needs width above {n}, got {width}")
    trees = [LEAF] * width
    trees[n] = caret(LEAF, LEAF)
    return ForestMorphism(trees)


def forest_compose(f: ForestMorphism, g: ForestMorphism) -> ForestMorphism:
    """Attach the roots of ``g`` to the leaves of ``f`` in order."""
    if f.codomain != g.domain:
        raise StructureError(f"cannot compose {f.domain}->{f.codomain} with {g.domain}->{g.codomain}")
    out = []
    pos = 0
    for t in f:
        out.append(graft(t, g[pos:pos + t.leaves]))
        pos += t.leaves
    return ForestMorphism(out)


def forest_quotient(big: ForestMorphism, small: ForestMorphism) -> ForestMorphism:
    """The ``a`` with ``compose(small, a) == big``; raises if none exists."""
    if big.domain != small.domain:
        raise StructureError("forests have different domains")
    out: list[Tree] = []
    for b, s in zip(big, small):
        out.extend(leaf_subtrees(b, s))
    return ForestMorphism(out)


def forest_lcm(f: ForestMorphism, g: ForestMorphism) -> tuple[ForestMorphism, ForestMorphism]:
    """Least ``(a, b)`` with ``compose(f, a) == compose(g, b)``, built tree by tree."""
    if f.domain != g.domain:
        raise StructureError("forest lcm needs equal domains")
    common = ForestMorphism(tree_lcm(s, t) for s, t in zip(f, g))
    return forest_quotient(common, f), forest_quotient(common, g)


class GeneratorLetter(NamedTuple):
    """``x_index^(width)`` to the power ``sign``; ``width`` is the smaller end."""

    index: int
    sign: int
    width: int

    @property
    def source(self) -> int:
        return self.width if self.sign > 0 else self.width + 1

    @property
    def target(self) -> int:
        return self.width + 1 if self.sign > 0 else self.width

    def inverse(self) -> "GeneratorLetter":
        return GeneratorLetter(self.index, -self.sign, self.width)

    def __str__(self) -> str:
        return f"x{self.index}[{self.width}]" + ("" if self.sign > 0 else "^-1")


class GeneratorWord(tuple):
    """A composable sequence of groupoid generators."""

    def __new__(cls, letters: Iterable, start: int | None = None) -> "GeneratorWord":
        letters = tuple(GeneratorLetter(*l) for l in letters)
        self = super().__new__(cls, letters)
        self.start = letters[0].source if letters else (1 if start is None else start)
        if start is not None and letters and letters[0].source != start:
            raise StructureError(f"word starts at width {letters[0].source}, not {start}")
        w = self.start
        for l in letters:
            if not 0 <= l.index < l.width:
                raise StructureError(f"{l}: index must be below the width")
            if l.source != w:
                raise StructureError(f"{l} expects width {l.source} but the word is at {w}")
            w = l.target
        self.end = w
        return self

    def __add__(self, other: "GeneratorWord") -> "GeneratorWord":
        if self.end != other.start:
            raise StructureError(f"word ending at width {self.end} cannot precede one starting at {other.start}")
        return GeneratorWord(tuple(self) + tuple(other), self.start)

    def inverse(self) -> "GeneratorWord":
        return GeneratorWord((l.inverse() for l in reversed(self)), self.end)

    def __str__(self) -> str:
        return format_generator_word(self)


_LETTER = re.compile(r"\s*x(\d+)(?:\[(\d+)\])?(?:\s*\^\s*(-?\d+))?\s*")


def parse_generator_word(text: str, start: int = 1) -> GeneratorWord:
    """Read letters like ``x1``, ``x1[3]`` or ``x0^-2``; widths follow from ``start``.

    A bracketed width is the smaller end of that generator and must agree with
    the running width.
    """
    s = text.strip()
    if s in ("", "1", "e"):
        return GeneratorWord((), start)
    letters = []
    width = start
    pos = 0
    while pos < len(s):
        m = _LETTER.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot read a generator at {s[pos:]!r}")
        n = int(m.group(1))
        power = int(m.group(3)) if m.group(3) else 1
        sign = 1 if power > 0 else -1
        for _ in range(abs(power)):
            w = width if sign > 0 else width - 1
            if m.group(2) is not None and int(m.group(2)) != w:
                raise StructureError(f"x{n}[{m.group(2)}] does not fit running width {width}")
            if w < 1 or not 0 <= n < w:
                raise StructureError(f"x{n} cannot act at width {width}")
            letters.append(GeneratorLetter(n, sign, w))
            width = w + 1 if sign > 0 else w
        pos = m.end()
    return GeneratorWord(letters, start)


def format_generator_word(w: Sequence[GeneratorLetter], widths: bool = True) -> str:
    if not w:
        return "1"
    if widths:
        return " ".join(str(l) for l in w)
    return " ".join(f"x{l.index}" + ("" if l.sign > 0 else "^-1") for l in w)


def forest_normal_form(f: ForestMorphism) -> GeneratorWord:
    """The word ``x_0^a0 x_1^a1 ...`` evaluating to ``f``, indices nondecreasing."""
    counts = _caret_starts(f)
    letters = []
    w = f.domain
    for i in sorted(counts):
        for _ in range(counts[i]):
            letters.append(GeneratorLetter(i, 1, w))
            w += 1
    return GeneratorWord(letters, f.domain)


def evaluate_forest_word(w: GeneratorWord) -> ForestMorphism:
    """Compose a word of positive letters in the forest category."""
    out = identity(w.start)
    for l in w:
        if l.sign < 0:
            raise StructureError("forest words have no inverse letters")
        out = forest_compose(out, forest_generator(l.index, l.width))
    return out


class GroupoidMorphism(NamedTuple):
    """The right fraction ``p q^-1`` from ``p.domain`` to ``q.domain``."""

    p: ForestMorphism
    q: ForestMorphism

    @property
    def source(self) -> int:
        return self.p.domain

    @property
    def target(self) -> int:
        return self.q.domain

    @property
    def is_reduced(self) -> bool:
        return not _opposing(self.p, self.q)

    @property
    def is_identity(self) -> bool:
        return self.p.is_identity and self.q.is_identity

    def inverse(self) -> "GroupoidMorphism":
        return GroupoidMorphism(self.q, self.p)

    def __str__(self) -> str:
        return f"{format_forest(self.p)} / {format_forest(self.q)}"


def _exposed(f: ForestMorphism) -> set[int]:
    out = set()
    off = 0
    for t in f:
        out.update(off + i for i in exposed_carets(t))
        off += t.leaves
    return out


def _opposing(p: ForestMorphism, q: ForestMorphism) -> list[int]:
    return sorted(_exposed(p) & _exposed(q))


def _remove(f: ForestMorphism, leaf: int) -> ForestMorphism:
    off = 0
    for j, t in enumerate(f):
        if leaf < off + t.leaves:
            return ForestMorphism(f[:j] + (remove_exposed_caret(t, leaf - off),) + f[j + 1:])
        off += t.leaves
    raise StructureError(f"leaf {leaf} is beyond the forest")


def reduce_fraction(m: GroupoidMorphism, rng: random.Random | None = None) -> GroupoidMorphism:
    """Cancel matching exposed carets until none remain, in random order if ``rng`` is given."""
    p, q = m
    while True:
        pairs = _opposing(p, q)
        if not pairs:
            return GroupoidMorphism(p, q)
        leaf = rng.choice(pairs) if rng else pairs[-1]
        p, q = _remove(p, leaf), _remove(q, leaf)


def groupoid_identity(width: int) -> GroupoidMorphism:
    return GroupoidMorphism(identity(width), identity(width))


def letter_morphism(l: GeneratorLetter) -> GroupoidMorphism:
    g = forest_generator(l.index, l.width)
    m = GroupoidMorphism(g, identity(l.width + 1))
    return m if l.sign > 0 else m.inverse()


def groupoid_compose(m1: GroupoidMorphism, m2: GroupoidMorphism,
                     rng: random.Random | None = None) -> GroupoidMorphism:
    """``m1`` followed by ``m2``, through the least common multiple of the middle forests."""
    if m1.target != m2.source:
        raise StructureError(f"cannot compose {m1.source}->{m1.target} with {m2.source}->{m2.target}")
    a, b = forest_lcm(m1.q, m2.p)
    return reduce_fraction(GroupoidMorphism(forest_compose(m1.p, a), forest_compose(m2.q, b)), rng)


def canonicalize(w: GeneratorWord, rng: random.Random | None = None) -> GroupoidMorphism:
    """The reduced fraction of a word.

    With ``rng`` the word is bracketed at random and every cancellation picks
    a random opposing pair, so repeated calls exercise different reduction orders.
    """
    parts = [letter_morphism(l) for l in w]
    if not parts:
        return groupoid_identity(w.start)
    if rng is None:
        out = parts[0]
        for m in parts[1:]:
            out = groupoid_compose(out, m)
        return reduce_fraction(out)
    while len(parts) > 1:
        i = rng.randrange(len(parts) - 1)
        parts[i:i + 2] = [groupoid_compose(parts[i], parts[i + 1], rng)]
    return reduce_fraction(parts[0], rng)


def normal_word(m: GroupoidMorphism) -> GeneratorWord:
    """Every split before every merge: the normal form of ``p`` then that of ``q`` reversed."""
    return forest_normal_form(m.p) + forest_normal_form(m.q).inverse()


# Relation moves on words.

def relation_moves(w: GeneratorWord) -> Iterator[GeneratorWord]:
    """Words equal to ``w`` by one commuting relation or one cancelling pair."""
    letters = list(w)
    for i in range(len(letters) - 1):
        a, b = letters[i], letters[i + 1]
        if a.sign > 0 and b.sign > 0:
            # x_n^(w) x_k^(w+1) = x_k^(w) x_(n+1)^(w+1) for k < n
            if b.index < a.index:
                new = [GeneratorLetter(b.index, 1, a.width), GeneratorLetter(a.index + 1, 1, b.width)]
                yield GeneratorWord(letters[:i] + new + letters[i + 2:], w.start)
            elif b.index > a.index + 1:
                new = [GeneratorLetter(b.index - 1, 1, a.width), GeneratorLetter(a.index, 1, b.width)]
                yield GeneratorWord(letters[:i] + new + letters[i + 2:], w.start)
        elif a.sign < 0 and b.sign < 0:
            if a.index > b.index + 1:
                new = [GeneratorLetter(b.index, -1, a.width), GeneratorLetter(a.index - 1, -1, b.width)]
                yield GeneratorWord(letters[:i] + new + letters[i + 2:], w.start)
            elif a.index < b.index:
                new = [GeneratorLetter(b.index + 1, -1, a.width), GeneratorLetter(a.index, -1, b.width)]
                yield GeneratorWord(letters[:i] + new + letters[i + 2:], w.start)
        elif a == b.inverse():
            yield GeneratorWord(letters[:i] + letters[i + 2:], w.start)


def insert_cancelling_pair(w: GeneratorWord, rng: random.Random) -> GeneratorWord:
    """Insert ``x x^-1`` or ``x^-1 x`` at a random position."""
    letters = list(w)
    pos = rng.randrange(len(letters) + 1)
    width = w.start if pos == 0 else letters[pos - 1].target
    options = [GeneratorLetter(n, 1, width) for n in range(width)]
    options += [GeneratorLetter(n, -1, width - 1) for n in range(width - 1)]
    l = rng.choice(options)
    return GeneratorWord(letters[:pos] + [l, l.inverse()] + letters[pos:], w.start)


def random_equivalent_word(w: GeneratorWord, rng: random.Random, steps: int = 10) -> GeneratorWord:
    for _ in range(steps):
        moves = list(relation_moves(w))
        if moves and rng.random() < 0.7:
            w = rng.choice(moves)
        else:
            w = insert_cancelling_pair(w, rng)
    return w


def random_generator_word(length: int, rng: random.Random, start: int = 1,
                          max_width: int = 8) -> GeneratorWord:
    letters = []
    width = start
    for _ in range(length):
        grow = width < 2 or (width < max_width and rng.random() < 0.5)
        if grow:
            l = GeneratorLetter(rng.randrange(width), 1, width)
        else:
            l = GeneratorLetter(rng.randrange(width - 1), -1, width - 1)
        letters.append(l)
        width = l.target
    return GeneratorWord(letters, start)


# The group of loops at 1.

def to_element(m: GroupoidMorphism) -> Element:
    """A fraction from 1 to 1 is a tree diagram: ``p`` on top, ``q`` below."""
    if m.source != 1 or m.target != 1:
        raise StructureError(f"expected a morphism 1 -> 1, got {m.source} -> {m.target}")
    return Element(m.p[0], m.q[0])


def from_element(f: Element) -> GroupoidMorphism:
    return GroupoidMorphism(ForestMorphism((f.top,)), ForestMorphism((f.bottom,)))


def spanning_path(width: int) -> GroupoidMorphism:
    """The chosen path ``x_0^(1) x_1^(2) ... x_(w-2)^(w-1)`` from 1 to ``width``."""
    if width < 1:
        raise StructureError("widths start at 1")
    return GroupoidMorphism(ForestMorphism((right_vine(width),)), identity(width))


def edge_loop(l: GeneratorLetter) -> Element:
    """The loop at 1 through one generator edge, closed along the spanning paths."""
    m = groupoid_compose(spanning_path(l.source), letter_morphism(l))
    return to_element(groupoid_compose(m, spanning_path(l.target).inverse()))


def is_spanning_edge(l: GeneratorLetter) -> bool:
    return l.index == l.width - 1


# Rendering.

def render_dot(w: GeneratorWord, name: str = "strands") -> str:
    """DOT digraph: splits as triangles, merges as inverted triangles, strands as edges."""
    lines = [f"digraph {name} {{", "  rankdir=TB;"]
    strands = []
    for i in range(w.start):
        lines.append(f'  in{i} [shape=point, label="in{i}"];')
        strands.append(f"in{i}")
    for k, l in enumerate(w):
        node = f"n{k}"
        if l.sign > 0:
            lines.append(f'  {node} [shape=triangle, label="x{l.index}"];')
            lines.append(f"  {strands[l.index]} -> {node};")
            strands[l.index:l.index + 1] = [node, node]
        else:
            lines.append(f'  {node} [shape=invtriangle, label="x{l.index}^-1"];')
            lines.append(f"  {strands[l.index]} -> {node};")
            lines.append(f"  {strands[l.index + 1]} -> {node};")
            strands[l.index:l.index + 2] = [node]
    for i, src in enumerate(strands):
        lines.append(f'  out{i} [shape=point, label="out{i}"];')
        lines.append(f"  {src} -> out{i};")
    lines.append("}")
    return "\n".join(lines)


def random_forest(domain: int, carets: int, rng: random.Random) -> ForestMorphism:
    trees = [LEAF] * domain
    for _ in range(carets):
        j = rng.randrange(domain)
        trees[j] = add_caret_at_leaf(trees[j], rng.randrange(trees[j].leaves))
    return ForestMorphism(trees)
