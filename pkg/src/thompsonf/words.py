"""Words in the generators and the normal forms they rewrite to."""

from __future__ import annotations

import re
from collections import Counter, deque
from itertools import groupby
from typing import Iterable, Iterator, NamedTuple, Sequence

from .core.element import IDENTITY, Element, is_positive
from .core.forests import (IDENTITY_ONEWAY, IDENTITY_TWOWAY, OneWayDiagram, oneway_apply,
                           twoway_apply)
from .core.trees import LEAF, Tree
from .errors import DomainError, ParseError, ResourceLimitError, StructureError

EMPTY_WORD = "1"
INFINITE = "infinite"
X0X1 = "x0x1"


class Letter(NamedTuple):
    index: int
    sign: int

    def inverse(self) -> "Letter":
        return Letter(self.index, -self.sign)

    def __str__(self) -> str:
        return f"x{self.index}" + ("" if self.sign > 0 else "^-1")


class Word:
    """An immutable sequence of signed generators."""

    __slots__ = ("letters", "alphabet")

    def __init__(self, letters: Iterable = (), alphabet: str = INFINITE) -> None:
        letters = tuple(Letter(int(i), 1 if s > 0 else -1) for i, s in letters)
        if any(i < 0 for i, _ in letters):
            raise StructureError("generator indices are non-negative")
        if alphabet == X0X1 and any(i > 1 for i, _ in letters):
            raise StructureError("a word over {x0, x1} uses only indices 0 and 1")
        if alphabet not in (INFINITE, X0X1):
            raise ValueError(f"unknown alphabet {alphabet!r}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "alphabet", alphabet)

    def __setattr__(self, name, value):
        raise AttributeError("Word is immutable")

    @classmethod
    def positive(cls, indices: Iterable[int]) -> "Word":
        return cls((i, 1) for i in indices)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def __add__(self, other: "Word") -> "Word":
        alphabet = X0X1 if self.alphabet == other.alphabet == X0X1 else INFINITE
        return Word(self.letters + other.letters, alphabet)

    def inverse(self) -> "Word":
        return Word((l.inverse() for l in reversed(self.letters)), self.alphabet)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.letters)

    @property
    def is_positive(self) -> bool:
        return all(s > 0 for _, s in self.letters)

    def census(self) -> Counter:
        """Letter counts keyed by generator index, signs ignored."""
        return Counter(i for i, _ in self.letters)

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


_TOKEN = re.compile(r"\s*x(\d+)(?:\s*\^\s*(-?\d+))?\s*")


def parse_word(text: str, alphabet: str = INFINITE) -> Word:
    """Read tokens ``xN`` or ``xN^K`` separated by optional whitespace.

    Parentheses are ignored, so grouped words read as their concatenation.
    """
    s = text.replace("(", " ").replace(")", " ").strip()
    if s in ("", EMPTY_WORD, "e"):
        return Word((), alphabet)
    letters, pos = [], 0
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad word token at offset {pos} in {text!r}")
        n = int(m.group(1))
        k = int(m.group(2)) if m.group(2) is not None else 1
        letters.extend([(n, 1 if k > 0 else -1)] * abs(k))
        pos = m.end()
    return Word(letters, alphabet)


def format_word(w: Word | Sequence[Letter], compress: bool | None = None) -> str:
    """Space-separated letters.

    Runs are written as powers when ``compress`` is set; by default only words
    over {x0, x1} are compressed, where long x0 runs are the norm.
    """
    letters = w.letters if isinstance(w, Word) else tuple(w)
    if not letters:
        return EMPTY_WORD
    if compress is None:
        compress = isinstance(w, Word) and w.alphabet == X0X1
    if not compress:
        return " ".join(map(str, letters))
    parts = []
    for (i, s), run in groupby(letters):
        k = s * len(list(run))
        parts.append(f"x{i}" if k == 1 else f"x{i}^{k}")
    return " ".join(parts)


def evaluate(w: Word) -> Element:
    """Product of the letters, built by left-multiplying from the right end."""
    d = IDENTITY_TWOWAY
    for i, s in reversed(w.letters):
        d = twoway_apply(d, i, s)
    return Element.from_twoway(d) if d is not IDENTITY_TWOWAY else IDENTITY


def evaluate_oneway(w: Word) -> Element:
    """Same product computed with the half-line forest actions."""
    d = IDENTITY_ONEWAY
    for i, s in reversed(w.letters):
        d = oneway_apply(d, i, s)
    return Element.from_oneway(d)


def evaluate_by_multiplication(w: Word) -> Element:
    """Reference product through tree-diagram splicing only."""
    from .core.element import generator, invert, multiply

    out = IDENTITY
    for i, s in w.letters:
        g = generator(i)
        out = multiply(out, g if s > 0 else invert(g))
    return out


def x0_power_word(k: int) -> list[Letter]:
    return [Letter(0, 1 if k > 0 else -1)] * abs(k)


def lower_to_x0x1(w: Word) -> Word:
    """Rewrite each ``x_n`` as ``x0^(1-n) x1 x0^(n-1)``, merging adjacent x0 runs."""
    out: list[Letter] = []
    shift = 0
    for i, s in w.letters:
        if i == 0:
            shift += s
            continue
        out.extend(x0_power_word(shift + 1 - i))
        out.append(Letter(1, s))
        shift = i - 1
    out.extend(x0_power_word(shift))
    return Word(out, X0X1)


def lowered_length(w: Word) -> int:
    """Length of :func:`lower_to_x0x1` applied to ``w``, without building it."""
    total, shift = 0, 0
    for i, s in w.letters:
        if i == 0:
            shift += s
            continue
        total += abs(shift + 1 - i) + 1
        shift = i - 1
    return total + abs(shift)


def _caret_starts(trees: Sequence[Tree]) -> Counter:
    """Count carets of a forest by the global index of their leftmost leaf."""
    counts: Counter = Counter()
    offset = 0
    for t in trees:
        stack = [(t, offset)]
        while stack:
            node, lo = stack.pop()
            if node is not LEAF:
                counts[lo] += 1
                stack.append((node.left, lo))
                stack.append((node.right, lo + node.left.leaves))
        offset += t.leaves
    return counts


def exponents(f: Element) -> tuple[list[int], list[int]]:
    """Exponent lists ``a`` and ``b`` of the normal form of ``f``."""
    top, bot = f.oneway
    a, b = _caret_starts(top), _caret_starts(bot)
    n = max(list(a) + list(b), default=-1) + 1
    return [a[i] for i in range(n)], [b[i] for i in range(n)]


def word_from_exponents(a: Sequence[int], b: Sequence[int]) -> Word:
    letters = [(i, 1) for i, k in enumerate(a) for _ in range(k)]
    letters += [(i, -1) for i in reversed(range(len(b))) for _ in range(b[i])]
    return Word(letters)


def normal_form(f: Element) -> Word:
    return word_from_exponents(*exponents(f))


def is_normal_form(w: Word) -> bool:
    """Whether ``w`` has the shape and the adjacency condition of a normal form."""
    letters = w.letters
    k = 0
    while k < len(letters) and letters[k].sign > 0:
        k += 1
    pos, neg = [i for i, _ in letters[:k]], [i for i, _ in letters[k:]]
    if any(s > 0 for _, s in letters[k:]):
        return False
    if pos != sorted(pos) or neg != sorted(neg, reverse=True):
        return False
    a, b = Counter(pos), Counter(neg)
    return all(not (a[i] and b[i]) or a[i + 1] or b[i + 1] for i in a)


def normal_form_by_rewriting(w: Word) -> Word:
    """Independent normal form using only the defining relations."""
    letters = list(w.letters)
    # Push negative letters right of positive ones.
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(letters) - 1:
            (a, sa), (b, sb) = letters[i], letters[i + 1]
            if sa < 0 < sb:
                if a == b:
                    del letters[i:i + 2]
                elif a < b:
                    letters[i:i + 2] = [Letter(b + 1, 1), Letter(a, -1)]
                else:
                    letters[i:i + 2] = [Letter(b, 1), Letter(a + 1, -1)]
                changed = True
            elif sa > 0 > sb and a == b:
                del letters[i:i + 2]
                changed = True
            else:
                i += 1
    pos = [i for i, s in letters if s > 0]
    neg = [i for i, s in letters if s < 0]
    _sort_positive(pos)
    neg.reverse()
    _sort_positive(neg)
    a, b = Counter(pos), Counter(neg)
    n = max(list(a) + list(b), default=-1) + 1
    ea, eb = [a[i] for i in range(n)], [b[i] for i in range(n)]
    while True:
        for i in range(len(ea)):
            nxt = i + 1 < len(ea) and (ea[i + 1] or eb[i + 1])
            if ea[i] and eb[i] and not nxt:
                ea[i] -= 1
                eb[i] -= 1
                if i + 1 < len(ea):
                    del ea[i + 1]
                    del eb[i + 1]
                break
        else:
            break
    while ea and not ea[-1] and not eb[-1]:
        ea.pop()
        eb.pop()
    return word_from_exponents(ea, eb)


def _sort_positive(idx: list[int]) -> None:
    """Apply ``x_n x_k -> x_k x_(n+1)`` until indices are nondecreasing."""
    done = False
    while not done:
        done = True
        for i in range(len(idx) - 1):
            if idx[i] > idx[i + 1]:
                idx[i], idx[i + 1] = idx[i + 1], idx[i] + 1
                done = False


class CaretSpan(NamedTuple):
    lo: int
    mid: int
    hi: int


def forest_caret_spans(trees: Sequence[Tree]) -> list[CaretSpan]:
    """Carets of a forest in left-to-right post-order, as global leaf spans."""
    out: list[CaretSpan] = []

    def walk(t: Tree, lo: int) -> None:
        if t is LEAF:
            return
        mid = lo + t.left.leaves
        walk(t.left, lo)
        walk(t.right, mid)
        out.append(CaretSpan(lo, mid, lo + t.leaves))

    offset = 0
    for t in trees:
        walk(t, offset)
        offset += t.leaves
    return out


def word_for_build_order(order: Sequence[CaretSpan], leaves: int) -> Word:
    """The positive word that constructs carets in the given order."""
    starts = list(range(leaves))
    built = []
    for c in order:
        i = starts.index(c.lo)
        if i + 1 >= len(starts) or starts[i + 1] != c.mid:
            raise StructureError("caret order builds a caret before its children")
        del starts[i + 1]
        built.append(i)
    return Word.positive(reversed(built))


def _positive_forest(f: Element) -> tuple[Tree, ...]:
    if not is_positive(f):
        raise DomainError("the element is not positive")
    return f.oneway.top


def anti_normal_form(f: Element) -> Word:
    """Word building the carets of a positive element from left to right."""
    top = _positive_forest(f)
    return word_for_build_order(forest_caret_spans(top), sum(t.leaves for t in top))


class MoveResult(NamedTuple):
    position: int
    move: str
    word: Word


def _pair_moves(a: Letter, b: Letter) -> list[tuple[str, list[Letter]]]:
    (n, sa), (k, sb) = a, b
    out = []
    if n == k and sa != sb:
        out.append(("cancel", []))
    if sa < 0 < sb and n > k:
        out.append(("1", [Letter(k, 1), Letter(n + 1, -1)]))
    if sa < 0 < sb and n < k:
        out.append(("2", [Letter(k + 1, 1), Letter(n, -1)]))
    if sa > 0 and sb > 0 and n > k:
        out.append(("3", [Letter(k, 1), Letter(n + 1, 1)]))
    if sa < 0 and sb < 0 and n < k:
        out.append(("4", [Letter(k + 1, -1), Letter(n, -1)]))
    # Inverse moves only when the subscripts differ by more than one.
    if sa > 0 > sb and k > n + 1:
        out.append(("1-inverse", [Letter(k - 1, -1), Letter(n, 1)]))
    if sa > 0 > sb and n > k + 1:
        out.append(("2-inverse", [Letter(k, -1), Letter(n - 1, 1)]))
    if sa > 0 and sb > 0 and k > n + 1:
        out.append(("3-inverse", [Letter(k - 1, 1), Letter(n, 1)]))
    if sa < 0 and sb < 0 and n > k + 1:
        out.append(("4-inverse", [Letter(k, -1), Letter(n - 1, -1)]))
    return out


def rewrite_moves(w: Word) -> list[MoveResult]:
    """Every single relation move applicable to an adjacent pair of ``w``."""
    out = []
    letters = w.letters
    for p in range(len(letters) - 1):
        for name, repl in _pair_moves(letters[p], letters[p + 1]):
            out.append(MoveResult(p, name, Word(letters[:p] + tuple(repl) + letters[p + 2:])))
    return out


class WordGraph(NamedTuple):
    vertices: tuple[tuple[int, ...], ...]
    edges: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    normal: tuple[int, ...]
    anti_normal: tuple[int, ...]

    @property
    def sources(self) -> list[tuple[int, ...]]:
        heads = {v for _, v in self.edges}
        return [u for u in self.vertices if u not in heads]

    @property
    def sinks(self) -> list[tuple[int, ...]]:
        tails = {u for u, _ in self.edges}
        return [u for u in self.vertices if u not in tails]

    def to_dot(self) -> str:
        def name(v):
            return format_word(Word.positive(v))

        lines = ["digraph wordgraph {", "  rankdir=LR;"]
        for v in self.vertices:
            attrs = [f'label="{name(v)}"']
            if v == self.normal:
                attrs.append('shape=doublecircle, xlabel="normal"')
            elif v == self.anti_normal:
                attrs.append('shape=box, xlabel="anti-normal"')
            lines.append(f'  "{name(v)}" [{", ".join(attrs)}];')
        for u, v in self.edges:
            lines.append(f'  "{name(u)}" -> "{name(v)}";')
        lines.append("}")
        return "\n".join(lines)


DEFAULT_VERTEX_CAP = 10 ** 6


def word_graph(f: Element, vertex_cap: int = DEFAULT_VERTEX_CAP) -> WordGraph:
    """All positive words for ``f``, linked by ``x_n x_k -> x_k x_(n+1)``."""
    start = normal_form(f).indices()
    anti = anti_normal_form(f).indices()
    seen = {start}
    edges = []
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for p in range(len(u) - 1):
            n, k = u[p], u[p + 1]
            if n > k:
                v = u[:p] + (k, n + 1) + u[p + 2:]
                edges.append((u, v))
            elif k > n + 1:
                v = u[:p] + (k - 1, n) + u[p + 2:]
            else:
                continue
            if v not in seen:
                if len(seen) >= vertex_cap:
                    raise ResourceLimitError(
                        f"word graph exceeds {vertex_cap} vertices",
                        {"vertices": len(seen), "edges": len(edges)})
                seen.add(v)
                queue.append(v)
    return WordGraph(tuple(sorted(seen)), tuple(sorted(set(edges))), start, anti)


def caret_precedence(trees: Sequence[Tree]) -> tuple[list[CaretSpan], dict[CaretSpan, set]]:
    """Carets and, for each, the set of carets that must be built before it."""
    spans = forest_caret_spans(trees)
    below = {c: {d for d in spans if d != c and c.lo <= d.lo and d.hi <= c.hi} for c in spans}
    return spans, below


def linear_extensions(spans: Sequence[CaretSpan], below: dict) -> Iterator[list[CaretSpan]]:
    """Every order of the carets that builds descendants first."""
    def rec(done: list, remaining: set):
        if not remaining:
            yield list(done)
            return
        for c in sorted(remaining):
            if below[c] <= set(done):
                done.append(c)
                remaining.remove(c)
                yield from rec(done, remaining)
                remaining.add(c)
                done.pop()

    yield from rec([], set(spans))


def extension_words(f: Element) -> set[tuple[int, ...]]:
    """Words whose caret construction orders are the linear extensions of ``f``."""
    top = _positive_forest(f)
    spans, below = caret_precedence(top)
    leaves = sum(t.leaves for t in top)
    return {word_for_build_order(order, leaves).indices()
            for order in linear_extensions(spans, below)}


class CaretOrderFlags(NamedTuple):
    is_normal: bool
    is_anti_normal: bool


def caret_order_check(w: Word, f: Element) -> CaretOrderFlags:
    if not w.is_positive:
        raise DomainError("caret orders are defined for positive words")
    if evaluate(w) != f:
        raise StructureError("the word does not evaluate to the element")
    idx = w.indices()
    return CaretOrderFlags(all(a <= b for a, b in zip(idx, idx[1:])),
                           all(b <= a + 1 for a, b in zip(idx, idx[1:])))
