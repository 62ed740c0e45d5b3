"""Balls in the left Cayley graph of F over {x0, x1} and searches within them."""

from __future__ import annotations

import os
from bisect import bisect_right
from collections import deque
from itertools import product
from typing import Iterator, NamedTuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from .core.element import Element, invert, multiply
from .core.forests import IDENTITY_TWOWAY, TwoWayDiagram, twoway_apply
from .errors import ResourceLimitError
from .metric import diagram_length, is_dead_end_structural, length  # noqa: F401
from .words import X0X1, Word, evaluate

STEPS = ((0, 1), (0, -1), (1, 1), (1, -1))
MAX_BALL_ENV = "THOMPSONF_MAX_BALL"
DEFAULT_MAX_BALL = 2_000_000


def default_cap() -> int:
    """Element cap for ball enumeration, overridable through the environment."""
    raw = os.environ.get(MAX_BALL_ENV)
    return int(raw) if raw else DEFAULT_MAX_BALL


class Ball:
    """Elements within a given distance of the identity, in BFS order.

    Members are keyed by their canonical two-way diagrams.  ``neighbors`` (if
    built) holds, for each member and each step in ``STEPS``, the member index
    of the neighbor or -1 when it lies outside the ball.
    """

    def __init__(self, radius: int, order: list[TwoWayDiagram], index: dict,
                 sphere_sizes: list[int], neighbors: np.ndarray | None) -> None:
        self.radius = radius
        self.order = order
        self.index = index
        self.sphere_sizes = sphere_sizes
        self.neighbors = neighbors
        self._starts = np.cumsum([0] + sphere_sizes).tolist()

    def __len__(self) -> int:
        return len(self.order)

    def __contains__(self, f: Element | TwoWayDiagram) -> bool:
        return self._key(f) in self.index

    @staticmethod
    def _key(f: Element | TwoWayDiagram) -> TwoWayDiagram:
        return f.twoway if isinstance(f, Element) else f

    def distance_of_index(self, i: int) -> int:
        return bisect_right(self._starts, i) - 1

    def distance(self, f: Element | TwoWayDiagram) -> int:
        return self.distance_of_index(self.index[self._key(f)])

    def sphere(self, r: int) -> list[TwoWayDiagram]:
        return self.order[self._starts[r]:self._starts[r + 1]]

    def sphere_range(self, r: int) -> range:
        return range(self._starts[r], self._starts[r + 1])

    def items(self) -> Iterator[tuple[TwoWayDiagram, int]]:
        for r in range(self.radius + 1):
            for d in self.sphere(r):
                yield d, r

    def elements(self) -> Iterator[tuple[Element, int]]:
        for d, r in self.items():
            yield Element.from_twoway(d), r

    def graph(self) -> csr_matrix:
        """Undirected adjacency matrix restricted to members."""
        if self.neighbors is None:
            raise ValueError("ball was built without neighbor indices")
        n = len(self)
        rows = np.repeat(np.arange(n, dtype=np.int32), len(STEPS))
        cols = self.neighbors.reshape(-1)
        keep = cols >= 0
        data = np.ones(int(keep.sum()), dtype=np.int8)
        return csr_matrix((data, (rows[keep], cols[keep])), shape=(n, n))

    def stats(self) -> dict:
        return {"radius": self.radius, "size": len(self), "sphere_sizes": list(self.sphere_sizes)}


def ball(radius: int, cap: int | None = None, with_neighbors: bool = False) -> Ball:
    """Breadth-first enumeration by left multiplication with the four generators."""
    if radius < 0:
        raise ValueError("radius must be non-negative")
    cap = default_cap() if cap is None else cap
    order = [IDENTITY_TWOWAY]
    index = {IDENTITY_TWOWAY: 0}
    spheres = [1]
    nbr: list[int] = []
    start = 0
    for r in range(radius + 1):
        end = len(order)
        grow = r < radius
        for k in range(start, end):
            d = order[k]
            for i, s in STEPS:
                e = twoway_apply(d, i, s)
                j = index.get(e)
                if j is None:
                    if grow:
                        j = len(order)
                        index[e] = j
                        order.append(e)
                    else:
                        j = -1
                if with_neighbors:
                    nbr.append(j)
            if len(order) > cap:
                raise ResourceLimitError(
                    f"ball of radius {radius} exceeds {cap} elements",
                    {"radius_reached": r, "size": len(order), "sphere_sizes": spheres})
        if grow:
            spheres.append(len(order) - end)
        start = end
        if not with_neighbors and r == radius - 1:
            break
    neighbors = np.asarray(nbr, dtype=np.int32).reshape(-1, len(STEPS)) if with_neighbors else None
    return Ball(radius, order, index, spheres, neighbors)


def distance(g: Element, h: Element) -> int:
    """Word distance in the left Cayley graph, ``length(g h^-1)``."""
    return length(multiply(g, invert(h)))


def is_dead_end(f: Element) -> bool:
    """Every generator shortens ``f``, checked by recomputing lengths."""
    d = f.twoway
    current = diagram_length(d)
    return current > 0 and all(diagram_length(twoway_apply(d, i, s)) < current for i, s in STEPS)


def dead_ends(b: Ball, radius: int | None = None) -> list[TwoWayDiagram]:
    """Members at distance at most ``radius`` all of whose neighbors are closer, per BFS."""
    radius = b.radius - 1 if radius is None else radius
    if radius >= b.radius:
        raise ValueError("brute-force dead-end detection needs one spare sphere")
    out = []
    for r in range(1, radius + 1):
        for d in b.sphere(r):
            if all(b.index.get(twoway_apply(d, i, s)) is not None and
                   b.distance(twoway_apply(d, i, s)) < r for i, s in STEPS):
                out.append(d)
    return out


def neighborhood(d: TwoWayDiagram, k: int) -> set[TwoWayDiagram]:
    """Everything reachable by at most ``k`` generator steps."""
    seen = {d}
    frontier = [d]
    for _ in range(k):
        nxt = []
        for e in frontier:
            for i, s in STEPS:
                n = twoway_apply(e, i, s)
                if n not in seen:
                    seen.add(n)
                    nxt.append(n)
        frontier = nxt
    return seen


def pocket_depth(f: Element, k: int) -> bool:
    """Whether no word of at most ``k`` generators leads to a longer element."""
    if k < 2:
        raise ValueError("pocket depth is defined for k >= 2")
    d = f.twoway
    current = diagram_length(d)
    return all(diagram_length(e) <= current for e in neighborhood(d, k))


ESCAPE_WORD = Word([(1, -1), (1, -1), (0, 1)], X0X1)


def escape(f: Element) -> Element:
    """Left-multiply by the escape word ``x1^-1 x1^-1 x0``."""
    return multiply(evaluate(ESCAPE_WORD), f)


def in_ball_distance(g: Element, h: Element, radius: int, b: Ball | None = None) -> int | None:
    """Path length from ``g`` to ``h`` using only members of the ball; None if unreachable."""
    if b is None or b.radius != radius or b.neighbors is None:
        b = ball(radius, with_neighbors=True)
    src, dst = b.index[g.twoway], b.index[h.twoway]
    if src == dst:
        return 0
    dist = {src: 0}
    queue = deque([src])
    while queue:
        u = queue.popleft()
        for v in b.neighbors[u]:
            v = int(v)
            if v >= 0 and v not in dist:
                dist[v] = dist[u] + 1
                if v == dst:
                    return dist[v]
                queue.append(v)
    return None


class MacPair(NamedTuple):
    g: TwoWayDiagram
    h: TwoWayDiagram
    in_ball_distance: int


def mac_candidates(b: Ball) -> list[tuple[int, int]]:
    """Index pairs ``(g, x0^2 g)`` on the outer sphere whose midpoint leaves the ball."""
    r = b.radius
    out = []
    for k in b.sphere_range(r):
        d = b.order[k]
        mid = twoway_apply(d, 0, 1)
        if diagram_length(mid) != r + 1:
            continue
        h = twoway_apply(mid, 0, 1)
        j = b.index.get(h)
        if j is not None and b.distance_of_index(j) == r:
            out.append((k, j))
    return out


def mac_witness_search(radius: int, b: Ball | None = None, batch: int = 256,
                       all_pairs: bool = False) -> list[MacPair]:
    """In-ball distances for the distance-two pairs that detour around ``x0 g``.

    With ``all_pairs`` every pair ``(g, s t g)`` on the outer sphere is scanned,
    not only those related by ``x0^2``.
    """
    if b is None or b.radius != radius or b.neighbors is None:
        b = ball(radius, with_neighbors=True)
    if all_pairs:
        pairs = _all_distance_two_pairs(b)
    else:
        pairs = mac_candidates(b)
    graph = b.graph()
    out = []
    sources = sorted({k for k, _ in pairs})
    wanted: dict[int, list[int]] = {}
    for k, j in pairs:
        wanted.setdefault(k, []).append(j)
    for lo in range(0, len(sources), batch):
        chunk = sources[lo:lo + batch]
        dist = shortest_path(graph, directed=False, unweighted=True, indices=chunk)
        for row, k in enumerate(chunk):
            for j in wanted[k]:
                val = dist[row, j]
                out.append(MacPair(b.order[k], b.order[j],
                                   -1 if np.isinf(val) else int(val)))
    return out


def _all_distance_two_pairs(b: Ball) -> list[tuple[int, int]]:
    r = b.radius
    out = set()
    for k in b.sphere_range(r):
        d = b.order[k]
        for (i1, s1), (i2, s2) in product(STEPS, STEPS):
            e = twoway_apply(twoway_apply(d, i1, s1), i2, s2)
            j = b.index.get(e)
            if j is not None and j > k and b.distance_of_index(j) == r and e != d:
                out.add((k, j))
    return sorted(out)


def replay_path(start: Element, word: Word, last_letter_first: bool = True) -> list[Element]:
    """Elements visited while left-multiplying ``start`` by the letters of ``word``.

    With ``last_letter_first`` the endpoint is ``word * start``; otherwise the
    letters are applied from the left end of the word.
    """
    path = [start]
    d = start.twoway
    letters = reversed(word.letters) if last_letter_first else word.letters
    for i, s in letters:
        d = twoway_apply(d, i, s)
        path.append(Element.from_twoway(d))
    return path


def mac_path_word(n: int) -> Word:
    """The four-leg word ``(x1 x0^(n+1))(x1^-1 x0^-n)(x1^-1 x0^n)(x1 x0^(1-n))``."""
    def x0(k: int) -> list[tuple[int, int]]:
        return [(0, 1 if k > 0 else -1)] * abs(k)

    letters = [(1, 1)] + x0(n + 1) + [(1, -1)] + x0(-n) + [(1, -1)] + x0(n) + \
        [(1, 1)] + x0(1 - n)
    return Word(letters, X0X1)


def free_submonoid_check(max_len: int) -> tuple[int, int]:
    """Count words of length at most ``max_len`` in x0^-1 and x1, and their distinct values."""
    if max_len < 1:
        raise ValueError("max_len must be at least 1")
    letters = ((0, -1), (1, 1))
    level = [IDENTITY_TWOWAY]
    seen = {IDENTITY_TWOWAY}
    total = 1
    for _ in range(max_len):
        nxt = []
        for d in level:
            for i, s in letters:
                e = twoway_apply(d, i, s)
                nxt.append(e)
                seen.add(e)
        total += len(nxt)
        level = nxt
    return total, len(seen)


def is_free_up_to(max_len: int) -> bool:
    total, distinct = free_submonoid_check(max_len)
    return total == distinct
