"""Red-blue colourings and their validity, perfectness and extendability.

A colouring assigns ``R`` or ``B`` to some vertices; vertices may be unset
(partial colouring).  For a *total* colouring of a graph:

* *valid*: both colours are used, every red vertex has at most one blue
  neighbour, and every blue vertex has at most one red neighbour.  The cut
  edges of a valid colouring form a matching; on a connected graph they form
  a matching cut.
* *perfect*: valid, and every vertex has an opposite-coloured neighbour
  (hence exactly one).  The cut edges then form a perfect matching cut.
* *perfect-extendable*: valid, and both leftover sides (vertices without an
  opposite-coloured neighbour) induce subgraphs with perfect matchings.  The
  cut edges plus those two matchings form a disconnected perfect matching.

Text format: one line per coloured vertex, ``<id> R`` or ``<id> B``.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from .errors import InvalidColouring, ParseError, PartialColouring
from .graph_core import Edge, Graph


class Colour(str, Enum):
    RED = "R"
    BLUE = "B"

    def opposite(self) -> "Colour":
        return Colour.BLUE if self is Colour.RED else Colour.RED


@dataclass(frozen=True)
class RedBlueColouring:
    """An immutable (possibly partial) red-blue colouring of ``n`` vertices."""

    n: int
    values: tuple[Colour | None, ...]

    def __post_init__(self) -> None:
        if len(self.values) != self.n:
            raise ValueError("values length must equal n")

    @staticmethod
    def from_sets(n: int, red: Iterable[int], blue: Iterable[int]) -> "RedBlueColouring":
        vals: list[Colour | None] = [None] * n
        for v in red:
            vals[v] = Colour.RED
        for v in blue:
            if vals[v] is Colour.RED:
                raise InvalidColouring(f"vertex {v} coloured twice")
            vals[v] = Colour.BLUE
        return RedBlueColouring(n, tuple(vals))

    @staticmethod
    def from_blue_mask(n: int, blue_mask: int) -> "RedBlueColouring":
        """Total colouring: vertices in the mask are blue, the rest red."""
        return RedBlueColouring(
            n,
            tuple(
                Colour.BLUE if blue_mask >> v & 1 else Colour.RED for v in range(n)
            ),
        )

    @staticmethod
    def from_letters(letters: Iterable[str]) -> "RedBlueColouring":
        """Build from letters like ``"RBB R"``-style sequences (``.`` = unset)."""
        vals: list[Colour | None] = []
        for ch in letters:
            if ch in " \t":
                continue
            vals.append(None if ch == "." else Colour(ch))
        return RedBlueColouring(len(vals), tuple(vals))

    def colour_of(self, v: int) -> Colour | None:
        return self.values[v]

    def is_total(self) -> bool:
        return all(c is not None for c in self.values)

    def red_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.values) if c is Colour.RED)

    def blue_vertices(self) -> tuple[int, ...]:
        return tuple(v for v, c in enumerate(self.values) if c is Colour.BLUE)

    def blue_mask(self) -> int:
        m = 0
        for v, c in enumerate(self.values):
            if c is Colour.BLUE:
                m |= 1 << v
        return m

    def swap(self) -> "RedBlueColouring":
        return RedBlueColouring(
            self.n,
            tuple(None if c is None else c.opposite() for c in self.values),
        )

    def letters(self) -> str:
        return "".join("." if c is None else c.value for c in self.values)


def parse_colouring(text: str, n: int) -> RedBlueColouring:
    """Parse ``<id> R|B`` lines; unlisted vertices stay unset."""
    vals: list[Colour | None] = [None] * n
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("R", "B"):
            raise ParseError("colouring line must be '<id> R|B'", lineno)
        try:
            v = int(parts[0])
        except ValueError:
            raise ParseError("vertex id must be an integer", lineno) from None
        if not 0 <= v < n:
            raise ParseError(f"vertex {v} out of range", lineno)
        if vals[v] is not None:
            raise ParseError(f"vertex {v} coloured twice", lineno)
        vals[v] = Colour(parts[1])
    return RedBlueColouring(n, tuple(vals))


def format_colouring(c: RedBlueColouring) -> str:
    lines = [
        f"{v} {col.value}" for v, col in enumerate(c.values) if col is not None
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def _require_total(c: RedBlueColouring) -> None:
    if not c.is_total():
        raise PartialColouring("operation requires a total colouring")


def cut_edges(g: Graph, c: RedBlueColouring) -> tuple[Edge, ...]:
    """Edges with differently coloured endpoints, sorted."""
    _require_total(c)
    return tuple(
        (u, v) for u, v in g.edges() if c.values[u] is not c.values[v]
    )


def red_interface(g: Graph, c: RedBlueColouring) -> tuple[int, ...]:
    """Red vertices with at least one blue neighbour."""
    _require_total(c)
    return tuple(
        v
        for v in g.vertices()
        if c.values[v] is Colour.RED
        and any(c.values[w] is Colour.BLUE for w in g.neighbours(v))
    )


def blue_interface(g: Graph, c: RedBlueColouring) -> tuple[int, ...]:
    """Blue vertices with at least one red neighbour."""
    _require_total(c)
    return tuple(
        v
        for v in g.vertices()
        if c.values[v] is Colour.BLUE
        and any(c.values[w] is Colour.RED for w in g.neighbours(v))
    )


def is_valid(g: Graph, c: RedBlueColouring) -> bool:
    """Both colours used; every vertex has at most one opposite neighbour."""
    _require_total(c)
    from . import _accel

    return _accel.check_level(g.n, list(g.adjacency_masks()), 1, c.blue_mask())


def is_perfect(g: Graph, c: RedBlueColouring) -> bool:
    """Both colours used; every vertex has exactly one opposite neighbour."""
    _require_total(c)
    from . import _accel

    return _accel.check_level(g.n, list(g.adjacency_masks()), 2, c.blue_mask())


# -- maximum matching (blossom algorithm) --------------------------------------


def maximum_matching(g: Graph) -> dict[int, int]:
    """Maximum cardinality matching via blossom contraction.

    Returns the partner map (symmetric; unmatched vertices absent).
    """
    n = g.n
    match = [-1] * n
    adj = [list(g.neighbours(v)) for v in range(g.n)]

    # Greedy seed matching keeps the augmentation count low.
    for v in range(n):
        if match[v] == -1:
            for w in adj[v]:
                if match[w] == -1:
                    match[v] = w
                    match[w] = v
                    break

    def augment(root: int) -> bool:
        p = [-1] * n
        base = list(range(n))
        in_queue = [False] * n
        in_blossom = [False] * n
        queue = [root]
        in_queue[root] = True

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = p[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = p[match[b]]

        def mark_path(v: int, b: int, child: int) -> None:
            while base[v] != b:
                in_blossom[base[v]] = True
                in_blossom[base[match[v]]] = True
                p[v] = child
                child = match[v]
                v = p[match[v]]

        head = 0
        while head < len(queue):
            v = queue[head]
            head += 1
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    cur_base = lca(v, to)
                    for i in range(n):
                        in_blossom[i] = False
                    mark_path(v, cur_base, to)
                    mark_path(to, cur_base, v)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = cur_base
                            if not in_queue[i]:
                                in_queue[i] = True
                                queue.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        # Augment along the alternating path ending at `to`.
                        while to != -1:
                            prev = p[to]
                            nxt = match[prev]
                            match[prev] = to
                            match[to] = prev
                            to = nxt
                        return True
                    elif not in_queue[match[to]]:
                        in_queue[match[to]] = True
                        queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            augment(v)
    return {v: match[v] for v in range(n) if match[v] != -1}


def perfect_matching(g: Graph) -> tuple[Edge, ...] | None:
    """A perfect matching as sorted edges, or ``None``.  Empty graph: ``()``."""
    if g.n == 0:
        return ()
    if g.n % 2 == 1:
        return None
    partner = maximum_matching(g)
    if len(partner) != g.n:
        return None
    return tuple(sorted((v, w) for v, w in partner.items() if v < w))


def has_perfect_matching(g: Graph) -> bool:
    """Whether ``g`` has a perfect matching; the empty graph does."""
    return perfect_matching(g) is not None


# -- extendability --------------------------------------------------------------


def _residual_sides(
    g: Graph, c: RedBlueColouring
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    red_iface = set(red_interface(g, c))
    blue_iface = set(blue_interface(g, c))
    red_rest = tuple(v for v in c.red_vertices() if v not in red_iface)
    blue_rest = tuple(v for v in c.blue_vertices() if v not in blue_iface)
    return red_rest, blue_rest


def is_perfect_extendable(g: Graph, c: RedBlueColouring) -> bool:
    """Valid, and both leftover sides induce graphs with perfect matchings."""
    if not is_valid(g, c):
        return False
    red_rest, blue_rest = _residual_sides(g, c)
    for part in (red_rest, blue_rest):
        sub, _ = g.induced_subgraph(part)
        if not has_perfect_matching(sub):
            return False
    return True


def extension_witness(g: Graph, c: RedBlueColouring) -> tuple[Edge, ...] | None:
    """The disconnected perfect matching witnessing extendability, or ``None``.

    The witness is the set of cut edges plus a perfect matching inside each
    leftover side; together they form a perfect matching of ``g`` containing
    the full cut.
    """
    if not is_valid(g, c):
        return None
    edges: list[Edge] = list(cut_edges(g, c))
    for part in _residual_sides(g, c):
        sub, old_to_new = g.induced_subgraph(part)
        pm = perfect_matching(sub)
        if pm is None:
            return None
        new_to_old = {b: a for a, b in old_to_new.items()}
        edges.extend(
            tuple(sorted((new_to_old[u], new_to_old[v]))) for u, v in pm
        )
    return tuple(sorted(edges))


def parse_matching(text: str, g: Graph) -> tuple[Edge, ...]:
    """Parse ``u v`` lines as a matching in ``g`` (pairwise-disjoint edges)."""
    out: list[Edge] = []
    used: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError("matching line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("endpoints must be integers", lineno) from None
        if not g.has_edge(u, v):
            raise ParseError(f"({u}, {v}) is not an edge", lineno)
        if u in used or v in used:
            raise ParseError(f"({u}, {v}) shares an endpoint with another edge", lineno)
        used.update((u, v))
        out.append((min(u, v), max(u, v)))
    return tuple(sorted(out))


def format_matching(edges: Iterable[Edge]) -> str:
    lines = [f"{u} {v}" for u, v in edges]
    return "\n".join(lines) + ("\n" if lines else "")
