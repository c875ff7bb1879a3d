"""Immutable undirected graphs and the structural queries the solvers rely on.

Vertices are the integers ``0 .. n-1``.  Graphs are simple (no loops, no
multi-edges) and immutable after construction; adjacency is stored both as
sorted tuples and as integer bitmasks, which every hot routine in the package
operates on.

Text format
-----------
A graph file starts with a header line ``n m`` followed by exactly ``m``
edge lines ``u v`` with ``0 <= u < v < n``.  Blank lines and lines starting
with ``#`` are ignored.  Duplicate edges, loops and out-of-range endpoints
are parse errors.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import (
    DisconnectedInput,
    NotFound,
    ParseError,
    PatternTooLarge,
)

Vertex = int
Edge = tuple[int, int]

#: Hard cap on pattern size for induced-subgraph search.
MAX_PATTERN_VERTICES = 30


class Graph:
    """A simple undirected graph on vertices ``0 .. n-1``."""

    __slots__ = ("_n", "_edges", "_masks", "_neighbours")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()) -> None:
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        self._n = n
        masks = [0] * n
        edge_set: set[Edge] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in edge_set:
                raise ValueError(f"duplicate edge {e}")
            edge_set.add(e)
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._edges: tuple[Edge, ...] = tuple(sorted(edge_set))
        self._masks: tuple[int, ...] = tuple(masks)
        self._neighbours: tuple[tuple[int, ...], ...] | None = None

    # -- basic accessors ---------------------------------------------------

    @property
    def n(self) -> int:
        """Number of vertices."""
        return self._n

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self._edges)

    def vertices(self) -> range:
        return range(self._n)

    def edges(self) -> tuple[Edge, ...]:
        """All edges as sorted ``(u, v)`` pairs with ``u < v``, sorted."""
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self._n and bool(self._masks[u] >> v & 1)

    def neighbours(self, v: int) -> tuple[int, ...]:
        if self._neighbours is None:
            self._neighbours = tuple(
                tuple(_bits(m)) for m in self._masks
            )
        return self._neighbours[v]

    def degree(self, v: int) -> int:
        return self._masks[v].bit_count()

    def mask(self, v: int) -> int:
        """Adjacency bitmask of ``v`` (bit ``u`` set iff ``uv`` is an edge)."""
        return self._masks[v]

    def adjacency_masks(self) -> tuple[int, ...]:
        return self._masks

    # -- derived graphs ----------------------------------------------------

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph on ``vertices`` with relabelled ids.

        Returns ``(h, old_to_new)`` where the kept vertices are relabelled in
        increasing order.
        """
        kept = sorted(set(vertices))
        old_to_new = {old: new for new, old in enumerate(kept)}
        edges = [
            (old_to_new[u], old_to_new[v])
            for u, v in self._edges
            if u in old_to_new and v in old_to_new
        ]
        return Graph(len(kept), edges), old_to_new

    # -- dunder ------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._n == other._n and self._edges == other._edges

    def __hash__(self) -> int:
        return hash((self._n, self._edges))

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(n={self._n}, m={self.m})"


def _bits(mask: int) -> Iterator[int]:
    """Yield set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def iter_mask(mask: int) -> Iterator[int]:
    """Public alias for iterating the set bits of a vertex mask."""
    return _bits(mask)


# -- parsing and serialisation ----------------------------------------------


def parse_graph(text: str) -> Graph:
    """Parse the standard graph text format.

    Raises :class:`ParseError` (with a line number) on malformed input.
    """
    header: tuple[int, int] | None = None
    edges: list[Edge] = []
    seen: set[Edge] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError("header must be 'n m'", lineno)
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError("header must contain two integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("header counts must be non-negative", lineno)
            header = (n, m)
            continue
        if len(parts) != 2:
            raise ParseError("edge line must be 'u v'", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError("edge endpoints must be integers", lineno) from None
        n = header[0]
        if not (0 <= u < v < n):
            raise ParseError(f"edge ({u}, {v}) violates 0 <= u < v < n", lineno)
        if (u, v) in seen:
            raise ParseError(f"duplicate edge ({u}, {v})", lineno)
        seen.add((u, v))
        edges.append((u, v))
        if len(edges) > header[1]:
            raise ParseError("more edge lines than the header announced", lineno)
    if header is None:
        raise ParseError("missing header line")
    if len(edges) != header[1]:
        raise ParseError(
            f"header announced {header[1]} edges but {len(edges)} were given"
        )
    return Graph(header[0], edges)


def format_graph(g: Graph) -> str:
    """Serialise ``g`` in the standard text format (round-trips with parse)."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


# -- connectivity ------------------------------------------------------------


def is_connected(g: Graph) -> bool:
    """Whether ``g`` is connected.  The empty graph is not connected."""
    if g.n == 0:
        return False
    seen = 1
    frontier = 1
    masks = g.adjacency_masks()
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= masks[v]
        frontier = nxt & ~seen
        seen |= frontier
    return seen == (1 << g.n) - 1


def connected_components(g: Graph) -> list[tuple[int, ...]]:
    """Connected components, each a sorted vertex tuple, ordered by minimum vertex."""
    masks = g.adjacency_masks()
    remaining = (1 << g.n) - 1
    out: list[tuple[int, ...]] = []
    while remaining:
        start = (remaining & -remaining).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= masks[v]
            frontier = nxt & remaining & ~comp
            comp |= frontier
        out.append(tuple(_bits(comp)))
        remaining &= ~comp
    return out


def component_masks(masks: tuple[int, ...] | list[int], universe: int) -> list[int]:
    """Connected components of the subgraph induced on the ``universe`` mask.

    Returns component bitmasks ordered by their minimum vertex.
    """
    remaining = universe
    out: list[int] = []
    while remaining:
        start = remaining & -remaining
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= masks[low.bit_length() - 1]
                m ^= low
            frontier = nxt & remaining & ~comp
            comp |= frontier
        out.append(comp)
        remaining &= ~comp
    return out


def eccentricities(g: Graph) -> list[int]:
    """BFS eccentricity of every vertex.  Requires a connected graph."""
    if not is_connected(g):
        raise DisconnectedInput("eccentricities require a connected graph")
    masks = g.adjacency_masks()
    full = (1 << g.n) - 1
    out = []
    for v in range(g.n):
        seen = 1 << v
        frontier = seen
        dist = 0
        while seen != full:
            nxt = 0
            for u in _bits(frontier):
                nxt |= masks[u]
            frontier = nxt & ~seen
            seen |= frontier
            dist += 1
        out.append(dist)
    return out


def radius(g: Graph) -> int:
    """Minimum eccentricity.  Raises :class:`DisconnectedInput` when disconnected."""
    return min(eccentricities(g))


# -- induced subgraph search --------------------------------------------------


def contains_induced(g: Graph, pattern: Graph) -> dict[int, int] | None:
    """Lexicographically smallest induced embedding of ``pattern`` into ``g``.

    Returns a dict mapping pattern vertices to host vertices, or ``None`` when
    ``g`` has no induced copy of ``pattern``.  The returned embedding is the
    one whose image tuple ``(phi(0), phi(1), ...)`` is lexicographically
    smallest.  Patterns larger than ``MAX_PATTERN_VERTICES`` raise
    :class:`PatternTooLarge`.
    """
    if pattern.n > MAX_PATTERN_VERTICES:
        raise PatternTooLarge(
            f"pattern has {pattern.n} > {MAX_PATTERN_VERTICES} vertices"
        )
    if pattern.n > g.n:
        return None
    if pattern.n == 0:
        return {}
    from . import _accel

    lengths = _path_union_lengths(pattern)
    if lengths is not None:
        # Disjoint unions of paths get a specialised engine: extending a path
        # permanently forbids the previous endpoint's other neighbours, which
        # prunes far harder than generic placement.
        if not _accel.path_union_search(g.n, list(g.adjacency_masks()), lengths):
            return None
    else:
        order, constraints = _search_plan(pattern)
        hit = _accel.induced_search(
            g.n, list(g.adjacency_masks()), pattern.n, list(pattern.adjacency_masks()),
            order, constraints, False,
        )
        if hit is None:
            return None
    # An embedding exists; rerun in plain index order for the lex-smallest map.
    hit = _accel.induced_search(
        g.n, list(g.adjacency_masks()), pattern.n, list(pattern.adjacency_masks()),
        list(range(pattern.n)), [], True,
    )
    assert hit is not None
    return {p: h for p, h in enumerate(hit)}


def _search_plan(pattern: Graph) -> tuple[list[int], list[tuple[int, int]]]:
    """Assignment order and symmetry-breaking constraints for existence search.

    The order visits each pattern component in a connected (BFS) sequence.
    Constraints are index pairs ``(i, j)`` into the order meaning that the
    host image of ``order[i]`` must be smaller than the image of ``order[j]``;
    they are sound for existence because they only quotient automorphisms:
    isomorphic components may be listed in increasing image order, and a path
    component may be traversed so that its first endpoint has the smaller
    image.
    """
    comps = connected_components(pattern)
    order: list[int] = []
    pos: dict[int, int] = {}
    comp_info: list[tuple[bytes, int, int | None, int | None]] = []
    for comp in comps:
        sub, old_to_new = pattern.induced_subgraph(comp)
        new_to_old = {v: k for k, v in old_to_new.items()}
        code = _iso_code(sub)
        path_ends = _path_endpoints(sub)
        start = new_to_old[path_ends[0]] if path_ends else comp[0]
        bfs = _bfs_order(pattern, start, set(comp))
        first = len(order)
        for v in bfs:
            pos[v] = len(order)
            order.append(v)
        last_end = None
        if path_ends:
            last_end = pos[new_to_old[path_ends[1]]]
        comp_info.append((code, first, pos[start], last_end))
    constraints: list[tuple[int, int]] = []
    for (code, _first, start_pos, end_pos) in comp_info:
        if end_pos is not None and end_pos != start_pos:
            constraints.append((start_pos, end_pos))
    for (c1, _f1, s1, _e1), (c2, _f2, s2, _e2) in zip(comp_info, comp_info[1:]):
        if c1 == c2:
            constraints.append((s1, s2))
    return order, constraints


def _bfs_order(g: Graph, start: int, allowed: set[int]) -> list[int]:
    out = [start]
    seen = {start}
    i = 0
    while i < len(out):
        for w in g.neighbours(out[i]):
            if w in allowed and w not in seen:
                seen.add(w)
                out.append(w)
        i += 1
    return out


def _path_union_lengths(pattern: Graph) -> list[int] | None:
    """Component orders, longest first, when every component is a path."""
    lengths: list[int] = []
    for comp in connected_components(pattern):
        sub, _ = pattern.induced_subgraph(comp)
        if sub.n > 1 and _path_endpoints(sub) is None:
            return None
        lengths.append(sub.n)
    lengths.sort(reverse=True)
    return lengths


def _path_endpoints(g: Graph) -> tuple[int, int] | None:
    """If ``g`` is a path on >= 2 vertices, return its two endpoints."""
    if g.n < 2 or g.m != g.n - 1:
        return None
    ends = [v for v in g.vertices() if g.degree(v) == 1]
    if len(ends) != 2 or any(g.degree(v) > 2 for v in g.vertices()):
        return None
    if not is_connected(g):
        return None
    return ends[0], ends[1]


def _iso_code(g: Graph) -> bytes:
    """Canonical code used to group small isomorphic pattern components."""
    if g.n > 12:
        # Too big to canonicalise cheaply; use an identity-unique stand-in so
        # such components are never grouped (sound, just no symmetry win).
        return repr((g.n, g.edges())).encode()
    from . import _accel

    return _accel.canon_code(g.n, list(g.adjacency_masks()))


# -- domination ---------------------------------------------------------------


def enumerate_dominating_sets(g: Graph, max_size: int) -> Iterator[tuple[int, ...]]:
    """All dominating sets of size at most ``max_size``, by size then lexicographic."""
    masks = g.adjacency_masks()
    closed = [masks[v] | (1 << v) for v in range(g.n)]
    full = (1 << g.n) - 1
    for k in range(1, max_size + 1):
        for combo in itertools.combinations(range(g.n), k):
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover == full:
                yield combo


@dataclass(frozen=True)
class DominatingStructure:
    """A dominating complete bipartite subgraph or a dominating induced 6-cycle.

    ``kind`` is ``"complete_bipartite"`` (then ``classes`` holds the two
    sides) or ``"induced_c6"`` (then ``vertices`` lists the cycle in order).
    """

    kind: str
    vertices: tuple[int, ...]
    classes: tuple[tuple[int, ...], tuple[int, ...]] | None = None


def find_dominating_structure_p6free(g: Graph) -> DominatingStructure:
    """Find a dominating complete bipartite subgraph or a dominating induced C6.

    Candidate bicliques are examined by increasing total size (then
    lexicographically); a vertex set supports a complete bipartite subgraph
    exactly when its complement (within the set) is disconnected, and the two
    classes are then the complement component containing the minimum vertex
    versus the rest.  If no dominating biclique exists, dominating induced
    6-cycles are tried over all 6-subsets in lexicographic order.  Raises
    :class:`NotFound` when neither exists (possible only for graphs that have
    an induced 6-vertex path).
    """
    masks = g.adjacency_masks()
    closed = [masks[v] | (1 << v) for v in range(g.n)]
    full = (1 << g.n) - 1
    for size in range(2, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            cover = 0
            for v in combo:
                cover |= closed[v]
            if cover != full:
                continue
            split = _complement_split(masks, combo)
            if split is not None:
                return DominatingStructure(
                    kind="complete_bipartite", vertices=combo, classes=split
                )
    for combo in itertools.combinations(range(g.n), 6):
        cover = 0
        for v in combo:
            cover |= closed[v]
        if cover != full:
            continue
        cycle = _induced_c6_order(g, combo)
        if cycle is not None:
            return DominatingStructure(kind="induced_c6", vertices=cycle)
    raise NotFound("no dominating biclique or dominating induced C6")


def _complement_split(
    masks: tuple[int, ...] | list[int], combo: tuple[int, ...]
) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Split ``combo`` into biclique classes if its complement is disconnected."""
    combo_mask = 0
    for v in combo:
        combo_mask |= 1 << v
    comp_adj = {v: ~masks[v] & combo_mask & ~(1 << v) for v in combo}
    start = combo[0]
    seen = 1 << start
    frontier = seen
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= comp_adj[v]
        frontier = nxt & ~seen
        seen |= frontier
    if seen == combo_mask:
        return None
    side_a = tuple(_bits(seen))
    side_b = tuple(_bits(combo_mask & ~seen))
    return side_a, side_b


def _induced_c6_order(g: Graph, combo: tuple[int, ...]) -> tuple[int, ...] | None:
    """Return the 6 vertices in cycle order if ``combo`` induces a C6."""
    sub, old_to_new = g.induced_subgraph(combo)
    if sub.m != 6 or any(sub.degree(v) != 2 for v in sub.vertices()):
        return None
    if not is_connected(sub):
        return None
    new_to_old = {v: k for k, v in old_to_new.items()}
    cycle = [0]
    prev = -1
    while len(cycle) < 6:
        a, b = sub.neighbours(cycle[-1])
        nxt = b if a == prev else (a if b == prev else min(a, b))
        prev = cycle[-1]
        cycle.append(nxt)
    return tuple(new_to_old[v] for v in cycle)


# -- standard constructions ----------------------------------------------------


def path_graph(k: int) -> Graph:
    """The path on ``k`` vertices ``0-1-...-(k-1)``."""
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    """The cycle on ``k >= 3`` vertices."""
    if k < 3:
        raise ValueError("cycles need at least 3 vertices")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph(k, list(itertools.combinations(range(k), 2)))


def complete_bipartite_graph(r: int, s: int) -> Graph:
    """K_{r,s} with one side ``0..r-1`` and the other ``r..r+s-1``."""
    return Graph(r + s, [(i, r + j) for i in range(r) for j in range(s)])


def star_graph(leaves: int) -> Graph:
    """Star with centre 0 and the given number of leaves."""
    return complete_bipartite_graph(1, leaves)


def disjoint_union(*graphs: Graph) -> Graph:
    """Disjoint union; vertex blocks follow the argument order."""
    n = 0
    edges: list[Edge] = []
    for g in graphs:
        edges.extend((u + n, v + n) for u, v in g.edges())
        n += g.n
    return Graph(n, edges)


def h_star_graph() -> Graph:
    """Two 3-vertex paths whose middle vertices are joined by an edge."""
    return Graph(6, [(0, 1), (1, 2), (3, 4), (4, 5), (1, 4)])


def parse_pattern_token(token: str) -> Graph:
    """Parse pattern names like ``P6``, ``C6``, ``4P5``, ``K2,3`` or ``HSTAR``."""
    t = token.strip().upper()
    if t == "HSTAR":
        return h_star_graph()
    if t.startswith("K") and "," in t:
        try:
            r, s = (int(x) for x in t[1:].split(","))
        except ValueError:
            raise ParseError(f"bad pattern token {token!r}") from None
        return complete_bipartite_graph(r, s)
    copies = 1
    body = t
    i = 0
    while i < len(body) and body[i].isdigit():
        i += 1
    if i:
        copies = int(body[:i])
        body = body[i:]
    if copies >= 1 and len(body) >= 2 and body[0] in "PCK" and body[1:].isdigit():
        k = int(body[1:])
        if k < 1:
            raise ParseError(f"bad pattern token {token!r}: empty base graph")
        try:
            base = {"P": path_graph, "C": cycle_graph, "K": complete_graph}[body[0]](k)
        except ValueError as exc:
            raise ParseError(f"bad pattern token {token!r}: {exc}") from None
        return disjoint_union(*([base] * copies))
    raise ParseError(f"bad pattern token {token!r}")
