"""Independent brute-force oracles and generators for the test suite.

Everything here is written from the definitions using plain adjacency-list
loops, deliberately avoiding the library's bitmask kernels, so that library
results are checked against independently derived answers.
"""

from __future__ import annotations

import itertools
import pickle
import random
import tempfile
from pathlib import Path

from matchcut import Graph, OneInThreeInstance
from matchcut._accel import canon_code
from matchcut.propagation import FourTuple

# -- naive colouring predicates (definitional) ---------------------------------------

RED, BLUE = "R", "B"


def opposite_neighbours(g: Graph, colours: list[str], v: int) -> list[int]:
    return [w for w in g.neighbours(v) if colours[w] != colours[v]]


def naive_is_valid(g: Graph, colours: list[str]) -> bool:
    """Both colours used and every vertex has at most one opposite neighbour."""
    if RED not in colours or BLUE not in colours:
        return False
    return all(len(opposite_neighbours(g, colours, v)) <= 1 for v in g.vertices())


def naive_is_perfect(g: Graph, colours: list[str]) -> bool:
    """Both colours used and every vertex has exactly one opposite neighbour."""
    if RED not in colours or BLUE not in colours:
        return False
    return all(len(opposite_neighbours(g, colours, v)) == 1 for v in g.vertices())


def naive_has_perfect_matching(g: Graph, vertices: frozenset[int]) -> bool:
    """Recursive matching existence on the induced subgraph, memoised."""
    memo: dict[frozenset[int], bool] = {}

    def rec(left: frozenset[int]) -> bool:
        if not left:
            return True
        if left in memo:
            return memo[left]
        v = min(left)
        out = False
        for w in g.neighbours(v):
            if w in left and rec(left - {v, w}):
                out = True
                break
        memo[left] = out
        return out

    return rec(vertices)


def naive_is_perfect_extendable(g: Graph, colours: list[str]) -> bool:
    """Valid, and the vertices without an opposite neighbour admit perfect
    matchings within each colour class."""
    if not naive_is_valid(g, colours):
        return False
    for colour in (RED, BLUE):
        residual = frozenset(
            v
            for v in g.vertices()
            if colours[v] == colour and not opposite_neighbours(g, colours, v)
        )
        if not naive_has_perfect_matching(g, residual):
            return False
    return True


def all_colourings(n: int):
    """Every total red-blue colouring with vertex 0 red (problems are
    colour-swap symmetric)."""
    for counter in range(1 << (n - 1)):
        yield [RED] + [BLUE if counter >> i & 1 else RED for i in range(n - 1)]


def naive_mc(g: Graph) -> bool:
    return any(naive_is_valid(g, c) for c in all_colourings(g.n))


def naive_pmc(g: Graph) -> bool:
    return any(naive_is_perfect(g, c) for c in all_colourings(g.n))


def naive_dpm(g: Graph) -> bool:
    return any(naive_is_perfect_extendable(g, c) for c in all_colourings(g.n))


# -- tuple-constrained brute forces ---------------------------------------------------


def respects_tuple(g: Graph, colours: list[str], t: FourTuple) -> bool:
    """The three membership conditions a colouring must satisfy for a tuple:
    forced sides, matched interfaces inside S/T, and fringe partners undecided."""
    in_xy = set(t.x) | set(t.y)
    if any(colours[v] != RED for v in t.x) or any(colours[v] != BLUE for v in t.y):
        return False
    for v in t.s:
        if any(w not in t.t for w in opposite_neighbours(g, colours, v)):
            return False
    for v in t.t:
        if any(w not in t.s for w in opposite_neighbours(g, colours, v)):
            return False
    for v in set(t.x) - set(t.s):
        if any(w in in_xy for w in opposite_neighbours(g, colours, v)):
            return False
    for v in set(t.y) - set(t.t):
        if any(w in in_xy for w in opposite_neighbours(g, colours, v)):
            return False
    return True


def tuple_colourings(g: Graph, t: FourTuple):
    """Every total colouring with X red and Y blue."""
    base = [None] * g.n
    for v in t.x:
        base[v] = RED
    for v in t.y:
        base[v] = BLUE
    free = [v for v in g.vertices() if base[v] is None]
    for counter in range(1 << len(free)):
        colours = base.copy()
        for i, v in enumerate(free):
            colours[v] = BLUE if counter >> i & 1 else RED
        yield colours


def naive_tuple_perfect_exists(g: Graph, t: FourTuple) -> bool:
    return any(
        naive_is_perfect(g, c) and respects_tuple(g, c, t) for c in tuple_colourings(g, t)
    )


def undecided_components(g: Graph, t: FourTuple) -> list[list[int]]:
    z = sorted(t.z(g))
    zset = set(z)
    seen: set[int] = set()
    comps: list[list[int]] = []
    for v in z:
        if v in seen:
            continue
        comp = [v]
        seen.add(v)
        stack = [v]
        while stack:
            a = stack.pop()
            for b in g.neighbours(a):
                if b in zset and b not in seen:
                    seen.add(b)
                    comp.append(b)
                    stack.append(b)
        comps.append(sorted(comp))
    return comps


def mono_tuple_colourings(g: Graph, t: FourTuple):
    """Every colouring with X red, Y blue and each undecided component
    single-coloured."""
    comps = undecided_components(g, t)
    base = [None] * g.n
    for v in t.x:
        base[v] = RED
    for v in t.y:
        base[v] = BLUE
    for counter in range(1 << len(comps)):
        colours = base.copy()
        for i, comp in enumerate(comps):
            col = BLUE if counter >> i & 1 else RED
            for v in comp:
                colours[v] = col
        yield colours


def naive_tuple_mono_exists(g: Graph, t: FourTuple) -> bool:
    return any(
        naive_is_perfect(g, c) and respects_tuple(g, c, t)
        for c in mono_tuple_colourings(g, t)
    )


# -- naive induced-subgraph search ----------------------------------------------------


def naive_contains_induced(host: Graph, pattern: Graph) -> bool:
    """Injective-map brute force; only sensible for small host/pattern sizes."""
    if pattern.n > host.n:
        return False
    for combo in itertools.combinations(range(host.n), pattern.n):
        for perm in itertools.permutations(combo):
            if all(
                host.has_edge(perm[a], perm[b]) == pattern.has_edge(a, b)
                for a in range(pattern.n)
                for b in range(a + 1, pattern.n)
            ):
                return True
    return False


# -- exhaustive catalogue of connected graphs up to isomorphism -----------------------

#: Published counts of connected graphs on n unlabelled vertices.
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080}

_CACHE_DIR = Path(tempfile.gettempdir()) / "matchcut-test-cache"


def graph_from_masks(n: int, masks: tuple[int, ...]) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if masks[u] >> v & 1
    ]
    return Graph(n, edges)


def _masks_from_code(code: bytes) -> tuple[int, tuple[int, ...]]:
    n = code[0]
    rows = [int.from_bytes(code[1 + 4 * k : 5 + 4 * k], "big") for k in range(n)]
    masks = [0] * n
    for k, row in enumerate(rows):
        for j in range(k):
            if row >> j & 1:
                masks[k] |= 1 << j
                masks[j] |= 1 << k
    return n, tuple(masks)


def connected_catalogue(max_n: int) -> dict[int, list[tuple[int, ...]]]:
    """All connected graphs with up to ``max_n`` vertices, one canonical
    adjacency-mask tuple per isomorphism class.

    Grown by vertex augmentation: every connected graph on k+1 vertices has a
    non-cut vertex, so attaching a new vertex to each non-empty subset of each
    k-vertex graph reaches every class; duplicates collapse under the
    canonical code.  Levels are cached on disk and re-validated against the
    published counts on every load.
    """
    if max_n not in CONNECTED_COUNTS:
        raise ValueError("catalogue supports 1..9 vertices")
    cache = _CACHE_DIR / f"connected-catalogue-{max_n}.pkl"
    if cache.exists():
        with cache.open("rb") as fh:
            levels = pickle.load(fh)
        if {n: len(v) for n, v in levels.items()} == {
            n: CONNECTED_COUNTS[n] for n in range(1, max_n + 1)
        }:
            return levels
    levels: dict[int, list[tuple[int, ...]]] = {1: [(0,)]}
    for n in range(2, max_n + 1):
        seen: set[bytes] = set()
        out: list[tuple[int, ...]] = []
        for parent in levels[n - 1]:
            for subset in range(1, 1 << (n - 1)):
                masks = list(parent) + [subset]
                for v in range(n - 1):
                    if subset >> v & 1:
                        masks[v] |= 1 << (n - 1)
                code = canon_code(n, masks)
                if code not in seen:
                    seen.add(code)
                    out.append(_masks_from_code(code)[1])
        assert len(out) == CONNECTED_COUNTS[n], f"level {n}: {len(out)} classes"
        levels[n] = out
    _CACHE_DIR.mkdir(exist_ok=True)
    tmp = cache.with_suffix(".tmp")
    with tmp.open("wb") as fh:
        pickle.dump(levels, fh)
    tmp.replace(cache)
    return levels


def catalogue_graphs(levels: dict[int, list[tuple[int, ...]]], n: int):
    for masks in levels[n]:
        yield graph_from_masks(n, masks)


# -- one-in-three instances -----------------------------------------------------------


def all_exact3_instances(nvars: int) -> list[OneInThreeInstance]:
    """Every clause multiset over ``nvars`` variables in which each variable
    occurs exactly three times (``nvars`` clauses of three slots)."""
    triples = [
        tuple(sorted(t))
        for t in itertools.combinations_with_replacement(range(nvars), 3)
    ]
    out = []
    for combo in itertools.combinations_with_replacement(triples, nvars):
        counts = [0] * nvars
        for clause in combo:
            for x in clause:
                counts[x] += 1
        if all(c == 3 for c in counts):
            out.append(OneInThreeInstance(nvars, combo))
    return out


def brute_force_assignment(inst: OneInThreeInstance):
    """First satisfying assignment in counter order, or ``None``."""
    for counter in range(1 << inst.variable_count):
        assignment = tuple(
            bool(counter >> i & 1) for i in range(inst.variable_count)
        )
        if all(sum(1 for x in cl if assignment[x]) == 1 for cl in inst.clauses):
            return assignment
    return None


def random_exact3_instance(rng: random.Random, nvars: int) -> OneInThreeInstance:
    """Random clause multiset with every variable in exactly three clauses."""
    pool = [x for x in range(nvars) for _ in range(3)]
    rng.shuffle(pool)
    clauses = tuple(tuple(sorted(pool[3 * j : 3 * j + 3])) for j in range(nvars))
    return OneInThreeInstance(nvars, clauses)


def random_satisfiable_instances(
    rng: random.Random, count: int, max_vars: int
) -> list[OneInThreeInstance]:
    """Distinct satisfiable instances with between 3 and ``max_vars`` variables.

    Exactly one true slot per clause and three slots per variable force the
    number of true variables to be ``nvars / 3``, so only variable counts
    divisible by three are ever satisfiable; other counts are not drawn.
    """
    sizes = [nv for nv in range(3, max_vars + 1) if nv % 3 == 0]
    if not sizes:
        raise ValueError("no satisfiable sizes at or below max_vars")
    found: list[OneInThreeInstance] = []
    seen: set[tuple] = set()
    while len(found) < count:
        nvars = rng.choice(sizes)
        inst = random_exact3_instance(rng, nvars)
        key = (nvars, tuple(sorted(inst.clauses)))
        if key in seen:
            continue
        seen.add(key)
        if brute_force_assignment(inst) is not None:
            found.append(inst)
    return found


# -- random graphs ---------------------------------------------------------------------


def random_connected_graph(rng: random.Random, n: int, extra: float) -> Graph:
    """Random labelled connected graph: a random spanning tree plus noise."""
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < extra:
                edges.add((u, v))
    return Graph(n, sorted(edges))
