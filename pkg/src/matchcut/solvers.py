"""Decision procedures for the three matching-cut problems.

Problems (on connected graphs): ``mc`` asks for a valid red-blue colouring
(matching cut), ``dpm`` for a perfect-extendable one (disconnected perfect
matching), ``pmc`` for a perfect one (perfect matching cut).

The module provides three families:

* brute-force oracles (``oracle_*``) that scan all colourings with vertex 0
  red, in counter order, for graphs with at most 24 vertices;
* exact branch-and-propagate solvers (``exact_*``) with a branch budget;
* structured solvers for the perfect matching cut problem on special graph
  classes (bounded domination, a monochromatic dominating set, radius two,
  graphs with no induced 6-vertex path, and a lifting step that removes one
  fixed induced subgraph plus an independent 4-vertex path).

Every positive result carries a witness which is re-validated on
construction.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Callable, Iterator

from . import _accel
from .colouring import (
    Colour,
    RedBlueColouring,
    cut_edges,
    extension_witness,
    is_perfect,
    is_perfect_extendable,
    is_valid,
)
from .errors import (
    DisconnectedInput,
    MalformedTuple,
    NotApplicable,
    NotDominating,
    TooLarge,
)
from .graph_core import (
    Edge,
    Graph,
    component_masks,
    contains_induced,
    disjoint_union,
    enumerate_dominating_sets,
    eccentricities,
    find_dominating_structure_p6free,
    is_connected,
    iter_mask,
    path_graph,
    radius,
)
from .propagation import (
    S_,
    T_,
    XS_,
    YT_,
    Z_,
    FourTuple,
    StartingPair,
    check_final_structure,
    init_from_starting_pair,
    propagate,
)
from . import propagation as _propagation
from .twosat import TwoSatFormula, lit, neg, solve_2sat

#: Default exact-solver branch budget (overridable per call and via the CLI).
DEFAULT_BRANCH_BUDGET = 10_000_000

#: Oracles refuse graphs larger than this.
ORACLE_MAX_VERTICES = 24


class Problem(str, Enum):
    MC = "mc"
    DPM = "dpm"
    PMC = "pmc"


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    BUDGET_EXHAUSTED = "budget-exhausted"


@dataclass(frozen=True)
class SolveStats:
    branches: int = 0
    firings: int = 0


@dataclass(frozen=True)
class SolveResult:
    """Answer plus witness; positive witnesses are validated on construction."""

    problem: Problem
    answer: Answer
    method: str
    graph: Graph
    colouring: RedBlueColouring | None = None
    matching: tuple[Edge, ...] | None = None
    stats: SolveStats = field(default_factory=SolveStats)

    def __post_init__(self) -> None:
        if self.answer is not Answer.YES:
            if self.colouring is not None or self.matching is not None:
                raise ValueError("only positive answers carry witnesses")
            return
        if self.colouring is None:
            raise ValueError("positive answers need a witness colouring")
        g, c = self.graph, self.colouring
        if self.problem is Problem.PMC:
            if not is_perfect(g, c):
                raise ValueError("witness colouring is not perfect")
        elif self.problem is Problem.MC:
            if not is_valid(g, c):
                raise ValueError("witness colouring is not valid")
        else:
            if not is_perfect_extendable(g, c):
                raise ValueError("witness colouring is not perfect-extendable")
            if self.matching is None:
                raise ValueError("disconnected-perfect-matching answers need a matching")
            if not _is_containing_perfect_matching(g, self.matching, c):
                raise ValueError("witness matching is not a perfect matching containing the cut")


def _is_containing_perfect_matching(
    g: Graph, matching: tuple[Edge, ...], c: RedBlueColouring
) -> bool:
    seen: set[int] = set()
    for u, v in matching:
        if not g.has_edge(u, v) or u in seen or v in seen:
            return False
        seen.update((u, v))
    if len(seen) != g.n:
        return False
    return set(cut_edges(g, c)) <= set(matching)


def _yes(
    problem: Problem,
    method: str,
    g: Graph,
    col: RedBlueColouring,
    stats: SolveStats,
    matching: tuple[Edge, ...] | None = None,
) -> SolveResult:
    if problem is Problem.DPM and matching is None:
        matching = extension_witness(g, col)
    return SolveResult(
        problem=problem,
        answer=Answer.YES,
        method=method,
        graph=g,
        colouring=col,
        matching=matching,
        stats=stats,
    )


def _no(problem: Problem, method: str, g: Graph, stats: SolveStats) -> SolveResult:
    return SolveResult(
        problem=problem, answer=Answer.NO, method=method, graph=g, stats=stats
    )


def _budget(problem: Problem, method: str, g: Graph, stats: SolveStats) -> SolveResult:
    return SolveResult(
        problem=problem,
        answer=Answer.BUDGET_EXHAUSTED,
        method=method,
        graph=g,
        stats=stats,
    )


def _connected_or_raise(g: Graph) -> None:
    if not is_connected(g):
        raise DisconnectedInput("solver requires a connected graph")


# -- oracles --------------------------------------------------------------------


def _oracle_guard(g: Graph) -> None:
    if g.n > ORACLE_MAX_VERTICES:
        raise TooLarge(f"oracle accepts at most {ORACLE_MAX_VERTICES} vertices")
    _connected_or_raise(g)


def oracle_mc(g: Graph) -> SolveResult:
    """First valid colouring in counter order (vertex 0 red), or no."""
    _oracle_guard(g)
    b = _accel.scan_colourings(g.n, list(g.adjacency_masks()), 1, 0)
    if b < 0:
        return _no(Problem.MC, "oracle", g, SolveStats(branches=1 << max(g.n - 1, 0)))
    col = RedBlueColouring.from_blue_mask(g.n, b << 1)
    return _yes(Problem.MC, "oracle", g, col, SolveStats(branches=b + 1))


def oracle_pmc(g: Graph) -> SolveResult:
    """First perfect colouring in counter order (vertex 0 red), or no."""
    _oracle_guard(g)
    b = _accel.scan_colourings(g.n, list(g.adjacency_masks()), 2, 0)
    if b < 0:
        return _no(Problem.PMC, "oracle", g, SolveStats(branches=1 << max(g.n - 1, 0)))
    col = RedBlueColouring.from_blue_mask(g.n, b << 1)
    return _yes(Problem.PMC, "oracle", g, col, SolveStats(branches=b + 1))


def oracle_dpm(g: Graph) -> SolveResult:
    """First perfect-extendable colouring in counter order (vertex 0 red), or no."""
    _oracle_guard(g)
    adj = list(g.adjacency_masks())
    start = 0
    tried = 0
    while True:
        b = _accel.scan_colourings(g.n, adj, 1, start)
        if b < 0:
            return _no(Problem.DPM, "oracle", g, SolveStats(branches=tried))
        tried += 1
        col = RedBlueColouring.from_blue_mask(g.n, b << 1)
        if is_perfect_extendable(g, col):
            return _yes(Problem.DPM, "oracle", g, col, SolveStats(branches=tried))
        start = b + 1


# -- exact branch-and-propagate solvers ------------------------------------------


class _BudgetHit(Exception):
    pass


def _exact_search(
    g: Graph,
    level: int,
    budget: int,
    accept: Callable[[int], bool],
) -> tuple[int | None, SolveStats, bool]:
    """Depth-first search over partial colourings with forced-move propagation.

    ``level`` 1 keeps partial validity, level 2 additionally forces the
    perfect-matching conditions.  ``accept`` receives the blue mask of a total
    colouring and decides whether it is a witness.  Vertex 0 is fixed red.
    Returns ``(blue_mask_or_None, stats, budget_exhausted)``.
    """
    masks = g.adjacency_masks()
    n = g.n
    full = (1 << n) - 1
    counters = [0, 0]  # branches, firings

    def prop(red: int, blue: int) -> tuple[int, int] | None:
        while True:
            progress = False
            unc = full & ~red & ~blue
            m = red
            while m:
                lowb = m & -m
                m ^= lowb
                v = lowb.bit_length() - 1
                bl = masks[v] & blue
                k = bl.bit_count()
                if k >= 2:
                    return None
                un = masks[v] & unc
                if k == 1:
                    if un:
                        red |= un
                        unc &= ~un
                        counters[1] += un.bit_count()
                        progress = True
                elif level == 2:
                    if un == 0:
                        return None
                    if un.bit_count() == 1:
                        blue |= un
                        unc &= ~un
                        counters[1] += 1
                        progress = True
            m = blue
            while m:
                lowb = m & -m
                m ^= lowb
                v = lowb.bit_length() - 1
                rd = masks[v] & red
                k = rd.bit_count()
                if k >= 2:
                    return None
                un = masks[v] & unc
                if k == 1:
                    if un:
                        blue |= un
                        unc &= ~un
                        counters[1] += un.bit_count()
                        progress = True
                elif level == 2:
                    if un == 0:
                        return None
                    if un.bit_count() == 1:
                        red |= un
                        unc &= ~un
                        counters[1] += 1
                        progress = True
            m = unc
            while m:
                lowb = m & -m
                m ^= lowb
                v = lowb.bit_length() - 1
                rn = (masks[v] & red).bit_count()
                bn = (masks[v] & blue).bit_count()
                if rn >= 2 and bn >= 2:
                    return None
                if rn >= 2:
                    red |= lowb
                    unc ^= lowb
                    counters[1] += 1
                    progress = True
                elif bn >= 2:
                    blue |= lowb
                    unc ^= lowb
                    counters[1] += 1
                    progress = True
            if not progress:
                return red, blue

    found: list[int | None] = [None]

    def dfs(red: int, blue: int) -> bool:
        counters[0] += 1
        if counters[0] > budget:
            raise _BudgetHit
        res = prop(red, blue)
        if res is None:
            return False
        red, blue = res
        unc = full & ~red & ~blue
        if unc == 0:
            if accept(blue):
                found[0] = blue
                return True
            return False
        decided = red | blue
        best_v = -1
        best_c = -1
        m = unc
        while m:
            lowb = m & -m
            m ^= lowb
            v = lowb.bit_length() - 1
            c = (masks[v] & decided).bit_count()
            if c > best_c:
                best_c = c
                best_v = v
        vb = 1 << best_v
        if masks[best_v] & blue == 0:
            order = ((red | vb, blue), (red, blue | vb))
        elif masks[best_v] & red == 0:
            order = ((red, blue | vb), (red | vb, blue))
        else:
            order = ((red | vb, blue), (red, blue | vb))
        for nr, nb in order:
            if dfs(nr, nb):
                return True
        return False

    exhausted = False
    try:
        dfs(1, 0)
    except _BudgetHit:
        exhausted = True
    stats = SolveStats(branches=counters[0], firings=counters[1])
    return found[0], stats, exhausted


def exact_mc(g: Graph, budget: int = DEFAULT_BRANCH_BUDGET) -> SolveResult:
    """Exact matching-cut decision by branch-and-propagate."""
    _connected_or_raise(g)
    adj = list(g.adjacency_masks())
    blue, stats, exhausted = _exact_search(
        g, 1, budget, lambda b: _accel.check_level(g.n, adj, 1, b)
    )
    if blue is not None:
        return _yes(Problem.MC, "exact", g, RedBlueColouring.from_blue_mask(g.n, blue), stats)
    if exhausted:
        return _budget(Problem.MC, "exact", g, stats)
    return _no(Problem.MC, "exact", g, stats)


def exact_pmc(g: Graph, budget: int = DEFAULT_BRANCH_BUDGET) -> SolveResult:
    """Exact perfect-matching-cut decision by branch-and-propagate."""
    _connected_or_raise(g)
    adj = list(g.adjacency_masks())
    blue, stats, exhausted = _exact_search(
        g, 2, budget, lambda b: _accel.check_level(g.n, adj, 2, b)
    )
    if blue is not None:
        return _yes(Problem.PMC, "exact", g, RedBlueColouring.from_blue_mask(g.n, blue), stats)
    if exhausted:
        return _budget(Problem.PMC, "exact", g, stats)
    return _no(Problem.PMC, "exact", g, stats)


def exact_dpm(g: Graph, budget: int = DEFAULT_BRANCH_BUDGET) -> SolveResult:
    """Exact disconnected-perfect-matching decision by branch-and-propagate."""
    _connected_or_raise(g)
    adj = list(g.adjacency_masks())

    def accept(b: int) -> bool:
        if not _accel.check_level(g.n, adj, 1, b):
            return False
        return is_perfect_extendable(g, RedBlueColouring.from_blue_mask(g.n, b))

    blue, stats, exhausted = _exact_search(g, 1, budget, accept)
    if blue is not None:
        col = RedBlueColouring.from_blue_mask(g.n, blue)
        return _yes(Problem.DPM, "exact", g, col, stats)
    if exhausted:
        return _budget(Problem.DPM, "exact", g, stats)
    return _no(Problem.DPM, "exact", g, stats)


# -- monochromatic endgame (2-SAT over undecided components) ---------------------


def _solve_mono_raw(
    masks, n: int, status: bytearray | bytes, groups: list[tuple[int, ...]]
) -> int | None:
    """Blue mask of a perfect colouring that is monochromatic on every undecided
    component and compatible with the tuple encoded in ``status``, or ``None``.

    ``groups`` adds internal all-same-colour constraints over vertex sets (used
    by the component-pruning reconstruction); the public entry point passes none.
    """
    z = xs = yt = x = y = 0
    for v, st in enumerate(status):
        b = 1 << v
        if st == Z_:
            z |= b
        elif st == XS_:
            xs |= b
            x |= b
        elif st == S_:
            x |= b
        elif st == YT_:
            yt |= b
            y |= b
        else:
            y |= b
    free = xs | yt
    if free.bit_count() != z.bit_count():
        return None
    comps = component_masks(masks, z)
    comp_idx: dict[int, int] = {}
    for ci, cm in enumerate(comps):
        for v in iter_mask(cm):
            comp_idx[v] = ci
    k = len(comps)
    # Variables: component ci has a red variable 2*ci and a blue variable 2*ci+1.
    clauses: list[tuple[int, int]] = []
    for ci in range(k):
        clauses.append((lit(2 * ci), lit(2 * ci + 1)))
        clauses.append((neg(lit(2 * ci)), neg(lit(2 * ci + 1))))
    for v in iter_mask(free):
        zn = masks[v] & z
        assert zn.bit_count() == 2, "final tuple must give fringe vertices two undecided neighbours"
        w1 = (zn & -zn).bit_length() - 1
        w2 = zn.bit_length() - 1
        c1, c2 = comp_idx[w1], comp_idx[w2]
        assert c1 != c2, "fringe neighbours must lie in distinct components"
        clauses.append((lit(2 * c1), lit(2 * c2)))
        clauses.append((lit(2 * c1 + 1), lit(2 * c2 + 1)))
    for group in groups:
        forced_red = any(status[m] in (XS_, S_) for m in group)
        forced_blue = any(status[m] in (YT_, T_) for m in group)
        if forced_red and forced_blue:
            return None
        member_comps = sorted({comp_idx[m] for m in group if status[m] == Z_})
        if forced_red:
            for ci in member_comps:
                clauses.append((lit(2 * ci), lit(2 * ci)))
        elif forced_blue:
            for ci in member_comps:
                clauses.append((lit(2 * ci + 1), lit(2 * ci + 1)))
        for c1, c2 in zip(member_comps, member_comps[1:]):
            clauses.append((neg(lit(2 * c1)), lit(2 * c2)))
            clauses.append((lit(2 * c1), neg(lit(2 * c2))))
    assignment = solve_2sat(TwoSatFormula(num_vars=2 * k, clauses=tuple(clauses)))
    if assignment is None:
        return None
    blue = y
    for ci, cm in enumerate(comps):
        if not assignment[2 * ci]:
            blue |= cm
    return blue


def solve_mono_from_final(g: Graph, t: FourTuple) -> RedBlueColouring | None:
    """Monochromatic-component perfect colouring compatible with a final tuple.

    ``t`` must satisfy the final-structure invariants (else
    :class:`MalformedTuple`).  Encodes each undecided component as a
    red/blue variable pair with exclusivity clauses, and each fringe vertex
    as a covering clause over its two neighbouring components; decides by
    2-SAT.  Returns ``None`` when no such colouring exists.
    """
    if not check_final_structure(g, t):
        raise MalformedTuple("tuple does not have the final structure")
    blue = _solve_mono_raw(g.adjacency_masks(), g.n, t.to_statuses(g.n), [])
    if blue is None:
        return None
    col = RedBlueColouring.from_blue_mask(g.n, blue)
    assert is_perfect(g, col)
    return col


# -- bounded domination -----------------------------------------------------------


def _lemma_style_enumeration(g: Graph, dom: tuple[int, ...]) -> tuple[int | None, int]:
    """Search for a perfect colouring guided by a dominating set.

    Enumerates the two-colourings of ``dom`` (counter bit ``i`` = 1 colours
    ``dom[i]`` blue).  Dominator vertices whose colour appears opposite inside
    ``dom`` force all their undecided neighbours to their own colour;
    dominators with no opposite neighbour inside ``dom`` branch over which
    single neighbour is their opposite partner (all other neighbours follow
    their own colour).  Every total candidate is checked for perfectness.
    Returns ``(first_blue_mask_or_None, candidates_tried)``.
    """
    masks = g.adjacency_masks()
    n = g.n
    adj = list(masks)
    dom = tuple(sorted(dom))
    dom_mask = 0
    for d in dom:
        dom_mask |= 1 << d
    tried = 0
    for counter in range(1 << len(dom)):
        blue0 = 0
        for i, d in enumerate(dom):
            if counter >> i & 1:
                blue0 |= 1 << d
        red0 = dom_mask & ~blue0
        red = red0
        blue = blue0
        conflict = False
        choosers: list[int] = []
        for d in dom:
            db = 1 << d
            mine, opp = (red0, blue0) if db & red0 else (blue0, red0)
            if masks[d] & opp:
                outside = masks[d] & ~dom_mask
                if db & red0:
                    red |= outside
                else:
                    blue |= outside
            else:
                choosers.append(d)
        if red & blue:
            continue

        def choose(idx: int, red: int, blue: int) -> int | None:
            nonlocal tried
            if idx == len(choosers):
                tried += 1
                assert (red | blue) == (1 << n) - 1
                return blue if _accel.check_level(n, adj, 2, blue) else None
            d = choosers[idx]
            d_red = bool((1 << d) & red0)
            options = masks[d] & ~dom_mask
            m = options
            while m:
                pb = m & -m
                m ^= pb
                rest = options ^ pb
                if d_red:
                    if pb & red or rest & blue:
                        continue
                    got = choose(idx + 1, red | rest, blue | pb)
                else:
                    if pb & blue or rest & red:
                        continue
                    got = choose(idx + 1, red | pb, blue | rest)
                if got is not None:
                    return got
            return None

        got = choose(0, red, blue)
        if got is not None:
            return got, tried
    return None, tried


def pmc_bounded_domination(g: Graph, max_dom: int) -> SolveResult:
    """Perfect matching cut via the first dominating set of size at most ``max_dom``.

    Raises :class:`NotApplicable` when no such dominating set exists.
    """
    _connected_or_raise(g)
    method = f"domination:{max_dom}"
    dom = next(enumerate_dominating_sets(g, max_dom), None)
    if dom is None:
        raise NotApplicable(f"no dominating set of size at most {max_dom}")
    blue, tried = _lemma_style_enumeration(g, dom)
    stats = SolveStats(branches=tried)
    if blue is None:
        return _no(Problem.PMC, method, g, stats)
    return _yes(Problem.PMC, method, g, RedBlueColouring.from_blue_mask(g.n, blue), stats)


def pmc_monochromatic_dominating(g: Graph, dom) -> RedBlueColouring | None:
    """Restricted question: is the all-``dom``-red, rest-blue colouring perfect?

    This is the only perfect colouring (up to swap) in which the dominating
    set is monochromatic; it is returned when perfect, otherwise ``None``.
    Raises :class:`NotDominating` when ``dom`` does not dominate ``g``.
    """
    dom = tuple(sorted(set(dom)))
    covered = set(dom)
    for d in dom:
        covered.update(g.neighbours(d))
    if len(covered) != g.n:
        raise NotDominating("the supplied set does not dominate the graph")
    col = RedBlueColouring.from_sets(
        g.n, dom, [v for v in g.vertices() if v not in set(dom)]
    )
    if is_perfect(g, col):
        return col
    return None


# -- radius two --------------------------------------------------------------------


def pmc_radius2(g: Graph) -> SolveResult:
    """Perfect matching cut for graphs of radius at most two.

    Radius 0 or 1: only the two-vertex graph has one.  Radius 2: either the
    closed neighbourhood of a centre is monochromatic (checked directly), or
    the centre is matched across the cut to one of its neighbours; each such
    seed is propagated with the full rule set and finished by the
    monochromatic 2-SAT endgame.
    """
    _connected_or_raise(g)
    r = radius(g)
    if r > 2:
        raise NotApplicable("graph has radius greater than two")
    method = "radius2"
    if g.n == 1:
        return _no(Problem.PMC, method, g, SolveStats())
    if r <= 1:
        if g.n == 2:
            col = RedBlueColouring.from_sets(2, [0], [1])
            return _yes(Problem.PMC, method, g, col, SolveStats(branches=1))
        return _no(Problem.PMC, method, g, SolveStats(branches=1))
    eccs = eccentricities(g)
    centre = min(v for v in g.vertices() if eccs[v] == 2)
    leaves = sorted(g.neighbours(centre), reverse=True)
    branches = 0
    firings = 0
    dom = [centre, *g.neighbours(centre)]
    blue_rest = [v for v in g.vertices() if v not in set(dom)]
    branches += 1
    if blue_rest:
        cand = RedBlueColouring.from_sets(g.n, dom, blue_rest)
        if is_perfect(g, cand):
            return _yes(Problem.PMC, method, g, cand, SolveStats(branches=branches))
    for leaf in leaves:
        branches += 1
        t0 = init_from_starting_pair(g, StartingPair.of([centre], [leaf]))
        out7 = propagate(g, t0, upto=7)
        firings += out7.firings
        if out7.refused:
            continue
        out11 = propagate(g, out7.four_tuple, upto=11)
        firings += out11.firings
        if out11.refused:
            continue
        col = solve_mono_from_final(g, out11.four_tuple)
        if col is not None:
            return _yes(
                Problem.PMC, method, g, col, SolveStats(branches=branches, firings=firings)
            )
    return _no(Problem.PMC, method, g, SolveStats(branches=branches, firings=firings))


# -- graphs with no induced 6-vertex path -------------------------------------------


def pmc_p6free(g: Graph) -> SolveResult:
    """Perfect matching cut for connected graphs with no induced 6-vertex path.

    Uses the guaranteed dominating structure: a dominating complete bipartite
    subgraph with classes of sizes ``r <= s`` (three regimes: a star routes to
    the radius-two solver; ``r, s <= 2`` routes to the dominating-set
    enumeration; ``r >= 2, s <= 3``... sizes ``r >= 2 and s >= 3`` force every
    cross pair to refuse under propagation, leaving only monochromatic
    candidates), or a dominating induced 6-cycle (dominating-set enumeration).
    """
    _connected_or_raise(g)
    if contains_induced(g, path_graph(6)) is not None:
        raise NotApplicable("graph has an induced 6-vertex path")
    method = "p6free"
    structure = find_dominating_structure_p6free(g)
    if structure.kind == "induced_c6":
        blue, tried = _lemma_style_enumeration(g, tuple(sorted(structure.vertices)))
        stats = SolveStats(branches=tried)
        if blue is None:
            return _no(Problem.PMC, method, g, stats)
        return _yes(
            Problem.PMC, method, g, RedBlueColouring.from_blue_mask(g.n, blue), stats
        )
    assert structure.classes is not None
    side_a, side_b = structure.classes
    if len(side_a) > len(side_b):
        side_a, side_b = side_b, side_a
    r, s = len(side_a), len(side_b)
    if r == 1:
        assert radius(g) <= 2
        inner = pmc_radius2(g)
        return replace(inner, method=method)
    if s <= 2:
        blue, tried = _lemma_style_enumeration(g, tuple(sorted(side_a + side_b)))
        stats = SolveStats(branches=tried)
        if blue is None:
            return _no(Problem.PMC, method, g, stats)
        return _yes(
            Problem.PMC, method, g, RedBlueColouring.from_blue_mask(g.n, blue), stats
        )
    # r >= 2 and s >= 3: every cross seed must refuse, so only monochromatic
    # placements of the biclique remain.
    branches = 0
    firings = 0
    for a in side_a:
        for b in side_b:
            branches += 1
            t0 = init_from_starting_pair(g, StartingPair.of([a], [b]))
            out = propagate(g, t0, upto=7)
            firings += out.firings
            if not out.refused:
                raise RuntimeError(
                    "invariant violation: a cross seed of a dominating biclique "
                    f"with classes of sizes {r} and {s} survived propagation"
                )
    dom = tuple(sorted(side_a + side_b))
    rest = [v for v in g.vertices() if v not in set(dom)]
    branches += 1
    stats = SolveStats(branches=branches, firings=firings)
    if rest:
        cand = RedBlueColouring.from_sets(g.n, dom, rest)
        if is_perfect(g, cand):
            return _yes(Problem.PMC, method, g, cand, stats)
    return _no(Problem.PMC, method, g, stats)


# -- lifting: remove one induced copy of h, plus an independent P4 -------------------


def _complete_seed_region(
    masks, w_list: list[int], red: int, blue: int
) -> Iterator[tuple[int, int]]:
    """All completions that decide the open neighbourhood of ``w_list``.

    Every listed vertex must end with exactly one opposite-coloured
    neighbour among the decided vertices: a vertex that already has one
    forces all its undecided neighbours to its own colour; a vertex with
    none branches over the choice of its single opposite partner.
    """

    def rec(i: int, red: int, blue: int) -> Iterator[tuple[int, int]]:
        if i == len(w_list):
            yield red, blue
            return
        w = w_list[i]
        w_blue = blue >> w & 1
        opp = masks[w] & (red if w_blue else blue)
        k = opp.bit_count()
        if k >= 2:
            return
        unc = masks[w] & ~red & ~blue
        if k == 1:
            if w_blue:
                yield from rec(i + 1, red, blue | unc)
            else:
                yield from rec(i + 1, red | unc, blue)
            return
        m = unc
        while m:
            pb = m & -m
            m ^= pb
            rest = unc ^ pb
            if w_blue:
                yield from rec(i + 1, red | pb, blue | rest)
            else:
                yield from rec(i + 1, red | rest, blue | pb)

    yield from rec(0, red, blue)


def _prune_components_raw(masks, n: int, status: bytearray):
    """Remove undecided components reducible to a pendant pair.

    A component ``F`` qualifies when exactly two of its vertices ``u, v``
    have no decided neighbours, one of them (``v``) dominates ``F``, and
    every other vertex of ``F`` has neighbours on both decided sides.  The
    pair is removable only when ``u``'s sole neighbour is ``v``; if ``F``
    qualifies but no orientation has that form, no compatible perfect
    colouring exists at all and the search branch is refused (returns
    ``None``).  Otherwise returns::

        (masks2, n2, status2, kept_old_ids, groups_new_ids, stack)

    where ``stack`` holds ``(u_old, v_old, group_old_ids)`` for the
    reconstruction: ``v`` takes the colour of the remainder ``F - {u, v}``
    (whose fragments are constrained to one colour downstream) and ``u``
    takes the opposite; an empty remainder leaves the pair free (``v`` red).
    """
    z = xy = 0
    for v, st in enumerate(status):
        if st == Z_:
            z |= 1 << v
        else:
            xy |= 1 << v
    x = y = 0
    for v, st in enumerate(status):
        if st in (XS_, S_):
            x |= 1 << v
        elif st in (YT_, T_):
            y |= 1 << v
    stack: list[tuple[int, int, tuple[int, ...]]] = []
    to_remove = 0
    for cm in component_masks(masks, z):
        bare = [v for v in iter_mask(cm) if masks[v] & xy == 0]
        if len(bare) != 2:
            continue
        a, b = bare
        doms = [w for w in (a, b) if cm & ~(masks[w] | (1 << w)) == 0]
        if not doms:
            continue
        rest = cm & ~(1 << a) & ~(1 << b)
        for zv in iter_mask(rest):
            if not (masks[zv] & x) or not (masks[zv] & y):
                raise AssertionError(
                    "propagation fixpoint violated: a dominated component member "
                    "is anchored on one side only"
                )
        chosen = None
        for vd in doms:
            ud = b if vd == a else a
            if masks[ud] == 1 << vd:
                chosen = (ud, vd)
                break
        if chosen is None:
            return None
        stack.append((chosen[0], chosen[1], tuple(iter_mask(rest))))
        to_remove |= (1 << chosen[0]) | (1 << chosen[1])
    if not stack:
        return masks, n, status, list(range(n)), [], []
    kept = [v for v in range(n) if not to_remove >> v & 1]
    new_of_old = {old: i for i, old in enumerate(kept)}
    masks2 = []
    for old in kept:
        m2 = 0
        mm = masks[old]
        while mm:
            lowb = mm & -mm
            mm ^= lowb
            w = lowb.bit_length() - 1
            if w in new_of_old:
                m2 |= 1 << new_of_old[w]
        masks2.append(m2)
    status2 = bytearray(status[old] for old in kept)
    groups2 = [tuple(new_of_old[m] for m in grp) for (_, _, grp) in stack]
    return masks2, len(kept), status2, kept, groups2, stack


def _graph_from_masks(masks, n: int) -> Graph:
    edges = []
    for v in range(n):
        mm = masks[v]
        while mm:
            lowb = mm & -mm
            mm ^= lowb
            w = lowb.bit_length() - 1
            if w > v:
                edges.append((v, w))
    return Graph(n, edges)


def pmc_h_plus_p4(
    g: Graph, h: Graph, base: Callable[[Graph], SolveResult]
) -> SolveResult:
    """Perfect matching cut for graphs with no induced copy of ``h`` plus an
    independent 4-vertex path, given a solver ``base`` for ``h``-free graphs.

    If ``g`` is ``h``-free the base solver decides.  Otherwise one induced
    copy of ``h`` (vertex set ``W``) is fixed; the search branches over a cut
    edge ``uv`` (``u`` red), over all two-colourings of ``W``, and over the
    opposite-partner choices that decide ``N[W]``.  Each seed is propagated,
    reducible undecided components are pruned (their colours are recovered
    afterwards), the remaining graph is propagated with the full rule set and
    finished by the constrained monochromatic 2-SAT endgame.
    """
    _connected_or_raise(g)
    if contains_induced(g, disjoint_union(h, path_graph(4))) is not None:
        raise NotApplicable("graph has an induced copy of the pattern plus an independent path")
    phi = contains_induced(g, h)
    method = "hplusp4"
    if phi is None:
        inner = base(g)
        return replace(inner, method=f"{method}({inner.method})")
    w_list = sorted(phi.values())
    masks = g.adjacency_masks()
    n = g.n
    branches = 0
    firings = 0
    for u, v in g.edges():
        seed_red = 1 << u
        seed_blue = 1 << v
        for w_counter in range(1 << len(w_list)):
            red = seed_red
            blue = seed_blue
            ok = True
            for k, w in enumerate(w_list):
                wb = 1 << w
                if w_counter >> k & 1:
                    if red & wb:
                        ok = False
                        break
                    blue |= wb
                else:
                    if blue & wb:
                        ok = False
                        break
                    red |= wb
            if not ok:
                continue
            for red2, blue2 in _complete_seed_region(masks, w_list, red, blue):
                branches += 1
                if any((masks[a] & blue2).bit_count() > 1 for a in iter_mask(red2)):
                    continue
                if any((masks[a] & red2).bit_count() > 1 for a in iter_mask(blue2)):
                    continue
                status = bytearray(n)
                for a in iter_mask(red2):
                    status[a] = S_ if masks[a] & blue2 else XS_
                for a in iter_mask(blue2):
                    status[a] = T_ if masks[a] & red2 else YT_
                refused, _rule, _verts, f = _propagation.run_rules_dispatch(
                    masks, n, status, 7
                )
                firings += f
                if refused:
                    continue
                pruned = _prune_components_raw(masks, n, status)
                if pruned is None:
                    continue
                masks2, n2, status2, kept, groups2, stack = pruned
                refused, _rule, _verts, f = _propagation.run_rules_dispatch(
                    masks2, n2, status2, 11
                )
                firings += f
                if refused:
                    continue
                if _propagation._FINAL_RECORDER is not None:
                    _propagation._FINAL_RECORDER.append(
                        (_graph_from_masks(masks2, n2), FourTuple.from_statuses(status2))
                    )
                blue_mask2 = _solve_mono_raw(masks2, n2, status2, groups2)
                if blue_mask2 is None:
                    continue
                blue_full = 0
                for i in iter_mask(blue_mask2):
                    blue_full |= 1 << kept[i]
                for u_old, v_old, group in stack:
                    if group:
                        first = group[0]
                        member_blue = blue_full >> first & 1
                        assert all(
                            (blue_full >> m & 1) == member_blue for m in group
                        ), "pruned remainder must be monochromatic"
                        if member_blue:
                            blue_full |= 1 << v_old
                        else:
                            blue_full |= 1 << u_old
                    else:
                        blue_full |= 1 << u_old
                col = RedBlueColouring.from_blue_mask(n, blue_full)
                assert is_perfect(g, col)
                return _yes(
                    Problem.PMC,
                    method,
                    g,
                    col,
                    SolveStats(branches=branches, firings=firings),
                )
    return _no(Problem.PMC, method, g, SolveStats(branches=branches, firings=firings))


def base_solver_for(h: Graph) -> Callable[[Graph], SolveResult]:
    """The theorem-backed base solver for ``h``-free graphs.

    A connected graph with no induced 4-vertex path always has a dominating
    set of size two; for no induced 6-vertex path the dedicated solver
    applies.
    """
    if h == path_graph(4):
        return lambda g: pmc_bounded_domination(g, 2)
    if h == path_graph(6):
        return pmc_p6free
    raise NotApplicable("no base solver registered for this pattern")
