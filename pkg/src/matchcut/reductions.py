"""Hardness gadgets from exact positive 1-in-3 satisfiability.

An instance has only positive literals and every variable occurs in exactly
three clause slots (so there are as many clauses as variables).  Two builders
translate an instance into a graph whose matching-cut (respectively
disconnected-perfect-matching) answer equals the instance's satisfiability,
together with a role map naming every vertex.  Converters map truth
assignments to witness colourings and back.  A replacement operation
substitutes an edge by a 4-cycle, preserving the matching-cut answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .colouring import RedBlueColouring, is_perfect_extendable, is_valid
from .errors import (
    InvalidColouring,
    MalformedInstance,
    NotAnEdge,
    NotOneInThree,
    ParseError,
    TooLarge,
)
from .graph_core import Graph, contains_induced, disjoint_union, path_graph

Clause = tuple[int, int, int]


@dataclass(frozen=True)
class OneInThreeInstance:
    """Positive 1-in-3 instance; variables are 0-based internally."""

    variable_count: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.variable_count < 1:
            raise MalformedInstance("instance needs at least one variable")
        counts = [0] * self.variable_count
        for clause in self.clauses:
            if len(clause) != 3:
                raise MalformedInstance("every clause has exactly three slots")
            for x in clause:
                if not 0 <= x < self.variable_count:
                    raise MalformedInstance(f"variable id {x} out of range")
                counts[x] += 1
        bad = [x for x, k in enumerate(counts) if k != 3]
        if bad:
            raise MalformedInstance(
                f"variable {bad[0] + 1} occurs {counts[bad[0]]} times, expected 3"
            )
        if len(self.clauses) != self.variable_count:
            raise MalformedInstance("clause count must equal variable count")

    def occurrences(self) -> list[list[tuple[int, int]]]:
        """Per variable, its (clause index, 1-based slot) occurrences in clause order."""
        occ: list[list[tuple[int, int]]] = [[] for _ in range(self.variable_count)]
        for j, clause in enumerate(self.clauses):
            for s, x in enumerate(clause, start=1):
                occ[x].append((j, s))
        return occ


def satisfies_one_in_three(inst: OneInThreeInstance, assignment: Sequence[bool]) -> bool:
    """True when every clause has exactly one true slot (slots count multiplicity)."""
    if len(assignment) != inst.variable_count:
        raise ValueError("assignment length must equal the variable count")
    return all(sum(1 for x in clause if assignment[x]) == 1 for clause in inst.clauses)


def parse_instance(text: str) -> OneInThreeInstance:
    """Parse ``p 1in3 <nvars> <nclauses>`` plus one ``a b c`` line per clause.

    Variable ids are 1-based in the file; lines starting with ``c`` are comments.
    """
    header: tuple[int, int] | None = None
    clauses: list[Clause] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line == "c" or line.startswith("c "):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 4 or parts[0] != "p" or parts[1] != "1in3":
                raise ParseError("expected header 'p 1in3 <nvars> <nclauses>'", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if header[0] < 0 or header[1] < 0:
                raise ParseError("header counts must be non-negative", lineno)
            continue
        if len(parts) != 3:
            raise ParseError("expected clause line 'a b c'", lineno)
        try:
            trip = tuple(int(p) for p in parts)
        except ValueError:
            raise ParseError("clause entries must be integers", lineno) from None
        if any(not 1 <= x <= header[0] for x in trip):
            raise ParseError("clause entry out of variable range", lineno)
        if len(clauses) >= header[1]:
            raise ParseError("more clauses than announced", lineno)
        clauses.append((trip[0] - 1, trip[1] - 1, trip[2] - 1))
    if header is None:
        raise ParseError("missing header")
    if len(clauses) != header[1]:
        raise ParseError(f"expected {header[1]} clauses, found {len(clauses)}")
    return OneInThreeInstance(header[0], tuple(clauses))


def format_instance(inst: OneInThreeInstance) -> str:
    lines = [f"p 1in3 {inst.variable_count} {len(inst.clauses)}"]
    for a, b, c in inst.clauses:
        lines.append(f"{a + 1} {b + 1} {c + 1}")
    return "\n".join(lines) + "\n"


# -- gadget graphs -----------------------------------------------------------------


@dataclass(frozen=True)
class GadgetGraph:
    """A built gadget with a role name per vertex (a bijection)."""

    flavour: str
    instance: OneInThreeInstance
    graph: Graph
    roles: tuple[str, ...]

    def vertex_of(self, role: str) -> int:
        try:
            return self.roles.index(role)
        except ValueError:
            raise KeyError(role) from None

    def role_of(self, vertex: int) -> str:
        return self.roles[vertex]


def format_roles(gadget: GadgetGraph) -> str:
    """One ``<vertex id> <role>`` line per vertex."""
    return "\n".join(f"{v} {r}" for v, r in enumerate(gadget.roles)) + "\n"


def _clique(edges: set[tuple[int, int]], vertices: Sequence[int]) -> None:
    vs = sorted(vertices)
    for i, a in enumerate(vs):
        for b in vs[i + 1 :]:
            edges.add((a, b))


def _edge(edges: set[tuple[int, int]], a: int, b: int) -> None:
    edges.add((min(a, b), max(a, b)))


# Offsets inside a matching-cut variable block (10 vertices) and clause block (9).
_MC_VAR = 10
_MC_CLAUSE = 9
# Offsets inside a disconnected-perfect-matching variable block (16) / clause block (18).
_DPM_VAR = 16
_DPM_CLAUSE = 18


def build_mc_gadget(inst: OneInThreeInstance) -> GadgetGraph:
    """Matching-cut gadget: 10 vertices per variable, 9 per clause.

    Per variable two 4-cliques (``v``-side and ``u``-side, each with a
    distinguished ``s`` vertex) plus one vertex in each hub clique S1/S2; per
    clause one ``v`` vertex, two ``u`` vertices (all clause vertices together
    form the hub clique S3) and six auxiliaries.  The variable's k-th
    occurrence wires its k-th ``v`` vertex to the clause vertex, and its k-th
    ``u`` vertex to the two auxiliaries indexed by the clause slot.
    """
    nx = inst.variable_count
    nc = len(inst.clauses)
    n = _MC_VAR * nx + _MC_CLAUSE * nc
    edges: set[tuple[int, int]] = set()
    roles: list[str] = []

    def vb(i: int) -> int:
        return _MC_VAR * i

    def cb(j: int) -> int:
        return _MC_VAR * nx + _MC_CLAUSE * j

    for i in range(nx):
        b = vb(i)
        roles.extend(
            [
                f"x{i + 1}:vs",
                f"x{i + 1}:v1",
                f"x{i + 1}:v2",
                f"x{i + 1}:v3",
                f"x{i + 1}:us",
                f"x{i + 1}:u1",
                f"x{i + 1}:u2",
                f"x{i + 1}:u3",
                f"x{i + 1}:s1",
                f"x{i + 1}:s2",
            ]
        )
        _clique(edges, range(b, b + 4))
        _clique(edges, range(b + 4, b + 8))
        for hub in (b + 8, b + 9):
            _edge(edges, hub, b)      # s – vs
            _edge(edges, hub, b + 4)  # s – us
    for j in range(nc):
        roles.extend(
            [f"c{j + 1}:v", f"c{j + 1}:u1", f"c{j + 1}:u2"]
            + [f"c{j + 1}:a{l}" for l in range(1, 7)]
        )
        b = cb(j)
        for l in range(1, 4):
            _edge(edges, b + 1, b + 2 + l)      # u1 – a1..a3
            _edge(edges, b + 2, b + 2 + l + 3)  # u2 – a4..a6
    _clique(edges, [vb(i) + 8 for i in range(nx)])  # S1
    _clique(edges, [vb(i) + 9 for i in range(nx)])  # S2
    _clique(edges, [cb(j) + t for j in range(nc) for t in range(3)])  # S3
    for x, occ in enumerate(inst.occurrences()):
        for m, (j, s) in enumerate(occ, start=1):
            _edge(edges, vb(x) + m, cb(j))              # v^m – v_c
            _edge(edges, vb(x) + 4 + m, cb(j) + 2 + s)      # u^m – a^s
            _edge(edges, vb(x) + 4 + m, cb(j) + 2 + s + 3)  # u^m – a^{s+3}
    return GadgetGraph("mc", inst, Graph(n, sorted(edges)), tuple(roles))


def build_dpm_gadget(inst: OneInThreeInstance) -> GadgetGraph:
    """Disconnected-perfect-matching gadget: 16 vertices per variable, 18 per clause.

    Per variable two 7-cliques plus one vertex in each hub clique S1/S2; per
    clause two ``v`` vertices and four ``u`` vertices (all clause vertices
    form S3) and twelve auxiliaries with rungs between opposite halves.  The
    variable's k-th occurrence wires ``v^k``/``v^{k+3}`` to the two clause
    ``v`` vertices and ``u^k``/``u^{k+3}`` to the four slot-indexed
    auxiliaries.
    """
    nx = inst.variable_count
    nc = len(inst.clauses)
    n = _DPM_VAR * nx + _DPM_CLAUSE * nc
    edges: set[tuple[int, int]] = set()
    roles: list[str] = []

    def vb(i: int) -> int:
        return _DPM_VAR * i

    def cb(j: int) -> int:
        return _DPM_VAR * nx + _DPM_CLAUSE * j

    for i in range(nx):
        b = vb(i)
        roles.append(f"x{i + 1}:vs")
        roles.extend(f"x{i + 1}:v{k}" for k in range(1, 7))
        roles.append(f"x{i + 1}:us")
        roles.extend(f"x{i + 1}:u{k}" for k in range(1, 7))
        roles.extend([f"x{i + 1}:s1", f"x{i + 1}:s2"])
        _clique(edges, range(b, b + 7))
        _clique(edges, range(b + 7, b + 14))
        for hub in (b + 14, b + 15):
            _edge(edges, hub, b)      # s – vs
            _edge(edges, hub, b + 7)  # s – us
    for j in range(nc):
        roles.extend([f"c{j + 1}:v1", f"c{j + 1}:v2"])
        roles.extend(f"c{j + 1}:u{k}" for k in range(1, 5))
        roles.extend(f"c{j + 1}:a{l}" for l in range(1, 13))
        b = cb(j)
        for k in range(4):
            for l in range(1, 4):
                _edge(edges, b + 2 + k, b + 5 + 3 * k + l)  # u^{k+1} – its three a's
        for l in range(1, 7):
            _edge(edges, b + 5 + l, b + 5 + l + 6)  # rung a^l – a^{l+6}
    _clique(edges, [vb(i) + 14 for i in range(nx)])  # S1
    _clique(edges, [vb(i) + 15 for i in range(nx)])  # S2
    _clique(edges, [cb(j) + t for j in range(nc) for t in range(6)])  # S3
    for x, occ in enumerate(inst.occurrences()):
        for m, (j, s) in enumerate(occ, start=1):
            _edge(edges, vb(x) + m, cb(j))          # v^m – v^1_c
            _edge(edges, vb(x) + m + 3, cb(j) + 1)  # v^{m+3} – v^2_c
            _edge(edges, vb(x) + 7 + m, cb(j) + 5 + s)          # u^m – a^s
            _edge(edges, vb(x) + 7 + m, cb(j) + 5 + s + 3)      # u^m – a^{s+3}
            _edge(edges, vb(x) + 7 + m + 3, cb(j) + 5 + s + 6)  # u^{m+3} – a^{s+6}
            _edge(edges, vb(x) + 7 + m + 3, cb(j) + 5 + s + 9)  # u^{m+3} – a^{s+9}
    return GadgetGraph("dpm", inst, Graph(n, sorted(edges)), tuple(roles))


def build_gadget(inst: OneInThreeInstance, flavour: str) -> GadgetGraph:
    if flavour == "mc":
        return build_mc_gadget(inst)
    if flavour == "dpm":
        return build_dpm_gadget(inst)
    raise ValueError(f"unknown gadget flavour {flavour!r}")


# -- assignments and colourings -------------------------------------------------------


def _clause_slots(inst: OneInThreeInstance, assignment: Sequence[bool], j: int):
    """(true slot, first false slot, second false slot), 1-based, for clause j."""
    clause = inst.clauses[j]
    true_slots = [s for s, x in enumerate(clause, start=1) if assignment[x]]
    false_slots = [s for s, x in enumerate(clause, start=1) if not assignment[x]]
    assert len(true_slots) == 1
    return true_slots[0], false_slots[0], false_slots[1]


def assignment_to_colouring(
    inst: OneInThreeInstance,
    gadget: GadgetGraph,
    assignment: Sequence[bool],
    flavour: str,
) -> RedBlueColouring:
    """Forward witness construction: variable cliques by truth value, hubs and
    auxiliaries by the fixed case analysis.

    True variables get a red ``v``-clique and a blue ``u``-clique; S1 and S3
    are blue, S2 red.  Per clause the auxiliaries of the true slot follow the
    blue ``u``-cliques; the two false slots alternate so each clause ``u``
    vertex sees exactly one red auxiliary.  Raises :class:`NotOneInThree`
    unless the assignment satisfies the instance.
    """
    if len(assignment) != inst.variable_count:
        raise ValueError("assignment length must equal the variable count")
    if not satisfies_one_in_three(inst, assignment):
        raise NotOneInThree("assignment does not satisfy exactly one literal per clause")
    if flavour not in ("mc", "dpm") or gadget.flavour != flavour:
        raise ValueError("gadget flavour mismatch")
    nx = inst.variable_count
    nc = len(inst.clauses)
    blue: set[int] = set()
    if flavour == "mc":
        var_size, clause_size, u_off, s_off, a_off = _MC_VAR, _MC_CLAUSE, 4, 8, 2
        half = 4
        clause_width = 3
    else:
        var_size, clause_size, u_off, s_off, a_off = _DPM_VAR, _DPM_CLAUSE, 7, 14, 5
        half = 7
        clause_width = 6
    for i in range(nx):
        b = var_size * i
        if assignment[i]:
            blue.update(range(b + u_off, b + u_off + half))  # U blue, V red
        else:
            blue.update(range(b, b + half))  # V blue, U red
        blue.add(b + s_off)  # s1 blue; s2 red
    for j in range(nc):
        b = var_size * nx + clause_size * j
        blue.update(range(b, b + clause_width))  # S3 blue
        t, f1, f2 = _clause_slots(inst, assignment, j)
        if flavour == "mc":
            blue.update((b + a_off + t, b + a_off + t + 3))
            blue.add(b + a_off + f1)
            blue.add(b + a_off + f2 + 3)
        else:
            blue.update(b + a_off + t + 3 * h for h in range(4))
            blue.update((b + a_off + f1, b + a_off + f1 + 6))
            blue.update((b + a_off + f2 + 3, b + a_off + f2 + 9))
    g = gadget.graph
    col = RedBlueColouring.from_blue_mask(g.n, sum(1 << v for v in blue))
    if flavour == "mc":
        assert is_valid(g, col)
    else:
        assert is_perfect_extendable(g, col)
    return col


def colouring_to_assignment(
    inst: OneInThreeInstance,
    gadget: GadgetGraph,
    c: RedBlueColouring,
    flavour: str,
) -> tuple[bool, ...]:
    """Read a satisfying assignment off a witness colouring.

    Normalizes so the hub clique S3 is blue, then sets a variable true
    exactly when its ``v``-clique is red.  Raises :class:`InvalidColouring`
    when ``c`` fails the flavour's predicate or a variable clique is not
    monochromatic.
    """
    if flavour not in ("mc", "dpm") or gadget.flavour != flavour:
        raise ValueError("gadget flavour mismatch")
    g = gadget.graph
    ok = is_valid(g, c) if flavour == "mc" else is_perfect_extendable(g, c)
    if not ok:
        raise InvalidColouring("colouring fails the flavour's validity predicate")
    nx = inst.variable_count
    var_size = _MC_VAR if flavour == "mc" else _DPM_VAR
    half = 4 if flavour == "mc" else 7
    s3_vertex = var_size * nx  # first clause vertex
    if c.colour_of(s3_vertex) is not None and c.colour_of(s3_vertex).value == "R":
        c = c.swap()
    assignment = []
    for i in range(nx):
        b = var_size * i
        colours = {c.colour_of(v) for v in range(b, b + half)}
        if len(colours) != 1:
            raise InvalidColouring(f"variable clique {i + 1} is not monochromatic")
        assignment.append(colours.pop().value == "R")
    result = tuple(assignment)
    assert satisfies_one_in_three(inst, result)
    return result


# -- edge replacement -----------------------------------------------------------------


def k22_replace(g: Graph, u: int, v: int) -> Graph:
    """Replace the edge uv by a 4-cycle through two new vertices.

    The edge is removed; new vertices w1, w2 are adjacent to both u and v.
    Preserves the matching-cut answer.
    """
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise NotAnEdge(f"({u}, {v}) is not an edge")
    a, b = min(u, v), max(u, v)
    w1, w2 = g.n, g.n + 1
    edges = [e for e in g.edges() if e != (a, b)]
    edges.extend([(a, w1), (a, w2), (b, w1), (b, w2)])
    return Graph(g.n + 2, sorted(edges))


def k22_replace_exhaustive(g: Graph) -> Graph:
    """Replace edges until no two adjacent vertices both have degree at least 3.

    Always replaces the smallest eligible edge first; each replacement keeps
    the matching-cut answer, and the process terminates because new vertices
    have degree 2 and replaced endpoints never gain degree.
    """
    while True:
        eligible = next(
            (e for e in g.edges() if g.degree(e[0]) >= 3 and g.degree(e[1]) >= 3),
            None,
        )
        if eligible is None:
            return g
        g = k22_replace(g, *eligible)


# -- freeness verification --------------------------------------------------------------


@dataclass(frozen=True)
class FreenessVerdict:
    pattern: str
    expected: str  # "absent" or "present"
    holds: bool


@dataclass(frozen=True)
class FreenessReport:
    flavour: str
    verdicts: tuple[FreenessVerdict, ...]

    @property
    def all_hold(self) -> bool:
        return all(v.holds for v in self.verdicts)


_FREENESS_MAX_VARIABLES = 6


def verify_freeness_claims(gadget: GadgetGraph, flavour: str) -> FreenessReport:
    """Check the hereditary guarantees of a built gadget.

    Matching-cut gadgets contain no induced 19-vertex path and no four
    independent 5-vertex paths, but do contain an induced 18-vertex path;
    disconnected-perfect-matching gadgets contain no induced 23-vertex path
    and no four independent 7-vertex paths.  Guarded to instances with at
    most 6 variables (pattern search cost).
    """
    if flavour not in ("mc", "dpm") or gadget.flavour != flavour:
        raise ValueError("gadget flavour mismatch")
    if gadget.instance.variable_count > _FREENESS_MAX_VARIABLES:
        raise TooLarge(
            f"freeness verification is limited to {_FREENESS_MAX_VARIABLES} variables"
        )
    g = gadget.graph
    if flavour == "mc":
        specs = [
            ("P19", path_graph(19), "absent"),
            ("4P5", disjoint_union(*(path_graph(5) for _ in range(4))), "absent"),
            ("P18", path_graph(18), "present"),
        ]
    else:
        specs = [
            ("P23", path_graph(23), "absent"),
            ("4P7", disjoint_union(*(path_graph(7) for _ in range(4))), "absent"),
        ]
    verdicts = []
    for name, pattern, expected in specs:
        found = contains_induced(g, pattern) is not None
        holds = found if expected == "present" else not found
        verdicts.append(FreenessVerdict(pattern=name, expected=expected, holds=holds))
    return FreenessReport(flavour=flavour, verdicts=tuple(verdicts))
