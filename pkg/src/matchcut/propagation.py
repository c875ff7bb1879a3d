"""Red-blue propagation over four-tuples ``(S, T, X, Y)``.

A four-tuple partitions a subset of the vertices into a red side ``X`` (with
a matched core ``S``) and a blue side ``Y`` (with matched core ``T``); the
rest of the vertices, ``Z``, are undecided.  The intended semantics: a
*tuple-compatible perfect colouring* colours ``X`` red and ``Y`` blue, the
unique opposite-coloured neighbour of an ``S``-vertex lies in ``T`` (and
symmetrically), and the unique opposite-coloured neighbour of a vertex of
``X - S`` or ``Y - T`` lies in ``Z``.

The engine applies eleven deterministic rules.  Rules R1-R7 preserve the set
of tuple-compatible perfect colourings exactly; rules R8-R11 additionally
preserve the *monochromatic* ones (those colouring every component of
``G[Z]`` a single colour).  Refusals can come from R1, R4, R5 or R8 only.

Determinism: after every firing the engine rescans from R1; the
lowest-numbered applicable rule fires first, on the lowest trigger vertex,
with sub-cases checked in their stated order and witnesses chosen as the
lowest eligible vertex.  The engine never mutates its input tuple and always
terminates within ``2 * n`` firings.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import BadStartingPair
from .graph_core import Graph, component_masks, iter_mask

# Vertex statuses.
Z_ = 0  # undecided
XS_ = 1  # in X but not in S
S_ = 2  # in S (hence in X)
YT_ = 3  # in Y but not in T
T_ = 4  # in T (hence in Y)

#: Rules that can refuse.
REFUSAL_RULES = ("R1", "R4", "R5", "R8")


@dataclass(frozen=True)
class FourTuple:
    """The tuple ``(S, T, X, Y)`` with ``S ⊆ X``, ``T ⊆ Y`` and ``X ∩ Y = ∅``."""

    s: frozenset[int]
    t: frozenset[int]
    x: frozenset[int]
    y: frozenset[int]

    def __post_init__(self) -> None:
        if not self.s <= self.x:
            raise ValueError("S must be a subset of X")
        if not self.t <= self.y:
            raise ValueError("T must be a subset of Y")
        if self.x & self.y:
            raise ValueError("X and Y must be disjoint")

    def z(self, g: Graph) -> frozenset[int]:
        return frozenset(g.vertices()) - self.x - self.y

    def validate(self, g: Graph) -> bool:
        """Check the inter-set invariants that every engine tuple satisfies."""
        if max(self.x | self.y, default=-1) >= g.n:
            return False
        if len(self.s) != len(self.t):
            return False
        for v in self.s:
            if not any(w in self.t for w in g.neighbours(v)):
                return False
        for v in self.t:
            if not any(w in self.s for w in g.neighbours(v)):
                return False
        return True

    def to_statuses(self, n: int) -> bytearray:
        status = bytearray(n)
        for v in self.x:
            status[v] = S_ if v in self.s else XS_
        for v in self.y:
            status[v] = T_ if v in self.t else YT_
        return status

    @staticmethod
    def from_statuses(status: bytes | bytearray) -> "FourTuple":
        s = frozenset(v for v, st in enumerate(status) if st == S_)
        t = frozenset(v for v, st in enumerate(status) if st == T_)
        x = frozenset(v for v, st in enumerate(status) if st in (XS_, S_))
        y = frozenset(v for v, st in enumerate(status) if st in (YT_, T_))
        return FourTuple(s=s, t=t, x=x, y=y)


@dataclass(frozen=True)
class StartingPair:
    """Disjoint seed sets; the red side ``S'`` and the blue side ``T'``."""

    s_prime: frozenset[int]
    t_prime: frozenset[int]

    @staticmethod
    def of(s_prime, t_prime) -> "StartingPair":
        return StartingPair(frozenset(s_prime), frozenset(t_prime))


def starting_pair_core(
    g: Graph, pair: StartingPair
) -> tuple[frozenset[int], frozenset[int]]:
    """The matched sub-pair: vertices of each side with a neighbour in the other."""
    s_core = frozenset(
        v for v in pair.s_prime if any(w in pair.t_prime for w in g.neighbours(v))
    )
    t_core = frozenset(
        v for v in pair.t_prime if any(w in pair.s_prime for w in g.neighbours(v))
    )
    return s_core, t_core


def init_from_starting_pair(g: Graph, pair: StartingPair) -> FourTuple:
    """Build the initial tuple ``(S'', T'', S', T')`` from a starting pair.

    Raises :class:`BadStartingPair` unless the sides are disjoint, in range,
    every vertex of one side has at most one neighbour in the other, and at
    least one cross adjacency exists.
    """
    sp, tp = pair.s_prime, pair.t_prime
    for v in sp | tp:
        if not (0 <= v < g.n):
            raise BadStartingPair(f"vertex {v} out of range")
    if sp & tp:
        raise BadStartingPair("the two sides intersect")
    for v in sorted(sp):
        if sum(1 for w in g.neighbours(v) if w in tp) > 1:
            raise BadStartingPair(
                f"vertex {v} has more than one neighbour in the other side"
            )
    for v in sorted(tp):
        if sum(1 for w in g.neighbours(v) if w in sp) > 1:
            raise BadStartingPair(
                f"vertex {v} has more than one neighbour in the other side"
            )
    s_core, t_core = starting_pair_core(g, pair)
    if not s_core:
        raise BadStartingPair("no adjacency between the two sides")
    return FourTuple(s=s_core, t=t_core, x=sp, y=tp)


@dataclass(frozen=True)
class RuleApplication:
    """One firing: the sub-case label, the trigger vertex and the status changes."""

    rule: str
    vertex: int
    changes: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class PropagationOutcome:
    refused: bool
    rule: str | None
    vertices: tuple[int, ...]
    four_tuple: FourTuple
    firings: int
    trace: tuple[RuleApplication, ...] = field(default=())


# -- raw engine ---------------------------------------------------------------


def _side_masks(status: bytearray | bytes) -> tuple[int, int, int, int, int, int, int]:
    """(z, xs, s, yt, t, x, y) bitmasks from the status array."""
    z = xs = s = yt = t = 0
    for v, st in enumerate(status):
        b = 1 << v
        if st == Z_:
            z |= b
        elif st == XS_:
            xs |= b
        elif st == S_:
            s |= b
        elif st == YT_:
            yt |= b
        else:
            t |= b
    return z, xs, s, yt, t, xs | s, yt | t


def _lowest(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _find_action(
    masks: tuple[int, ...] | list[int],
    n: int,
    status: bytearray,
    upto: int,
):
    """The lowest-priority applicable action, or ``None`` at a fixpoint.

    Returns ``("refuse", rule, vertices)`` or ``("fire", label, trigger, changes)``.
    """
    z, xs, s, yt, t, x, y = _side_masks(status)
    xy = x | y

    # R1: an undecided vertex sees both cores, or a core and two of the other
    # side's fringe, or two of each fringe.
    for v in iter_mask(z):
        mv = masks[v]
        adj_s = mv & s
        adj_t = mv & t
        c_xs = (mv & xs).bit_count()
        c_yt = (mv & yt).bit_count()
        if adj_s and adj_t:
            return ("refuse", "R1", (v,))
        if adj_s and c_yt >= 2:
            return ("refuse", "R1", (v,))
        if adj_t and c_xs >= 2:
            return ("refuse", "R1", (v,))
        if c_xs >= 2 and c_yt >= 2:
            return ("refuse", "R1", (v,))
    if upto < 2:
        return None

    # R2: an undecided vertex is pulled onto a side (and into the core when it
    # also touches the opposite side).
    for v in iter_mask(z):
        mv = masks[v]
        if (mv & s) or (mv & xs).bit_count() >= 2:
            wy = mv & y
            if wy:
                w = _lowest(wy)
                return ("fire", "R2(i)", v, ((v, S_), (w, T_)))
            return ("fire", "R2(i)", v, ((v, XS_),))
        if (mv & t) or (mv & yt).bit_count() >= 2:
            wx = mv & x
            if wx:
                w = _lowest(wx)
                return ("fire", "R2(ii)", v, ((v, T_), (w, S_)))
            return ("fire", "R2(ii)", v, ((v, YT_),))
    if upto < 3:
        return None

    # R3: a fringe vertex adjacent to the other side joins the core with its witness.
    for v in range(n):
        st = status[v]
        if st == XS_ and masks[v] & y:
            w = _lowest(masks[v] & y)
            return ("fire", "R3(i)", v, ((v, S_), (w, T_)))
        if st == YT_ and masks[v] & x:
            w = _lowest(masks[v] & x)
            return ("fire", "R3(ii)", v, ((v, T_), (w, S_)))
    if upto < 4:
        return None

    # R4: a side vertex has no neighbour outside its side, or two neighbours
    # on the other side.
    for v in range(n):
        st = status[v]
        if st in (XS_, S_):
            if masks[v] & ~x == 0:
                return ("refuse", "R4", (v,))
            if (masks[v] & y).bit_count() >= 2:
                return ("refuse", "R4", (v,))
        elif st in (YT_, T_):
            if masks[v] & ~y == 0:
                return ("refuse", "R4", (v,))
            if (masks[v] & x).bit_count() >= 2:
                return ("refuse", "R4", (v,))
    if upto < 5:
        return None

    # R5: an undecided vertex with an undecided pendant neighbour.
    for v in iter_mask(z):
        pend = 0
        for w in iter_mask(masks[v] & z):
            if masks[w] == 1 << v:
                pend = 1 << w
                break
        if not pend:
            continue
        w = _lowest(pend)
        adj_x = masks[v] & x
        adj_y = masks[v] & y
        if adj_x and adj_y:
            return ("refuse", "R5", (v, w))
        if adj_x:
            return ("fire", "R5(ii)", v, ((v, S_), (w, T_)))
        if adj_y:
            return ("fire", "R5(iii)", v, ((v, T_), (w, S_)))
    if upto < 6:
        return None

    comps = component_masks(masks, z) if z else []
    comp_of: dict[int, int] = {}
    for cm in comps:
        for v in iter_mask(cm):
            comp_of[v] = cm

    # R6: a 4-cycle component of the undecided area with a one-sided vertex.
    for v in iter_mask(z):
        cm = comp_of[v]
        if cm.bit_count() != 4:
            continue
        if any((masks[w] & cm).bit_count() != 2 for w in iter_mask(cm)):
            continue
        adj_x = masks[v] & x
        adj_y = masks[v] & y
        if adj_x and not adj_y and any(masks[w] & x == 0 for w in iter_mask(cm)):
            return ("fire", "R6(i)", v, ((v, XS_),))
        if adj_y and not adj_x and any(masks[w] & y == 0 for w in iter_mask(cm)):
            return ("fire", "R6(ii)", v, ((v, YT_),))
    if upto < 7:
        return None

    # R7: a vertex dominating its undecided component, which contains another
    # vertex anchored to exactly one decided vertex.
    for v in iter_mask(z):
        cm = comp_of[v]
        if cm & ~(masks[v] | (1 << v)):
            continue
        for w in iter_mask(cm & ~(1 << v)):
            anchors = masks[w] & xy
            if anchors.bit_count() == 1:
                wp = _lowest(anchors)
                if (1 << wp) & x:
                    return ("fire", "R7(i)", v, ((v, YT_),))
                return ("fire", "R7(ii)", v, ((v, XS_),))
        continue
    if upto < 8:
        return None

    # R8: an undecided vertex with no decided neighbour can never be matched
    # in a monochromatic-component colouring.
    for v in iter_mask(z):
        if masks[v] & xy == 0:
            return ("refuse", "R8", (v,))
    if upto < 9:
        return None

    # R9: an undecided vertex anchored to exactly one decided vertex drags its
    # whole component to the opposite side.
    for v in iter_mask(z):
        anchors = masks[v] & xy
        if anchors.bit_count() != 1:
            continue
        cm = comp_of[v]
        nb = 0
        for f in iter_mask(cm):
            nb |= masks[f]
        if anchors & x:
            changes = [(f, T_) for f in iter_mask(cm)]
            changes += [(u, S_) for u in iter_mask(nb & x)]
        else:
            changes = [(f, S_) for f in iter_mask(cm)]
            changes += [(u, T_) for u in iter_mask(nb & y)]
        return ("fire", "R9(i)" if anchors & x else "R9(ii)", v, tuple(changes))
    if upto < 10:
        return None

    # R10: a fringe vertex with two neighbours in one undecided component pulls
    # that component onto its own side.
    for v in range(n):
        st = status[v]
        if st not in (XS_, YT_):
            continue
        zn = masks[v] & z
        if zn.bit_count() < 2:
            continue
        target = 0
        for cm in comps:
            if (zn & cm).bit_count() >= 2:
                target = cm
                break
        if not target:
            continue
        nb = 0
        for f in iter_mask(target):
            nb |= masks[f]
        if st == XS_:
            changes = [(f, S_) for f in iter_mask(target)]
            changes += [(u, T_) for u in iter_mask(nb & yt)]
            return ("fire", "R10(i)", v, tuple(changes))
        changes = [(f, T_) for f in iter_mask(target)]
        changes += [(u, S_) for u in iter_mask(nb & xs)]
        return ("fire", "R10(ii)", v, tuple(changes))
    if upto < 11:
        return None

    # R11: a fringe vertex with exactly one undecided neighbour pushes that
    # neighbour's component to the opposite side.
    for v in range(n):
        st = status[v]
        if st not in (XS_, YT_):
            continue
        zn = masks[v] & z
        if zn.bit_count() != 1:
            continue
        cm = comp_of[_lowest(zn)]
        nb = 0
        for f in iter_mask(cm):
            nb |= masks[f]
        if st == XS_ and masks[v] & y == 0:
            changes = [(f, T_) for f in iter_mask(cm)]
            changes += [(u, S_) for u in iter_mask(nb & xs)]
            return ("fire", "R11(i)", v, tuple(changes))
        if st == YT_ and masks[v] & x == 0:
            changes = [(f, S_) for f in iter_mask(cm)]
            changes += [(u, T_) for u in iter_mask(nb & yt)]
            return ("fire", "R11(ii)", v, tuple(changes))
    return None


def run_rules_raw(
    masks: tuple[int, ...] | list[int],
    n: int,
    status: bytearray,
    upto: int,
    trace: list[RuleApplication] | None = None,
) -> tuple[bool, str | None, tuple[int, ...], int]:
    """Run the rules to refusal or fixpoint, mutating ``status`` in place.

    Returns ``(refused, refusing_rule, refusing_vertices, firings)``.  This is
    the reference engine; the compiled kernel mirrors it bit for bit.
    """
    firings = 0
    while True:
        action = _find_action(masks, n, status, upto)
        if action is None:
            return False, None, (), firings
        if action[0] == "refuse":
            return True, action[1], action[2], firings
        _, label, trigger, changes = action
        for v, new_status in changes:
            status[v] = new_status
        firings += 1
        if firings > 2 * n:
            raise AssertionError("rule engine exceeded its firing bound")
        if trace is not None:
            trace.append(RuleApplication(rule=label, vertex=trigger, changes=changes))


_FINAL_RECORDER: list | None = None


@contextmanager
def record_final_tuples(bucket: list) -> Iterator[None]:
    """Collect every non-refused full-phase outcome into ``bucket`` as ``(g, tuple)``."""
    global _FINAL_RECORDER
    prev = _FINAL_RECORDER
    _FINAL_RECORDER = bucket
    try:
        yield
    finally:
        _FINAL_RECORDER = prev


_TRACE_SINK: Callable[[str], None] | None = None


@contextmanager
def trace_to(sink: Callable[[str], None]) -> Iterator[None]:
    """Send one formatted line per rule firing to ``sink`` while active.

    Forces the reference engine so that firings are observable.
    """
    global _TRACE_SINK
    prev = _TRACE_SINK
    _TRACE_SINK = sink
    try:
        yield
    finally:
        _TRACE_SINK = prev


_STATUS_NAMES = ("Z", "X", "S", "Y", "T")


def format_rule_application(app: RuleApplication) -> str:
    """One-line rendering of a firing: rule, trigger vertex, status moves."""
    moves = " ".join(f"{v}->{_STATUS_NAMES[st]}" for v, st in app.changes)
    return f"{app.rule} at {app.vertex}: {moves}"


def run_rules_dispatch(
    masks: tuple[int, ...] | list[int], n: int, status: bytearray, upto: int
) -> tuple[bool, str | None, tuple[int, ...], int]:
    """Engine dispatch that honours the active trace sink.

    Uses the compiled kernel when available and no sink is active; otherwise
    runs the reference engine and forwards one line per firing to the sink.
    """
    from . import _accel

    if _TRACE_SINK is None:
        if _accel.engine_available(n):
            return _accel.run_rules(masks, n, status, upto)
        return run_rules_raw(masks, n, status, upto, None)
    tr: list[RuleApplication] = []
    result = run_rules_raw(masks, n, status, upto, tr)
    for app in tr:
        _TRACE_SINK(format_rule_application(app))
    return result


def propagate(
    g: Graph, start: FourTuple, *, upto: int = 11, trace: bool = False
) -> PropagationOutcome:
    """Apply rules R1..R``upto`` to a copy of ``start`` until fixpoint or refusal."""
    if upto not in (7, 11) and not 1 <= upto <= 11:
        raise ValueError("upto must be between 1 and 11")
    status = start.to_statuses(g.n)
    if trace:
        tr: list[RuleApplication] = []
        refused, rule, vertices, firings = run_rules_raw(
            g.adjacency_masks(), g.n, status, upto, tr
        )
        if _TRACE_SINK is not None:
            for app in tr:
                _TRACE_SINK(format_rule_application(app))
        trace_out = tuple(tr)
    else:
        refused, rule, vertices, firings = run_rules_dispatch(
            g.adjacency_masks(), g.n, status, upto
        )
        trace_out = ()
    out = PropagationOutcome(
        refused=refused,
        rule=rule,
        vertices=tuple(vertices),
        four_tuple=FourTuple.from_statuses(status),
        firings=firings,
        trace=trace_out,
    )
    if _FINAL_RECORDER is not None and upto >= 8 and not refused:
        _FINAL_RECORDER.append((g, out.four_tuple))
    return out


def apply_rules_r1_r7(g: Graph, t: FourTuple) -> PropagationOutcome:
    """Run the first-phase rules (safe for all perfect extensions) to fixpoint."""
    return propagate(g, t, upto=7)


def apply_rules_r1_r11(g: Graph, t: FourTuple) -> PropagationOutcome:
    """Run the full rule set (safe for monochromatic extensions) to fixpoint."""
    return propagate(g, t, upto=11)


# -- structure validators -------------------------------------------------------


def check_intermediate_structure(g: Graph, t: FourTuple) -> bool:
    """The invariants of every non-refused R1-R7 fixpoint.

    (i)/(ii) core vertices have exactly one neighbour on the other side, and
    it lies in the other core; (iii)/(iv) fringe vertices have no neighbour on
    the other side; (v) undecided vertices have no core neighbours and at most
    one neighbour in each fringe.
    """
    z = t.z(g)
    xs = t.x - t.s
    yt = t.y - t.t
    for v in t.s:
        other = [w for w in g.neighbours(v) if w in t.y]
        if len(other) != 1 or other[0] not in t.t:
            return False
    for v in t.t:
        other = [w for w in g.neighbours(v) if w in t.x]
        if len(other) != 1 or other[0] not in t.s:
            return False
    for v in xs:
        if any(w in t.y for w in g.neighbours(v)):
            return False
    for v in yt:
        if any(w in t.x for w in g.neighbours(v)):
            return False
    for v in z:
        nb = g.neighbours(v)
        if any(w in t.s or w in t.t for w in nb):
            return False
        if sum(1 for w in nb if w in xs) > 1:
            return False
        if sum(1 for w in nb if w in yt) > 1:
            return False
    return True


def check_final_structure(g: Graph, t: FourTuple) -> bool:
    """The invariants of every non-refused R1-R11 fixpoint.

    On top of the intermediate structure: every fringe vertex has at least two
    undecided neighbours, no two of them in the same undecided component, and
    every undecided vertex has exactly one neighbour in each fringe.
    """
    if not check_intermediate_structure(g, t):
        return False
    z = t.z(g)
    xs = t.x - t.s
    yt = t.y - t.t
    z_mask = 0
    for v in z:
        z_mask |= 1 << v
    comps = component_masks(g.adjacency_masks(), z_mask)
    comp_of = {}
    for idx, cm in enumerate(comps):
        for v in iter_mask(cm):
            comp_of[v] = idx
    for v in xs | yt:
        zn = [w for w in g.neighbours(v) if w in z]
        if len(zn) < 2:
            return False
        seen_comps = [comp_of[w] for w in zn]
        if len(set(seen_comps)) != len(seen_comps):
            return False
    for v in z:
        nb = g.neighbours(v)
        if sum(1 for w in nb if w in xs) != 1:
            return False
        if sum(1 for w in nb if w in yt) != 1:
            return False
    return True
