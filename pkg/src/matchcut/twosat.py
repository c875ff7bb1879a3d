"""Deterministic 2-SAT via the implication graph and Tarjan's SCC algorithm.

Literals are encoded as integers: variable ``v`` has positive literal ``2*v``
and negative literal ``2*v + 1``; negation flips the lowest bit.  A clause is
an ordered pair of literals.  The solver is fully deterministic: nodes are
explored in increasing order, edges in clause order, and the satisfying
assignment is derived from the SCC numbering (for the empty formula this
yields the all-true assignment).
"""

from __future__ import annotations

from dataclasses import dataclass


def lit(var: int, positive: bool = True) -> int:
    """The literal for ``var`` with the given sign."""
    return 2 * var + (0 if positive else 1)


def neg(literal: int) -> int:
    return literal ^ 1


@dataclass(frozen=True)
class TwoSatFormula:
    """A conjunction of two-literal clauses over ``num_vars`` variables."""

    num_vars: int
    clauses: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for a, b in self.clauses:
            if not (0 <= a < 2 * self.num_vars and 0 <= b < 2 * self.num_vars):
                raise ValueError(f"clause ({a}, {b}) has out-of-range literals")


def solve_2sat(formula: TwoSatFormula) -> tuple[bool, ...] | None:
    """A satisfying assignment (tuple of booleans, one per variable) or ``None``."""
    n_nodes = 2 * formula.num_vars
    adj: list[list[int]] = [[] for _ in range(n_nodes)]
    for a, b in formula.clauses:
        adj[neg(a)].append(b)
        adj[neg(b)].append(a)

    comp = _tarjan_scc(n_nodes, adj)
    assignment = []
    for v in range(formula.num_vars):
        if comp[2 * v] == comp[2 * v + 1]:
            return None
        assignment.append(comp[2 * v] < comp[2 * v + 1])
    return tuple(assignment)


def _tarjan_scc(n: int, adj: list[list[int]]) -> list[int]:
    """Component id per node; ids increase in reverse topological order."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    comp_count = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # Iterative DFS; each frame is (node, iterator position).
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recursed = False
            for i in range(pi, len(adj[v])):
                w = adj[v][i]
                if index[w] == -1:
                    work.append((v, i + 1))
                    work.append((w, 0))
                    recursed = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if recursed:
                continue
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = comp_count
                    if w == v:
                        break
                comp_count += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comp
