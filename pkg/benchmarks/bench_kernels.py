#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python mirrors.

Each hot kernel of :mod:`matchcut` exists twice — a Cython extension and a
pure Python fallback with identical semantics.  This script times both
implementations on representative workloads and prints a table, so the
cost of running without the extension is documented rather than guessed.

Run from the repository root after building the extension in place::

    python3 setup.py build_ext --inplace
    python3 benchmarks/bench_kernels.py

Options:
    --quick     shrink the workloads (useful for smoke-testing the script)
"""

from __future__ import annotations

import argparse
import random
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from matchcut import Graph, build_mc_gadget, parse_instance, path_graph
from matchcut._accel import _pure

try:
    from matchcut._accel import _core
except ImportError:  # pragma: no cover - depends on the build environment
    _core = None

from matchcut.graph_core import _search_plan
from matchcut.propagation import (
    FourTuple,
    StartingPair,
    init_from_starting_pair,
    run_rules_raw,
)


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


def timed(fn, *args):
    t0 = time.perf_counter()
    out = fn(*args)
    return time.perf_counter() - t0, out


class Table:
    def __init__(self) -> None:
        self.rows: list[tuple[str, float, float | None]] = []

    def add(self, name: str, pure_s: float, compiled_s: float | None) -> None:
        self.rows.append((name, pure_s, compiled_s))

    def render(self) -> str:
        header = f"{'workload':<46} {'pure':>10} {'compiled':>10} {'speedup':>9}"
        lines = [header, "-" * len(header)]
        for name, p, c in self.rows:
            if c is None:
                lines.append(f"{name:<46} {p:>9.3f}s {'-':>10} {'-':>9}")
            else:
                lines.append(f"{name:<46} {p:>9.3f}s {c:>9.3f}s {p / c:>8.1f}x")
        return "\n".join(lines)


def bench_scan(table: Table, quick: bool) -> None:
    rng = random.Random(20240814)
    n = 16 if quick else 18
    g = random_connected_graph(rng, n, 0.22)
    adj = list(g.adjacency_masks())
    for level, label in ((0, "valid"), (1, "perfect")):
        name = f"scan_colourings {label} (n={n}, full 2^{n - 1} scan)"
        p, rp = timed(_pure.scan_colourings, n, adj, level, 0)
        if _core is not None:
            c, rc = timed(_core.scan_colourings, n, adj, level, 0)
            assert rp == rc, name
        else:
            c = None
        table.add(name, p, c)


def bench_canon(table: Table, quick: bool) -> None:
    rng = random.Random(7)
    count = 400 if quick else 4000
    batch = [random_connected_graph(rng, 9, 0.3) for _ in range(count)]
    inputs = [(g.n, list(g.adjacency_masks())) for g in batch]

    def run(mod):
        return [mod.canon_code(n, adj) for n, adj in inputs]

    name = f"canon_code ({count} random graphs, n=9)"
    p, rp = timed(run, _pure)
    if _core is not None:
        c, rc = timed(run, _core)
        assert rp == rc, name
    else:
        c = None
    table.add(name, p, c)


def bench_induced(table: Table, quick: bool) -> None:
    rng = random.Random(99)
    count = 40 if quick else 150
    hosts = [random_connected_graph(rng, 13, 0.18) for _ in range(count)]
    pattern = path_graph(6)
    order, constraints = _search_plan(pattern)
    padj = list(pattern.adjacency_masks())

    def run(mod):
        hits = 0
        for h in hosts:
            res = mod.induced_search(
                h.n, list(h.adjacency_masks()), pattern.n, padj, order, constraints, False
            )
            hits += res is not None
        return hits

    name = f"induced_search P6 ({count} hosts, n=13)"
    p, rp = timed(run, _pure)
    if _core is not None:
        c, rc = timed(run, _core)
        assert rp == rc, name
    else:
        c = None
    table.add(name, p, c)


def bench_path_union(table: Table, quick: bool) -> None:
    inst = parse_instance("p 1in3 3 3\n1 2 3\n1 2 3\n1 2 3\n")
    gadget = build_mc_gadget(inst)
    g = gadget.graph
    adj = list(g.adjacency_masks())
    workloads = [("P19 absence", [19]), ("4P5 absence", [5, 5, 5, 5])]
    if quick:
        workloads = [("P19 absence", [19])]
    for label, lengths in workloads:
        name = f"path_union_search {label} (57-vertex gadget)"
        p, rp = timed(_pure.path_union_search, g.n, adj, lengths)
        if _core is not None:
            c, rc = timed(_core.path_union_search, g.n, adj, list(lengths))
            assert rp == bool(rc), name
        else:
            c = None
        table.add(name, p, c)


def bench_rules(table: Table, quick: bool) -> None:
    rng = random.Random(5)
    count = 30 if quick else 120
    graphs = [random_connected_graph(rng, 9, 0.25) for _ in range(count)]
    jobs = []
    for g in graphs:
        masks = list(g.adjacency_masks())
        for u, v in g.edges():
            t = init_from_starting_pair(g, StartingPair.of([u], [v]))
            jobs.append((masks, g.n, t))

    def run_pure():
        total = 0
        for masks, n, t in jobs:
            status = t.to_statuses(n)
            refused, _, _, fired = run_rules_raw(masks, n, status, 11, None)
            total += fired + refused
        return total

    def run_compiled():
        total = 0
        for masks, n, t in jobs:
            status = t.to_statuses(n)
            refused, _, _, fired = _core.run_rules(masks, n, status, 11)
            total += fired + refused
        return total

    name = f"rule engine R1-R11 ({len(jobs)} starting pairs, n=9)"
    p, rp = timed(run_pure)
    if _core is not None:
        c, rc = timed(run_compiled)
        assert rp == rc, name
    else:
        c = None
    table.add(name, p, c)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--quick", action="store_true", help="shrink the workloads")
    args = ap.parse_args()

    print(f"compiled extension available: {_core is not None}")
    if _core is None:
        print("(build it with `python3 setup.py build_ext --inplace` for the comparison)")
    table = Table()
    bench_scan(table, args.quick)
    bench_canon(table, args.quick)
    bench_induced(table, args.quick)
    bench_path_union(table, args.quick)
    bench_rules(table, args.quick)
    print(table.render())
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
