"""Command-line front door: ``matchcut solve | gen | check``.

* ``solve`` decides one of the three problems on a graph file and prints a
  structured report (``key: value`` lines in a stable order) with an optional
  witness.
* ``gen`` builds a hardness gadget from a 1-in-3 instance file, or applies
  the exhaustive degree-lowering edge replacement to a graph file.
* ``check`` evaluates structural properties of a graph (optionally with a
  colouring file) and exits zero only when all of them hold.

Exit codes: 0 success / answer yes / all properties hold; 1 answer no or a
failing property; 2 usage or parse error; 3 branch budget exhausted.  The
default branch budget can be set with the ``MATCHCUT_BRANCH_BUDGET``
environment variable.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from typing import Callable, Sequence

from .colouring import (
    RedBlueColouring,
    cut_edges,
    format_colouring,
    is_perfect,
    is_perfect_extendable,
    is_valid,
    parse_colouring,
)
from .errors import MatchcutError, NotApplicable
from .graph_core import (
    Graph,
    contains_induced,
    format_graph,
    is_connected,
    parse_graph,
    parse_pattern_token,
    radius,
)
from .propagation import trace_to
from .reductions import (
    build_gadget,
    format_roles,
    k22_replace_exhaustive,
    parse_instance,
)
from .solvers import (
    DEFAULT_BRANCH_BUDGET,
    Answer,
    Problem,
    SolveResult,
    base_solver_for,
    exact_dpm,
    exact_mc,
    exact_pmc,
    oracle_dpm,
    oracle_mc,
    oracle_pmc,
    pmc_bounded_domination,
    pmc_h_plus_p4,
    pmc_p6free,
    pmc_radius2,
)

BUDGET_ENV_VAR = "MATCHCUT_BRANCH_BUDGET"

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    """A bad flag combination or malformed argument value."""


def _read_text(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def _write_text(path: str, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _load_graph(path: str) -> Graph:
    return parse_graph(_read_text(path))


def _default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV_VAR)
    if raw is None:
        return DEFAULT_BRANCH_BUDGET
    try:
        value = int(raw)
        if value < 1:
            raise ValueError
    except ValueError:
        raise UsageError(
            f"{BUDGET_ENV_VAR} must be a positive integer, got {raw!r}"
        ) from None
    return value


# -- solve -----------------------------------------------------------------------

_PMC_ONLY_METHODS = ("radius2", "p6free", "domination", "hplusp4")

#: The auto chain for pmc; earlier entries fall through on NotApplicable.
_AUTO_PMC_CHAIN = ("radius2", "p6free", "domination:6", "exact")


def _method_runner(
    problem: Problem, name: str, budget: int
) -> Callable[[Graph], SolveResult]:
    """Resolve a method name to a single-argument solver callable."""
    if name == "oracle":
        return {Problem.MC: oracle_mc, Problem.DPM: oracle_dpm, Problem.PMC: oracle_pmc}[
            problem
        ]
    if name == "exact":
        fn = {Problem.MC: exact_mc, Problem.DPM: exact_dpm, Problem.PMC: exact_pmc}[
            problem
        ]
        return lambda g: fn(g, budget)
    base = name.split(":", 1)[0]
    if base in _PMC_ONLY_METHODS and problem is not Problem.PMC:
        raise UsageError(f"method {name} applies to problem pmc only")
    if name == "radius2":
        return pmc_radius2
    if name == "p6free":
        return pmc_p6free
    if base == "domination":
        try:
            size = int(name.split(":", 1)[1])
            if size < 1:
                raise ValueError
        except (IndexError, ValueError):
            raise UsageError(
                "method domination:<size> needs a positive integer size"
            ) from None
        return lambda g: pmc_bounded_domination(g, size)
    if base == "hplusp4":
        try:
            token = name.split(":", 1)[1]
        except IndexError:
            raise UsageError("method hplusp4:<pattern> needs a pattern name") from None
        h = parse_pattern_token(token)
        solver_base = base_solver_for(h)
        return lambda g: pmc_h_plus_p4(g, h, solver_base)
    raise UsageError(f"unknown method: {name}")


def cmd_solve(args: argparse.Namespace) -> int:
    budget = args.budget if args.budget is not None else _default_budget()
    if budget < 1:
        raise UsageError("--budget must be a positive integer")
    problem = Problem(args.problem)
    g = _load_graph(args.graph)

    if args.method == "auto":
        chain = _AUTO_PMC_CHAIN if problem is Problem.PMC else ("exact",)
    else:
        chain = (args.method,)

    trace_lines: list[str] = []
    tried: list[str] = []
    result: SolveResult | None = None
    started = time.perf_counter()
    with trace_to(trace_lines.append) if args.trace else _null_context():
        for name in chain:
            runner = _method_runner(problem, name, budget)
            try:
                result = runner(g)
            except NotApplicable as exc:
                if args.method != "auto":
                    raise UsageError(f"method {name} not applicable: {exc}") from None
                tried.append(f"tried: {name} not-applicable")
                continue
            tried.append(f"tried: {name} answered")
            break
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    assert result is not None  # the chain always ends in a total method

    lines: list[str] = [f"trace: {t}" for t in trace_lines]
    lines += [
        f"problem: {problem.value}",
        f"graph: {args.graph}",
        f"vertices: {g.n}",
        f"edges: {g.m}",
        f"method: {args.method}",
    ]
    lines += tried
    lines += [
        f"answer: {result.answer.value}",
        f"answered-by: {result.method}",
        f"branches: {result.stats.branches}",
        f"firings: {result.stats.firings}",
        f"time-ms: {elapsed_ms:.3f}",
    ]
    if result.colouring is not None:
        col = result.colouring
        lines.append(f"colouring: {col.letters()}")
        lines += [f"cut-edge: {u} {v}" for u, v in cut_edges(g, col)]
        if result.matching is not None:
            lines += [f"matching-edge: {u} {v}" for u, v in sorted(result.matching)]
        if args.witness_out:
            _write_text(args.witness_out, format_colouring(col))
            lines.append(f"witness-file: {args.witness_out}")
    _emit(lines)
    if result.answer is Answer.YES:
        return EXIT_YES
    if result.answer is Answer.BUDGET_EXHAUSTED:
        return EXIT_BUDGET
    return EXIT_NO


# -- gen -------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    if args.reduction is not None:
        inst = parse_instance(_read_text(args.input))
        gadget = build_gadget(inst, {"mc19": "mc", "dpm23": "dpm"}[args.reduction])
        prefix = args.out_prefix or f"{os.path.splitext(args.input)[0]}.{args.reduction}"
        graph_file = f"{prefix}.graph"
        roles_file = f"{prefix}.roles"
        _write_text(graph_file, format_graph(gadget.graph))
        _write_text(roles_file, format_roles(gadget))
        _emit(
            [
                f"reduction: {args.reduction}",
                f"instance: {args.input}",
                f"variables: {inst.variable_count}",
                f"clauses: {len(inst.clauses)}",
                f"vertices: {gadget.graph.n}",
                f"edges: {gadget.graph.m}",
                f"graph-file: {graph_file}",
                f"roles-file: {roles_file}",
            ]
        )
        return EXIT_YES
    g = _load_graph(args.input)
    out = k22_replace_exhaustive(g)
    out_file = args.out or f"{os.path.splitext(args.input)[0]}.k22.graph"
    _write_text(out_file, format_graph(out))
    _emit(
        [
            "transform: k22-exhaustive",
            f"input: {args.input}",
            f"vertices-before: {g.n}",
            f"edges-before: {g.m}",
            f"replacements: {(out.n - g.n) // 2}",
            f"vertices: {out.n}",
            f"edges: {out.m}",
            f"graph-file: {out_file}",
        ]
    )
    return EXIT_YES


# -- check -----------------------------------------------------------------------

_COLOURING_PROPERTIES = ("perfect", "valid", "extendable")


def _eval_property(prop: str, g: Graph, col: RedBlueColouring | None) -> bool:
    if prop in _COLOURING_PROPERTIES:
        if col is None:
            raise UsageError(f"property {prop} needs --colouring")
        if prop == "perfect":
            return is_perfect(g, col)
        if prop == "valid":
            return is_valid(g, col)
        return is_perfect_extendable(g, col)
    if prop == "connected":
        return is_connected(g)
    if prop.startswith("radius:"):
        try:
            k = int(prop.split(":", 1)[1])
            if k < 0:
                raise ValueError
        except ValueError:
            raise UsageError("property radius:<k> needs a nonnegative integer") from None
        if not is_connected(g):
            return False
        return radius(g) <= k
    if prop.startswith("free:"):
        pattern = parse_pattern_token(prop.split(":", 1)[1])
        return contains_induced(g, pattern) is None
    raise UsageError(f"unknown property: {prop}")


def cmd_check(args: argparse.Namespace) -> int:
    g = _load_graph(args.graph)
    col: RedBlueColouring | None = None
    lines = [f"graph: {args.graph}", f"vertices: {g.n}", f"edges: {g.m}"]
    if args.colouring:
        col = parse_colouring(_read_text(args.colouring), g.n)
        lines.append(f"colouring-file: {args.colouring}")
    verdicts = []
    for prop in args.properties:
        holds = _eval_property(prop, g, col)
        verdicts.append(holds)
        lines.append(f"property: {prop} {'holds' if holds else 'fails'}")
    lines.append(f"result: {'all-hold' if all(verdicts) else 'some-fail'}")
    _emit(lines)
    return EXIT_YES if all(verdicts) else EXIT_NO


# -- plumbing --------------------------------------------------------------------


class _null_context:
    def __enter__(self) -> None:
        return None

    def __exit__(self, *exc: object) -> bool:
        return False


def _emit(lines: Sequence[str]) -> None:
    sys.stdout.write("\n".join(lines) + "\n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="matchcut",
        description="Decide matching-cut problems, generate hardness gadgets, "
        "and check structural graph properties.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="decide mc, dpm or pmc on a graph file")
    p_solve.add_argument("--problem", required=True, choices=["mc", "dpm", "pmc"])
    p_solve.add_argument(
        "--method",
        default="auto",
        help="auto | oracle | exact | radius2 | p6free | domination:<size> "
        "| hplusp4:<pattern>  (default: auto)",
    )
    p_solve.add_argument(
        "--budget",
        type=int,
        default=None,
        help=f"branch budget for the exact solvers (default: "
        f"${BUDGET_ENV_VAR} or {DEFAULT_BRANCH_BUDGET})",
    )
    p_solve.add_argument(
        "--trace",
        action="store_true",
        help="print one line per propagation-rule firing",
    )
    p_solve.add_argument(
        "--witness-out",
        metavar="FILE",
        help="write the witness colouring to FILE (answer yes only)",
    )
    p_solve.add_argument("graph", help="graph file ('n m' header plus edge lines)")

    p_gen = sub.add_parser(
        "gen", help="generate a hardness gadget or apply the edge replacement"
    )
    mode = p_gen.add_mutually_exclusive_group(required=True)
    mode.add_argument(
        "--reduction",
        choices=["mc19", "dpm23"],
        help="build this gadget from a 1-in-3 instance file",
    )
    mode.add_argument(
        "--k22-exhaustive",
        action="store_true",
        help="replace edges until no two adjacent vertices both have degree >= 3",
    )
    p_gen.add_argument(
        "--out-prefix",
        metavar="PREFIX",
        help="write PREFIX.graph and PREFIX.roles (reduction mode)",
    )
    p_gen.add_argument(
        "--out", metavar="FILE", help="output graph file (k22 mode)"
    )
    p_gen.add_argument("input", help="instance file (reduction) or graph file (k22)")

    p_check = sub.add_parser("check", help="evaluate structural properties")
    p_check.add_argument(
        "--property",
        dest="properties",
        action="append",
        required=True,
        metavar="PROP",
        help="perfect | valid | extendable | connected | radius:<k> | "
        "free:<pattern>; repeatable",
    )
    p_check.add_argument(
        "--colouring", metavar="FILE", help="colouring file ('<id> R|B' lines)"
    )
    p_check.add_argument("graph", help="graph file")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"solve": cmd_solve, "gen": cmd_gen, "check": cmd_check}[args.command]
    try:
        return handler(args)
    except (UsageError, MatchcutError) as exc:
        detail = f" (line {exc.line})" if getattr(exc, "line", None) else ""
        sys.stderr.write(f"error: {exc}{detail}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
