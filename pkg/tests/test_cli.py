"""End-to-end tests of the command-line interface (in-process via ``main``)."""

import subprocess
import sys

import pytest

from matchcut.cli import main
from matchcut.graph_core import format_graph, parse_graph
from matchcut.reductions import build_mc_gadget, parse_instance

from helpers import random_connected_graph


def write_graph(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


@pytest.fixture()
def c4_file(tmp_path):
    return write_graph(tmp_path, "c4.graph", "4 4\n0 1\n1 2\n2 3\n0 3\n")


@pytest.fixture()
def p7_file(tmp_path):
    edges = "\n".join(f"{i} {i + 1}" for i in range(6))
    return write_graph(tmp_path, "p7.graph", f"7 6\n{edges}\n")


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out.splitlines(), captured.err


# -- solve -------------------------------------------------------------------------


def test_solve_pmc_auto_on_c4(capsys, c4_file):
    code, out, err = run(capsys, ["solve", "--problem", "pmc", c4_file])
    assert code == 0 and err == ""
    assert out == [
        "problem: pmc",
        f"graph: {c4_file}",
        "vertices: 4",
        "edges: 4",
        "method: auto",
        "tried: radius2 answered",
        "answer: yes",
        "answered-by: radius2",
        "branches: 2",
        "firings: 2",
        out[10],  # time-ms line, value varies
        "colouring: RRBB",
        "cut-edge: 0 3",
        "cut-edge: 1 2",
    ]
    assert out[10].startswith("time-ms: ")


def test_solve_auto_records_fallback_chain(capsys, p7_file):
    code, out, _ = run(capsys, ["solve", "--problem", "pmc", p7_file])
    assert code == 1
    assert "tried: radius2 not-applicable" in out
    assert "tried: p6free not-applicable" in out
    assert "tried: domination:6 answered" in out
    assert "answer: no" in out
    assert "answered-by: domination:6" in out


def test_solve_mc_and_dpm(capsys, tmp_path):
    p3 = write_graph(tmp_path, "p3.graph", "3 2\n0 1\n1 2\n")
    code, out, _ = run(capsys, ["solve", "--problem", "mc", p3])
    assert code == 0
    assert "answer: yes" in out and "answered-by: exact" in out

    k4 = write_graph(tmp_path, "k4.graph", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    code, out, _ = run(capsys, ["solve", "--problem", "mc", k4])
    assert code == 1
    assert "answer: no" in out

    c6 = write_graph(tmp_path, "c6.graph", "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n")
    code, out, _ = run(capsys, ["solve", "--problem", "dpm", c6])
    assert code == 0
    matching = [line for line in out if line.startswith("matching-edge: ")]
    assert len(matching) == 3


def test_solve_witness_round_trips_through_check(capsys, c4_file, tmp_path):
    witness = str(tmp_path / "c4.colouring")
    code, out, _ = run(
        capsys,
        [
            "solve",
            "--problem",
            "pmc",
            "--method",
            "radius2",
            "--witness-out",
            witness,
            c4_file,
        ],
    )
    assert code == 0
    assert f"witness-file: {witness}" in out
    code, out, _ = run(
        capsys,
        ["check", "--property", "perfect", "--colouring", witness, c4_file],
    )
    assert code == 0
    assert "property: perfect holds" in out
    assert "result: all-hold" in out


def test_solve_trace_lines_come_first(capsys, c4_file):
    code, out, _ = run(
        capsys, ["solve", "--problem", "pmc", "--method", "radius2", "--trace", c4_file]
    )
    assert code == 0
    assert out[0] == "trace: R2(i) at 1: 1->X"
    assert out[1] == "trace: R2(ii) at 2: 2->T 1->S"
    assert out[2] == "problem: pmc"


def test_solve_budget_flag_and_env(capsys, tmp_path, monkeypatch):
    import random

    g = random_connected_graph(random.Random(99), 14, 18)
    path = write_graph(tmp_path, "hard.graph", format_graph(g))
    code, out, _ = run(
        capsys,
        ["solve", "--problem", "pmc", "--method", "exact", "--budget", "1", path],
    )
    assert code == 3
    assert "answer: budget-exhausted" in out

    monkeypatch.setenv("MATCHCUT_BRANCH_BUDGET", "1")
    code, out, _ = run(capsys, ["solve", "--problem", "pmc", "--method", "exact", path])
    assert code == 3

    monkeypatch.setenv("MATCHCUT_BRANCH_BUDGET", "zero")
    code, _, err = run(capsys, ["solve", "--problem", "pmc", "--method", "exact", path])
    assert code == 2
    assert err.startswith("error: MATCHCUT_BRANCH_BUDGET")


@pytest.mark.parametrize(
    "argv_tail, fragment",
    [
        pytest.param(["--method", "nonsense"], "unknown method", id="unknown-method"),
        pytest.param(["--method", "domination:0"], "positive integer", id="bad-size"),
        pytest.param(["--method", "hplusp4"], "pattern name", id="missing-pattern"),
        pytest.param(["--budget", "0"], "positive integer", id="bad-budget"),
    ],
)
def test_solve_usage_errors(capsys, c4_file, argv_tail, fragment):
    code, _, err = run(
        capsys, ["solve", "--problem", "pmc", *argv_tail, c4_file]
    )
    assert code == 2
    assert err.startswith("error: ")
    assert fragment in err


def test_pmc_only_methods_rejected_for_other_problems(capsys, c4_file):
    code, _, err = run(
        capsys, ["solve", "--problem", "mc", "--method", "radius2", c4_file]
    )
    assert code == 2
    assert "applies to problem pmc only" in err


def test_non_auto_not_applicable_is_a_usage_error(capsys, p7_file):
    code, _, err = run(
        capsys, ["solve", "--problem", "pmc", "--method", "radius2", p7_file]
    )
    assert code == 2
    assert "not applicable" in err


def test_parse_error_reports_line_number(capsys, tmp_path):
    bad = write_graph(tmp_path, "bad.graph", "3 2\n0 1\n0 9\n")
    code, _, err = run(capsys, ["solve", "--problem", "mc", bad])
    assert code == 2
    assert err.startswith("error: ")
    assert "line 3" in err


def test_missing_file_is_a_usage_error(capsys, tmp_path):
    code, _, err = run(
        capsys, ["solve", "--problem", "mc", str(tmp_path / "absent.graph")]
    )
    assert code == 2
    assert err.startswith("error: cannot read")


# -- gen ---------------------------------------------------------------------------


def test_gen_reduction_writes_graph_and_roles(capsys, tmp_path):
    instance_text = "p 1in3 3 3\n1 2 3\n1 2 3\n1 2 3\n"
    inst_file = tmp_path / "triple.1in3"
    inst_file.write_text(instance_text)
    prefix = str(tmp_path / "triple-mc")
    code, out, _ = run(
        capsys,
        ["gen", "--reduction", "mc19", "--out-prefix", prefix, str(inst_file)],
    )
    assert code == 0
    assert "reduction: mc19" in out
    assert "variables: 3" in out
    assert "clauses: 3" in out
    assert "vertices: 57" in out
    assert "edges: 135" in out
    assert f"graph-file: {prefix}.graph" in out
    assert f"roles-file: {prefix}.roles" in out

    written = parse_graph((tmp_path / "triple-mc.graph").read_text())
    expected = build_mc_gadget(parse_instance(instance_text))
    assert written == expected.graph
    roles = (tmp_path / "triple-mc.roles").read_text().splitlines()
    assert len(roles) == 57
    assert roles[0] == "0 x1:vs"


def test_gen_dpm_reduction_sizes(capsys, tmp_path):
    inst_file = tmp_path / "triple.1in3"
    inst_file.write_text("p 1in3 3 3\n1 2 3\n1 2 3\n1 2 3\n")
    prefix = str(tmp_path / "triple-dpm")
    code, out, _ = run(
        capsys,
        ["gen", "--reduction", "dpm23", "--out-prefix", prefix, str(inst_file)],
    )
    assert code == 0
    assert "vertices: 102" in out
    assert "edges: 405" in out


def test_gen_k22_exhaustive(capsys, tmp_path):
    k4 = write_graph(tmp_path, "k4.graph", "4 6\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n")
    out_file = str(tmp_path / "k4-flat.graph")
    code, out, _ = run(capsys, ["gen", "--k22-exhaustive", "--out", out_file, k4])
    assert code == 0
    assert "transform: k22-exhaustive" in out
    assert "vertices-before: 4" in out
    flattened = parse_graph((tmp_path / "k4-flat.graph").read_text())
    replacements = next(
        int(line.split(": ")[1]) for line in out if line.startswith("replacements")
    )
    assert flattened.n == 4 + 2 * replacements
    assert not any(
        flattened.degree(u) >= 3 and flattened.degree(v) >= 3
        for u, v in flattened.edges()
    )
    # Round trip: the emitted file reparses to an identical graph.
    assert parse_graph(format_graph(flattened)) == flattened


def test_gen_default_output_paths(capsys, tmp_path):
    inst_file = tmp_path / "t.1in3"
    inst_file.write_text("p 1in3 3 3\n1 2 3\n1 2 3\n1 2 3\n")
    code, out, _ = run(capsys, ["gen", "--reduction", "mc19", str(inst_file)])
    assert code == 0
    assert (tmp_path / "t.mc19.graph").exists()
    assert (tmp_path / "t.mc19.roles").exists()


# -- check -------------------------------------------------------------------------


def test_check_multiple_properties(capsys, tmp_path):
    star = write_graph(tmp_path, "star.graph", "6 5\n0 1\n0 2\n0 3\n0 4\n0 5\n")
    code, out, _ = run(
        capsys,
        [
            "check",
            "--property",
            "connected",
            "--property",
            "radius:2",
            "--property",
            "free:P4",
            star,
        ],
    )
    assert code == 0
    assert "property: connected holds" in out
    assert "property: radius:2 holds" in out
    assert "property: free:P4 holds" in out
    assert out[-1] == "result: all-hold"


def test_check_failing_property_exits_one(capsys, c4_file):
    code, out, _ = run(capsys, ["check", "--property", "free:C4", c4_file])
    assert code == 1
    assert "property: free:C4 fails" in out
    assert out[-1] == "result: some-fail"


def test_check_colouring_properties(capsys, c4_file, tmp_path):
    colouring = tmp_path / "c4.colouring"
    colouring.write_text("0 R\n1 R\n2 B\n3 B\n")
    code, out, _ = run(
        capsys,
        [
            "check",
            "--property",
            "valid",
            "--property",
            "perfect",
            "--colouring",
            str(colouring),
            c4_file,
        ],
    )
    assert code == 0
    assert "property: valid holds" in out
    assert "property: perfect holds" in out


def test_check_colouring_property_requires_colouring(capsys, c4_file):
    code, _, err = run(capsys, ["check", "--property", "perfect", c4_file])
    assert code == 2
    assert "needs --colouring" in err


def test_check_unknown_property(capsys, c4_file):
    code, _, err = run(capsys, ["check", "--property", "weird", c4_file])
    assert code == 2
    assert "unknown property" in err


def test_check_bad_pattern_token(capsys, c4_file):
    code, _, err = run(capsys, ["check", "--property", "free:Q9", c4_file])
    assert code == 2
    assert "bad pattern token" in err


# -- entry point --------------------------------------------------------------------


def test_installed_script_runs(tmp_path):
    c4 = tmp_path / "c4.graph"
    c4.write_text("4 4\n0 1\n1 2\n2 3\n0 3\n")
    proc = subprocess.run(
        [sys.executable, "-m", "matchcut.cli", "solve", "--problem", "pmc", str(c4)],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "answer: yes" in proc.stdout
