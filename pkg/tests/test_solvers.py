"""Tests for oracles, exact solvers, the monochromatic endgame and the
structured-class solvers."""

import random

import pytest

from matchcut.colouring import RedBlueColouring, is_perfect
from matchcut.errors import (
    DisconnectedInput,
    MalformedTuple,
    NotApplicable,
    NotDominating,
    TooLarge,
)
from matchcut.graph_core import (
    Graph,
    complete_graph,
    contains_induced,
    cycle_graph,
    disjoint_union,
    path_graph,
    star_graph,
)
from matchcut.propagation import (
    FourTuple,
    StartingPair,
    init_from_starting_pair,
    propagate,
    record_final_tuples,
)
from matchcut.solvers import (
    Answer,
    Problem,
    SolveResult,
    SolveStats,
    base_solver_for,
    exact_dpm,
    exact_mc,
    exact_pmc,
    oracle_dpm,
    oracle_mc,
    oracle_pmc,
    pmc_bounded_domination,
    pmc_h_plus_p4,
    pmc_monochromatic_dominating,
    pmc_p6free,
    pmc_radius2,
    solve_mono_from_final,
)

from helpers import (
    catalogue_graphs,
    naive_tuple_mono_exists,
    random_connected_graph,
    respects_tuple,
    undecided_components,
)


# -- sentinel facts ----------------------------------------------------------------


def test_sentinel_graphs():
    p3, c6, k4, k2 = path_graph(3), cycle_graph(6), complete_graph(4), Graph(2, [(0, 1)])
    assert oracle_mc(p3).answer is Answer.YES
    assert oracle_dpm(p3).answer is Answer.NO
    assert oracle_pmc(p3).answer is Answer.NO
    assert oracle_mc(c6).answer is Answer.YES
    assert oracle_dpm(c6).answer is Answer.YES
    assert oracle_pmc(c6).answer is Answer.NO
    assert oracle_mc(k4).answer is Answer.NO
    assert oracle_dpm(k4).answer is Answer.NO
    assert oracle_pmc(k2).answer is Answer.YES


def test_oracle_witnesses_are_deterministic():
    c6 = cycle_graph(6)
    first = oracle_mc(c6)
    assert sorted(first.colouring.blue_vertices()) == [1, 2]
    assert oracle_mc(c6).colouring == first.colouring
    dpm = oracle_dpm(c6)
    assert sorted(dpm.colouring.blue_vertices()) == [1, 2]
    assert dpm.matching == ((0, 1), (2, 3), (4, 5))


def test_oracle_guards():
    disconnected = disjoint_union(Graph(2, [(0, 1)]), Graph(2, [(0, 1)]))
    with pytest.raises(DisconnectedInput):
        oracle_mc(disconnected)
    with pytest.raises(DisconnectedInput):
        exact_pmc(disconnected)
    with pytest.raises(TooLarge):
        oracle_pmc(path_graph(25))


# -- exact solvers against oracles ---------------------------------------------------


def test_exact_agrees_with_oracles_exhaustively(catalogue7):
    for n in range(2, 8):
        for g in catalogue_graphs(catalogue7, n):
            assert exact_mc(g).answer == oracle_mc(g).answer
            assert exact_pmc(g).answer == oracle_pmc(g).answer
            assert exact_dpm(g).answer == oracle_dpm(g).answer


def test_exact_agrees_with_oracles_on_random_graphs():
    rng = random.Random(1729)
    for _ in range(60):
        n = rng.randint(8, 12)
        g = random_connected_graph(rng, n, rng.randint(0, 2 * n))
        assert exact_mc(g).answer == oracle_mc(g).answer
        assert exact_pmc(g).answer == oracle_pmc(g).answer
        assert exact_dpm(g).answer == oracle_dpm(g).answer


def test_exact_budget_exhaustion():
    rng = random.Random(99)
    g = random_connected_graph(rng, 14, 18)
    full = exact_pmc(g)
    assert full.answer is Answer.NO
    hit = exact_pmc(g, budget=1)
    assert hit.answer is Answer.BUDGET_EXHAUSTED
    assert hit.colouring is None
    assert hit.stats.branches > 1


def test_exact_witnesses_validate_and_count_branches():
    g = cycle_graph(4)
    r = exact_pmc(g)
    assert r.answer is Answer.YES
    assert is_perfect(g, r.colouring)
    assert r.stats.branches >= 1


# -- monochromatic endgame ------------------------------------------------------------


def test_solve_mono_matches_brute_force(catalogue6):
    bucket: list = []
    with record_final_tuples(bucket):
        for n in range(2, 7):
            for g in catalogue_graphs(catalogue6, n):
                for a, b in g.edges():
                    for u, v in ((a, b), (b, a)):
                        propagate(
                            g,
                            init_from_starting_pair(g, StartingPair.of([u], [v])),
                            upto=11,
                        )
    assert bucket, "expected some final tuples"
    for g, t in bucket:
        col = solve_mono_from_final(g, t)
        assert (col is not None) == naive_tuple_mono_exists(g, t)
        if col is not None:
            letters = list(col.letters())
            assert is_perfect(g, col)
            assert respects_tuple(g, letters, t)
            for comp in undecided_components(g, t):
                assert len({letters[v] for v in comp}) == 1


def test_solve_mono_rejects_malformed_tuples():
    g = path_graph(4)
    t = FourTuple(
        s=frozenset({0}), t=frozenset({1}), x=frozenset({0}), y=frozenset({1})
    )
    with pytest.raises(MalformedTuple):
        solve_mono_from_final(g, t)


# -- radius two ----------------------------------------------------------------------


def test_radius2_examples():
    assert pmc_radius2(Graph(2, [(0, 1)])).answer is Answer.YES
    assert pmc_radius2(Graph(1, [])).answer is Answer.NO
    assert pmc_radius2(star_graph(5)).answer is Answer.NO
    four = pmc_radius2(cycle_graph(4))
    assert four.answer is Answer.YES
    assert four.colouring.letters() == "RRBB"
    assert four.method == "radius2"
    with pytest.raises(NotApplicable):
        pmc_radius2(path_graph(7))


def test_radius2_agrees_with_oracle(catalogue7):
    from matchcut.graph_core import radius

    applicable = 0
    for n in range(2, 8):
        for g in catalogue_graphs(catalogue7, n):
            if radius(g) > 2:
                continue
            applicable += 1
            assert pmc_radius2(g).answer == oracle_pmc(g).answer
    assert applicable > 500


# -- no induced 6-vertex path ---------------------------------------------------------


def test_p6free_applicability():
    with pytest.raises(NotApplicable):
        pmc_p6free(path_graph(7))
    assert pmc_p6free(cycle_graph(4)).answer is Answer.YES


def test_p6free_agrees_with_oracle(catalogue6):
    p6 = path_graph(6)
    applicable = 0
    for n in range(2, 7):
        for g in catalogue_graphs(catalogue6, n):
            if contains_induced(g, p6) is not None:
                continue
            applicable += 1
            assert pmc_p6free(g).answer == oracle_pmc(g).answer
    assert applicable > 100


# -- bounded domination ----------------------------------------------------------------


def test_bounded_domination_examples():
    r = pmc_bounded_domination(path_graph(6), 6)
    assert r.answer is Answer.YES and r.method == "domination:6"
    with pytest.raises(NotApplicable):
        pmc_bounded_domination(path_graph(9), 2)


def test_bounded_domination_agrees_with_oracle(catalogue6):
    for n in range(2, 7):
        for g in catalogue_graphs(catalogue6, n):
            assert pmc_bounded_domination(g, 6).answer == oracle_pmc(g).answer


def test_monochromatic_dominating_set():
    k2 = Graph(2, [(0, 1)])
    col = pmc_monochromatic_dominating(k2, [0])
    assert col is not None and col.letters() == "RB"
    assert pmc_monochromatic_dominating(cycle_graph(6), [0, 3]) is None
    assert pmc_monochromatic_dominating(star_graph(3), [0]) is None
    with pytest.raises(NotDominating):
        pmc_monochromatic_dominating(cycle_graph(6), [0])


# -- pattern-plus-path lifting ----------------------------------------------------------


def apex_over_two_paths() -> Graph:
    """Two disjoint 4-vertex paths plus a vertex adjacent to everything."""
    edges = [(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]
    edges += [(8, v) for v in range(8)]
    return Graph(9, edges)


def test_h_plus_p4_applicability_and_delegation():
    p4 = path_graph(4)
    with pytest.raises(NotApplicable):
        pmc_h_plus_p4(apex_over_two_paths(), p4, base_solver_for(p4))
    delegated = pmc_h_plus_p4(cycle_graph(4), p4, base_solver_for(p4))
    assert delegated.answer is Answer.YES
    assert delegated.method == "hplusp4(domination:2)"
    branched = pmc_h_plus_p4(path_graph(5), p4, base_solver_for(p4))
    assert branched.answer is Answer.NO
    assert branched.method == "hplusp4"


def test_h_plus_p4_agrees_with_oracle(catalogue6):
    p4, p6 = path_graph(4), path_graph(6)
    base4, base6 = base_solver_for(p4), base_solver_for(p6)
    for n in range(2, 7):
        for g in catalogue_graphs(catalogue6, n):
            expected = oracle_pmc(g).answer
            assert pmc_h_plus_p4(g, p4, base4).answer == expected
            assert pmc_h_plus_p4(g, p6, base6).answer == expected


def test_base_solver_registry():
    assert base_solver_for(path_graph(4))(cycle_graph(4)).method == "domination:2"
    assert base_solver_for(path_graph(6)) is pmc_p6free
    with pytest.raises(NotApplicable):
        base_solver_for(cycle_graph(4))


# -- result validation -------------------------------------------------------------------


def test_results_validate_witnesses():
    g = cycle_graph(4)
    perfect = RedBlueColouring.from_letters("RRBB")
    mono = RedBlueColouring.from_letters("RRRR")
    with pytest.raises(ValueError):
        SolveResult(Problem.PMC, Answer.YES, "t", g, colouring=mono)
    with pytest.raises(ValueError):
        SolveResult(Problem.PMC, Answer.NO, "t", g, colouring=perfect)
    with pytest.raises(ValueError):
        SolveResult(Problem.PMC, Answer.YES, "t", g, colouring=None)
    with pytest.raises(ValueError):
        SolveResult(Problem.DPM, Answer.YES, "t", g, colouring=perfect)
    with pytest.raises(ValueError):
        SolveResult(
            Problem.DPM,
            Answer.YES,
            "t",
            g,
            colouring=perfect,
            matching=((0, 1),),
        )
    ok = SolveResult(
        Problem.DPM,
        Answer.YES,
        "t",
        g,
        colouring=perfect,
        matching=((0, 3), (1, 2)),
    )
    assert ok.stats == SolveStats()
