"""Red-blue colourings, their predicates, matchings and serialization."""

from __future__ import annotations

import random

import pytest

from helpers import (
    all_colourings,
    catalogue_graphs,
    naive_has_perfect_matching,
    naive_is_perfect,
    naive_is_perfect_extendable,
    naive_is_valid,
    random_connected_graph,
)
from matchcut import (
    Colour,
    Graph,
    InvalidColouring,
    ParseError,
    PartialColouring,
    RedBlueColouring,
    complete_graph,
    cut_edges,
    cycle_graph,
    extension_witness,
    format_colouring,
    format_matching,
    has_perfect_matching,
    is_perfect,
    is_perfect_extendable,
    is_valid,
    maximum_matching,
    parse_colouring,
    parse_matching,
    path_graph,
    perfect_matching,
)
from matchcut.errors import NotAnEdge

P6 = path_graph(6)

#: The three P6 colourings used throughout: valid-only, extendable-only, perfect.
TRIPTYCH = {
    "left": "RBBBRR",
    "middle": "RBBBBR",
    "right": "RBBRRB",
}


def col(letters: str) -> RedBlueColouring:
    return RedBlueColouring.from_letters(letters)


# -- the showcase colourings -----------------------------------------------------


def test_triptych_left_valid_not_extendable():
    c = col(TRIPTYCH["left"])
    assert is_valid(P6, c)
    assert not is_perfect_extendable(P6, c)
    assert not is_perfect(P6, c)


def test_triptych_middle_extendable_not_perfect():
    c = col(TRIPTYCH["middle"])
    assert is_valid(P6, c)
    assert is_perfect_extendable(P6, c)
    assert not is_perfect(P6, c)


def test_triptych_right_perfect():
    c = col(TRIPTYCH["right"])
    assert is_valid(P6, c)
    assert is_perfect_extendable(P6, c)
    assert is_perfect(P6, c)


def test_perfect_examples():
    assert is_perfect(Graph(2, [(0, 1)]), col("RB"))
    assert not is_perfect(P6, col("RBBBBR"))


# -- predicate structure ------------------------------------------------------------


def test_monochromatic_total_colouring_is_invalid():
    assert not is_valid(path_graph(3), col("RRR"))
    assert not is_perfect(path_graph(3), col("BBB"))


def test_partial_colouring_rejected():
    c = RedBlueColouring.from_sets(3, [0], [1])  # vertex 2 unset
    for fn in (is_valid, is_perfect, is_perfect_extendable):
        with pytest.raises(PartialColouring):
            fn(path_graph(3), c)


def test_implication_chain_small_catalogue(catalogue6):
    # perfect implies perfect-extendable implies valid, on every colouring of
    # every connected graph with up to 6 vertices
    for n in range(2, 7):
        for g in catalogue_graphs(catalogue6, n):
            for letters in all_colourings(g.n):
                c = col("".join(letters))
                p, e, v = is_perfect(g, c), is_perfect_extendable(g, c), is_valid(g, c)
                assert (not p or e) and (not e or v)
                # and each predicate matches its independent definition
                assert v == naive_is_valid(g, letters)
                assert p == naive_is_perfect(g, letters)
                assert e == naive_is_perfect_extendable(g, letters)


def test_cut_edges_form_disconnecting_matching():
    rng = random.Random(12)
    checked = 0
    for _ in range(200):
        g = random_connected_graph(rng, rng.randrange(4, 9), 0.3)
        for letters in all_colourings(g.n):
            c = col("".join(letters))
            if not is_valid(g, c):
                continue
            cut = cut_edges(g, c)
            ends = [v for e in cut for v in e]
            assert len(ends) == len(set(ends))  # matching: endpoints distinct
            # removing the cut leaves no red-blue edge
            remaining = [e for e in g.edges() if e not in set(cut)]
            assert all(letters[u] == letters[v] for u, v in remaining)
            checked += 1
            break  # one valid colouring per graph is enough here
    assert checked > 100


# -- matchings ------------------------------------------------------------------------


def test_has_perfect_matching_facts():
    assert not has_perfect_matching(path_graph(3))
    assert has_perfect_matching(cycle_graph(6))
    assert has_perfect_matching(Graph(0, []))
    assert not has_perfect_matching(path_graph(5))  # odd order


def test_perfect_matching_witness():
    m = perfect_matching(cycle_graph(6))
    assert m is not None and len(m) == 3
    assert sorted(v for e in m for v in e) == list(range(6))
    assert perfect_matching(path_graph(3)) is None


def test_matching_against_independent_recursion():
    rng = random.Random(9)
    for _ in range(250):
        n = rng.randrange(2, 13)
        g = random_connected_graph(rng, n, 0.25)
        expected = naive_has_perfect_matching(g, frozenset(range(n)))
        assert has_perfect_matching(g) == expected
        m = maximum_matching(g)
        # maximum_matching returns a symmetric partner map
        assert all(m[m[v]] == v for v in m)
        assert (len(m) == n) == expected


def test_blossom_handles_odd_structures():
    # two triangles joined by a bridge: perfect matching exists
    g = Graph(6, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)])
    assert has_perfect_matching(g)
    # C5 with a pendant: 6 vertices but the pendant blocks perfection
    g2 = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (0, 5)])
    assert has_perfect_matching(g2)
    g3 = Graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4), (2, 5)])
    assert has_perfect_matching(g3)


def test_extension_witness_is_disconnected_perfect_matching():
    c = col(TRIPTYCH["middle"])
    m = extension_witness(P6, c)
    assert m is not None
    ends = sorted(v for e in m for v in e)
    assert ends == list(range(6))  # perfect
    assert set(cut_edges(P6, c)) <= set(m)  # contains the whole cut
    assert extension_witness(P6, col(TRIPTYCH["left"])) is None


# -- serialization ----------------------------------------------------------------------


def test_colouring_round_trip():
    c = col("RBBRRB")
    assert parse_colouring(format_colouring(c), 6) == c


def test_parse_colouring_errors():
    # unlisted vertices stay unset: the result is partial, not an error
    partial = parse_colouring("0 R\n", 2)
    assert not partial.is_total() and partial.colour_of(1) is None
    with pytest.raises(ParseError):
        parse_colouring("0 R\n0 B\n", 1)  # duplicate
    with pytest.raises(ParseError):
        parse_colouring("0 G\n", 1)  # bad letter
    with pytest.raises(ParseError):
        parse_colouring("5 R\n", 1)  # out of range


def test_matching_round_trip():
    g = cycle_graph(6)
    m = ((0, 1), (2, 3), (4, 5))
    assert parse_matching(format_matching(m), g) == m
    with pytest.raises(ParseError):
        parse_matching("0 2\n", g)  # not an edge
    with pytest.raises(ParseError):
        parse_matching("0 1\n1 2\n", g)  # vertex 1 repeated


# -- colouring data type ------------------------------------------------------------


def test_colouring_constructors_agree():
    a = RedBlueColouring.from_sets(4, [0, 3], [1, 2])
    b = RedBlueColouring.from_blue_mask(4, 0b0110)
    c = RedBlueColouring.from_letters("RBBR")
    assert a == b == c
    assert a.letters() == "RBBR"
    assert a.red_vertices() == (0, 3) and a.blue_vertices() == (1, 2)
    assert a.swap().letters() == "BRRB"
    assert Colour.RED.opposite() is Colour.BLUE


def test_overlapping_sets_rejected():
    with pytest.raises(InvalidColouring):
        RedBlueColouring.from_sets(3, [0, 1], [1, 2])
