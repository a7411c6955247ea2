import pytest

from eulertours.errors import GraphFormatError, InvalidInput
from eulertours.graph import (
    DegreeSequence,
    Multigraph,
    count_double_arcs,
    count_loops,
    count_short_cycles,
    format_graph,
    is_balanced,
    is_eulerian,
    parse_graph,
    read_graph,
    write_graph,
)


def test_degree_sequence_totals():
    d = DegreeSequence([1, 2, 3])
    assert (d.n, d.m, d.m2) == (3, 6, 14)
    assert d.owners.tolist() == [0, 1, 1, 2, 2, 2]
    assert DegreeSequence.regular(2, 4).degrees == (2, 2, 2, 2)


@pytest.mark.parametrize("bad", [[], [0, 1], [-1]])
def test_degree_sequence_rejects_non_positive(bad):
    with pytest.raises(InvalidInput):
        DegreeSequence(bad)


def test_arc_lists(bidirected_triangle):
    g = bidirected_triangle
    assert g.out_arcs[0] == (0, 5)
    assert g.in_arcs[0] == (1, 4)
    assert g.out_degrees() == (2, 2, 2)


def test_equality_is_structural():
    a = Multigraph.from_pairs(2, [(0, 1), (1, 0)])
    b = Multigraph.from_arrays(2, [0, 1], [1, 0])
    assert a == b and hash(a) == hash(b)
    assert a != Multigraph.from_pairs(2, [(1, 0), (0, 1)])


def test_balance_and_connectivity():
    assert is_eulerian(Multigraph.from_pairs(3, [(0, 1), (1, 2), (2, 0)]))
    two_cycles = Multigraph.from_pairs(4, [(0, 1), (1, 0), (2, 3), (3, 2)])
    assert is_balanced(two_cycles) and not is_eulerian(two_cycles)
    assert not is_balanced(Multigraph.from_pairs(2, [(0, 1)]))
    # isolated vertices do not break connectivity
    assert is_eulerian(Multigraph.from_pairs(3, [(0, 1), (1, 0)]))


def test_loops_and_double_arcs():
    g = Multigraph.from_pairs(2, [(0, 0), (0, 1), (0, 1), (0, 1), (1, 0)])
    assert count_loops(g) == 1
    assert count_double_arcs(g) == 3


def test_short_cycles_distinguish_parallel_arcs(bidirected_triangle, double_arc_pair):
    assert count_short_cycles(bidirected_triangle, 2) == 3
    assert count_short_cycles(bidirected_triangle, 3) == 2
    assert count_short_cycles(double_arc_pair, 2) == 4
    assert count_short_cycles(Multigraph.from_pairs(1, [(0, 0), (0, 0)]), 1) == 2


def test_round_trip(tmp_path, bidirected_triangle):
    text = format_graph(bidirected_triangle)
    assert parse_graph(text) == bidirected_triangle
    path = tmp_path / "g.txt"
    write_graph(bidirected_triangle, path)
    assert read_graph(path) == bidirected_triangle


def test_parse_accepts_comments():
    g = parse_graph("# header\n2 2\n0 1  # first\n1 0\n")
    assert g.m == 2


@pytest.mark.parametrize(
    "text",
    ["", "2\n", "2 2\n0 1\n", "2 1\n0 2\n", "2 1\n0 x\n", "2 1\n0 1 1\n", "-1 0\n"],
)
def test_parse_rejects_malformed(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)
