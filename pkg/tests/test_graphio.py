import random

import pytest

from degenmax.graph import GraphError, from_edges
from degenmax.graphio import (
    GraphFormatError,
    generate,
    gnm,
    gnp,
    parse_graph,
    serialize_graph,
)

from helpers import cycle, k_complete


def test_parse_edgelist_with_header():
    g, warnings = parse_graph("n 2\n0 1\n")
    assert g == from_edges(2, [(0, 1)])
    assert warnings == []


def test_parse_edgelist_without_header_infers_n():
    g, _ = parse_graph("0 1\n4 2\n")
    assert g.n == 5 and g.m == 2


def test_parse_edgelist_comments_and_blanks():
    text = "# a comment\n\nn 4\n0 1  # trailing comment\n\n2 3\n"
    g, warnings = parse_graph(text)
    assert g.n == 4 and g.m == 2 and warnings == []


def test_parse_edgelist_duplicate_warns():
    g, warnings = parse_graph("0 1\n1 0\n")
    assert g.m == 1
    assert len(warnings) == 1 and "duplicate" in warnings[0]


def test_parse_edgelist_errors():
    with pytest.raises(GraphFormatError):
        parse_graph("0 0\n")  # self-loop
    with pytest.raises(GraphFormatError):
        parse_graph("n 2\n0 2\n")  # endpoint out of range
    with pytest.raises(GraphFormatError):
        parse_graph("0 1 2\n")  # malformed line
    with pytest.raises(GraphFormatError):
        parse_graph("a b\n")
    with pytest.raises(GraphFormatError):
        parse_graph("-1 0\n")
    with pytest.raises(GraphFormatError):
        parse_graph("0 1\nn 5\n")  # header after edges
    with pytest.raises(GraphFormatError):
        parse_graph("n 2\nn 2\n")


def test_parse_dimacs_cycle():
    text = "p edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n"
    g, warnings = parse_graph(text, "dimacs")
    assert g == cycle(5)
    assert warnings == []


def test_parse_dimacs_comments_and_mismatch_warning():
    text = "c comment\np edge 3 5\ne 1 2\ne 2 3\n"
    g, warnings = parse_graph(text, "dimacs")
    assert g.m == 2
    assert any("declares 5" in w for w in warnings)


def test_parse_dimacs_duplicate_warns():
    text = "p edge 3 2\ne 1 2\ne 2 1\n"
    g, warnings = parse_graph(text, "dimacs")
    assert g.m == 1
    assert any("duplicate" in w for w in warnings)


def test_parse_dimacs_errors():
    with pytest.raises(GraphFormatError):
        parse_graph("e 1 2\n", "dimacs")  # edge before problem line
    with pytest.raises(GraphFormatError):
        parse_graph("p edge 2 1\ne 1 3\n", "dimacs")  # out of range
    with pytest.raises(GraphFormatError):
        parse_graph("p edge 2 1\ne 1 1\n", "dimacs")  # self-loop
    with pytest.raises(GraphFormatError):
        parse_graph("p foo 2 1\n", "dimacs")
    with pytest.raises(GraphFormatError):
        parse_graph("p edge 2 1\np edge 2 1\n", "dimacs")
    with pytest.raises(GraphFormatError):
        parse_graph("p edge 2 1\nx 1 2\n", "dimacs")
    with pytest.raises(GraphFormatError):
        parse_graph("", "dimacs")


def test_unknown_format():
    with pytest.raises(GraphFormatError):
        parse_graph("0 1\n", "gml")
    with pytest.raises(GraphFormatError):
        serialize_graph(cycle(3), "gml")


def test_roundtrip_both_formats():
    rnd = random.Random(14)
    graphs = [cycle(6), k_complete(5), from_edges(4, [])]
    for _ in range(10):
        n = rnd.randrange(0, 12)
        graphs.append(gnp(n, rnd.random(), rnd.randrange(10 ** 6)))
    for g in graphs:
        for fmt in ("edgelist", "dimacs"):
            text = serialize_graph(g, fmt)
            parsed, warnings = parse_graph(text, fmt)
            assert parsed == g, (fmt, text)
            assert warnings == []


def test_gnp_extremes():
    assert gnp(6, 0.0, 1).m == 0
    g = gnp(6, 1.0, 1)
    assert g.m == 15
    assert gnp(0, 0.5, 1).n == 0


def test_gnp_deterministic_by_seed():
    assert gnp(10, 0.4, 7) == gnp(10, 0.4, 7)
    assert gnp(10, 0.4, 7) != gnp(10, 0.4, 8)


def test_gnm_exact_edge_count():
    g = gnm(5, 5, 3)
    assert g.m == 5
    assert gnm(5, 0, 3).m == 0
    assert gnm(5, 10, 3).m == 10
    assert gnm(4, 3, 9) == gnm(4, 3, 9)


def test_generator_parameter_validation():
    with pytest.raises(ValueError):
        gnp(5, 1.5, 0)
    with pytest.raises(ValueError):
        gnp(-1, 0.5, 0)
    with pytest.raises(ValueError):
        gnm(5, 11, 0)
    with pytest.raises(ValueError):
        generate("gnp", 5, 0)  # p missing
    with pytest.raises(ValueError):
        generate("gnm", 5, 0)  # m missing
    with pytest.raises(ValueError):
        generate("tree", 5, 0)


def test_generate_dispatch():
    assert generate("gnp", 6, 2, p=0.3) == gnp(6, 0.3, 2)
    assert generate("gnm", 6, 2, m=4) == gnm(6, 4, 2)
