import itertools
import math
import random

import oracles
import pytest
from conftest import NAMED, graphs, random_graph
from hypothesis import given, settings

from widthlab.canonical import canonical_form, graphs_up_to_iso
from widthlab.config import DEFAULT
from widthlab.errors import ResourceCap
from widthlab.generators import complete, crossover_gadget, cycle, grotzsch, path, petersen, triple_cover
from widthlab.graphs import (Graph, PrecoloredGraph, balanced_separator_number, categorical_product,
                             chromatic_number, count_proper_colorings, diameter, girth, independence_number,
                             is_3_colorable, iter_colorings, treewidth_exact)


def test_graph_validation():
    from widthlab.errors import BadParams
    with pytest.raises(BadParams):
        Graph(3, [(0, 0)])
    with pytest.raises(BadParams):
        Graph(3, [(0, 3)])
    assert Graph(3, [(0, 1), (1, 0)]).m == 1


def test_girth_examples():
    assert girth(complete(4)) == 3
    assert girth(path(6)) == math.inf
    assert girth(Graph(1)) == math.inf
    assert girth(petersen()) == 5 == oracles.girth(petersen())
    assert girth(grotzsch()) == 4


@given(graphs(max_n=8))
def test_girth_matches_oracle(g):
    assert girth(g) == oracles.girth(g)


def test_independence_examples():
    assert independence_number(complete(4)) == 1
    assert independence_number(cycle(5)) == 2
    assert independence_number(grotzsch()) == 5 == oracles.alpha(grotzsch())


def test_independence_budget():
    with pytest.raises(ResourceCap):
        independence_number(random_graph(random.Random(1), 40, 0.3), DEFAULT.with_(search_nodes=3))


@given(graphs(max_n=8))
def test_alpha_matches_oracle(g):
    assert independence_number(g) == oracles.alpha(g)


def test_chromatic_examples():
    assert chromatic_number(complete(4)) == 4
    assert chromatic_number(cycle(5)) == 3
    assert chromatic_number(grotzsch()) == 4
    assert not is_3_colorable(grotzsch())


@given(graphs(max_n=7))
def test_chromatic_matches_oracle(g):
    assert chromatic_number(g) == oracles.chromatic(g)


def test_count_examples():
    assert count_proper_colorings(complete(3), 3) == 6
    assert count_proper_colorings(cycle(6), 3) == 2 ** 6 + 2
    assert count_proper_colorings(crossover_gadget().graph, 3) == 12


@pytest.mark.parametrize("n", range(3, 10))
@pytest.mark.parametrize("s", [2, 3, 4])
def test_cycle_chromatic_polynomial(n, s):
    assert count_proper_colorings(cycle(n), s) == (s - 1) ** n + (-1) ** n * (s - 1)


@given(graphs(max_n=7))
def test_count_matches_oracle(g):
    assert count_proper_colorings(g, 3) == oracles.count_colorings(g, 3)
    assert sum(1 for _ in iter_colorings(g, 3)) == oracles.count_colorings(g, 3)


@given(graphs(max_n=8))
def test_count_positive_iff_3_colorable(g):
    assert (count_proper_colorings(g, 3) > 0) == (chromatic_number(g) <= 3)


@given(graphs(max_n=9))
def test_chi_alpha_at_least_n(g):
    assert chromatic_number(g) * independence_number(g) >= g.n


def test_treewidth_examples():
    assert treewidth_exact(complete(4)) == 3
    assert treewidth_exact(cycle(5)) == 2
    assert treewidth_exact(path(4)) == 1
    assert treewidth_exact(petersen()) == 4


def test_treewidth_cap():
    with pytest.raises(ResourceCap):
        treewidth_exact(cycle(19))


@pytest.mark.parametrize("n", range(1, 7))
def test_treewidth_all_small_graphs(n):
    for g in graphs_up_to_iso(n):
        assert treewidth_exact(g) == oracles.treewidth(g), g


@settings(max_examples=40)
@given(graphs(min_n=7, max_n=7))
def test_treewidth_n7_sample(g):
    assert treewidth_exact(g) == oracles.treewidth(g)


def test_product_examples():
    c6 = categorical_product(complete(2), complete(3))
    assert canonical_form(c6) == canonical_form(cycle(6))
    k2k2 = categorical_product(complete(2), complete(2))
    assert (k2k2.n, k2k2.m) == (4, 2)
    assert all(d == 1 for d in k2k2.degrees())
    assert categorical_product(petersen(), Graph(1)).m == 0


@given(graphs(max_n=6), graphs(max_n=4))
def test_product_definition(g, h):
    p = categorical_product(g, h)
    assert p.n == g.n * h.n
    for (u, i), (v, j) in itertools.combinations(itertools.product(range(g.n), range(h.n)), 2):
        assert p.has_edge(u * h.n + i, v * h.n + j) == (g.has_edge(u, v) and h.has_edge(i, j))


@given(graphs(max_n=7))
def test_triple_cover_copies_independent(b):
    a = triple_cover(b).graph
    for i in range(3):
        copy = [3 * v + i for v in range(b.n)]
        assert not any(a.has_edge(x, y) for x, y in itertools.combinations(copy, 2))
    assert is_3_colorable(a)


def test_diameter_examples():
    assert diameter(complete(4)) == 1
    assert diameter(cycle(6)) == 3
    assert diameter(path(5)) == 4
    assert diameter(Graph(2)) == math.inf


def test_separator_examples():
    for n in range(2, 9):
        assert balanced_separator_number(path(n)) == 1
    assert balanced_separator_number(complete(4)) == 2
    assert balanced_separator_number(cycle(6)) == 2


@settings(max_examples=60)
@given(graphs(max_n=8))
def test_separator_matches_oracle(g):
    assert balanced_separator_number(g) == oracles.separator(g)


def test_precolored_operations():
    p = PrecoloredGraph(path(3), {0: 1, 2: 1})
    assert p.is_proper()
    q = p.delete_vertex(1)
    assert q.graph.m == 0 and q.colors == {0: 1, 1: 1}
    assert p.uncolor(0).colors == {2: 1}
    assert p.permute_colors((2, 0, 1)).colors == {0: 0, 2: 0}
    assert not PrecoloredGraph(path(2), {0: 0, 1: 0}).is_proper()


def test_named_graph_invariants():
    rng = random.Random(0)
    for name, g in NAMED.items():
        assert len(g.nbrs) == g.n
        perm = list(range(g.n))
        rng.shuffle(perm)
        h = g.relabel(perm)
        assert (girth(h), independence_number(h), chromatic_number(h)) == \
            (girth(g), independence_number(g), chromatic_number(g)), name
