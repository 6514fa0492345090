import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tseitinkit import families as fam
from tseitinkit.graphs import (
    Graph,
    SplitRequest,
    connected_components,
    graph_from_text,
    graph_to_text,
    greedy_independent_set,
    is_3_connected,
    is_connected,
    safe_split_subset,
    split_all,
    split_vertex,
)


def small_graphs(max_n=7):
    """Hypothesis strategy: a simple graph as an edge subset of K_n."""

    @st.composite
    def build(draw):
        n = draw(st.integers(min_value=1, max_value=max_n))
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool))) if pool else []
        return Graph(n, tuple(sorted(edges)))

    return build()


class TestGraphBasics:
    def test_rejects_loops_and_parallel_edges(self):
        with pytest.raises(ValueError):
            Graph(2, ((0, 0),))
        with pytest.raises(ValueError):
            Graph(2, ((0, 1), (1, 0)))
        with pytest.raises(ValueError):
            Graph(2, ((0, 2),))

    def test_adjacency_consistent(self):
        g = fam.wheel(4)
        for v in range(g.n):
            assert sorted(g.other_end(e, v) for e in g.incident[v]) == list(g.adj[v])


class TestConnectedComponents:
    def test_triangle_single_class(self):
        assert connected_components(fam.cycle(3)) == [{0, 1, 2}]

    def test_two_disjoint_edges(self):
        g = Graph(4, ((0, 1), (2, 3)))
        assert connected_components(g) == [{0, 1}, {2, 3}]

    def test_c4_minus_opposite_edges(self):
        g = Graph(4, ((0, 1), (2, 3)))  # C4 with edges {1,2} and {0,3} deleted
        comps = connected_components(g)
        assert sorted(len(c) for c in comps) == [2, 2]

    @settings(max_examples=60, deadline=None)
    @given(small_graphs())
    def test_partition_property(self, g):
        comps = connected_components(g)
        assert sorted(v for comp in comps for v in comp) == list(range(g.n))
        for comp in comps:
            for u, v in g.edges:
                assert (u in comp) == (v in comp) or not ({u, v} & comp)


class TestThreeConnectivity:
    def test_k4_true(self):
        assert is_3_connected(fam.complete(4))

    def test_c4_false(self):
        assert not is_3_connected(fam.cycle(4))

    def test_c3_too_small(self):
        assert not is_3_connected(fam.cycle(3))

    def test_known_3_connected(self):
        for g in (fam.complete(5), fam.wheel(4), fam.wheel(5), fam.cube(3), fam.octahedron()):
            assert is_3_connected(g)


class TestSplitVertex:
    def test_k4_split(self):
        g, mapping = split_vertex(fam.complete(4), SplitRequest(3, (0,), (1, 2)))
        assert g.n == 5 and g.m == 6
        assert is_connected(g)
        assert mapping == {e: e for e in range(6)}

    def test_star_center_disconnects(self):
        star = Graph(4, ((0, 1), (0, 2), (0, 3)))
        g, _ = split_vertex(star, SplitRequest(0, (1,), (2, 3)))
        assert len(connected_components(g)) == 2

    def test_path_center_breaks(self):
        g, _ = split_vertex(fam.path(3), SplitRequest(1, (0,), (2,)))
        assert g.edges == ((0, 1), (2, 3))

    def test_improper_partition_rejected(self):
        with pytest.raises(ValueError):
            split_vertex(fam.complete(4), SplitRequest(3, (), (0, 1, 2)))
        with pytest.raises(ValueError):
            split_vertex(fam.complete(4), SplitRequest(3, (0,), (1,)))

    def test_adjacent_split_vertices_rejected(self):
        k4 = fam.complete(4)
        reqs = [SplitRequest(0, (1,), (2, 3)), SplitRequest(1, (0,), (2, 3))]
        with pytest.raises(ValueError):
            split_all(k4, reqs)


def proper_partitions(neighbors):
    nb = sorted(neighbors)
    for bits in range(1, 1 << (len(nb) - 1)):
        side1 = tuple(x for i, x in enumerate(nb) if (bits >> i) & 1)
        side2 = tuple(x for x in nb if x not in side1)
        yield side1, side2


class TestSafeSplitSubset:
    def test_k4_single_request(self):
        k4 = fam.complete(4)
        req = SplitRequest(3, (0,), (1, 2))
        assert safe_split_subset(k4, [req]) == [req]

    def test_w4_opposite_rim(self):
        w4 = fam.wheel(4)
        reqs = [SplitRequest(0, (1,), (3, 4)), SplitRequest(2, (3,), (1, 4))]
        assert safe_split_subset(w4, reqs) == reqs

    def test_requires_3_connected(self):
        with pytest.raises(ValueError):
            safe_split_subset(fam.cycle(4), [SplitRequest(0, (1,), (3,))])

    def test_requires_independent(self):
        k4 = fam.complete(4)
        reqs = [SplitRequest(0, (1,), (2, 3)), SplitRequest(1, (0,), (2, 3))]
        with pytest.raises(ValueError):
            safe_split_subset(k4, reqs)

    @pytest.mark.parametrize("g", [fam.complete(4), fam.wheel(4), fam.cube(3)], ids=["K4", "W4", "Q3"])
    def test_third_guarantee_and_connectivity(self, g):
        vertices = range(g.n)
        for size in (1, 2):
            for combo in itertools.combinations(vertices, size):
                if any(v in g.adj[u] for u, v in itertools.combinations(combo, 2)):
                    continue
                choices = [list(proper_partitions(g.adj[v])) for v in combo]
                for parts in itertools.product(*choices):
                    reqs = [SplitRequest(v, *p) for v, p in zip(combo, parts)]
                    keep = safe_split_subset(g, reqs)
                    assert 3 * len(keep) >= len(reqs)
                    split_graph, _ = split_all(g, keep)
                    assert is_connected(split_graph)


class TestGreedyIndependentSet:
    def test_triangle(self):
        assert greedy_independent_set(fam.cycle(3), {0, 1, 2}) == [0]

    def test_c4(self):
        assert greedy_independent_set(fam.cycle(4), {0, 1, 2, 3}) == [0, 2]

    @settings(max_examples=80, deadline=None)
    @given(small_graphs())
    def test_size_guarantee(self, g):
        candidates = set(range(g.n))
        result = greedy_independent_set(g, candidates)
        for u, v in itertools.combinations(result, 2):
            assert v not in g.adj[u]
        if g.n:
            bound = -(-len(candidates) // (g.max_degree + 1))
            assert len(result) >= bound


class TestGraphText:
    def test_round_trip_bench(self, bench_graph):
        _, g = bench_graph
        assert graph_from_text(graph_to_text(g)) == g

    def test_comments_and_errors(self):
        text = "# a comment\np graph 2 1\ne 1 2\n"
        assert graph_from_text(text) == Graph(2, ((0, 1),))
        with pytest.raises(ValueError):
            graph_from_text("p graph 2 2\ne 1 2\n")
        with pytest.raises(ValueError):
            graph_from_text("e 1 2\n")

    @settings(max_examples=40, deadline=None)
    @given(small_graphs())
    def test_round_trip_random(self, g):
        assert graph_from_text(graph_to_text(g)) == g
