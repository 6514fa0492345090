import itertools

import pytest
from hypothesis import given, settings, strategies as st

from tseitinkit import families as fam
from tseitinkit.graphs import Graph
from tseitinkit.width import (
    BranchDecomposition,
    DeskScaleError,
    all_cuts,
    branchwidth_bounds,
    cut_boundary,
    heuristic_branch_decomposition,
    max_order_cut,
    treewidth_exact,
    treewidth_lower_bound,
    treewidth_upper_bound,
    width_of,
)


def elimination_width(g: Graph, order) -> int:
    """Width of one elimination order, simulated by clique fill-in."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    width = 0
    for v in order:
        nb = adj.pop(v)
        width = max(width, len(nb))
        for a in nb:
            adj[a].discard(v)
        for a, b in itertools.combinations(sorted(nb), 2):
            adj[a].add(b)
            adj[b].add(a)
    return width


def brute_force_treewidth(g: Graph) -> int:
    """Independent oracle: minimum width over all elimination orders."""
    return min(elimination_width(g, order) for order in itertools.permutations(range(g.n)))


class TestTreewidthExact:
    def test_closed_forms(self):
        for n in range(2, 8):
            assert treewidth_exact(fam.complete(n)) == n - 1
        for n in range(3, 9):
            assert treewidth_exact(fam.cycle(n)) == 2
        for n in range(2, 9):
            assert treewidth_exact(fam.path(n)) == 1
        star = Graph(6, tuple((0, i) for i in range(1, 6)))
        assert treewidth_exact(star) == 1
        for n in range(2, 5):
            assert treewidth_exact(fam.grid(n, n)) == n

    def test_known_values(self):
        assert treewidth_exact(fam.cube(3)) == 3
        assert treewidth_exact(fam.wheel(4)) == 3
        assert treewidth_exact(fam.octahedron()) == 4
        assert treewidth_exact(fam.bowtie()) == 2

    def test_cap_enforced(self):
        with pytest.raises(DeskScaleError):
            treewidth_exact(fam.cycle(17))

    @settings(max_examples=40, deadline=None)
    @given(st.data())
    def test_against_permutation_oracle(self, data):
        n = data.draw(st.integers(min_value=1, max_value=5))
        pool = [(u, v) for u in range(n) for v in range(u + 1, n)]
        edges = data.draw(st.lists(st.sampled_from(pool), unique=True, max_size=len(pool))) if pool else []
        g = Graph(n, tuple(sorted(edges)))
        assert treewidth_exact(g) == brute_force_treewidth(g)

    def test_heuristics_bracket_exact(self, bench_graph):
        _, g = bench_graph
        tw = treewidth_exact(g)
        assert treewidth_lower_bound(g) <= tw <= treewidth_upper_bound(g)


class TestBranchDecomposition:
    def test_from_nested_and_validate(self):
        t = BranchDecomposition.from_nested(((0, 1), 2))
        t.validate(fam.cycle(3))
        assert t.leaf_edges == frozenset({0, 1, 2})
        with pytest.raises(ValueError):
            t.validate(fam.cycle(4))

    def test_boundary_definition_matches_recomputation(self, bench_graph):
        _, g = bench_graph
        if g.m == 0:
            return
        t = heuristic_branch_decomposition(g)
        for cut in all_cuts(t, g):
            fresh = set()
            touch1 = {v for e in cut.e1 for v in g.edges[e]}
            touch2 = {v for e in cut.e2 for v in g.edges[e]}
            fresh = tuple(sorted(touch1 & touch2))
            assert cut.boundary == fresh == cut_boundary(g, cut.e1)

    def test_max_order_cut_c3(self):
        g = fam.cycle(3)
        t = BranchDecomposition.from_nested(((0, 1), 2))
        cut = max_order_cut(t, g)
        assert cut.order == 2
        # every cut of this tree has order 2; the deepest smallest-id node wins
        assert all(c.order == 2 for c in all_cuts(t, g))

    def test_single_edge_graph(self):
        g = fam.path(2)
        t = heuristic_branch_decomposition(g)
        cut = max_order_cut(t, g)
        assert cut.order <= 2

    def test_k4_max_cut_at_least_2(self):
        g = fam.complete(4)
        t = heuristic_branch_decomposition(g)
        assert max_order_cut(t, g).order >= 2


class TestBranchwidthBounds:
    def test_k4(self):
        lower, upper = branchwidth_bounds(fam.complete(4))
        assert lower == 2 and upper <= 3

    def test_c3(self):
        assert branchwidth_bounds(fam.cycle(3)) == (2, 2)

    def test_p3_guard(self):
        assert branchwidth_bounds(fam.path(3)) == (1, 1)

    def test_lower_le_upper(self, bench_graph):
        _, g = bench_graph
        lower, upper = branchwidth_bounds(g)
        assert lower <= upper

    def test_width_consistency(self, bench_graph):
        _, g = bench_graph
        t = heuristic_branch_decomposition(g)
        assert width_of(t, g) == max(c.order for c in all_cuts(t, g))
