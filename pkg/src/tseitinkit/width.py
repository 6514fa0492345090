"""Treewidth oracles and branch decompositions.

Exact treewidth is a dynamic program over vertex subsets (elimination
prefixes) and is capped at 16 vertices; beyond that the heuristic pair
(minor-min-degree lower bound, min-fill upper bound) takes over.  Branch
decompositions are rooted binary trees over edge ids; every non-root node
induces a cut whose order is the number of boundary vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from .graphs import Graph

TREEWIDTH_EXACT_CAP = 16


class DeskScaleError(ValueError):
    """Input exceeds the cap under which an exact oracle is affordable."""


def _reachable_outside(adj_mask, v, allowed):
    """Vertices outside `allowed` reachable from v through `allowed`."""
    visited = 1 << v
    frontier = adj_mask[v]
    outside = 0
    while True:
        visited |= frontier
        outside |= frontier & ~allowed
        nxt = 0
        inner = frontier & allowed
        while inner:
            low = inner & -inner
            inner ^= low
            nxt |= adj_mask[low.bit_length() - 1]
        frontier = nxt & ~visited
        if not frontier:
            return outside


@lru_cache(maxsize=None)
def _treewidth_exact_cached(n: int, edges: tuple) -> int:
    g = Graph(n, edges)
    if n == 0:
        return -1
    adj = g.adj_mask
    full = (1 << n) - 1
    tw = [0] * (full + 1)
    big = n + 1
    for s in range(1, full + 1):
        best = big
        rest = s
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length() - 1
            prev = s ^ low
            q = bin(_reachable_outside(adj, v, prev)).count("1")
            cand = max(tw[prev], q)
            if cand < best:
                best = cand
        tw[s] = best
    return tw[full]


def treewidth_exact(g: Graph) -> int:
    """Exact treewidth by subset dynamic programming; n <= 16 only."""
    if g.n > TREEWIDTH_EXACT_CAP:
        raise DeskScaleError(f"n={g.n} exceeds exact treewidth cap {TREEWIDTH_EXACT_CAP}")
    return _treewidth_exact_cached(g.n, g.edges)


def treewidth_lower_bound(g: Graph) -> int:
    """Minor-min-degree lower bound (contract a min-degree vertex into
    its least-degree neighbor and repeat)."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    lb = 0
    while adj:
        d, u = min((len(adj[v]), v) for v in adj)
        lb = max(lb, d)
        if d == 0:
            del adj[u]
            continue
        _, w = min((len(adj[x]), x) for x in adj[u])
        # contract u into w
        for x in adj[u]:
            adj[x].discard(u)
            if x != w:
                adj[x].add(w)
                adj[w].add(x)
        del adj[u]
        adj[w].discard(w)
    return lb


def treewidth_upper_bound(g: Graph) -> int:
    """Min-fill elimination upper bound."""
    adj = {v: set(g.adj[v]) for v in range(g.n)}
    width = 0
    while adj:
        best = None
        for v in sorted(adj):
            nb = adj[v]
            fill = 0
            nbl = sorted(nb)
            for i, a in enumerate(nbl):
                for b in nbl[i + 1:]:
                    if b not in adj[a]:
                        fill += 1
            if best is None or fill < best[0]:
                best = (fill, v)
        _, v = best
        nb = adj.pop(v)
        width = max(width, len(nb))
        for a in nb:
            adj[a].discard(v)
        nbl = sorted(nb)
        for i, a in enumerate(nbl):
            for b in nbl[i + 1:]:
                adj[a].add(b)
                adj[b].add(a)
    return width


def treewidth_bounds(g: Graph) -> tuple[int, int, str]:
    """(lower, upper, provenance); exact when the graph is small enough."""
    if g.n <= TREEWIDTH_EXACT_CAP:
        tw = treewidth_exact(g)
        return tw, tw, "exact-dp"
    return treewidth_lower_bound(g), treewidth_upper_bound(g), "mmd-lower/minfill-upper"


# --- branch decompositions ---------------------------------------------------


@dataclass(frozen=True)
class BranchDecomposition:
    """Rooted binary tree whose leaves are in bijection with edge ids.

    nodes[i] is either ('leaf', edge_id) or ('node', left_id, right_id);
    ids are assigned in construction (preorder), root is node 0.
    """

    nodes: tuple[tuple, ...]
    root: int = 0

    @staticmethod
    def from_nested(structure) -> "BranchDecomposition":
        """structure: edge id, or a pair (left, right) of structures."""
        nodes = []

        def build(s):
            my = len(nodes)
            nodes.append(None)
            if isinstance(s, int):
                nodes[my] = ("leaf", s)
            else:
                left, right = s
                nodes[my] = ("node", None, None)
                li = build(left)
                ri = build(right)
                nodes[my] = ("node", li, ri)
            return my

        build(structure)
        return BranchDecomposition(tuple(nodes))

    @cached_property
    def depth(self) -> tuple[int, ...]:
        d = [0] * len(self.nodes)
        stack = [(self.root, 0)]
        while stack:
            i, dep = stack.pop()
            d[i] = dep
            node = self.nodes[i]
            if node[0] == "node":
                stack.append((node[1], dep + 1))
                stack.append((node[2], dep + 1))
        return tuple(d)

    @cached_property
    def edges_below(self) -> tuple[frozenset, ...]:
        out = [None] * len(self.nodes)

        def rec(i):
            node = self.nodes[i]
            if node[0] == "leaf":
                out[i] = frozenset((node[1],))
            else:
                out[i] = rec(node[1]) | rec(node[2])
            return out[i]

        rec(self.root)
        return tuple(out)

    @property
    def leaf_edges(self) -> frozenset:
        return self.edges_below[self.root]

    def validate(self, g: Graph) -> None:
        leaves = [n[1] for n in self.nodes if n[0] == "leaf"]
        if sorted(leaves) != list(range(g.m)):
            raise ValueError("leaves are not a bijection with the edge ids")


@dataclass(frozen=True)
class Cut:
    """Edge partition induced by the tree edge above `node_id`."""

    node_id: int
    depth: int
    e1: tuple[int, ...]
    e2: tuple[int, ...]
    boundary: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.boundary)


def cut_boundary(g: Graph, e1) -> tuple[int, ...]:
    """Vertices incident to edges on both sides of the partition."""
    e1 = set(e1)
    side1 = set()
    side2 = set()
    for e, (u, v) in enumerate(g.edges):
        (side1 if e in e1 else side2).update((u, v))
    return tuple(sorted(side1 & side2))


def all_cuts(t: BranchDecomposition, g: Graph) -> list[Cut]:
    """One cut per non-root node; a single-leaf tree yields the trivial cut."""
    cuts = []
    every = set(range(g.m))
    for i, node in enumerate(t.nodes):
        if i == t.root and len(t.nodes) > 1:
            continue
        e1 = sorted(t.edges_below[i])
        e2 = sorted(every - set(e1))
        cuts.append(Cut(i, t.depth[i], tuple(e1), tuple(e2), cut_boundary(g, e1)))
    return cuts


def max_order_cut(t: BranchDecomposition, g: Graph) -> Cut:
    """Cut of maximum order; ties broken by depth (deepest wins), then id."""
    cuts = all_cuts(t, g)
    return max(cuts, key=lambda c: (c.order, c.depth, -c.node_id))


def width_of(t: BranchDecomposition, g: Graph) -> int:
    return max((c.order for c in all_cuts(t, g)), default=0)


def _partition_boundary_size(g: Graph, part1: set[int], part2: set[int]) -> int:
    touch1 = set()
    touch2 = set()
    for e in part1:
        touch1.update(g.edges[e])
    for e in part2:
        touch2.update(g.edges[e])
    return len(touch1 & touch2)


def _bipartition(g: Graph, edge_ids: list[int]) -> tuple[list[int], list[int]]:
    """Balanced split of edge_ids minimizing the boundary of each half
    against the rest of the whole graph, by 2-swap hill climbing."""
    half = len(edge_ids) // 2
    e1 = list(edge_ids[:half])
    e2 = list(edge_ids[half:])
    rest = set(range(g.m)) - set(edge_ids)

    def cost(a, b):
        ca = _partition_boundary_size(g, set(a), set(b) | rest)
        cb = _partition_boundary_size(g, set(b), set(a) | rest)
        return max(ca, cb), ca + cb

    best = cost(e1, e2)
    improved = True
    passes = 0
    while improved and passes < 8:
        improved = False
        passes += 1
        for i in range(len(e1)):
            for j in range(len(e2)):
                e1[i], e2[j] = e2[j], e1[i]
                c = cost(e1, e2)
                if c < best:
                    best = c
                    improved = True
                else:
                    e1[i], e2[j] = e2[j], e1[i]
    return sorted(e1), sorted(e2)


def heuristic_branch_decomposition(g: Graph) -> BranchDecomposition:
    """Recursive balanced edge bipartition; deterministic."""
    if g.m == 0:
        raise ValueError("graph has no edges")

    def build(edge_ids):
        if len(edge_ids) == 1:
            return edge_ids[0]
        e1, e2 = _bipartition(g, edge_ids)
        return (build(e1), build(e2))

    return BranchDecomposition.from_nested(build(sorted(range(g.m))))


def branchwidth_bounds(g: Graph) -> tuple[int, int]:
    """(lower, upper) bracket on the branchwidth.

    lower comes from the treewidth comparison bw >= ceil(2 tw / 3) (valid
    once bw >= 2), upper is the width of the best heuristic decomposition
    found.  Width <= 1 is the comparison's blind spot, so such graphs
    report (width, width) directly.
    """
    if g.m == 0:
        return 0, 0
    upper = width_of(heuristic_branch_decomposition(g), g)
    if upper <= 1:
        return upper, upper
    tw_lb, _, _ = treewidth_bounds(g)
    lower = -(-2 * tw_lb // 3)
    return min(lower, upper), upper
