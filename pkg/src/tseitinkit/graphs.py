"""Simple undirected graphs with dense vertex and edge ids.

Vertices are 0..n-1, edges carry dense ids 0..m-1 given by their position
in the edge list.  Edge ids double as Boolean variable ids everywhere else
in the package, so all operations that rewrite a graph report how old edge
ids map to new ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        norm = []
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u},{v}) out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"parallel edge {key}")
            seen.add(key)
            norm.append(key)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[tuple[int, ...], ...]:
        nb = [[] for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    @cached_property
    def incident(self) -> tuple[tuple[int, ...], ...]:
        """Edge ids incident to each vertex, ascending."""
        inc = [[] for _ in range(self.n)]
        for e, (u, v) in enumerate(self.edges):
            inc[u].append(e)
            inc[v].append(e)
        return tuple(tuple(x) for x in inc)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict[tuple[int, int], int]:
        return {e: i for i, e in enumerate(self.edges)}

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v} not an endpoint of edge {e}")

    def edge_mask_at(self, v: int) -> int:
        mask = 0
        for e in self.incident[v]:
            mask |= 1 << e
        return mask


@dataclass(frozen=True)
class SplitRequest:
    """Split a vertex along a proper partition of its neighborhood."""

    vertex: int
    side1: tuple[int, ...]
    side2: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "side1", tuple(sorted(self.side1)))
        object.__setattr__(self, "side2", tuple(sorted(self.side2)))

    def validate(self, g: Graph) -> None:
        nbrs = set(g.adj[self.vertex])
        s1, s2 = set(self.side1), set(self.side2)
        if not s1 or not s2:
            raise ValueError(f"split of {self.vertex}: both sides must be non-empty")
        if s1 & s2 or (s1 | s2) != nbrs:
            raise ValueError(f"split of {self.vertex}: sides must partition N(v)")


def connected_components(g: Graph) -> list[set[int]]:
    """Partition of the vertex ids into maximal connected sets."""
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = {s}
        seen[s] = True
        stack = [s]
        while stack:
            u = stack.pop()
            for w in g.adj[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.add(w)
                    stack.append(w)
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


def _connected_after_removal(g: Graph, removed: set[int]) -> bool:
    remaining = [v for v in range(g.n) if v not in removed]
    if not remaining:
        return False
    seen = set(removed)
    seen.add(remaining[0])
    stack = [remaining[0]]
    count = 1
    while stack:
        u = stack.pop()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                count += 1
                stack.append(w)
    return count == len(remaining)


def is_3_connected(g: Graph) -> bool:
    """At least 4 vertices and no separator of size at most 2."""
    if g.n < 4:
        return False
    if not is_connected(g):
        return False
    for u in range(g.n):
        if not _connected_after_removal(g, {u}):
            return False
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if not _connected_after_removal(g, {u, v}):
                return False
    return True


def separators_of_size(g: Graph, size: int) -> list[tuple[int, ...]]:
    """All vertex sets of the given size whose removal disconnects g.

    Candidates are enumerated in ascending lexicographic order, so the
    first entry is the deterministic choice everywhere in the package.
    """
    out = []
    if size == 1:
        for u in range(g.n):
            if not _connected_after_removal(g, {u}):
                out.append((u,))
    elif size == 2:
        for u in range(g.n):
            for v in range(u + 1, g.n):
                if not _connected_after_removal(g, {u, v}):
                    out.append((u, v))
    else:
        raise ValueError("only sizes 1 and 2 are supported")
    return out


def split_vertex(g: Graph, req: SplitRequest) -> tuple[Graph, dict[int, int]]:
    """Replace v by v1 (adjacent to side1) and v2 (adjacent to side2).

    v1 reuses the old id of v and v2 takes the fresh id n.  Edge ids are
    preserved, so the returned mapping old edge id -> new edge id is the
    identity; it is returned anyway because callers treat it as the
    variable renaming between the two graphs.
    """
    req.validate(g)
    v = req.vertex
    side2 = set(req.side2)
    v2 = g.n
    new_edges = []
    for u, w in g.edges:
        if u == v and w in side2:
            new_edges.append((v2, w))
        elif w == v and u in side2:
            new_edges.append((u, v2))
        else:
            new_edges.append((u, w))
    return Graph(g.n + 1, tuple(new_edges)), {e: e for e in range(g.m)}


def split_all(g: Graph, requests: list[SplitRequest]) -> tuple[Graph, list[tuple[int, int]]]:
    """Apply every split; returns the split graph and (v1, v2) id pairs.

    Request vertices must be pairwise distinct and non-adjacent so that
    the neighbor partitions stay meaningful as splits are applied.
    """
    verts = [r.vertex for r in requests]
    if len(set(verts)) != len(verts):
        raise ValueError("duplicate split vertices")
    for i, u in enumerate(verts):
        for w in verts[i + 1:]:
            if w in g.adj[u]:
                raise ValueError(f"split vertices {u} and {w} are adjacent")
    cur = g
    pairs = []
    for r in requests:
        cur, _ = split_vertex(cur, r)
        pairs.append((r.vertex, cur.n - 1))
    return cur, pairs


def greedy_independent_set(g: Graph, candidates: set[int] | list[int]) -> list[int]:
    """Greedy by ascending vertex id; size >= ceil(|candidates|/(maxdeg+1))."""
    chosen = []
    blocked = set()
    for v in sorted(candidates):
        if v in blocked:
            continue
        chosen.append(v)
        blocked.add(v)
        blocked.update(g.adj[v])
    return chosen


def safe_split_subset(g: Graph, requests: list[SplitRequest]) -> list[SplitRequest]:
    """Subset of at least ceil(k/3) splits that keeps the graph connected.

    Requires g 3-connected and the request vertices independent.  The
    selection follows the link-contraction argument: split everything,
    add one link edge per split vertex, keep the splits whose links are
    internal to a component or outside a spanning tree of the component
    contraction.
    """
    if not is_3_connected(g):
        raise ValueError("graph must be 3-connected")
    for r in requests:
        r.validate(g)
    if not requests:
        return []
    split_graph, pairs = split_all(g, requests)
    comps = connected_components(split_graph)
    if len(comps) == 1:
        return list(requests)
    comp_of = {}
    for ci, comp in enumerate(comps):
        for v in comp:
            comp_of[v] = ci
    # links: one edge (v1, v2) per request, identified by request index
    l_in = []
    l_out = []
    for i, (v1, v2) in enumerate(pairs):
        if comp_of[v1] == comp_of[v2]:
            l_in.append(i)
        else:
            l_out.append(i)
    # spanning tree of the component contraction, links taken in id order
    parent = list(range(len(comps)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    tree = set()
    for i in l_out:
        a, b = find(comp_of[pairs[i][0]]), find(comp_of[pairs[i][1]])
        if a != b:
            parent[a] = b
            tree.add(i)
    keep = sorted(set(l_in) | (set(l_out) - tree))
    result = [requests[i] for i in keep]
    check, _ = split_all(g, result)
    if not is_connected(check):
        raise AssertionError("selected splits disconnected the graph")
    return result


def induced_subgraph(g: Graph, vertices: set[int]) -> tuple[Graph, dict[int, int], dict[int, int]]:
    """Subgraph on the given vertices with dense ids.

    Returns (subgraph, vertex map old->new, edge map new edge id -> old).
    """
    vs = sorted(vertices)
    vmap = {v: i for i, v in enumerate(vs)}
    edges = []
    emap = {}
    for e, (u, w) in enumerate(g.edges):
        if u in vmap and w in vmap:
            emap[len(edges)] = e
            edges.append((vmap[u], vmap[w]))
    return Graph(len(vs), tuple(edges)), vmap, emap


# --- text format ------------------------------------------------------------
#
# p graph <n> <m>
# e <u> <v>        (1-indexed, edge id = order of appearance)
# lines starting with '#' are comments


def graph_to_text(g: Graph) -> str:
    lines = [f"p graph {g.n} {g.m}"]
    for u, v in g.edges:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    n = None
    m = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "graph":
                raise ValueError(f"bad header: {line}")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "e":
            if n is None:
                raise ValueError("edge line before header")
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
            edges.append((u, v))
        else:
            raise ValueError(f"unrecognized line: {line}")
    if n is None:
        raise ValueError("missing header")
    if m != len(edges):
        raise ValueError(f"header announces {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))
