"""Branching programs computing the violated-vertex search relation.

A decision node queries an edge variable and routes along its 0- or
1-wire; sinks name a vertex.  On an assignment that falsifies the parity
formula, a correct program must reach a vertex whose constraint the
assignment violates.

Well-structured programs additionally annotate every node with a
connected subgraph and a charge whose formula is unsatisfiable; deciding
an edge hands each child the unique odd-charged component of the
conditioned formula.  Sub-annotations are forced once the source is
fixed, which both the validator and the builder exploit.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Graph
from .tseitin import Charge, TseitinFormula, is_satisfiable
from .width import heuristic_branch_decomposition, all_cuts


@dataclass
class BranchingProgram:
    source: int
    decisions: dict[int, tuple[int, int, int]]  # id -> (edge var, 0-child, 1-child)
    sinks: dict[int, int]  # id -> vertex

    def __post_init__(self):
        overlap = set(self.decisions) & set(self.sinks)
        if overlap:
            raise ValueError(f"ids used as both decision and sink: {sorted(overlap)}")
        if self.source not in self.decisions and self.source not in self.sinks:
            raise ValueError("source id unknown")
        self._check_dag()

    def _check_dag(self):
        state: dict[int, int] = {}

        def visit(u):
            if u in self.sinks:
                return
            if u not in self.decisions:
                raise ValueError(f"dangling node id {u}")
            if state.get(u) == 1:
                raise ValueError("cycle detected")
            if state.get(u) == 2:
                return
            state[u] = 1
            _, lo, hi = self.decisions[u]
            visit(lo)
            visit(hi)
            state[u] = 2

        visit(self.source)

    @property
    def size(self) -> int:
        return len(self.decisions) + len(self.sinks)

    def node_ids(self) -> list[int]:
        return sorted(set(self.decisions) | set(self.sinks))

    def topological(self) -> list[int]:
        """Children before parents, restricted to nodes reachable from
        the source."""
        order: list[int] = []
        seen: set[int] = set()

        def visit(u):
            if u in seen:
                return
            seen.add(u)
            if u in self.decisions:
                _, lo, hi = self.decisions[u]
                visit(lo)
                visit(hi)
            order.append(u)

        visit(self.source)
        return order


def eval_bp(b: BranchingProgram, mask: int) -> int:
    u = b.source
    while u not in b.sinks:
        var, lo, hi = b.decisions[u]
        u = hi if (mask >> var) & 1 else lo
    return b.sinks[u]


def searchvertex_holds(g: Graph, c: Charge, mask: int, v: int) -> bool:
    """True iff the assignment violates the parity constraint at v."""
    par = 0
    for e in g.incident[v]:
        par ^= (mask >> e) & 1
    return par != c[v]


def validate_read_once(b: BranchingProgram) -> bool:
    """No source-to-sink path queries the same variable twice."""
    above: dict[int, int] = {b.source: 0}
    for u in reversed(b.topological()):
        if u not in b.decisions:
            continue
        var, lo, hi = b.decisions[u]
        if (above[u] >> var) & 1:
            return False
        mask = above[u] | (1 << var)
        for child in (lo, hi):
            above[child] = above.get(child, 0) | mask
    return True


# Annotations map node id -> (vertex set, edge id set, charge on the
# vertex set), all in terms of the root graph's ids.
Annotation = tuple[frozenset[int], frozenset[int], dict[int, int]]


def make_annotation(vertices, edge_ids, charge: dict[int, int]) -> Annotation:
    return (frozenset(vertices), frozenset(edge_ids), dict(charge))


def _charge_sum(charge: dict[int, int], vertices) -> int:
    return sum(charge[v] for v in vertices) % 2


def _component_of(g: Graph, edge_ids: frozenset[int], start: int) -> tuple[frozenset[int], frozenset[int]]:
    """Connected component of the edge-induced subgraph containing start."""
    verts = {start}
    stack = [start]
    inc: dict[int, list[tuple[int, int]]] = {}
    for e in edge_ids:
        u, w = g.edges[e]
        inc.setdefault(u, []).append((e, w))
        inc.setdefault(w, []).append((e, u))
    edges = set()
    while stack:
        u = stack.pop()
        for e, w in inc.get(u, ()):
            edges.add(e)
            if w not in verts:
                verts.add(w)
                stack.append(w)
    return frozenset(verts), frozenset(edges)


def expected_children(g: Graph, ann: Annotation, var: int) -> tuple[Annotation, Annotation]:
    """The forced child annotations after deciding edge `var`.

    For each literal the conditioned formula keeps at most two components;
    exactly one carries odd charge, and the child gets that component.
    """
    vertices, edge_ids, charge = ann
    if var not in edge_ids:
        raise ValueError(f"decision edge {var} not in the annotated subgraph")
    a, b = g.edges[var]
    rest = edge_ids - {var}
    side_a = _component_of(g, rest, a)
    side_b = _component_of(g, rest, b) if b not in side_a[0] else side_a
    out = []
    for literal in (0, 1):
        gamma = dict(charge)
        if literal == 1:
            gamma[a] ^= 1
            gamma[b] ^= 1
        picked = None
        for verts, edges in (side_a, side_b):
            if _charge_sum(gamma, verts) == 1:
                picked = (verts, edges, {v: gamma[v] for v in verts})
                break
        if picked is None:
            raise ValueError("no odd component after conditioning; parent annotation not unsatisfiable")
        out.append(make_annotation(*picked))
    return out[0], out[1]


@dataclass
class ValidationResult:
    ok: bool
    error: str | None = None
    node: int | None = None

    def __bool__(self):
        return self.ok


def validate_well_structured(
    b: BranchingProgram,
    g: Graph,
    c: Charge,
    annotations: dict[int, Annotation],
    semantic_cap: int = 16,
) -> ValidationResult:
    """Check the three structural conditions, then (at desk scale) that
    each node brute-force computes the search relation of its annotation.

    Variables queried below a node but absent from its subgraph are padded
    with zeros during the semantic sweep.
    """
    if not validate_read_once(b):
        return ValidationResult(False, "program is not read-once")
    order = b.topological()
    for u in order:
        if u not in annotations:
            return ValidationResult(False, "node missing annotation", u)
        vertices, edge_ids, charge = annotations[u]
        if set(charge) != set(vertices):
            return ValidationResult(False, "charge domain differs from vertex set", u)
        if _charge_sum(charge, vertices) != 1:
            return ValidationResult(False, "annotated formula is satisfiable", u)
        if edge_ids:
            comp = _component_of(g, edge_ids, next(iter(vertices)))
            if comp[0] != vertices or comp[1] != edge_ids:
                return ValidationResult(False, "annotated subgraph is not connected", u)
        elif len(vertices) != 1:
            return ValidationResult(False, "edgeless annotation must be a single vertex", u)

    src_vertices, src_edges, src_charge = annotations[b.source]
    if src_vertices != frozenset(range(g.n)) or src_edges != frozenset(range(g.m)):
        return ValidationResult(False, "condition 1: source not annotated with the full graph", b.source)
    if any(src_charge[v] != c[v] for v in range(g.n)):
        return ValidationResult(False, "condition 1: source charge mismatch", b.source)

    for u in order:
        if u in b.sinks:
            v = b.sinks[u]
            vertices, edge_ids, charge = annotations[u]
            if vertices != frozenset((v,)) or edge_ids or charge.get(v) != 1:
                return ValidationResult(False, "condition 2: sink annotation must be its unit-charged vertex", u)
        else:
            var, lo, hi = b.decisions[u]
            try:
                want0, want1 = expected_children(g, annotations[u], var)
            except ValueError as exc:
                return ValidationResult(False, f"condition 3: {exc}", u)
            if annotations[lo] != want0:
                return ValidationResult(False, "condition 3: 0-child annotation mismatch", u)
            if annotations[hi] != want1:
                return ValidationResult(False, "condition 3: 1-child annotation mismatch", u)

    for u in order:
        vertices, edge_ids, charge = annotations[u]
        if len(edge_ids) > semantic_cap:
            continue
        edges = sorted(edge_ids)
        for bits in range(1 << len(edges)):
            mask = 0
            for i, e in enumerate(edges):
                if (bits >> i) & 1:
                    mask |= 1 << e
            w = _eval_from(b, u, mask)
            if w not in vertices:
                return ValidationResult(False, f"semantics: sink {w} outside the annotated subgraph", u)
            par = 0
            for e in g.incident[w]:
                if e in edge_ids:
                    par ^= (mask >> e) & 1
            if par == charge[w]:
                return ValidationResult(False, "semantics: reached sink whose constraint is satisfied", u)
    return ValidationResult(True)


def _eval_from(b: BranchingProgram, start: int, mask: int) -> int:
    u = start
    while u not in b.sinks:
        var, lo, hi = b.decisions[u]
        u = hi if (mask >> var) & 1 else lo
    return b.sinks[u]


def _decision_edge(g: Graph, edge_ids: frozenset[int]) -> int:
    """Heuristic decision edge: build a branch decomposition of the
    subgraph, take its smallest-order cut (deepest, then smallest id),
    and return the smallest edge on the cut's near side touching the
    boundary."""
    edges = sorted(edge_ids)
    if len(edges) == 1:
        return edges[0]
    sub_vertices = sorted({v for e in edges for v in g.edges[e]})
    vmap = {v: i for i, v in enumerate(sub_vertices)}
    sub = Graph(len(sub_vertices), tuple((min(vmap[g.edges[e][0]], vmap[g.edges[e][1]]),
                                          max(vmap[g.edges[e][0]], vmap[g.edges[e][1]])) for e in edges))
    t = heuristic_branch_decomposition(sub)
    cuts = all_cuts(t, sub)
    cut = min(cuts, key=lambda cu: (cu.order, -cu.depth, cu.node_id))
    boundary = set(cut.boundary)
    for le in cut.e1:
        u, w = sub.edges[le]
        if u in boundary or w in boundary or not boundary:
            return edges[le]
    return edges[cut.e1[0]]


def build_well_structured_bp(g: Graph, c: Charge) -> tuple[BranchingProgram, dict[int, Annotation]]:
    """Memoized well-structured program for an unsatisfiable formula.

    The memo key is the annotation itself (edge set plus restricted
    charge), so two nodes share an id exactly when their subformulas
    coincide.
    """
    t = TseitinFormula(g, c)
    if is_satisfiable(t):
        raise ValueError("formula is satisfiable; no search program to build")
    from .graphs import is_connected

    if not is_connected(g):
        raise ValueError("graph must be connected")

    decisions: dict[int, tuple[int, int, int]] = {}
    sinks: dict[int, int] = {}
    annotations: dict[int, Annotation] = {}
    memo: dict[tuple, int] = {}
    counter = [0]

    def fresh() -> int:
        counter[0] += 1
        return counter[0] - 1

    def key(ann: Annotation):
        vertices, edge_ids, charge = ann
        return (edge_ids, vertices, tuple(sorted(charge.items())))

    def build(ann: Annotation) -> int:
        k = key(ann)
        if k in memo:
            return memo[k]
        vertices, edge_ids, charge = ann
        nid = fresh()
        memo[k] = nid
        annotations[nid] = ann
        if not edge_ids:
            (v,) = vertices
            sinks[nid] = v
            return nid
        var = _decision_edge(g, edge_ids)
        want0, want1 = expected_children(g, ann, var)
        lo = build(want0)
        hi = build(want1)
        decisions[nid] = (var, lo, hi)
        return nid

    root_ann = make_annotation(range(g.n), range(g.m), {v: c[v] for v in range(g.n)})
    source = build(root_ann)
    bp = BranchingProgram(source, decisions, sinks)
    return bp, annotations


def infer_annotations(b: BranchingProgram, g: Graph, c: Charge) -> dict[int, Annotation]:
    """Reconstruct the forced annotations from the source downward.

    Once the source is pinned to (G, c), condition 3 determines every
    child annotation; a node reached with two different annotations can
    belong to no well-structured program, which the validator will then
    report via a mismatch.
    """
    annotations: dict[int, Annotation] = {}
    root = make_annotation(range(g.n), range(g.m), {v: c[v] for v in range(g.n)})
    annotations[b.source] = root
    for u in reversed(b.topological()):
        if u not in b.decisions or u not in annotations:
            continue
        var, lo, hi = b.decisions[u]
        try:
            want0, want1 = expected_children(g, annotations[u], var)
        except ValueError:
            continue
        annotations.setdefault(lo, want0)
        annotations.setdefault(hi, want1)
    return annotations


# --- text format ------------------------------------------------------------
#
# source <id>
# node <id> <edge-var> <child0> <child1>
# sink <id> <vertex>


def bp_to_text(b: BranchingProgram) -> str:
    lines = [f"source {b.source}"]
    for nid in sorted(b.decisions):
        var, lo, hi = b.decisions[nid]
        lines.append(f"node {nid} {var} {lo} {hi}")
    for nid in sorted(b.sinks):
        lines.append(f"sink {nid} {b.sinks[nid]}")
    return "\n".join(lines) + "\n"


def bp_from_text(text: str) -> BranchingProgram:
    source = None
    decisions = {}
    sinks = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "source":
            source = int(parts[1])
        elif parts[0] == "node":
            decisions[int(parts[1])] = (int(parts[2]), int(parts[3]), int(parts[4]))
        elif parts[0] == "sink":
            sinks[int(parts[1])] = int(parts[2])
        else:
            raise ValueError(f"unrecognized line: {line}")
    if source is None:
        raise ValueError("missing source line")
    return BranchingProgram(source, decisions, sinks)
