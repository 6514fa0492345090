"""Parity-constraint formulas over graph edges.

A formula is a graph plus a 0/1 charge per vertex; one Boolean variable
per edge; the constraint at v requires the incident edge variables to sum
to the charge of v mod 2.  Assignments are int bitmasks: bit e is the
value of edge e's variable.  Formulas obtained by conditioning keep a
`var_of_edge` map from their (dense) edge ids back to the variable ids of
the formula they came from.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .cnf import Cnf
from .graphs import Graph, SplitRequest, connected_components, is_connected, split_all

BRUTE_FORCE_CAP = 24
DEGREE_CAP = 8

Charge = tuple[int, ...]


def charge_of(n: int, ones) -> Charge:
    bits = [0] * n
    for v in ones:
        bits[v] ^= 1
    return tuple(bits)


def charge_add(a: Charge, b: Charge) -> Charge:
    return tuple(x ^ y for x, y in zip(a, b, strict=True))


def unit_charge(n: int, v: int) -> Charge:
    return charge_of(n, [v])


@dataclass(frozen=True)
class TseitinFormula:
    graph: Graph
    charge: Charge
    var_of_edge: tuple[int, ...] = field(default=None)

    def __post_init__(self):
        if len(self.charge) != self.graph.n:
            raise ValueError("charge length must equal vertex count")
        if any(b not in (0, 1) for b in self.charge):
            raise ValueError("charge bits must be 0/1")
        if self.var_of_edge is None:
            object.__setattr__(self, "var_of_edge", tuple(range(self.graph.m)))
        elif len(self.var_of_edge) != self.graph.m:
            raise ValueError("var_of_edge length must equal edge count")

    @property
    def num_vars(self) -> int:
        return self.graph.m

    def violated_at(self, mask: int, v: int) -> bool:
        par = 0
        for e in self.graph.incident[v]:
            par ^= (mask >> e) & 1
        return par != self.charge[v]

    def satisfies(self, mask: int) -> bool:
        return all(not self.violated_at(mask, v) for v in range(self.graph.n))


@dataclass(frozen=True)
class SubConstraint:
    """Parity constraint on a non-empty proper subset of a vertex's edges."""

    vertex: int
    edge_ids: tuple[int, ...]
    parity: int

    def validate(self, t: TseitinFormula) -> None:
        inc = set(t.graph.incident[self.vertex])
        sub = set(self.edge_ids)
        if not sub or not sub < inc:
            raise ValueError(f"edge set must be a non-empty proper subset of E({self.vertex})")
        if self.parity not in (0, 1):
            raise ValueError("parity must be 0/1")

    def holds(self, mask: int) -> bool:
        par = 0
        for e in self.edge_ids:
            par ^= (mask >> e) & 1
        return par == self.parity


def is_satisfiable(t: TseitinFormula) -> bool:
    """Every connected component carries an even total charge."""
    return all(sum(t.charge[v] for v in comp) % 2 == 0 for comp in connected_components(t.graph))


def model_count(t: TseitinFormula) -> int:
    if not is_satisfiable(t):
        return 0
    k = len(connected_components(t.graph))
    return 1 << (t.graph.m - t.graph.n + k)


def condition(t: TseitinFormula, var: int, value: int) -> TseitinFormula:
    """Assign the edge variable `var` (an id of the original formula).

    The edge disappears; a positive assignment flips the charge at both
    endpoints.
    """
    if var not in t.var_of_edge:
        raise ValueError(f"variable {var} not present (already conditioned?)")
    e = t.var_of_edge.index(var)
    a, b = t.graph.edges[e]
    edges = t.graph.edges[:e] + t.graph.edges[e + 1:]
    charge = t.charge
    if value:
        charge = charge_add(charge, charge_add(unit_charge(t.graph.n, a), unit_charge(t.graph.n, b)))
    return TseitinFormula(
        Graph(t.graph.n, edges),
        charge,
        t.var_of_edge[:e] + t.var_of_edge[e + 1:],
    )


def truth_table(t: TseitinFormula) -> np.ndarray:
    """Indicator over all 2^m assignments, independent of every other path."""
    m = t.graph.m
    if m > BRUTE_FORCE_CAP:
        raise ValueError(f"m={m} exceeds brute force cap {BRUTE_FORCE_CAP}")
    space = np.arange(1 << m, dtype=np.uint64)
    acc = np.ones(1 << m, dtype=bool)
    for v in range(t.graph.n):
        emask = np.uint64(t.graph.edge_mask_at(v))
        parity = (np.bitwise_count(space & emask) & 1).astype(np.uint8)
        acc &= parity == t.charge[v]
    return acc


def brute_force_models(t: TseitinFormula) -> list[int]:
    """Exact model set by enumeration, as sorted assignment masks."""
    return [int(x) for x in np.nonzero(truth_table(t))[0]]


def to_cnf(t: TseitinFormula) -> Cnf:
    """CNF over DIMACS variables edge_id + 1; 2^(deg-1) clauses per vertex.

    Each clause forbids one wrong-parity local assignment; a charged
    isolated vertex yields the empty clause.  Clause order is by vertex
    id, then by the local assignment pattern.
    """
    if t.graph.max_degree > DEGREE_CAP:
        raise ValueError(f"max degree {t.graph.max_degree} exceeds CNF cap {DEGREE_CAP}")
    clauses = []
    for v in range(t.graph.n):
        inc = t.graph.incident[v]
        d = len(inc)
        if d == 0:
            if t.charge[v] == 1:
                clauses.append(frozenset())
            continue
        for pattern in range(1 << d):
            if bin(pattern).count("1") % 2 == t.charge[v]:
                continue
            clause = frozenset(
                -(e + 1) if (pattern >> i) & 1 else (e + 1)
                for i, e in enumerate(inc)
            )
            clauses.append(clause)
    return Cnf(t.graph.m, tuple(clauses))


def conjoin_models(t: TseitinFormula, subs: list[SubConstraint]) -> list[int]:
    """Brute-force model set of t with extra sub-constraints conjoined."""
    return [mask for mask in brute_force_models(t) if all(s.holds(mask) for s in subs)]


def _sub_to_split(t: TseitinFormula, s: SubConstraint) -> SplitRequest:
    g = t.graph
    n1 = tuple(sorted(g.other_end(e, s.vertex) for e in s.edge_ids))
    n2 = tuple(sorted(set(g.adj[s.vertex]) - set(n1)))
    return SplitRequest(s.vertex, n1, n2)


def conjoin_subconstraints_count(t: TseitinFormula, subs: list[SubConstraint]) -> int:
    """Models of t with k sub-constraints on an independent set conjoined.

    Valid when t is satisfiable, the graph is connected, and splitting
    every sub-constraint vertex along its induced neighbor partition
    leaves the graph connected; the count is then 2^(m - n - k + 1).
    """
    g = t.graph
    if not is_satisfiable(t):
        raise ValueError("formula must be satisfiable")
    if not is_connected(g):
        raise ValueError("graph must be connected")
    for s in subs:
        s.validate(t)
    if not subs:
        return model_count(t)
    requests = [_sub_to_split(t, s) for s in subs]
    split_graph, _ = split_all(g, requests)
    if not is_connected(split_graph):
        raise ValueError("split graph is disconnected; the count formula does not apply")
    k = len(subs)
    return 1 << (g.m - g.n - k + 1)


def charge_retarget_flips(g: Graph, c: Charge, c_star: Charge) -> set[int]:
    """Edge set whose polarity flip maps models of T(g,c) onto T(g,c*).

    The difference set D = {v : c(v) != c*(v)} has even size per component;
    pair its vertices in ascending id order within each component and take
    the symmetric difference of the pairing paths in a BFS spanning tree
    rooted at the component's smallest vertex.
    """
    for charge in (c, c_star):
        if not is_satisfiable(TseitinFormula(g, charge)):
            raise ValueError("both charges must be satisfiable")
    flips = set()
    for comp in connected_components(g):
        diff = sorted(v for v in comp if c[v] != c_star[v])
        if not diff:
            continue
        root = min(comp)
        parent_edge = {root: None}
        queue = [root]
        while queue:
            nxt = []
            for u in queue:
                for e in g.incident[u]:
                    w = g.other_end(e, u)
                    if w not in parent_edge:
                        parent_edge[w] = (u, e)
                        nxt.append(w)
            queue = nxt

        def tree_path(v):
            path = set()
            while parent_edge[v] is not None:
                v, e = parent_edge[v]
                path.add(e)
            return path

        for a, b in zip(diff[0::2], diff[1::2], strict=True):
            flips ^= tree_path(a) ^ tree_path(b)
    return flips


def apply_flips(mask: int, flips: set[int]) -> int:
    out = mask
    for e in flips:
        out ^= 1 << e
    return out


# --- text format ------------------------------------------------------------
#
# p tseitin <n> <m>
# g <b1> ... <bn>
# e <u> <v>        (1-indexed)


def tseitin_to_text(t: TseitinFormula) -> str:
    g = t.graph
    lines = [f"p tseitin {g.n} {g.m}"]
    lines.append("g " + " ".join(str(b) for b in t.charge))
    for u, v in g.edges:
        lines.append(f"e {u + 1} {v + 1}")
    return "\n".join(lines) + "\n"


def tseitin_from_text(text: str) -> TseitinFormula:
    n = m = None
    charge = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "tseitin":
                raise ValueError(f"bad header: {line}")
            n, m = int(parts[2]), int(parts[3])
        elif parts[0] == "g":
            charge = tuple(int(b) for b in parts[1:])
        elif parts[0] == "e":
            edges.append((int(parts[1]) - 1, int(parts[2]) - 1))
        else:
            raise ValueError(f"unrecognized line: {line}")
    if n is None or charge is None:
        raise ValueError("missing header or charge line")
    if len(charge) != n or len(edges) != m:
        raise ValueError("header inconsistent with body")
    return TseitinFormula(Graph(n, tuple(edges)), charge)


def sample_charges(n: int, count: int, seed: int = 0):
    """Deterministic charge sample; includes zero and covers both parities."""
    import random

    rng = random.Random(seed)
    out = [tuple([0] * n)]
    while len(out) < count:
        out.append(tuple(rng.randint(0, 1) for _ in range(n)))
    return out
