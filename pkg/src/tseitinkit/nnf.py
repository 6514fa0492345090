"""Negation-normal-form circuits with binary gates over edge variables.

Gates live in a topologically ordered array (children before parents);
leaves are literals or 0/1 constants, internal gates are binary AND/OR.
The size of a circuit is its count of internal gates.  An AND gate is
decomposable when its children share no variables; an OR gate is smooth
(complete) when its children mention the same variables.  Transforms
return new circuits and never mutate.

Model counts use the usual bottom-up sum/product rule, which is exact on
smooth circuits whose OR gates split models disjointly; every circuit the
compiler emits is of that decision form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

LIT = "L"
CONST = "C"
AND = "A"
OR = "O"

VAR_CAP = 24
RECT_CAP = 20


@dataclass(frozen=True)
class Gate:
    kind: str
    a: int = -1  # child id, or constant value for CONST
    b: int = -1
    var: int = -1  # variable id for LIT
    positive: bool = True


@dataclass(frozen=True)
class NnfCircuit:
    gates: tuple[Gate, ...]
    root: int
    num_vars: int

    def __post_init__(self):
        for i, g in enumerate(self.gates):
            if g.kind in (AND, OR) and not (0 <= g.a < i and 0 <= g.b < i):
                raise ValueError(f"gate {i} not in topological order")

    @cached_property
    def var_masks(self) -> tuple[int, ...]:
        masks = []
        for g in self.gates:
            if g.kind == LIT:
                masks.append(1 << g.var)
            elif g.kind == CONST:
                masks.append(0)
            else:
                masks.append(masks[g.a] | masks[g.b])
        return tuple(masks)

    @property
    def size(self) -> int:
        """Internal gate count (leaves excluded)."""
        return sum(1 for g in self.gates if g.kind in (AND, OR))

    @property
    def node_count(self) -> int:
        return len(self.gates)

    def var_set(self, gate: int) -> int:
        return self.var_masks[gate]


class CircuitBuilder:
    """Construction helper; deduplicates literal and constant leaves."""

    def __init__(self, num_vars: int):
        self.num_vars = num_vars
        self.gates: list[Gate] = []
        self._leaves: dict[tuple, int] = {}

    def _add(self, gate: Gate) -> int:
        self.gates.append(gate)
        return len(self.gates) - 1

    def literal(self, var: int, positive: bool) -> int:
        key = (LIT, var, positive)
        if key not in self._leaves:
            if not 0 <= var < self.num_vars:
                raise ValueError(f"variable {var} out of range")
            self._leaves[key] = self._add(Gate(LIT, var=var, positive=positive))
        return self._leaves[key]

    def const(self, value: int) -> int:
        key = (CONST, value)
        if key not in self._leaves:
            self._leaves[key] = self._add(Gate(CONST, a=value))
        return self._leaves[key]

    def gate_and(self, a: int, b: int) -> int:
        return self._add(Gate(AND, a=a, b=b))

    def gate_or(self, a: int, b: int) -> int:
        return self._add(Gate(OR, a=a, b=b))

    def build(self, root: int) -> NnfCircuit:
        return NnfCircuit(tuple(self.gates), root, self.num_vars)


def restrict_to_root(d: NnfCircuit) -> NnfCircuit:
    """Drop gates unreachable from the root."""
    reach = set()
    stack = [d.root]
    while stack:
        i = stack.pop()
        if i in reach:
            continue
        reach.add(i)
        g = d.gates[i]
        if g.kind in (AND, OR):
            stack.extend((g.a, g.b))
    keep = sorted(reach)
    remap = {old: new for new, old in enumerate(keep)}
    gates = []
    for old in keep:
        g = d.gates[old]
        if g.kind in (AND, OR):
            gates.append(Gate(g.kind, a=remap[g.a], b=remap[g.b]))
        else:
            gates.append(g)
    return NnfCircuit(tuple(gates), remap[d.root], d.num_vars)


def validate_decomposable(d: NnfCircuit) -> bool:
    masks = d.var_masks
    return all(
        not (masks[g.a] & masks[g.b])
        for g in d.gates
        if g.kind == AND
    )


def is_smooth(d: NnfCircuit) -> bool:
    masks = d.var_masks
    return all(masks[g.a] == masks[g.b] for g in d.gates if g.kind == OR)


def evaluate(d: NnfCircuit, mask: int) -> bool:
    vals = []
    for g in d.gates:
        if g.kind == LIT:
            bit = bool((mask >> g.var) & 1)
            vals.append(bit if g.positive else not bit)
        elif g.kind == CONST:
            vals.append(bool(g.a))
        elif g.kind == AND:
            vals.append(vals[g.a] and vals[g.b])
        else:
            vals.append(vals[g.a] or vals[g.b])
    return vals[d.root]


def truth_table(d: NnfCircuit) -> np.ndarray:
    """Circuit value on all 2^num_vars assignments (assignment = index)."""
    if d.num_vars > VAR_CAP:
        raise ValueError(f"{d.num_vars} variables exceed the truth table cap")
    space = np.arange(1 << d.num_vars, dtype=np.uint64)
    cols: list[np.ndarray] = []
    for g in d.gates:
        if g.kind == LIT:
            bit = ((space >> np.uint64(g.var)) & np.uint64(1)).astype(bool)
            cols.append(bit if g.positive else ~bit)
        elif g.kind == CONST:
            cols.append(np.full(len(space), bool(g.a)))
        elif g.kind == AND:
            cols.append(cols[g.a] & cols[g.b])
        else:
            cols.append(cols[g.a] | cols[g.b])
    return cols[d.root]


def models(d: NnfCircuit) -> list[int]:
    return [int(x) for x in np.nonzero(truth_table(d))[0]]


def _rebuild(d: NnfCircuit, leaf_fn) -> NnfCircuit:
    """Rewrite leaves through leaf_fn and propagate constants upward.

    leaf_fn(gate) returns a Gate for every leaf.  Internal gates absorb
    constant children, so the result never grows.
    """
    builder = CircuitBuilder(d.num_vars)
    consts: dict[int, int] = {}  # old id -> 0/1 for gates that collapsed
    new_id: dict[int, int] = {}
    for i, g in enumerate(d.gates):
        if g.kind in (LIT, CONST):
            ng = leaf_fn(g)
            if ng.kind == CONST:
                consts[i] = ng.a
            else:
                new_id[i] = builder.literal(ng.var, ng.positive)
            continue
        ca = consts.get(g.a)
        cb = consts.get(g.b)
        zero, one = (0, 1) if g.kind == AND else (1, 0)
        if ca == zero or cb == zero:
            consts[i] = zero
        elif ca == one and cb == one:
            consts[i] = one
        elif ca == one:
            new_id[i] = new_id[g.b]
        elif cb == one:
            new_id[i] = new_id[g.a]
        else:
            op = builder.gate_and if g.kind == AND else builder.gate_or
            new_id[i] = op(new_id[g.a], new_id[g.b])
    if d.root in consts:
        root = builder.const(consts[d.root])
    else:
        root = new_id[d.root]
    return restrict_to_root(builder.build(root))


def propagate_constants(d: NnfCircuit) -> NnfCircuit:
    return _rebuild(d, lambda g: g)


def condition_dnnf(d: NnfCircuit, var: int, value: int) -> NnfCircuit:
    """Fix a variable; its literals become constants, which then propagate."""

    def leaf(g: Gate) -> Gate:
        if g.kind == LIT and g.var == var:
            return Gate(CONST, a=int(bool(value) == g.positive))
        return g

    return _rebuild(d, leaf)


def forget_var(d: NnfCircuit, var: int) -> NnfCircuit:
    """Existential projection: both literals of the variable become true.

    Correct on decomposable circuits, where projection distributes over
    every gate; the circuit never grows.
    """

    def leaf(g: Gate) -> Gate:
        if g.kind == LIT and g.var == var:
            return Gate(CONST, a=1)
        return g

    return _rebuild(d, leaf)


def rename_flip(d: NnfCircuit, flips: set[int]) -> NnfCircuit:
    """Swap the polarity of every literal on a flipped variable."""
    gates = []
    for g in d.gates:
        if g.kind == LIT and g.var in flips:
            gates.append(Gate(LIT, var=g.var, positive=not g.positive))
        else:
            gates.append(g)
    return NnfCircuit(tuple(gates), d.root, d.num_vars)


def smooth(d: NnfCircuit) -> NnfCircuit:
    """Equivalent circuit whose OR gates mention equal variable sets.

    Deficient OR branches are padded with (x OR not-x) units, one shared
    unit per variable, chained by ANDs in ascending variable order.
    Constants are propagated first so no constant survives below a gate.
    """
    if not validate_decomposable(d):
        raise ValueError("circuit must be decomposable")
    d = propagate_constants(d)
    if d.gates[d.root].kind == CONST:
        return d
    builder = CircuitBuilder(d.num_vars)
    units: dict[int, int] = {}

    def unit(var: int) -> int:
        if var not in units:
            units[var] = builder.gate_or(builder.literal(var, True), builder.literal(var, False))
        return units[var]

    def pad(gid: int, missing: int) -> int:
        out = gid
        v = 0
        while missing:
            if missing & 1:
                out = builder.gate_and(out, unit(v))
            missing >>= 1
            v += 1
        return out

    masks = d.var_masks
    new_id: dict[int, int] = {}
    for i, g in enumerate(d.gates):
        if g.kind == LIT:
            new_id[i] = builder.literal(g.var, g.positive)
        elif g.kind == CONST:
            raise AssertionError("constant below a gate after propagation")
        elif g.kind == AND:
            new_id[i] = builder.gate_and(new_id[g.a], new_id[g.b])
        else:
            want = masks[i]
            left = pad(new_id[g.a], want & ~masks[g.a])
            right = pad(new_id[g.b], want & ~masks[g.b])
            new_id[i] = builder.gate_or(left, right)
    return restrict_to_root(builder.build(new_id[d.root]))


def model_count_smooth(d: NnfCircuit) -> int:
    """Bottom-up count over var(root) on a smooth decomposable circuit."""
    d = propagate_constants(d)
    if not validate_decomposable(d):
        raise ValueError("circuit must be decomposable")
    if not is_smooth(d):
        raise ValueError("circuit must be smooth")
    root_gate = d.gates[d.root]
    if root_gate.kind == CONST:
        return int(root_gate.a)
    counts = []
    for g in d.gates:
        if g.kind == LIT:
            counts.append(1)
        elif g.kind == CONST:
            counts.append(None)
        elif g.kind == AND:
            counts.append(counts[g.a] * counts[g.b])
        else:
            counts.append(counts[g.a] + counts[g.b])
    return counts[d.root]


# --- proof trees -------------------------------------------------------------


@dataclass(frozen=True)
class ProofTree:
    """Tree sub-circuit: both children at AND gates, one child at each OR.

    `nodes` is the set of gate ids on the tree; on a smooth circuit the
    literal leaves determine one total model over var(root).
    """

    nodes: frozenset[int]
    ones: int  # variables assigned 1
    assigned: int  # variables assigned at all

    def model(self) -> int:
        return self.ones


def enumerate_proof_trees(d: NnfCircuit) -> list[ProofTree]:
    """All proof trees whose literal choices are consistent.

    On a complete DNNF every tree assigns each variable exactly once and
    encodes a single model.  Exponential in general; intended for desk
    scale.
    """
    memo: dict[int, list[tuple[frozenset, int, int]]] = {}

    def rec(i: int) -> list[tuple[frozenset, int, int]]:
        if i in memo:
            return memo[i]
        g = d.gates[i]
        if g.kind == LIT:
            out = [(frozenset((i,)), (1 << g.var) if g.positive else 0, 1 << g.var)]
        elif g.kind == CONST:
            out = [(frozenset((i,)), 0, 0)] if g.a else []
        elif g.kind == AND:
            out = []
            for na, oa, sa in rec(g.a):
                for nb, ob, sb in rec(g.b):
                    if sa & sb:
                        continue  # non-decomposable overlap; skip inconsistent pair
                    out.append((na | nb | {i}, oa | ob, sa | sb))
        else:
            out = [(n | {i}, o, s) for n, o, s in rec(g.a)]
            out += [(n | {i}, o, s) for n, o, s in rec(g.b)]
        memo[i] = out
        return out

    trees = [ProofTree(n, o, s) for n, o, s in rec(d.root)]
    trees.sort(key=lambda t: (t.ones, sorted(t.nodes)))
    return trees


def proof_tree_models(d: NnfCircuit) -> set[int]:
    """Union of single models encoded by the proof trees (complete DNNF)."""
    full = (1 << d.num_vars) - 1 if d.num_vars else 0
    out = set()
    for t in enumerate_proof_trees(d):
        if t.assigned != d.var_masks[d.root]:
            raise ValueError("proof tree does not cover var(root); circuit not smooth?")
        out.add(t.model())
    return out


def gate_rectangle(d: NnfCircuit, gate: int, trees: list[ProofTree] | None = None):
    """Models accepted through a gate, as a rectangle over (var(gate), rest).

    On a complete DNNF the models whose proof trees pass through the gate
    form a product set A x B with A over var(gate); this enumerates the
    proof trees, projects, and verifies the product property.
    """
    from .rectangles import Rectangle

    if d.num_vars > RECT_CAP:
        raise ValueError(f"{d.num_vars} variables exceed the rectangle cap")
    if not validate_decomposable(d) or not is_smooth(d):
        raise ValueError("gate rectangles need a smooth decomposable circuit")
    if trees is None:
        trees = enumerate_proof_trees(d)
    e1 = d.var_masks[gate]
    e2 = ((1 << d.num_vars) - 1) & ~e1
    through = {t.model() for t in trees if gate in t.nodes}
    a_side = frozenset(m & e1 for m in through)
    b_side = frozenset(m & e2 for m in through)
    rect = Rectangle(e1, e2, a_side, b_side, d.num_vars)
    if rect.models() != through:
        raise AssertionError(f"gate {gate}: accepted set is not a product; circuit is broken")
    return rect


# --- NNF file format (c2d compatible) ---------------------------------------
#
# nnf <nodes> <edges> <vars>
# L <signed-var>                 (1-based variable ids)
# A <count> <ids...>             (A 0 encodes constant true)
# O <j> <count> <ids...>         (O 0 0 encodes constant false)


def nnf_to_text(d: NnfCircuit) -> str:
    if d.root != d.node_count - 1:
        d = restrict_to_root(d)
    wires = sum(2 for g in d.gates if g.kind in (AND, OR))
    lines = [f"nnf {d.node_count} {wires} {d.num_vars}"]
    for g in d.gates:
        if g.kind == LIT:
            lines.append(f"L {g.var + 1 if g.positive else -(g.var + 1)}")
        elif g.kind == CONST:
            lines.append("A 0" if g.a else "O 0 0")
        elif g.kind == AND:
            lines.append(f"A 2 {g.a} {g.b}")
        else:
            lines.append(f"O 0 2 {g.a} {g.b}")
    return "\n".join(lines) + "\n"


def nnf_from_text(text: str) -> NnfCircuit:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("c ")]
    header = lines[0].split()
    if header[0] != "nnf" or len(header) != 4:
        raise ValueError(f"bad header: {lines[0]}")
    nodes, _, num_vars = int(header[1]), int(header[2]), int(header[3])
    body = lines[1:]
    if len(body) != nodes:
        raise ValueError(f"header announces {nodes} nodes, found {len(body)}")
    gates: list[Gate] = []
    fid: list[int] = []  # file node id -> gate index (after binarization)

    def binarize(kind: str, ids: list[int]) -> int:
        cur = fid[ids[0]]
        for nxt in ids[1:]:
            gates.append(Gate(kind, a=cur, b=fid[nxt]))
            cur = len(gates) - 1
        return cur

    for line in body:
        parts = line.split()
        if parts[0] == "L":
            sv = int(parts[1])
            gates.append(Gate(LIT, var=abs(sv) - 1, positive=sv > 0))
            fid.append(len(gates) - 1)
        elif parts[0] == "A":
            count = int(parts[1])
            ids = [int(x) for x in parts[2:2 + count]]
            if count == 0:
                gates.append(Gate(CONST, a=1))
                fid.append(len(gates) - 1)
            elif count == 1:
                fid.append(fid[ids[0]])
            else:
                fid.append(binarize(AND, ids))
        elif parts[0] == "O":
            count = int(parts[2])
            ids = [int(x) for x in parts[3:3 + count]]
            if count == 0:
                gates.append(Gate(CONST, a=0))
                fid.append(len(gates) - 1)
            elif count == 1:
                fid.append(fid[ids[0]])
            else:
                fid.append(binarize(OR, ids))
        else:
            raise ValueError(f"unrecognized node line: {line}")
    return NnfCircuit(tuple(gates), fid[-1], num_vars)
