"""Resolution refutation traces: checking, regularity, and DPLL generation.

A trace is a sequence of steps with strictly increasing ids.  Axiom steps
carry a clause of the input CNF; derived steps carry two antecedent ids
and a pivot variable and must hold exactly the resolvent.  Literals are
signed DIMACS integers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cnf import Cnf, clause_sorted, cnf_truth_table


@dataclass(frozen=True)
class Step:
    id: int
    clause: frozenset[int]
    antecedents: tuple[int, int] | None = None
    pivot: int | None = None

    @property
    def is_axiom(self) -> bool:
        return self.antecedents is None


@dataclass(frozen=True)
class ResolutionTrace:
    steps: tuple[Step, ...]

    def __len__(self):
        return len(self.steps)


@dataclass
class CheckResult:
    ok: bool
    error: str | None = None
    failed_step: int | None = None
    tautology_steps: list[int] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def resolve(a: frozenset[int], b: frozenset[int], pivot: int) -> frozenset[int]:
    """Resolvent of a (containing pivot) and b (containing -pivot)."""
    if pivot <= 0:
        raise ValueError("pivot must be a positive variable id")
    if pivot not in a or -pivot in a:
        raise ValueError(f"first antecedent must contain {pivot} and not {-pivot}")
    if -pivot not in b or pivot in b:
        raise ValueError(f"second antecedent must contain {-pivot} and not {pivot}")
    return (a - {pivot}) | (b - {-pivot})


def check_refutation(cnf: Cnf, trace: ResolutionTrace) -> CheckResult:
    """Validity check with a diagnostic naming the first failing step.

    Axioms must occur in the input CNF as literal sets; derived steps must
    equal the resolvent of their antecedents on the recorded pivot; the
    final clause must be empty.  Tautological clauses are permitted but
    collected in the result.
    """
    if not trace.steps:
        return CheckResult(False, "empty trace")
    inputs = {frozenset(cl) for cl in cnf.clauses}
    seen: dict[int, Step] = {}
    result = CheckResult(True)
    last = None
    for step in trace.steps:
        if last is not None and step.id <= last:
            return CheckResult(False, f"step ids not strictly increasing at {step.id}", step.id)
        last = step.id
        if step.is_axiom:
            if step.clause not in inputs:
                return CheckResult(False, f"step {step.id}: axiom clause not in the input CNF", step.id)
        else:
            i, j = step.antecedents
            if i not in seen or j not in seen:
                return CheckResult(False, f"step {step.id}: antecedent does not precede the step", step.id)
            if step.pivot is None:
                return CheckResult(False, f"step {step.id}: derived step without pivot", step.id)
            a, b = seen[i].clause, seen[j].clause
            if step.pivot in a and -step.pivot in b:
                pass
            elif step.pivot in b and -step.pivot in a:
                a, b = b, a
            else:
                return CheckResult(False, f"step {step.id}: pivot {step.pivot} not resolvable", step.id)
            try:
                resolvent = resolve(a, b, step.pivot)
            except ValueError as exc:
                return CheckResult(False, f"step {step.id}: {exc}", step.id)
            if resolvent != step.clause:
                return CheckResult(False, f"step {step.id}: clause is not the resolvent", step.id)
        if any(-lit in step.clause for lit in step.clause):
            result.tautology_steps.append(step.id)
        seen[step.id] = step
    if trace.steps[-1].clause:
        return CheckResult(False, "final clause is not empty", trace.steps[-1].id)
    result.tautology_steps = sorted(result.tautology_steps)
    return result


def check_regularity(trace: ResolutionTrace) -> bool:
    """No directed path resolves twice on the same variable.

    With edges antecedent -> derived labeled by the derived step's pivot,
    a repeat on some path exists iff some edge's label already occurs on a
    path continuing upward from its head; `above[s]` accumulates exactly
    those labels (as a variable bitmask).
    """
    users: dict[int, list[Step]] = {}
    for step in trace.steps:
        if not step.is_axiom:
            for a in step.antecedents:
                users.setdefault(a, []).append(step)
    above: dict[int, int] = {}
    for step in reversed(trace.steps):
        mask = 0
        for d in users.get(step.id, ()):
            mask |= above[d.id] | (1 << d.pivot)
        above[step.id] = mask
    for step in trace.steps:
        if not step.is_axiom and above[step.id] & (1 << step.pivot):
            return False
    return True


def _restricted(cnf: Cnf, assignment: dict[int, int]):
    """Clauses not yet satisfied, with falsified literals removed."""
    out = []
    for idx, cl in enumerate(cnf.clauses):
        keep = []
        satisfied = False
        for lit in cl:
            v = abs(lit)
            if v in assignment:
                if (lit > 0) == bool(assignment[v]):
                    satisfied = True
                    break
            else:
                keep.append(lit)
        if not satisfied:
            out.append((idx, keep))
    return out


def _branch_variable(restricted) -> int:
    """Most frequent variable among the shortest clauses; ties by id."""
    width = min(len(keep) for _, keep in restricted)
    counts: dict[int, int] = {}
    for _, keep in restricted:
        if len(keep) == width:
            for lit in keep:
                counts[abs(lit)] = counts.get(abs(lit), 0) + 1
    return min(counts, key=lambda v: (-counts[v], v))


class _TraceBuilder:
    def __init__(self):
        self.steps: list[Step] = []
        self.by_clause: dict[frozenset, list[int]] = {}
        self.pivots_below: dict[int, int] = {}

    def lookup(self, clause: frozenset, assigned_mask: int) -> int | None:
        """Reusable step with this clause whose pivot set avoids the
        variables assigned on the current path (keeps the DAG regular)."""
        for sid in self.by_clause.get(clause, ()):
            if not self.pivots_below[sid] & assigned_mask:
                return sid
        return None

    def add(self, clause, antecedents=None, pivot=None) -> int:
        sid = len(self.steps) + 1
        self.steps.append(Step(sid, clause, antecedents, pivot))
        below = 0
        if antecedents is not None:
            below = (1 << pivot) | self.pivots_below[antecedents[0]] | self.pivots_below[antecedents[1]]
        self.pivots_below[sid] = below
        self.by_clause.setdefault(clause, []).append(sid)
        return sid


def dpll_refute(cnf: Cnf) -> ResolutionTrace:
    """Regular resolution refutation produced by a DPLL search.

    Branches on the most frequent variable of the shortest clauses; a
    branch whose two child clauses mention the branch literal in both
    polarities resolves them, otherwise the child clause that omits the
    variable is passed through.  Steps with identical clauses are shared
    when reuse cannot make a path resolve twice on one variable.
    """
    if cnf.num_vars <= 24:
        if cnf_truth_table(cnf).any():
            raise ValueError("CNF is satisfiable; nothing to refute")
    builder = _TraceBuilder()

    def refute(assignment: dict[int, int], assigned_mask: int) -> int:
        restricted = _restricted(cnf, assignment)
        for idx, keep in restricted:
            if not keep:
                clause = frozenset(cnf.clauses[idx])
                sid = builder.lookup(clause, assigned_mask)
                return sid if sid is not None else builder.add(clause)
        if not restricted:
            raise ValueError("CNF is satisfiable; nothing to refute")
        x = _branch_variable(restricted)
        bit = 1 << x
        s0 = refute({**assignment, x: 0}, assigned_mask | bit)
        s1 = refute({**assignment, x: 1}, assigned_mask | bit)
        c0 = builder.steps[s0 - 1].clause
        c1 = builder.steps[s1 - 1].clause
        if x in c0 and -x in c1:
            clause = resolve(c0, c1, x)
            sid = builder.lookup(clause, assigned_mask)
            return sid if sid is not None else builder.add(clause, (s0, s1), x)
        return s0 if x not in c0 else s1

    refute({}, 0)
    return ResolutionTrace(tuple(builder.steps))


# --- text format ------------------------------------------------------------
#
# one line per step:  <id> <lit>* 0 <antecedent-id>* 0
# axioms have an empty antecedent list


def trace_to_text(trace: ResolutionTrace) -> str:
    lines = []
    for step in trace.steps:
        lits = " ".join(str(lit) for lit in clause_sorted(step.clause))
        ants = "" if step.is_axiom else " ".join(str(a) for a in step.antecedents)
        lines.append(" ".join(x for x in (str(step.id), lits, "0", ants, "0") if x))
    return "\n".join(lines) + "\n"


def trace_from_text(text: str) -> ResolutionTrace:
    steps = []
    by_id = {}
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        nums = [int(x) for x in line.split()]
        sid = nums[0]
        z1 = nums.index(0, 1)
        clause = frozenset(nums[1:z1])
        rest = nums[z1 + 1:]
        if not rest or rest[-1] != 0:
            raise ValueError(f"step {sid}: missing terminator")
        ants = rest[:-1]
        if not ants:
            step = Step(sid, clause)
        elif len(ants) == 2:
            pivot = _infer_pivot(by_id, ants, clause)
            step = Step(sid, clause, (ants[0], ants[1]), pivot)
        else:
            raise ValueError(f"step {sid}: expected 0 or 2 antecedents, got {len(ants)}")
        steps.append(step)
        by_id[sid] = step
    return ResolutionTrace(tuple(steps))


def _infer_pivot(by_id, ants, clause) -> int:
    """Recover the pivot of a parsed step; the unique variable whose
    resolvent reproduces the clause, smallest id first."""
    if ants[0] not in by_id or ants[1] not in by_id:
        return 0
    a, b = by_id[ants[0]].clause, by_id[ants[1]].clause
    candidates = sorted({abs(l) for l in a if -l in b})
    for pivot in candidates:
        for first, second in ((a, b), (b, a)):
            try:
                if resolve(first, second, pivot) == clause:
                    return pivot
            except ValueError:
                continue
    return candidates[0] if candidates else 0
