"""CNF clauses in DIMACS convention: variables 1..num_vars, literals signed."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Cnf:
    num_vars: int
    clauses: tuple[frozenset[int], ...]

    def __post_init__(self):
        for cl in self.clauses:
            for lit in cl:
                v = abs(lit)
                if lit == 0 or not (1 <= v <= self.num_vars):
                    raise ValueError(f"literal {lit} out of range")
            if any(-lit in cl for lit in cl):
                raise ValueError(f"clause {sorted(cl)} contains a variable and its negation")


def clause_sorted(cl: frozenset[int]) -> list[int]:
    return sorted(cl, key=lambda lit: (abs(lit), lit < 0))


def cnf_truth_table(cnf: Cnf) -> np.ndarray:
    """Satisfaction indicator over all 2^num_vars assignments.

    Assignment index i sets variable v to bit (v-1) of i.
    """
    if cnf.num_vars > 24:
        raise ValueError("truth table capped at 24 variables")
    space = np.arange(1 << cnf.num_vars, dtype=np.uint64)
    acc = np.ones(1 << cnf.num_vars, dtype=bool)
    for cl in cnf.clauses:
        sat = np.zeros(1 << cnf.num_vars, dtype=bool)
        for lit in cl:
            bit = ((space >> np.uint64(abs(lit) - 1)) & np.uint64(1)).astype(bool)
            sat |= bit if lit > 0 else ~bit
        acc &= sat
    return acc


def cnf_to_dimacs(cnf: Cnf) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for cl in cnf.clauses:
        lines.append(" ".join(str(lit) for lit in clause_sorted(cl)) + " 0")
    return "\n".join(lines) + "\n"


def cnf_from_dimacs(text: str) -> Cnf:
    num_vars = None
    announced = None
    clauses = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("#"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise ValueError(f"bad header: {line}")
            num_vars, announced = int(parts[2]), int(parts[3])
        else:
            lits = [int(x) for x in parts]
            if lits[-1] != 0:
                raise ValueError(f"clause not zero-terminated: {line}")
            clauses.append(frozenset(lits[:-1]))
    if num_vars is None:
        raise ValueError("missing header")
    if announced != len(clauses):
        raise ValueError(f"header announces {announced} clauses, found {len(clauses)}")
    return Cnf(num_vars, tuple(clauses))
