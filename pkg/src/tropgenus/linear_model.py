"""Generic similarity parameters per rigid component and the reduced cycle system.

Each rigid component G_i is fixed up to rotation and scale by numbers lam_e with
u_e = u_{s(G_i)} * lam_e.  Substituting into the cycle equations of G leaves one
linear form per cycle in the r component variables.
"""

from __future__ import annotations

import json
import os
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import NonGenericError
from .graph import CycleBasis, RigidDecomposition, _tree_paths, signed_tree_path
from .linalg import rank

DEFAULT_BOUND = 2 ** 20


def max_retries():
    n = int(os.environ.get("TROPGENUS_MAX_RETRIES", "8"))
    if n < 1:
        raise ValueError("TROPGENUS_MAX_RETRIES must be at least 1")
    return n


@dataclass(frozen=True)
class ParameterAssignment:
    lam: tuple[int, ...]
    seed: int
    decomposition: RigidDecomposition
    bound: int = DEFAULT_BOUND
    attempts: int = 1


def _draw(rng, bound):
    while True:
        x = rng.randint(-bound, bound)
        if x:
            return x


def _close_component(g, comp, lam):
    parent = _tree_paths(g, comp.tree, root=g.edges[comp.selected][0])
    for e in comp.edges:
        if e in comp.tree:
            continue
        a, b = g.edges[e]
        # lam_e + (signed sum along the tree path b -> a) = 0
        path = signed_tree_path(parent, b, a)
        lam[e] = -sum(s * lam[f] for f, s in path.items())


def assign_parameters(d: RigidDecomposition, seed: int, bound: int = DEFAULT_BOUND,
                      retries: int | None = None) -> ParameterAssignment:
    """Random nonzero integers on tree edges, cycle closure on the rest, 1 on s(G_i)."""
    g = d.graph
    retries = max_retries() if retries is None else retries
    rng = random.Random(seed)
    for attempt in range(1, retries + 1):
        lam = [None] * g.edge_count
        for comp in d.components:
            for e in comp.tree:
                lam[e] = 1 if e == comp.selected else _draw(rng, bound)
            _close_component(g, comp, lam)
        if all(lam):
            return ParameterAssignment(tuple(lam), seed, d, bound, attempt)
    raise NonGenericError(f"cycle closure produced a zero parameter {retries} times (seed {seed})")


@dataclass(frozen=True)
class ConstraintMatrix:
    rows: tuple[tuple[int, ...], ...]
    columns: int
    row_cycles: tuple[int, ...]
    dropped: tuple[int, ...]

    @property
    def rank(self):
        return rank([list(r) for r in self.rows]) if self.rows else 0

    def to_json(self):
        return json.dumps({
            "columns": self.columns,
            "rows": [[str(Fraction(x)) for x in row] for row in self.rows],
            "row_cycles": list(self.row_cycles),
            "dropped_cycles": list(self.dropped),
        }, separators=(",", ":"))


def expected_rank(r):
    return 0 if r == 2 else r // 2 - 1


def build_constraint_matrix(g, d: RigidDecomposition, p: ParameterAssignment,
                            basis: CycleBasis, check_rank: bool = True) -> ConstraintMatrix:
    """Entry (cycle, i) = sum over edges of the cycle in component i of sign * lam."""
    r = d.r
    rows, kept, dropped = [], [], []
    for k, cyc in enumerate(basis.cycles):
        row = [0] * r
        for e, s in enumerate(cyc):
            if s:
                row[d.edge_to_component[e]] += s * p.lam[e]
        if any(row):
            rows.append(tuple(row))
            kept.append(k)
        else:
            dropped.append(k)
    m = ConstraintMatrix(tuple(rows), r, tuple(kept), tuple(dropped))
    if check_rank and m.rank != expected_rank(r):
        raise NonGenericError(
            f"constraint matrix has rank {m.rank}, expected {expected_rank(r)} for r={r}")
    return m
