"""Intersection of two fans by brute force over pairs of relatively open cones.

Works for any pair of fans, with no matroid structure assumed, so it doubles
as an independent check on the flag calculus.  The cost is quadratic in the
number of cones; only small ambient dimensions are practical.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ResourceLimitError, TransversalityError
from ..linalg import lattice_index_mod_ones, solve_affine, strict_feasible_point
from .fan import Cone, HFan, normalize

MAX_PAIRS = 250_000


@dataclass(frozen=True)
class PairMeeting:
    sigma: Cone
    tau: Cone
    dim: int                  # dimension of the open intersection
    transversal: bool
    point: tuple | None       # a point of the intersection
    lo: tuple | None = None   # endpoints of a 1-dim piece (None = unbounded)
    hi: tuple | None = None
    direction: tuple | None = None   # rational direction from lo towards hi
    weight: int = 0


def _meet(s: Cone, t: Cone, r):
    ds, dt = len(s.rays), len(t.rays)
    cols = [list(v) for v in s.rays] + [[-x for x in v] for v in t.rays] + [[-1] * r]
    rhs = [b - a for a, b in zip(s.apex, t.apex)]
    sol = solve_affine(cols, rhs)
    if sol is None:
        return None
    z0, null = sol
    nv = ds + dt
    ineqs = [([n[v] for n in null], z0[v]) for v in range(nv)]
    pt = strict_feasible_point(ineqs, len(null))
    if pt is None:
        return None
    z = [z0[v] + sum(n[v] * pt[k] for k, n in enumerate(null)) for v in range(len(z0))]

    def x_of(zz):
        return normalize([s.apex[i] + sum(zz[j] * s.rays[j][i] for j in range(ds))
                          for i in range(r)])

    dim = len(null)
    transversal = dim == ds + dt + 1 - r
    if not transversal or dim != 1:
        return PairMeeting(s, t, dim, transversal, x_of(z))
    n = null[0]
    lo = hi = None
    for v in range(nv):
        if n[v] == 0:
            continue
        bound = -z0[v] / n[v]
        if n[v] > 0:
            lo = bound if lo is None or bound > lo else lo
        else:
            hi = bound if hi is None or bound < hi else hi
    direction = tuple(sum(n[j] * s.rays[j][i] for j in range(ds)) for i in range(r))
    end = lambda u: None if u is None else x_of([z0[v] + u * n[v] for v in range(len(z0))])
    wt = s.weight * t.weight * lattice_index_mod_ones(list(s.rays) + list(t.rays), r)
    return PairMeeting(s, t, 1, True, x_of(z), end(lo), end(hi), direction, wt)


def cone_pair_meetings(x: HFan, y: HFan, max_pairs=MAX_PAIRS):
    """Every nonempty intersection of a cone of x with a cone of y."""
    r = x.ambient
    cx, cy = x.cones, y.cones
    if len(cx) * len(cy) > max_pairs:
        raise ResourceLimitError(
            f"{len(cx)} x {len(cy)} cone pairs exceeds the cap of {max_pairs}")
    out = []
    for s in cx:
        for t in cy:
            m = _meet(s, t, r)
            if m is not None:
                out.append(m)
    return out


def cone_pair_cells(x: HFan, y: HFan, max_pairs=MAX_PAIRS):
    """Points (with weights for top pairs) and 1-cells of a transversal intersection.

    Returns (points, one_cells) where points maps coordinates to a weight
    (0 for points that only bound 1-cells) and one_cells lists PairMeetings.
    """
    expected = x.dim + y.dim - (x.ambient - 1)
    points, cells = {}, []
    for m in cone_pair_meetings(x, y, max_pairs):
        if not m.transversal:
            raise TransversalityError(
                f"non-transversal meeting of cones at {[str(c) for c in m.point]}")
        if m.dim > 1:
            raise TransversalityError(f"{m.dim}-dimensional intersection cell")
        if m.dim == 0:
            top = len(m.sigma.rays) == x.dim and len(m.tau.rays) == y.dim
            wt = 0
            if top and expected == 0:
                wt = m.sigma.weight * m.tau.weight * lattice_index_mod_ones(
                    list(m.sigma.rays) + list(m.tau.rays), x.ambient)
            points[m.point] = points.get(m.point, 0) + wt
        else:
            cells.append(m)
    return points, cells


def nontransversal_witnesses(x: HFan, y: HFan, max_pairs=MAX_PAIRS):
    return [m for m in cone_pair_meetings(x, y, max_pairs) if not m.transversal]
