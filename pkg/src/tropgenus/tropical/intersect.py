"""Translation sampling, transversality certificates and stable intersection."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..errors import DisconnectedCurveError, ResourceLimitError, TransversalityError
from .cones import MAX_PAIRS, cone_pair_cells, nontransversal_witnesses
from .curve import OneCell, TropicalCurve, assemble, check_balancing, check_smoothness, \
    components, multiplicities_one
from .fan import HFan, normalize, reflect_translate
from .flags import FlagIntersection

DEFAULT_W_BOUND = 2 ** 20
W_RETRIES = 64


@dataclass(frozen=True)
class TranslationVector:
    w: tuple
    seed: int
    attempts: int = 1

    def __iter__(self):
        return iter(self.w)

    def __len__(self):
        return len(self.w)


def equal_subset_sums(w):
    """Disjoint equal-size subsets S, T with equal sums, or None.

    Any cycle in a cell's block graph forces such a relation, so None
    certifies that every cell meeting is transversal.
    """
    r = len(w)
    for m in range(1, r // 2 + 1):
        seen = {}
        for sub in combinations(range(r), m):
            s = sum(w[i] for i in sub)
            if s in seen:
                a, b = set(seen[s]), set(sub)
                return sorted(a - b), sorted(b - a)
            seen[s] = sub
    return None


@dataclass
class TransversalityCertificate:
    ok: bool
    witnesses: list = field(default_factory=list)
    method: str = ""

    def __bool__(self):
        return self.ok


def _bergman_pair(x: HFan, y: HFan):
    return x.is_bergman and y.is_bergman and x.sign == 1 and y.sign == -1


def _pair_translation(x: HFan, y: HFan):
    # x = a + B(M1), y = b - B(M2): the meeting is a + (B(M1) ∩ ((b - a) - B(M2)))
    return tuple(bb - aa for aa, bb in zip(x.apex, y.apex))


def transversality_certificate(x: HFan, y: HFan, max_pairs=MAX_PAIRS) -> TransversalityCertificate:
    """True only when every meeting of a cone of x with a cone of y is transversal.

    Bergman pairs first try the subset-sum criterion.  Otherwise every cone
    pair is checked; when that is too large the answer is a conservative False.
    """
    if _bergman_pair(x, y):
        rel = equal_subset_sums(_pair_translation(x, y))
        if rel is None:
            return TransversalityCertificate(True, [], "subset-sums")
        if len(x.cones) * len(y.cones) > max_pairs:
            return TransversalityCertificate(
                False, [{"equal_sums": rel}], "subset-sums (inconclusive, too many cone pairs)")
    bad = nontransversal_witnesses(x, y, max_pairs)
    wit = [{"sigma": [list(r) for r in m.sigma.rays], "tau": [list(r) for r in m.tau.rays],
            "point": [str(c) for c in m.point], "dim": m.dim} for m in bad]
    return TransversalityCertificate(not wit, wit, "cone-pairs")


def sample_translation(r, seed, fan: HFan | None = None, bound=DEFAULT_W_BOUND,
                       retries=W_RETRIES) -> TranslationVector:
    """Integer w in [-bound, bound]^r with w_0 = 0, resampled until certified."""
    if r < 2:
        raise ValueError("need r >= 2")
    rng = random.Random(seed)
    for attempt in range(1, retries + 1):
        raw = [rng.randint(-bound, bound) for _ in range(r)]
        w = tuple(Fraction(v - raw[0]) for v in raw)
        if fan is not None:
            if transversality_certificate(fan, reflect_translate(fan, w)):
                return TranslationVector(w, seed, attempt)
        elif equal_subset_sums(w) is None:
            return TranslationVector(w, seed, attempt)
    raise ResourceLimitError(f"no certified translation after {retries} draws (seed {seed})")


def _flag_curve(x: HFan, y: HFan, method):
    a = x.apex
    fi = FlagIntersection(x.matroid, y.matroid, _pair_translation(x, y))
    shift = lambda p: normalize([u + v for u, v in zip(p, a)])
    if fi.dim == 0:
        pts = {shift(p): wt for p, wt in fi.points().items()}
        return assemble(x.ambient, pts, []), fi
    vertices, edges = fi.trace() if method == "trace" else fi.exhaustive()
    # every component of a balanced curve has a ray, so matching ray sets rule out missed components
    rays = {k for k, c in edges.items() if c.lo_vertex is None or c.hi_vertex is None}
    expected_rays = fi.ray_cells()
    if rays != expected_rays:
        raise DisconnectedCurveError(
            f"unexpected disconnected tropical curve: {len(expected_rays - rays)} ray cells "
            f"not reached from the start edge")
    pts = {shift(p): 0 for p in vertices.values()}
    cells = []
    for e in edges.values():
        lo = None if e.lo_vertex is None else shift(vertices[e.lo_vertex])
        hi = None if e.hi_vertex is None else shift(vertices[e.hi_vertex])
        if e.lo is None and e.hi is None:
            t = Fraction(0)
        elif e.lo is None:
            t = e.hi - 1
        elif e.hi is None:
            t = e.lo + 1
        else:
            t = (e.lo + e.hi) / 2
        cells.append(OneCell(lo, hi, e.direction, e.weight, shift(e.point(t))))
    return assemble(x.ambient, pts, cells), fi


def _cone_curve(x: HFan, y: HFan, max_pairs):
    points, meetings = cone_pair_cells(x, y, max_pairs)
    cells = [OneCell(m.lo, m.hi, m.direction, m.weight, m.point) for m in meetings]
    return assemble(x.ambient, points, cells)


def stable_intersection(x: HFan, y: HFan, method="auto", max_pairs=MAX_PAIRS) -> TropicalCurve:
    """The intersection complex of two transversally meeting fans, with weights.

    method: 'trace' walks the curve cell by cell from one edge, 'cells'
    enumerates every top cell of the flag calculus, 'cones' intersects all
    cone pairs directly.  'auto' picks 'trace' for Bergman pairs.
    """
    if x.ambient != y.ambient:
        raise ValueError("fans live in different ambient spaces")
    if method == "auto":
        method = "trace" if _bergman_pair(x, y) else "cones"
    if method in ("trace", "cells"):
        if not _bergman_pair(x, y):
            raise ValueError(f"method {method!r} needs a Bergman fan and a reflected one")
        curve, fi = _flag_curve(x, y, method)
        curve.certificates["transversal"] = True  # the flag engine raises otherwise
        curve.certificates["method"] = method
        curve.certificates["cells_solved"] = fi.stats["cells_solved"]
        curve.certificates["rays_complete"] = fi.dim == 1
    elif method == "cones":
        curve = _cone_curve(x, y, max_pairs)
        curve.certificates["transversal"] = True
        curve.certificates["method"] = "cones"
    else:
        raise ValueError(f"unknown method {method!r}")
    certify(curve)
    return curve


def certify(curve: TropicalCurve):
    bal = check_balancing(curve)
    curve.certificates.update(
        balanced=bal.balanced,
        balancing_lemma=bal.lemma_ok,
        smooth=check_smoothness(curve),
        multiplicities_one=multiplicities_one(curve),
        connected=components(curve) == 1,
    )
    return curve


def fine_cell_count(x: HFan, y: HFan):
    """(vertices, edges) of the fine complex, by exhaustive flag enumeration."""
    fi = FlagIntersection(x.matroid, y.matroid, _pair_translation(x, y))
    v, e = fi.exhaustive()
    return len(v), len(e)
