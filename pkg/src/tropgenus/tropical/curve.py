"""Embedded weighted tropical curves in R^r / R·1 and their invariants."""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple

from ..errors import CertificateError, DisconnectedCurveError
from ..linalg import lattice_index_mod_ones, primitive_mod_ones, rank, smith_invariants
from .fan import normalize


def _integral(v):
    """Scale a rational vector to a primitive integer direction modulo 1."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // math.gcd(den, Fraction(x).denominator)
    d = primitive_mod_ones([int(Fraction(x) * den) for x in v])
    if not any(d):
        raise CertificateError("zero direction modulo the all-ones line")
    return d


def neg(d):
    """-d as a canonical (minimum zero) representative."""
    return primitive_mod_ones([-x for x in d]) if any(d) else tuple(d)


def _shift(d):
    lo = min(d)
    return tuple(x - lo for x in d)


def _is_zero_mod_ones(v):
    return len(set(v)) <= 1


@dataclass(frozen=True)
class Edge:
    """A segment (two vertex indices), ray (one) or line (none, with an anchor point).

    `direction` points away from ends[0]; it is stored modulo 1 with minimum 0.
    """

    kind: str
    ends: tuple
    direction: tuple
    weight: int = 1
    anchor: tuple | None = None

    @property
    def bounded(self):
        return self.kind == "segment"


@dataclass
class TropicalCurve:
    ambient: int
    vertices: list
    edges: list
    certificates: dict = field(default_factory=dict)
    vertex_weights: dict = field(default_factory=dict)
    cell_weights: list = field(default_factory=list)
    fine_size: tuple = (0, 0)

    def adjacency(self):
        """vertex index -> list of (edge index, outgoing direction, weight)."""
        adj = {i: [] for i in range(len(self.vertices))}
        for k, e in enumerate(self.edges):
            if e.kind == "segment":
                adj[e.ends[0]].append((k, e.direction, e.weight))
                adj[e.ends[1]].append((k, neg(e.direction), e.weight))
            elif e.kind == "ray":
                adj[e.ends[0]].append((k, e.direction, e.weight))
        return adj

    @property
    def bounded_edges(self):
        return [e for e in self.edges if e.bounded]

    @property
    def unbounded_edges(self):
        return [e for e in self.edges if not e.bounded]

    def canonical(self):
        """Hashable form independent of construction order."""
        order = sorted(range(len(self.vertices)), key=lambda i: self.vertices[i])
        pos = {old: new for new, old in enumerate(order)}
        keys = []
        for e in self.edges:
            if e.kind == "segment":
                a, b = pos[e.ends[0]], pos[e.ends[1]]
                d = e.direction
                if a > b:
                    a, b, d = b, a, neg(d)
                keys.append(("segment", (a, b), d, e.weight))
            elif e.kind == "ray":
                keys.append(("ray", (pos[e.ends[0]],), e.direction, e.weight))
            else:
                d = min(e.direction, neg(e.direction))
                keys.append(("line", _line_anchor(e.anchor, d), d, e.weight))
        verts = tuple(tuple(self.vertices[i]) for i in order)
        vw = tuple(sorted((pos[i], w) for i, w in self.vertex_weights.items()))
        return (self.ambient, verts, tuple(sorted(keys)), vw)

    def same_as(self, other):
        return self.canonical() == other.canonical()

    def digest(self):
        return hashlib.sha256(repr(self.canonical()).encode()).hexdigest()[:16]

    def reflected(self, w):
        """The curve {w - x}."""
        w = [Fraction(x) for x in w]
        verts = [normalize([a - b for a, b in zip(w, v)]) for v in self.vertices]
        edges = []
        for e in self.edges:
            anchor = None if e.anchor is None else normalize([a - b for a, b in zip(w, e.anchor)])
            edges.append(Edge(e.kind, e.ends, neg(e.direction), e.weight, anchor))
        return TropicalCurve(self.ambient, verts, edges, dict(self.certificates),
                             dict(self.vertex_weights))

    def to_dict(self, projection=None):
        out = {
            "ambient_dim": self.ambient,
            "vertices": [[str(x) for x in v] for v in self.vertices],
            "edges": [],
            "certificates": dict(self.certificates),
        }
        for e in self.edges:
            item = {"weight": e.weight, "bounded": e.bounded, "kind": e.kind}
            if e.kind == "segment":
                item.update(v0=e.ends[0], v1=e.ends[1])
            elif e.kind == "ray":
                item.update(v0=e.ends[0], dir=list(e.direction))
            else:
                item.update(point=[str(x) for x in e.anchor], dir=list(e.direction))
            out["edges"].append(item)
        if projection:
            out["projection"] = {
                "dim": projection,
                "vertices": [project(v, projection) for v in self.vertices],
                "directions": [project(e.direction, projection) for e in self.edges],
            }
        return out

    def to_json(self, projection=None, genus=None):
        d = self.to_dict(projection)
        if genus is not None:
            d["genus"] = genus
        return json.dumps(d, separators=(",", ":"))


def _line_anchor(p, d):
    dn = [x - d[0] for x in d]
    j = next(i for i, x in enumerate(dn) if x)
    t = -Fraction(p[j]) / dn[j]
    return normalize([a + t * b for a, b in zip(p, dn)])


def project(v, dim):
    """Orthogonal projection onto the first `dim` Helmert axes of the complement of 1."""
    r = len(v)
    x = [float(a) for a in v]
    out = []
    for k in range(1, min(dim, r - 1) + 1):
        s = sum(x[:k]) - k * x[k]
        out.append(s / math.sqrt(k * (k + 1)))
    return out


# -- assembly -----------------------------------------------------------------

class OneCell(NamedTuple):
    lo: tuple | None
    hi: tuple | None
    direction: tuple        # rational, from lo towards hi
    weight: int
    anchor: tuple           # some point of the cell


def assemble(ambient, points, cells, merge=True):
    """Build a curve from 0-cells (`points`: coordinate -> weight) and OneCells.

    Endpoints of 1-cells must be among the points; identification is by exact
    coordinates.  With `merge`, 2-valent vertices where the curve goes straight
    through with equal weights are erased.
    """
    verts = sorted(points)
    idx = {v: i for i, v in enumerate(verts)}
    edges = []
    for c in cells:
        d = _integral(c.direction)
        for end in (c.lo, c.hi):
            if end is not None and end not in idx:
                raise CertificateError(f"1-cell endpoint {[str(x) for x in end]} is not a 0-cell")
        if c.lo is not None and c.hi is not None:
            edges.append(Edge("segment", (idx[c.lo], idx[c.hi]), d, c.weight))
        elif c.lo is not None:
            edges.append(Edge("ray", (idx[c.lo],), d, c.weight))
        elif c.hi is not None:
            edges.append(Edge("ray", (idx[c.hi],), neg(d), c.weight))
        else:
            edges.append(Edge("line", (), d, c.weight, normalize(c.anchor)))
    vw = {idx[p]: w for p, w in points.items() if w}
    curve = TropicalCurve(ambient, verts, edges, vertex_weights=vw,
                          cell_weights=[c.weight for c in cells],
                          fine_size=(len(verts), len(edges)))
    return merge_straight_vertices(curve) if merge else curve


def merge_straight_vertices(curve: TropicalCurve) -> TropicalCurve:
    """Erase vertices of valency 2 whose two edges continue each other."""
    verts = list(curve.vertices)
    edges = {k: e for k, e in enumerate(curve.edges)}
    nxt = len(edges)
    alive = set(range(len(verts))) - set(curve.vertex_weights)

    def incident(v):
        out = []
        for k, e in edges.items():
            if e.kind == "segment":
                if e.ends[0] == v:
                    out.append((k, e.direction, e.ends[1]))
                if e.ends[1] == v:
                    out.append((k, neg(e.direction), e.ends[0]))
            elif e.kind == "ray" and e.ends[0] == v:
                out.append((k, e.direction, None))
        return out

    removed = set()
    changed = True
    while changed:
        changed = False
        for v in sorted(alive - removed):
            inc = incident(v)
            if len(inc) != 2:
                continue
            (k1, d1, a), (k2, d2, b) = inc
            if d2 != neg(d1) or edges[k1].weight != edges[k2].weight or k1 == k2:
                continue
            wt = edges[k1].weight
            del edges[k1], edges[k2]
            if a is not None and b is not None:
                new = Edge("segment", (a, b), d2, wt)
            elif a is not None:
                new = Edge("ray", (a,), d2, wt)
            elif b is not None:
                new = Edge("ray", (b,), d1, wt)
            else:
                new = Edge("line", (), d2, wt, verts[v])
            edges[nxt] = new
            nxt += 1
            removed.add(v)
            changed = True
    keep = [i for i in range(len(verts)) if i not in removed]
    pos = {old: new for new, old in enumerate(keep)}
    out_edges = [Edge(e.kind, tuple(pos[i] for i in e.ends), e.direction, e.weight, e.anchor)
                 for _, e in sorted(edges.items())]
    vw = {pos[i]: w for i, w in curve.vertex_weights.items()}
    return TropicalCurve(curve.ambient, [verts[i] for i in keep], out_edges,
                         dict(curve.certificates), vw, list(curve.cell_weights), curve.fine_size)


# -- certificates -------------------------------------------------------------

class BalanceReport(NamedTuple):
    balanced: bool
    lemma_ok: bool
    degenerate: list       # 2-valent vertices with opposite directions
    failures: list         # (vertex, reason)

    def __bool__(self):
        return self.balanced and self.lemma_ok


MAX_SUBSET_VALENCY = 16


def check_balancing(c: TropicalCurve) -> BalanceReport:
    """Weighted outgoing directions sum to 0 at each vertex, and no proper subset does."""
    balanced, lemma_ok = True, True
    degenerate, failures = [], []
    for v, inc in c.adjacency().items():
        if not inc:
            continue
        vecs = [[wt * x for x in d] for _, d, wt in inc]
        total = [sum(col) for col in zip(*vecs)]
        if not _is_zero_mod_ones(total):
            balanced = False
            failures.append((v, "unbalanced"))
        k = len(vecs)
        if k == 2 and _is_zero_mod_ones(total):
            degenerate.append(v)
        if k > MAX_SUBSET_VALENCY:
            failures.append((v, "valency too large for the subset test"))
            lemma_ok = False
            continue
        for size in range(1, k):
            for sub in combinations(vecs, size):
                if _is_zero_mod_ones([sum(col) for col in zip(*sub)]):
                    lemma_ok = False
                    failures.append((v, f"a proper subset of size {size} balances"))
                    break
            else:
                continue
            break
    return BalanceReport(balanced, lemma_ok, degenerate, failures)


def check_smoothness(c: TropicalCurve) -> bool:
    """Weights 1, and every vertex star is a tropical line star.

    For valency k the directions sum to 0 and every k-1 of them, together
    with 1, span a saturated rank-k lattice.
    """
    if any(e.weight != 1 for e in c.edges):
        return False
    r = c.ambient
    for v, inc in c.adjacency().items():
        dirs = [d for _, d, _ in inc]
        k = len(dirs)
        if k == 0:
            continue
        if not _is_zero_mod_ones([sum(col) for col in zip(*dirs)]):
            return False
        for sub in combinations(dirs, k - 1):
            cols = [list(d) for d in sub] + [[1] * r]
            inv = smith_invariants([[col[i] for col in cols] for i in range(r)])
            if len(inv) != k or any(x != 1 for x in inv):
                return False
    return True


def multiplicities_one(c: TropicalCurve) -> bool:
    return all(w == 1 for w in c.cell_weights) and all(e.weight == 1 for e in c.edges)


def components(c: TropicalCurve) -> int:
    parent = list(range(len(c.vertices)))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e in c.edges:
        if e.kind == "segment":
            parent[find(e.ends[0])] = find(e.ends[1])
    lines = sum(1 for e in c.edges if e.kind == "line")
    return len({find(i) for i in range(len(c.vertices))}) + lines


def betti_numbers(c: TropicalCurve):
    """(b0, b1) of the bounded subcomplex from the rank of its boundary matrix."""
    segs = c.bounded_edges
    nv = len(c.vertices)
    if not segs:
        return nv, 0
    mat = [[0] * nv for _ in segs]
    for row, e in zip(mat, segs):
        row[e.ends[0]] -= 1
        row[e.ends[1]] += 1
    rk = rank(mat)
    return nv - rk, len(segs) - rk


@dataclass(frozen=True)
class GenusReport:
    genus: int
    bounded_edge_count: int
    unbounded_edge_count: int
    vertex_count: int
    component_count: int
    r: int
    euler_genus: int
    smooth: bool
    balanced: bool

    @property
    def odd_or_zero(self):
        return self.genus == 0 or self.genus % 2 == 1

    def to_dict(self):
        d = dict(self.__dict__)
        d["odd_or_zero"] = self.odd_or_zero
        return d


def genus(c: TropicalCurve, r=None) -> GenusReport:
    """Bounded edges - vertices + 1 for a connected curve; a lone line has genus 0."""
    ncomp = components(c)
    nv, nb = len(c.vertices), len(c.bounded_edges)
    if ncomp != 1:
        raise DisconnectedCurveError(
            f"unexpected disconnected tropical curve ({ncomp} components)")
    g = 0 if nv == 0 else nb - nv + 1
    b0, b1 = betti_numbers(c)
    if nv and (b0 != 1 or b1 != g):
        raise CertificateError(f"Euler check failed: b0={b0}, b1={b1}, formula genus {g}")
    bal = check_balancing(c)
    return GenusReport(g, nb, len(c.edges) - nb, nv, ncomp, c.ambient if r is None else r,
                       b1, check_smoothness(c), bool(bal))
