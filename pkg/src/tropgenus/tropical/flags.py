"""Cells of B(M1) ∩ (w - B(M2)) indexed by pairs of flags of flats.

A point x of the fine Bergman fan of M1 is constant on the blocks of an
ordered partition P whose prefix unions are flats, with values strictly
decreasing along P.  Likewise y = w - x for M2 with a partition Q.  A pair
(P, Q) therefore asks for numbers a_B, b_C with

    a_B + b_C = w_i   for every element i in B ∩ C,

plus the two strict orders.  Reading blocks as nodes and elements as edges,
the pair is transversal exactly when this bipartite graph H is a forest, and
the cell then has dimension (#components of H) - 1.  Vertices of the curve are
spanning trees; edges are two-component forests with both flags maximal.

Keys of cells are (P, Q) with P, Q tuples of block bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import CertificateError, TransversalityError
from ..linalg import lattice_index_mod_ones, strict_feasible_point
from ..matroid import Matroid, contraction, elements, expand_mask, restriction
from .fan import indicator, normalize


@dataclass(frozen=True)
class EdgeCell:
    key: tuple
    lo: Fraction | None          # None for -infinity
    hi: Fraction | None          # None for +infinity
    lo_vertex: tuple | None
    hi_vertex: tuple | None
    base: tuple                  # point at t = 0
    direction: tuple             # indicator of the moving elements
    weight: int

    def point(self, t):
        return normalize(tuple(b + t * d for b, d in zip(self.base, self.direction)))


class FlagIntersection:
    """Exact cell calculus for X = B(M1) and Y = w - B(M2) in R^r / R·1."""

    def __init__(self, m1: Matroid, m2: Matroid, w):
        if m1.ground_size != m2.ground_size or len(w) != m1.ground_size:
            raise ValueError("matroids and translation must share the ground set")
        if m1.loops() or m2.loops():
            raise CertificateError("matroid with loops has an empty Bergman fan")
        self.m1, self.m2 = m1, m2
        self.r = m1.ground_size
        w = [Fraction(x) for x in w]
        # integral translations keep all cell values integral; plain ints are much faster
        self.w = tuple(int(x) if x.denominator == 1 else x for x in w)
        self.dim = m1.rank + m2.rank - self.r - 1
        if self.dim not in (0, 1):
            raise ValueError(f"expected a 0- or 1-dimensional intersection, got {self.dim}")
        self.full = m1.full
        self.stats = {"cells_solved": 0, "q_nodes": 0}

    # -- solving a single cell ------------------------------------------------

    def _blocks_of(self, P):
        pb = [0] * self.r
        for j, B in enumerate(P):
            for i in elements(B):
                pb[i] = j
        return pb

    def _merge(self, comp, val, els, pb, w):
        """Force a_{pb[i]} - a_{pb[i0]} = w_i - w_i0 for i in els.

        Returns 'ok', 'cycle' (consistent, so not transversal) or 'clash'.
        """
        i0 = els[0]
        j0 = pb[i0]
        status = "ok"
        for i in els[1:]:
            j = pb[i]
            need = w[i] - w[i0]
            if comp[j] == comp[j0]:
                if val[j] - val[j0] == need:
                    status = "cycle"
                    continue
                return "clash"
            off = val[j0] + need - val[j]
            old, new = comp[j], comp[j0]
            for t in range(len(comp)):
                if comp[t] == old:
                    comp[t] = new
                    val[t] += off
        return status

    def _solve_raw(self, key):
        P, Q = key
        pb = self._blocks_of(P)
        comp = list(range(len(P)))
        val = [0] * len(P)
        qrep = []
        status = "ok"
        for C in Q:
            els = elements(C)
            st = self._merge(comp, val, els, pb, self.w)
            if st == "clash":
                return comp, val, qrep, pb, st
            if st == "cycle":
                status = st
            qrep.append(els[0])
        return comp, val, qrep, pb, status

    def solve(self, key):
        """(comp, val, qrep, pb): component label and value of every P-block.

        Values are relative within a component; Q-block c has value
        w[qrep[c]] - val[pb[qrep[c]]].  Raises TransversalityError on a cycle.
        """
        comp, val, qrep, pb, st = self._solve_raw(key)
        if st != "ok":
            raise TransversalityError(f"cell {self.describe(key)} is not a forest ({st})")
        self.stats["cells_solved"] += 1
        return comp, val, qrep, pb

    def _constraints(self, key, comp, val, qrep, pb, moving):
        """Strict inequalities c + k t > 0 for consecutive blocks; `moving` is the shifted component."""
        out = []
        for j in range(len(key[0]) - 1):
            s0, s1 = comp[j] == moving, comp[j + 1] == moving
            out.append((val[j] - val[j + 1], int(s0) - int(s1), ("P", j)))
        b = [self.w[i] - val[pb[i]] for i in qrep]
        for c in range(len(key[1]) - 1):
            s0, s1 = comp[pb[qrep[c]]] == moving, comp[pb[qrep[c + 1]]] == moving
            out.append((b[c] - b[c + 1], -(int(s0) - int(s1)), ("Q", c)))
        return out

    def point_of(self, key):
        """Coordinates of a vertex cell (H a spanning tree)."""
        comp, val, qrep, pb = self.solve(key)
        if len(set(comp)) != 1:
            raise CertificateError(f"{self.describe(key)} is not a vertex cell")
        for c, k, which in self._constraints(key, comp, val, qrep, pb, None):
            if c <= 0:
                raise CertificateError(f"vertex cell {self.describe(key)} violates {which}")
        return normalize([val[j] for j in pb])

    def edge_cell(self, key) -> EdgeCell:
        P, Q = key
        comp, val, qrep, pb = self.solve(key)
        labels = sorted(set(comp))
        if len(labels) != 2:
            raise CertificateError(f"{self.describe(key)} is not an edge cell")
        moving = comp[pb[0]] ^ labels[0] ^ labels[1]  # the component not holding element 0
        lo = hi = None
        lo_w, hi_w = [], []
        for c, k, which in self._constraints(key, comp, val, qrep, pb, moving):
            if k == 0:
                if c <= 0:
                    raise CertificateError(f"edge cell {self.describe(key)} is empty")
                continue
            t = Fraction(-c) / k
            if k > 0:
                if lo is None or t > lo:
                    lo, lo_w = t, [which]
                elif t == lo:
                    lo_w.append(which)
            else:
                if hi is None or t < hi:
                    hi, hi_w = t, [which]
                elif t == hi:
                    hi_w.append(which)
        if lo is not None and hi is not None and lo >= hi:
            raise CertificateError(f"edge cell {self.describe(key)} is empty")
        if len(lo_w) > 1 or len(hi_w) > 1:
            raise TransversalityError(f"edge cell {self.describe(key)} ends at a degenerate vertex")
        U = sum(1 << i for i in range(self.r) if comp[pb[i]] == moving)
        direction = indicator(U, self.r)
        base = tuple(val[pb[i]] for i in range(self.r))
        return EdgeCell(key, lo, hi,
                        self._merged(key, lo_w[0]) if lo_w else None,
                        self._merged(key, hi_w[0]) if hi_w else None,
                        base, direction, self.weight(key))

    @staticmethod
    def _merged(key, which):
        side, j = which
        P, Q = key
        blocks = P if side == "P" else Q
        joined = blocks[:j] + (blocks[j] | blocks[j + 1],) + blocks[j + 2:]
        return (joined, Q) if side == "P" else (P, joined)

    def weight(self, key):
        P, Q = key
        vecs = [indicator(B, self.r) for B in P] + [indicator(C, self.r) for C in Q]
        return lattice_index_mod_ones(vecs, self.r)

    def describe(self, key):
        return "P=" + "|".join(str(elements(B)) for B in key[0]) + \
            " Q=" + "|".join(str(elements(C)) for C in key[1])

    # -- local structure at a vertex -----------------------------------------

    def vertex_edges(self, key):
        """Edge cells containing a vertex: split the unique rank-2 jump block at each atom."""
        P, Q = key
        if len(P) < self.m1.rank:
            m, blocks, side = self.m1, P, "P"
        elif len(Q) < self.m2.rank:
            m, blocks, side = self.m2, Q, "Q"
        else:
            raise CertificateError(f"{self.describe(key)} has both flags maximal")
        prefix = 0
        for j, B in enumerate(blocks):
            nxt = prefix | B
            if m.rank_of(nxt) - m.rank_of(prefix) == 2:
                break
            prefix = nxt
        else:
            raise CertificateError(f"no rank-2 jump in {self.describe(key)}")
        out = []
        for A in m.covers(prefix):
            if A & ~nxt:
                continue
            split = blocks[:j] + (A & ~prefix, nxt & ~A) + blocks[j + 1:]
            out.append((split, Q) if side == "P" else (P, split))
        return out

    # -- enumeration of maximal pairs ----------------------------------------

    def maximal_p_flags(self):
        m = self.m1

        def rec(prev, blocks):
            if prev == self.full:
                yield tuple(blocks)
                return
            for f in m.covers(prev):
                yield from rec(f, blocks + [f & ~prev])

        yield from rec(0, [])

    def _order_ok(self, comp, val, qrep, pb):
        k1 = len(comp)
        for j in range(k1):
            for j2 in range(j + 1, k1):
                if comp[j] == comp[j2] and val[j] <= val[j2]:
                    return False
        for c in range(len(qrep)):
            for c2 in range(c + 1, len(qrep)):
                bj, bj2 = pb[qrep[c]], pb[qrep[c2]]
                if comp[bj] == comp[bj2]:
                    if (self.w[qrep[c]] - val[bj]) <= (self.w[qrep[c2]] - val[bj2]):
                        return False
        return True

    def pairs_for(self, P):
        """All maximal Q making (P, Q) a nonempty top-dimensional cell."""
        pb = self._blocks_of(P)
        m2 = self.m2
        want = self.dim + 1
        found = []

        def rec(prev, qblocks, qrep, comp, val, cyclic):
            self.stats["q_nodes"] += 1
            if prev == self.full:
                key = (P, tuple(qblocks))
                ncomp = len(set(comp))
                if cyclic:
                    self._check_cyclic(key, comp, val, qrep, pb)
                    return
                if ncomp != want:
                    return
                if self._nonempty(key, comp, val, qrep, pb):
                    found.append(key)
                return
            for f in m2.covers(prev):
                C = f & ~prev
                els = elements(C)
                comp2, val2 = comp[:], val[:]
                st = self._merge(comp2, val2, els, pb, self.w)
                if st == "clash":
                    continue
                qrep2 = qrep + [els[0]]
                if not self._order_ok(comp2, val2, qrep2, pb):
                    continue
                rec(f, qblocks + [C], qrep2, comp2, val2, cyclic or st == "cycle")

        rec(0, [], [], list(range(len(P))), [0] * len(P), False)
        return found

    def _nonempty(self, key, comp, val, qrep, pb):
        if self.dim == 0:
            return all(c > 0 for c, _, _ in self._constraints(key, comp, val, qrep, pb, None))
        labels = sorted(set(comp))
        moving = comp[pb[0]] ^ labels[0] ^ labels[1]
        ineqs = [([k], c) for c, k, _ in self._constraints(key, comp, val, qrep, pb, moving)]
        return strict_feasible_point(ineqs, 1) is not None

    def _check_cyclic(self, key, comp, val, qrep, pb):
        """A consistent cycle in a nonempty cell means the fans meet non-transversally."""
        labels = sorted(set(comp))
        base = comp[pb[0]]
        free = [c for c in labels if c != base]
        ineqs = []
        for j in range(len(key[0]) - 1):
            a = [int(comp[j] == c) - int(comp[j + 1] == c) for c in free]
            ineqs.append((a, val[j] - val[j + 1]))
        b = [self.w[i] - val[pb[i]] for i in qrep]
        for c in range(len(qrep) - 1):
            j, j2 = pb[qrep[c]], pb[qrep[c + 1]]
            a = [-(int(comp[j] == f) - int(comp[j2] == f)) for f in free]
            ineqs.append((a, b[c] - b[c + 1]))
        if strict_feasible_point(ineqs, len(free)) is not None:
            raise TransversalityError(f"non-transversal meeting in cell {self.describe(key)}")

    def flag_pair_cells(self):
        """Top cells by running through every maximal P; a slow second route for tests."""
        out = []
        for P in self.maximal_p_flags():
            out.extend(self.pairs_for(P))
        return out

    def grid_cells(self, first_only=False):
        """Top cells by placing elements on the (P-block, Q-block) grid.

        Element i sits at (j, c) with w_i = a_j + b_c, strictly decreasing in
        both indices.  Taking elements by decreasing w, a new element may not
        land weakly below-left of a placed one.  Rows grow maximal chains of
        M1 and columns maximal chains of M2, so partial prefixes must keep
        rank at most j + 1 and must not span an element placed further down.
        """
        r1, r2 = self.m1.rank, self.m2.rank
        rk1, rk2 = self.m1.rank_table, self.m2.rank_table
        w = self.w
        order = sorted(range(self.r), key=lambda i: w[i], reverse=True)
        want = self.dim + 1
        nodes = r1 + r2
        found = []

        def prefix_ok(pre, rk, k, placed):
            # pre[j] = elements in blocks <= j
            for j in range(k):
                m = pre[j]
                if rk[m] > j + 1:
                    return False
                rest = placed & ~m
                base = rk[m]
                while rest:
                    low = rest & -rest
                    if rk[m | low] == base:
                        return False
                    rest ^= low
            return True

        def order_ok(comp, val):
            for lo, hi in ((0, r1), (r1, nodes)):
                for u in range(lo, hi):
                    for v in range(u + 1, hi):
                        if comp[u] == comp[v] and val[u] <= val[v]:
                            return False
            return True

        def rec(t, pos, pre1, pre2, comp, val, cyclic):
            self.stats["q_nodes"] += 1
            if t == self.r:
                leaf(pos, pre1, pre2)
                return
            e = order[t]
            bit = 1 << e
            placed = pre1[-1]
            for j in range(r1):
                for c in range(r2):
                    if any(j <= j0 and c <= c0 and (j, c) != (j0, c0) for j0, c0 in pos):
                        continue
                    n1 = pre1[:j] + [m | bit for m in pre1[j:]]
                    if not prefix_ok(n1, rk1, r1, placed | bit):
                        continue
                    n2 = pre2[:c] + [m | bit for m in pre2[c:]]
                    if not prefix_ok(n2, rk2, r2, placed | bit):
                        continue
                    u, v = j, r1 + c
                    comp2, val2 = comp[:], val[:]
                    cyc = cyclic
                    if comp2[u] == comp2[v]:
                        if val2[u] + val2[v] != w[e]:
                            continue
                        cyc = True
                    else:
                        d = w[e] - val2[u] - val2[v]
                        old, new = comp2[v], comp2[u]
                        for x in range(nodes):
                            if comp2[x] == old:
                                comp2[x] = new
                                val2[x] += d if x >= r1 else -d
                    if not order_ok(comp2, val2):
                        continue
                    if not alive(pos + [(j, c)], n1, n2, self.r - t - 1):
                        continue
                    rec(t + 1, pos + [(j, c)], n1, n2, comp2, val2, cyc)
                    if first_only and found:
                        return

        def alive(pos, pre1, pre2, left):
            empty_rows = [j for j in range(r1) if pre1[j] == (pre1[j - 1] if j else 0)]
            empty_cols = [c for c in range(r2) if pre2[c] == (pre2[c - 1] if c else 0)]
            if max(len(empty_rows), len(empty_cols)) > left:
                return False
            for j in empty_rows:
                if max((c0 for j0, c0 in pos if j0 >= j), default=-1) >= r2 - 1:
                    return False
            for c in empty_cols:
                if max((j0 for j0, c0 in pos if c0 >= c), default=-1) >= r1 - 1:
                    return False
            return True

        def leaf(pos, pre1, pre2):
            for pre, m in ((pre1, self.m1), (pre2, self.m2)):
                if any(m.rank_of(f) != j + 1 or m.closure(f) != f for j, f in enumerate(pre)):
                    return
            P = tuple(pre1[j] & ~(pre1[j - 1] if j else 0) for j in range(r1))
            Q = tuple(pre2[c] & ~(pre2[c - 1] if c else 0) for c in range(r2))
            key = (P, Q)
            comp, val, qrep, pb, status = self._solve_raw(key)
            if status == "cycle":
                self._check_cyclic(key, comp, val, qrep, pb)
                return
            if status != "ok" or len(set(comp)) != want:
                return
            if self._nonempty(key, comp, val, qrep, pb):
                found.append(key)

        rec(0, [], [0] * r1, [0] * r2, list(range(nodes)), [0] * nodes, False)
        return found

    def all_top_cells(self):
        return self.grid_cells()

    def find_start(self):
        """One top cell.  For curves, a ray cell whose two halves are small is far cheaper."""
        if self.dim == 1:
            cands = sorted(self._ray_splits(), key=lambda s: max(s[0][2].bit_count(), s[1][2].bit_count()))
            for sides in cands:
                keys = self._ray_keys(sides, first_only=True)
                if keys:
                    return keys[0]
        hits = self.grid_cells(first_only=True)
        return hits[0] if hits else None

    # -- assembling the fine complex ------------------------------------------

    def points(self):
        """Isolated intersection points (zero-dimensional case): {point: weight}."""
        if self.dim != 0:
            raise ValueError("intersection is not zero-dimensional")
        return {self.point_of(k): self.weight(k) for k in self.all_top_cells()}

    def trace(self, start=None):
        """Walk the connected fine complex containing `start` (default: a found start edge)."""
        if start is None:
            start = self.find_start()
            if start is None:
                return {}, {}
        edges, vertices = {}, {}
        todo = [start]
        while todo:
            key = todo.pop()
            if key in edges:
                continue
            cell = self.edge_cell(key)
            edges[key] = cell
            for v in (cell.lo_vertex, cell.hi_vertex):
                if v is None or v in vertices:
                    continue
                vertices[v] = self.point_of(v)
                todo.extend(e for e in self.vertex_edges(v) if e not in edges)
        self._check_local(vertices, edges)
        return vertices, edges

    def exhaustive(self):
        """Every top cell, found without walking; the cross-check for `trace`."""
        edges = {k: self.edge_cell(k) for k in self.all_top_cells()}
        vertices = {}
        for cell in edges.values():
            for v in (cell.lo_vertex, cell.hi_vertex):
                if v is not None and v not in vertices:
                    vertices[v] = self.point_of(v)
        self._check_local(vertices, edges)
        return vertices, edges

    def ray_cells(self):
        """Keys of all unbounded edge cells, without walking the curve.

        Far out along 1_U the flag P has U as a prefix and Q has U^c as a
        prefix, so a ray cell is a pair of zero-dimensional cells: one for
        (M1|U, M2/U^c) on U and one for (M1/U, M2|U^c) on U^c.
        """
        if self.dim != 1:
            raise ValueError("rays only make sense for curves")
        out = set()
        for sides in self._ray_splits():
            out.update(self._ray_keys(sides))
        return out

    def _ray_splits(self):
        flats2 = self.m2.flat_set()
        for level in self.m1.flats():
            for U in level:
                Uc = self.full & ~U
                if U == 0 or Uc == 0 or Uc not in flats2:
                    continue
                yield ((restriction(self.m1, U), contraction(self.m2, Uc), U),
                       (contraction(self.m1, U), restriction(self.m2, Uc), Uc))

    def _ray_keys(self, sides, first_only=False):
        order = sorted(range(2), key=lambda k: sides[k][2].bit_count())
        found = [None, None]
        for k in order:
            found[k] = self._sub_points(*sides[k], first_only=first_only)
            if not found[k]:
                return []
        inner, outer = found
        return [(pu + pc, qc + qu) for pu, qu in inner for pc, qc in outer]

    def _sub_points(self, n1, n2, support, first_only=False):
        sup = elements(support)
        if n1.rank + n2.rank - len(sup) - 1 != 0:
            return []
        sub = FlagIntersection(n1, n2, [self.w[i] for i in sup])
        lift = lambda blocks: tuple(expand_mask(b, sup) for b in blocks)
        return [(lift(P), lift(Q)) for P, Q in sub.grid_cells(first_only=first_only)]

    def _check_local(self, vertices, edges):
        incident = {v: set() for v in vertices}
        for k, cell in edges.items():
            for v in (cell.lo_vertex, cell.hi_vertex):
                if v is not None:
                    incident[v].add(k)
        for v in vertices:
            star = set(self.vertex_edges(v))
            if star != incident[v]:
                raise CertificateError(
                    f"star of vertex {self.describe(v)} does not match its edge cells")
