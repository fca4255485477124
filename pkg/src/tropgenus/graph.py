"""Graphs, (2,3)-pebble game, rigid components, cycle bases, small-graph enumeration."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, NamedTuple

from .errors import (
    DisconnectedGraphError,
    DuplicateEdgeError,
    GraphError,
    NotOneDofError,
    ResourceLimitError,
    SelfLoopError,
    TooFewVerticesError,
)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Every edge is stored oriented tail < head; the position in `edges` is the
    stable edge label.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 2:
            raise TooFewVerticesError(f"need at least 2 vertices, got {self.vertex_count}")
        oriented = []
        seen = set()
        for a, b in self.edges:
            if a == b:
                raise SelfLoopError(f"self-loop at vertex {a}")
            if not (0 <= a < self.vertex_count and 0 <= b < self.vertex_count):
                raise GraphError(f"edge ({a}, {b}) out of range for {self.vertex_count} vertices")
            e = (min(a, b), max(a, b))
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e[0]}-{e[1]}")
            seen.add(e)
            oriented.append(e)
        object.__setattr__(self, "edges", tuple(oriented))

    @property
    def edge_count(self):
        return len(self.edges)

    def neighbours(self):
        adj = [[] for _ in range(self.vertex_count)]
        for i, (a, b) in enumerate(self.edges):
            adj[a].append((b, i))
            adj[b].append((a, i))
        return adj

    def is_connected(self):
        adj = self.neighbours()
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for v, _ in adj[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return len(seen) == self.vertex_count

    def validate(self):
        if not self.is_connected():
            raise DisconnectedGraphError("graph is not connected")
        return self

    def degrees(self):
        deg = [0] * self.vertex_count
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return deg

    def to_json(self):
        return {"n": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj):
        return cls(int(obj["n"]), tuple((int(a), int(b)) for a, b in obj["edges"]))

    def canonical(self) -> "Graph":
        return Graph(self.vertex_count, canonical_form(self.vertex_count, self.edges)[1])

    def canonical_json(self):
        return json.dumps(self.canonical().to_json(), separators=(",", ":"))


def parse_graph(text: str) -> Graph:
    """Parse an edge list: one "tail head" pair per line, '#' starts a comment.

    Commas are accepted as line separators so inline specs like "0 1,1 2,2 0" work.
    Vertex ids are renumbered densely in increasing order of the original ids.
    """
    pairs = []
    for lineno, raw in enumerate(text.replace(",", "\n").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected 'tail head', got {raw.strip()!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphError(f"line {lineno}: vertex ids must be integers") from None
        if a < 0 or b < 0:
            raise GraphError(f"line {lineno}: vertex ids must be non-negative")
        pairs.append((a, b))
    ids = sorted({v for p in pairs for v in p})
    if len(ids) < 2:
        raise TooFewVerticesError(f"need at least 2 vertices, got {len(ids)}")
    relabel = {v: i for i, v in enumerate(ids)}
    g = Graph(len(ids), tuple((relabel[a], relabel[b]) for a, b in pairs))
    return g.validate()


def parse_graph6(s: str) -> Graph:
    """Decode a graph6 string (graphs with at most 62 vertices)."""
    data = [ord(c) - 63 for c in s.strip()]
    if not data or data[0] > 62:
        raise GraphError("only graph6 with n <= 62 is supported")
    n = data[0]
    bits = []
    for x in data[1:]:
        if not 0 <= x < 64:
            raise GraphError(f"invalid graph6 character in {s!r}")
        bits.extend((x >> k) & 1 for k in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if k < len(bits) and bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, tuple(edges))


def to_graph6(g: Graph) -> str:
    n = g.vertex_count
    es = set(g.edges)
    bits = [int((i, j) in es) for j in range(1, n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    out = [chr(n + 63)]
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = 2 * x + b
        out.append(chr(x + 63))
    return "".join(out)


# --------------------------------------------------------------------------
# (2,3)-pebble game


class PebbleGame:
    """Basic (k, l) = (2, 3) pebble game on a fixed vertex set.

    `out[a]` holds the heads of edges covered by a pebble sitting on `a`.
    """

    K, L = 2, 3

    def __init__(self, n):
        self.n = n
        self.pebbles = [self.K] * n
        self.out = [[] for _ in range(n)]
        self.accepted = []

    def clone(self):
        other = PebbleGame.__new__(PebbleGame)
        other.n = self.n
        other.pebbles = list(self.pebbles)
        other.out = [list(o) for o in self.out]
        other.accepted = list(self.accepted)
        return other

    def _find_path(self, start, pinned):
        # DFS along covered edges for a vertex holding a free pebble
        prev = {start: None}
        stack = [start]
        while stack:
            u = stack.pop()
            for v in self.out[u]:
                if v in prev:
                    continue
                prev[v] = u
                if self.pebbles[v] > 0 and v not in pinned:
                    path = [v]
                    while prev[path[-1]] is not None:
                        path.append(prev[path[-1]])
                    return path[::-1]
                stack.append(v)
        return None

    def _draw(self, v, pinned):
        path = self._find_path(v, pinned | {v})
        if path is None:
            return False
        for a, b in zip(path, path[1:]):
            self.out[a].remove(b)
            self.out[b].append(a)
        self.pebbles[path[-1]] -= 1
        self.pebbles[v] += 1
        return True

    def _gather(self, u, v, target):
        while self.pebbles[u] + self.pebbles[v] < target:
            if self.pebbles[u] < self.K and self._draw(u, {v}):
                continue
            if self.pebbles[v] < self.K and self._draw(v, {u}):
                continue
            return False
        return True

    def insert(self, u, v):
        """Try to add edge uv; True if it is independent."""
        if not self._gather(u, v, self.L + 1):
            return False
        a = u if self.pebbles[u] > 0 else v
        b = v if a == u else u
        self.pebbles[a] -= 1
        self.out[a].append(b)
        self.accepted.append((u, v))
        return True

    def rigid_with(self, u, v):
        """Vertices rigidly attached to the independent edge uv."""
        if not self._gather(u, v, self.L):
            raise RuntimeError("could not gather l pebbles on an accepted edge")
        pinned = {u, v}
        comp = {u, v}
        for x in range(self.n):
            if x in comp:
                continue
            if self.pebbles[x] > 0:
                continue
            if self._find_path(x, pinned | {x}) is None:
                comp.add(x)
        return comp


def pebble_game_rank(g: Graph) -> int:
    """Rank of the edge set in the generic 2D rigidity matroid."""
    game = PebbleGame(g.vertex_count)
    return sum(game.insert(a, b) for a, b in g.edges)


class DofCheck(NamedTuple):
    ok: bool
    reason: str

    def __bool__(self):
        return self.ok


def is_one_dof(g: Graph) -> DofCheck:
    if not g.is_connected():
        return DofCheck(False, "graph is not connected")
    target = 2 * g.vertex_count - 4
    if g.edge_count != target:
        return DofCheck(False, f"edge count {g.edge_count} != 2|V|-4 = {target}")
    if pebble_game_rank(g) != g.edge_count:
        return DofCheck(False, "not (2,3)-sparse: some subgraph has |E'| > 2|V'|-3")
    return DofCheck(True, "one degree of freedom")


@dataclass(frozen=True)
class RigidComponent:
    vertices: frozenset
    edges: tuple[int, ...]
    selected: int
    tree: tuple[int, ...]


@dataclass(frozen=True)
class RigidDecomposition:
    graph: Graph
    components: tuple[RigidComponent, ...]
    edge_to_component: tuple[int, ...]

    @property
    def r(self):
        return len(self.components)

    def to_json(self):
        return {
            "r": self.r,
            "components": [
                {
                    "vertices": sorted(c.vertices),
                    "edges": [list(self.graph.edges[e]) for e in c.edges],
                    "edge_ids": list(c.edges),
                    "selected": c.selected,
                    "tree": list(c.tree),
                }
                for c in self.components
            ],
            "edge_to_component": list(self.edge_to_component),
            "shared_vertex_structure": shared_vertex_structure(self),
        }


def _bfs_tree(g: Graph, edge_ids, root_edge):
    """Spanning tree of the subgraph on `edge_ids`, grown breadth-first from root_edge."""
    a, b = g.edges[root_edge]
    seen = {a, b}
    tree = [root_edge]
    adj = {}
    for e in sorted(edge_ids):
        x, y = g.edges[e]
        adj.setdefault(x, []).append((y, e))
        adj.setdefault(y, []).append((x, e))
    todo = deque([a, b])
    while todo:
        u = todo.popleft()
        for v, e in adj.get(u, ()):
            if v not in seen:
                seen.add(v)
                tree.append(e)
                todo.append(v)
    return tuple(tree)


def rigid_components(g: Graph) -> RigidDecomposition:
    """Partition of the edges into maximal rigid (minimally rigid) components."""
    check = is_one_dof(g)
    if not check:
        raise NotOneDofError(f"not one-degree-of-freedom: {check.reason}")
    game = PebbleGame(g.vertex_count)
    for a, b in g.edges:
        game.insert(a, b)
    assignment = [None] * g.edge_count
    comps = []
    for i, (a, b) in enumerate(g.edges):
        if assignment[i] is not None:
            continue
        verts = frozenset(game.rigid_with(a, b))
        es = tuple(j for j, (x, y) in enumerate(g.edges) if x in verts and y in verts)
        for j in es:
            assignment[j] = len(comps)
        comps.append(RigidComponent(verts, es, es[0], _bfs_tree(g, es, es[0])))
    return RigidDecomposition(g, tuple(comps), tuple(assignment))


def shared_vertex_structure(d: RigidDecomposition) -> bool:
    """Two rigid pieces meeting in exactly one vertex."""
    if d.r != 2:
        return False
    return len(d.components[0].vertices & d.components[1].vertices) == 1


@dataclass(frozen=True)
class CycleBasis:
    cycles: tuple[tuple[int, ...], ...]
    tree: tuple[int, ...]
    non_tree: tuple[int, ...] = field(default=())


def _tree_paths(g: Graph, tree_edges, root=0):
    adj = [[] for _ in range(g.vertex_count)]
    for e in tree_edges:
        a, b = g.edges[e]
        adj[a].append((b, e, 1))
        adj[b].append((a, e, -1))
    parent = {root: None}
    todo = deque([root])
    while todo:
        u = todo.popleft()
        for v, e, sign in adj[u]:
            if v not in parent:
                parent[v] = (u, e, sign)
                todo.append(v)
    return parent


def signed_tree_path(parent, src, dst):
    """Signed edge vector of the tree path src -> dst (+1 when traversed tail->head).

    `parent[v] = (u, e, sign)` with sign +1 when e is oriented u -> v.
    """
    def chain(v):
        out = [v]
        while parent[v] is not None:
            v = parent[v][0]
            out.append(v)
        return out

    on_dst = set(chain(dst))
    lca = next(v for v in chain(src) if v in on_dst)
    vec = {}
    v = src
    while v != lca:
        u, e, sign = parent[v]
        vec[e] = vec.get(e, 0) - sign
        v = u
    v = dst
    while v != lca:
        u, e, sign = parent[v]
        vec[e] = vec.get(e, 0) + sign
        v = u
    return vec


def cycle_basis(g: Graph) -> CycleBasis:
    """Fundamental cycles of the breadth-first spanning tree rooted at vertex 0."""
    if not g.is_connected():
        raise DisconnectedGraphError("cycle basis needs a connected graph")
    adj = g.neighbours()
    seen = {0}
    tree = []
    todo = deque([0])
    while todo:
        u = todo.popleft()
        for v, e in sorted(adj[u], key=lambda t: t[1]):
            if v not in seen:
                seen.add(v)
                tree.append(e)
                todo.append(v)
    tree_set = set(tree)
    parent = _tree_paths(g, tree)
    cycles = []
    non_tree = []
    for e, (a, b) in enumerate(g.edges):
        if e in tree_set:
            continue
        vec = [0] * g.edge_count
        vec[e] = 1
        # close a -> b along e with the tree path b -> a
        for f, s in signed_tree_path(parent, b, a).items():
            vec[f] += s
        cycles.append(tuple(vec))
        non_tree.append(e)
    return CycleBasis(tuple(cycles), tuple(sorted(tree)), tuple(non_tree))


def incidence_matrix(g: Graph):
    """Oriented vertex-edge incidence: -1 at the tail, +1 at the head."""
    m = [[0] * g.edge_count for _ in range(g.vertex_count)]
    for e, (a, b) in enumerate(g.edges):
        m[a][e] -= 1
        m[b][e] += 1
    return m


# --------------------------------------------------------------------------
# canonical labelling and enumeration


def _refine(adj, colours):
    """Colour refinement to an equitable partition; colours are label-invariant ints."""
    n = len(adj)
    while True:
        sigs = [(colours[v], tuple(sorted(colours[u] for u in adj[v]))) for v in range(n)]
        ranked = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [ranked[s] for s in sigs]
        if len(set(new)) == len(set(colours)):
            return new
        colours = new


def _all_twins(nbrs, cell):
    first = cell[0]
    return all(nbrs[first] - {v} == nbrs[v] - {first} for v in cell[1:])


def canonical_form(n, edges):
    """Canonical relabelling by individualisation-refinement.

    Returns (code, canonical_edges); two graphs are isomorphic iff codes agree.
    """
    adj = [[] for _ in range(n)]
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    nbrs = [frozenset(a) for a in adj]
    start = _refine(adj, [len(adj[v]) for v in range(n)])
    best = None

    def search(colours):
        nonlocal best
        cells = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        multi = [(len(vs), c) for c, vs in cells.items() if len(vs) > 1]
        if not multi:
            # colours form a permutation: vertex v -> position colours[v]
            code = tuple(sorted(tuple(sorted((colours[a], colours[b]))) for a, b in edges))
            if best is None or code < best:
                best = code
            return
        target = min(multi)[1]
        cell = cells[target]
        branches = cell[:1] if _all_twins(nbrs, cell) else cell
        for v in branches:
            tweaked = [2 * c + (1 if (c > target or (c == target and u != v)) else 0)
                       for u, c in enumerate(colours)]
            search(_refine(adj, tweaked))

    search(start)
    return (n, best), best


MAX_VERTICES = 8


def enumerate_one_dof_graphs(max_vertices: int, min_degree: int = 1,
                             cap: int = 5_000_000) -> Iterator[Graph]:
    """One representative per isomorphism class of 1-dof graphs with |V| <= max_vertices.

    Graphs come out ordered by vertex count, then by canonical code.
    `min_degree=2` drops graphs with pendant edges.
    """
    if not 4 <= max_vertices <= MAX_VERTICES:
        raise ResourceLimitError(f"max_vertices must lie in [4, {MAX_VERTICES}], got {max_vertices}")
    for n in range(3, max_vertices + 1):
        target = 2 * n - 4
        level = {(n, ()): ()}
        pool = 0
        for _ in range(target):
            nxt = {}
            for edges in level.values():
                present = set(edges)
                base = PebbleGame(n)
                for a, b in edges:
                    base.insert(a, b)
                for u in range(n):
                    for v in range(u + 1, n):
                        if (u, v) in present:
                            continue
                        pool += 1
                        if pool > cap:
                            raise ResourceLimitError(f"candidate pool exceeded cap {cap}")
                        if not base.clone().insert(u, v):
                            continue
                        code, canon = canonical_form(n, edges + ((u, v),))
                        nxt.setdefault(code, canon)
            level = nxt
        for code in sorted(level):
            g = Graph(n, level[code])
            if not g.is_connected() or min(g.degrees()) < min_degree:
                continue
            yield g
