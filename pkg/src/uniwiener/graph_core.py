"""Concrete unicyclic graphs and rooted trees.

A unicyclic graph is stored as ``C_g(T_1, ..., T_g)``: the cycle in
cyclic order, each cycle vertex carrying the rooted tree that hangs off
it.  Rooted trees are nested tuples of child shapes ("shapes") kept in a
canonical child order, so two rooted trees are isomorphic iff their
shapes are equal.  Raw adjacency views are derived on demand.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .degseq import DegreeSequence

Shape = tuple
LEAF: Shape = ()


class GraphError(ValueError):
    """Input graph violates an operation's precondition."""


class NotUnicyclicError(GraphError):
    pass


# --------------------------------------------------------------------------
# shapes
# --------------------------------------------------------------------------


@lru_cache(maxsize=None)
def shape_size(shape: Shape) -> int:
    return 1 + sum(shape_size(c) for c in shape)


@lru_cache(maxsize=None)
def shape_height(shape: Shape) -> int:
    return 1 + max(map(shape_height, shape)) if shape else 0


@lru_cache(maxsize=None)
def shape_depth_sum(shape: Shape) -> int:
    """Sum of distances from the root to every vertex."""
    return sum(shape_depth_sum(c) + shape_size(c) for c in shape)


@lru_cache(maxsize=None)
def shape_wiener(shape: Shape) -> int:
    """Wiener index of the tree, by merging children one at a time."""
    # W(root + child subtrees) accumulated pairwise through the root
    w = 0
    size = 1
    dsum = 0  # distance sum from root over the part merged so far
    for c in shape:
        cs = shape_size(c)
        cd = shape_depth_sum(c) + cs  # distances from root into c
        w += shape_wiener(c) + dsum * cs + cd * size
        size += cs
        dsum += cd
    return w


def _child_key(shape: Shape):
    return (shape_size(shape), len(shape), shape)


@lru_cache(maxsize=None)
def canonical_shape(shape: Shape) -> Shape:
    """Children sorted by non-increasing order, then degree, then shape."""
    kids = [canonical_shape(tuple(c)) for c in shape]
    kids.sort(key=_child_key, reverse=True)
    return tuple(kids)


@lru_cache(maxsize=None)
def shape_code(shape: Shape) -> str:
    """AHU parenthesis code of a canonical shape."""
    return "(" + "".join(shape_code(c) for c in shape) + ")"


def path_shape(length: int) -> Shape:
    """Rooted path with ``length`` edges below the root."""
    s: Shape = LEAF
    for _ in range(length):
        s = (s,)
    return s


def star_shape(leaves: int) -> Shape:
    return (LEAF,) * leaves


# --------------------------------------------------------------------------
# rooted trees
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class RootedTree:
    """Rooted tree with vertices numbered 0..n-1 in BFS order (root = 0).

    ``root_extra`` is the number of edges the root has outside the tree
    (2 for a branch hanging on a cycle, 0 for a free-standing tree); it
    only affects the reported degrees.
    """

    shape: Shape
    root_extra: int = 0

    def __post_init__(self):
        object.__setattr__(self, "shape", canonical_shape(tuple(self.shape)))

    @classmethod
    def from_parents(cls, parents: Sequence[int], root_extra: int = 0) -> "RootedTree":
        n = len(parents)
        kids: list[list[int]] = [[] for _ in range(n)]
        root = None
        for v, p in enumerate(parents):
            if p < 0:
                if root is not None:
                    raise GraphError("more than one root")
                root = v
            else:
                kids[p].append(v)
        if root is None:
            raise GraphError("no root")
        return cls(_shape_from_children(kids, root), root_extra)

    @classmethod
    def from_adjacency(cls, adj: Sequence[Iterable[int]], root: int = 0, root_extra: int = 0) -> "RootedTree":
        n = len(adj)
        parent = [-2] * n
        parent[root] = -1
        order = [root]
        for v in order:
            for u in adj[v]:
                if parent[u] == -2:
                    parent[u] = v
                    order.append(u)
                elif u != parent[v]:
                    raise GraphError("adjacency contains a cycle")
        if len(order) != n:
            raise GraphError("adjacency is disconnected")
        kids: list[list[int]] = [[] for _ in range(n)]
        for v in order[1:]:
            kids[parent[v]].append(v)
        return cls(_shape_from_children(kids, root), root_extra)

    # -- derived structure -------------------------------------------------

    @cached_property
    def _bfs(self):
        parents = [-1]
        children: list[list[int]] = [[]]
        shapes = [self.shape]
        depths = [0]
        i = 0
        while i < len(shapes):
            for c in shapes[i]:
                v = len(shapes)
                parents.append(i)
                children.append([])
                children[i].append(v)
                shapes.append(c)
                depths.append(depths[i] + 1)
            i += 1
        return (
            tuple(parents),
            tuple(tuple(c) for c in children),
            tuple(shapes),
            tuple(depths),
        )

    @property
    def parents(self) -> tuple[int, ...]:
        return self._bfs[0]

    @property
    def children(self) -> tuple[tuple[int, ...], ...]:
        return self._bfs[1]

    @property
    def depths(self) -> tuple[int, ...]:
        return self._bfs[3]

    @property
    def subtree_sizes(self) -> tuple[int, ...]:
        return tuple(shape_size(s) for s in self._bfs[2])

    @property
    def order(self) -> int:
        return shape_size(self.shape)

    @property
    def height(self) -> int:
        return shape_height(self.shape)

    @property
    def root_distance_sum(self) -> int:
        return shape_depth_sum(self.shape)

    @property
    def wiener(self) -> int:
        return shape_wiener(self.shape)

    @property
    def root_degree(self) -> int:
        return len(self.shape) + self.root_extra

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        kids = self.children
        return tuple(len(kids[v]) + (self.root_extra if v == 0 else 1) for v in range(self.order))

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.order)]
        for v, p in enumerate(self.parents):
            if p >= 0:
                adj[v].append(p)
                adj[p].append(v)
        return adj

    def edges(self) -> list[tuple[int, int]]:
        return [(p, v) for v, p in enumerate(self.parents) if p >= 0]

    @property
    def code(self) -> str:
        return shape_code(self.shape)

    def is_pseudo_leaf(self, v: int) -> bool:
        """All neighbours of ``v`` are leaves except possibly one."""
        adj = self.adjacency()
        non_leaf = sum(1 for u in adj[v] if len(adj[u]) > 1)
        return len(adj[v]) > 1 and non_leaf <= 1


def _shape_from_children(kids: Sequence[Sequence[int]], root: int) -> Shape:
    # iterative post-order to stay clear of the recursion limit
    out: dict[int, Shape] = {}
    stack = [(root, False)]
    while stack:
        v, done = stack.pop()
        if done:
            out[v] = tuple(out[c] for c in kids[v])
        else:
            stack.append((v, True))
            stack.extend((c, False) for c in kids[v])
    return out[root]


# --------------------------------------------------------------------------
# unicyclic graphs
# --------------------------------------------------------------------------


def cycle_distance(i: int, j: int, girth: int) -> int:
    d = abs(i - j) % girth
    return min(d, girth - d)


def position_label(p: int, girth: int) -> str:
    """Cycle position label: position 0 is u1, positions 1..floor(g/2) are
    w1, w2, ... and the remaining positions run u2, u3, ... backwards."""
    if p == 0:
        return "u1"
    if p <= girth // 2:
        return f"w{p}"
    return f"u{girth - p + 1}"


@dataclass(frozen=True)
class UnicyclicGraph:
    """``C_g(T_1, ..., T_g)``; cycle vertex ``i`` is adjacent to ``i±1 mod g``.

    Global vertex ids: cycle positions are ``0..g-1``; the non-root
    vertices of branch 0, 1, ... follow in BFS order.
    """

    branches: tuple[RootedTree, ...]

    def __post_init__(self):
        bs = tuple(b if isinstance(b, RootedTree) and b.root_extra == 2 else RootedTree(_as_shape(b), 2)
                   for b in self.branches)
        if len(bs) < 3:
            raise GraphError(f"girth {len(bs)} < 3")
        object.__setattr__(self, "branches", bs)

    @classmethod
    def from_shapes(cls, shapes: Iterable[Shape]) -> "UnicyclicGraph":
        return cls(tuple(RootedTree(s, 2) for s in shapes))

    @classmethod
    def cycle(cls, girth: int) -> "UnicyclicGraph":
        return cls.from_shapes([LEAF] * girth)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "UnicyclicGraph":
        g, _ = from_edges_with_map(n, edges)
        return g

    @property
    def girth(self) -> int:
        return len(self.branches)

    @property
    def shapes(self) -> tuple[Shape, ...]:
        return tuple(b.shape for b in self.branches)

    @cached_property
    def n(self) -> int:
        return sum(b.order for b in self.branches)

    @cached_property
    def _layout(self):
        """Per-branch local->global id tables."""
        g = self.girth
        nxt = g
        tables = []
        for i, b in enumerate(self.branches):
            table = [i]
            for _ in range(1, b.order):
                table.append(nxt)
                nxt += 1
            tables.append(tuple(table))
        return tuple(tables)

    def global_id(self, branch: int, local: int) -> int:
        return self._layout[branch][local]

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        g = self.girth
        out = [(i, (i + 1) % g) for i in range(g)]
        for b, table in zip(self.branches, self._layout):
            for v, p in enumerate(b.parents):
                if p >= 0:
                    out.append((table[p], table[v]))
        return tuple(out)

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.n
        for a, b in self.edges:
            deg[a] += 1
            deg[b] += 1
        return tuple(deg)

    @property
    def cycle_degrees(self) -> tuple[int, ...]:
        return tuple(b.root_degree for b in self.branches)

    @property
    def branch_orders(self) -> tuple[int, ...]:
        return tuple(b.order for b in self.branches)

    def degree_sequence(self) -> DegreeSequence:
        return DegreeSequence(self.degrees)

    def branch_of(self, v: int) -> int:
        """Cycle position whose branch contains global vertex ``v``."""
        if v < self.girth:
            return v
        for i, table in enumerate(self._layout):
            if table[-1] >= v and len(table) > 1 and table[1] <= v:
                return i
        raise GraphError(f"unknown vertex {v}")

    def dihedral(self, shift: int, reflect: bool = False) -> "UnicyclicGraph":
        """Relabel so that old position ``shift`` becomes position 0,
        walking backwards instead of forwards when ``reflect``."""
        g = self.girth
        step = -1 if reflect else 1
        return UnicyclicGraph(tuple(self.branches[(shift + step * i) % g] for i in range(g)))

    def dihedral_images(self):
        for s in range(self.girth):
            for r in (False, True):
                yield (s, r), self.dihedral(s, r)

    def position_labels(self) -> tuple[str, ...]:
        return tuple(position_label(p, self.girth) for p in range(self.girth))


def _as_shape(b) -> Shape:
    return b.shape if isinstance(b, RootedTree) else tuple(b)


def from_edges_with_map(n: int, edges: Iterable[tuple[int, int]]) -> tuple[UnicyclicGraph, dict[int, int]]:
    """Build the structured form from a raw edge list.

    Returns the graph and a map from input vertex ids to global ids of
    the structured graph (cycle vertices keep their cyclic order).
    """
    edges = list(edges)
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in edges:
        if a == b:
            raise NotUnicyclicError("self loop")
        adj[a].append(b)
        adj[b].append(a)
    if len(set(frozenset(e) for e in edges)) != len(edges):
        raise NotUnicyclicError("multiple edges")
    if len(edges) != n:
        raise NotUnicyclicError(f"{len(edges)} edges on {n} vertices")
    if n and len(_bfs_order(adj, 0)) != n:
        raise NotUnicyclicError("graph is disconnected")
    # peel leaves; what remains of a connected n-edge graph is its cycle
    deg = [len(a) for a in adj]
    alive = [True] * n
    stack = [v for v in range(n) if deg[v] == 1]
    while stack:
        v = stack.pop()
        alive[v] = False
        for u in adj[v]:
            if alive[u]:
                deg[u] -= 1
                if deg[u] == 1:
                    stack.append(u)
    core = [v for v in range(n) if alive[v]]
    start = core[0]
    cyc = [start]
    prev = -1
    cur = start
    while True:
        nxt = next(u for u in adj[cur] if alive[u] and u != prev)
        if nxt == start:
            break
        cyc.append(nxt)
        prev, cur = cur, nxt
        if len(cyc) > len(core):
            raise NotUnicyclicError("cycle walk failed")
    on_cycle = set(cyc)
    branches = []
    locals_: list[list[int]] = []
    for r in cyc:
        order = [r]
        parent = {r: -1}
        for v in order:
            for u in adj[v]:
                if u not in on_cycle and u not in parent:
                    parent[u] = v
                    order.append(u)
        idx = {v: i for i, v in enumerate(order)}
        kids: list[list[int]] = [[] for _ in order]
        for v in order[1:]:
            kids[idx[parent[v]]].append(idx[v])
        branches.append(RootedTree(_shape_from_children(kids, 0), 2))
        locals_.append(order)
    g = UnicyclicGraph(tuple(branches))
    # map raw ids to structured ids by re-walking both BFS orders shape-wise
    mapping: dict[int, int] = {}
    for i, (b, order) in enumerate(zip(g.branches, locals_)):
        mapping.update(_match_tree(adj, order[0], on_cycle, b, g._layout[i]))
    return g, mapping


def _match_tree(adj, root, blocked, tree: RootedTree, table) -> dict[int, int]:
    """Map raw vertices of a branch onto the canonical BFS numbering."""
    out = {root: table[0]}
    kids = tree.children
    shapes = tree._bfs[2]
    stack = [(root, -1, 0)]
    while stack:
        raw, raw_parent, local = stack.pop()
        raw_kids = [u for u in adj[raw] if u != raw_parent and u not in blocked]
        pool = {}
        for u in raw_kids:
            pool.setdefault(_raw_shape(adj, u, raw, blocked), []).append(u)
        for c in kids[local]:
            u = pool[shapes[c]].pop()
            out[u] = table[c]
            stack.append((u, raw, c))
    return out


def _raw_shape(adj, v, parent, blocked) -> Shape:
    kids = [u for u in adj[v] if u != parent and u not in blocked]
    return canonical_shape(tuple(_raw_shape(adj, u, v, blocked) for u in kids))


# --------------------------------------------------------------------------
# distances
# --------------------------------------------------------------------------


def _adjacency(G) -> list[list[int]]:
    if hasattr(G, "adjacency"):
        return G.adjacency()
    return [list(a) for a in G]


def _bfs_order(adj, s) -> list[int]:
    seen = {s}
    order = [s]
    for v in order:
        for u in adj[v]:
            if u not in seen:
                seen.add(u)
                order.append(u)
    return order


def bfs_distances(adj: Sequence[Sequence[int]], source: int) -> list[int]:
    dist = [-1] * len(adj)
    dist[source] = 0
    q = deque([source])
    while q:
        v = q.popleft()
        dv = dist[v] + 1
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dv
                q.append(u)
    return dist


def distance_sums(G) -> list[int]:
    """``D_G(u)`` for every vertex, one BFS per vertex."""
    adj = _adjacency(G)
    out = []
    for s in range(len(adj)):
        dist = bfs_distances(adj, s)
        if min(dist, default=0) < 0:
            raise GraphError("graph is disconnected")
        out.append(sum(dist))
    return out


def wiener_by_bfs(G) -> int:
    """Sum of shortest-path distances over unordered vertex pairs."""
    total = sum(distance_sums(G))
    assert total % 2 == 0
    return total // 2


def vertex_distance_sum(G, u: int) -> int:
    adj = _adjacency(G)
    if not 0 <= u < len(adj):
        raise GraphError(f"unknown vertex {u}")
    dist = bfs_distances(adj, u)
    if min(dist) < 0:
        raise GraphError("graph is disconnected")
    return sum(dist)


# --------------------------------------------------------------------------
# centroid, decomposition, canonical form
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CentroidReport:
    vertices: tuple[int, ...]
    tag: str  # "K1", "K2", "cycle-subset" or "other"
    distance_sums: tuple[int, ...]

    @property
    def consistent(self) -> bool:
        return self.tag != "other"


def centroid(G) -> CentroidReport:
    """Minimizers of ``D_G`` and their shape: a single vertex, an edge, or
    (unicyclic graphs only) a subset of the cycle."""
    adj = _adjacency(G)
    sums = distance_sums(adj)
    best = min(sums)
    cen = tuple(v for v, s in enumerate(sums) if s == best)
    if len(cen) == 1:
        tag = "K1"
    elif len(cen) == 2 and cen[1] in adj[cen[0]]:
        tag = "K2"
    elif isinstance(G, UnicyclicGraph) and all(v < G.girth for v in cen):
        tag = "cycle-subset"
    else:
        tag = "other"
    return CentroidReport(cen, tag, tuple(sums))


@dataclass(frozen=True)
class CycleDecomposition:
    girth: int
    branch_orders: tuple[int, ...]  # ell_i = |V(T_i)| - 1
    root_distance_sums: tuple[int, ...]  # alpha_i = D_{T_i}(v_i)
    n: int

    @property
    def ell(self) -> tuple[int, ...]:
        return self.branch_orders

    @property
    def alpha(self) -> tuple[int, ...]:
        return self.root_distance_sums

    def cycle_distance(self, i: int, j: int) -> int:
        return cycle_distance(i, j, self.girth)

    @property
    def distance_table(self) -> tuple[tuple[int, ...], ...]:
        g = self.girth
        return tuple(tuple(cycle_distance(i, j, g) for j in range(g)) for i in range(g))


def decompose(G) -> CycleDecomposition:
    """Branch data ``(ell_i, alpha_i)`` per cycle position.

    Accepts a :class:`UnicyclicGraph` or a raw ``(n, edges)`` pair.
    """
    if not isinstance(G, UnicyclicGraph):
        n, edges = G
        G = UnicyclicGraph.from_edges(n, edges)
    return CycleDecomposition(
        G.girth,
        tuple(b.order - 1 for b in G.branches),
        tuple(b.root_distance_sum for b in G.branches),
        G.n,
    )


def compose(dec_shapes: Sequence[Shape]) -> UnicyclicGraph:
    return UnicyclicGraph.from_shapes(dec_shapes)


def canonical_key(G: UnicyclicGraph) -> tuple:
    """Lexicographically least branch-shape sequence over the dihedral group."""
    s = G.shapes
    g = len(s)
    best = None
    for r in range(g):
        rot = s[r:] + s[:r]
        for cand in (rot, (rot[0],) + tuple(reversed(rot[1:]))):
            if best is None or cand < best:
                best = cand
    return best


def canonical_form(G: UnicyclicGraph) -> str:
    """String equal for two unicyclic graphs iff they are isomorphic."""
    codes = tuple(shape_code(b.shape) for b in G.branches)
    g = len(codes)
    best = None
    for r in range(g):
        rot = codes[r:] + codes[:r]
        for cand in (rot, (rot[0],) + tuple(reversed(rot[1:]))):
            if best is None or cand < best:
                best = cand
    return f"C{g}:" + "|".join(best)


# --------------------------------------------------------------------------
# output
# --------------------------------------------------------------------------


def to_dot(G, name: str = "G") -> str:
    """Graphviz DOT text; cycle vertices carry their u_i/w_i position label."""
    lines = [f"graph {_dot_id(name)} {{"]
    if isinstance(G, UnicyclicGraph):
        labels = G.position_labels()
        deg = G.degrees
        for v in range(G.n):
            if v < G.girth:
                lines.append(f'  {v} [label="{labels[v]} (d={deg[v]})", shape=doublecircle];')
            else:
                lines.append(f'  {v} [label="d={deg[v]}"];')
        for a, b in G.edges:
            style = " [penwidth=2]" if a < G.girth and b < G.girth else ""
            lines.append(f"  {a} -- {b}{style};")
    else:
        adj = _adjacency(G)
        for v, nb in enumerate(adj):
            lines.append(f'  {v} [label="d={len(nb)}"];')
        for v, nb in enumerate(adj):
            for u in nb:
                if v < u:
                    lines.append(f"  {v} -- {u};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _dot_id(name: str) -> str:
    return '"' + name.replace('"', r"\"") + '"'
