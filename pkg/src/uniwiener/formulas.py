"""Closed-form Wiener machinery for unicyclic graphs.

Cycle positions follow the u/w convention of :func:`graph_core.position_label`:
position 0 is ``u1``, positions ``1..g//2`` are ``w1, w2, ...`` and the
remaining positions are ``u2, u3, ...`` walking the other way round.
The designated removal edge joins positions ``g//2`` and ``g//2 + 1``,
i.e. ``u_k w_k`` for ``g = 2k`` and ``u_k w_{k-1}`` for ``g = 2k - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .graph_core import (
    CycleDecomposition,
    GraphError,
    RootedTree,
    UnicyclicGraph,
    _adjacency,
    canonical_key,
    cycle_distance,
    decompose,
)


class InvariantError(AssertionError):
    """An identity that must hold exactly did not."""


# --------------------------------------------------------------------------
# Wiener index
# --------------------------------------------------------------------------


def wiener_closed_form(dec: CycleDecomposition, branch_wieners: Sequence[int]) -> int:
    g = dec.girth
    ell = dec.ell
    alpha = dec.alpha
    if len(ell) != g or len(alpha) != g or len(branch_wieners) != g:
        raise GraphError("decomposition arity does not match girth")
    if sum(l + 1 for l in ell) != dec.n:
        raise GraphError(f"branch orders sum to {sum(l + 1 for l in ell)}, expected n = {dec.n}")
    cross = 0
    for i in range(g):
        li, ai = ell[i], alpha[i]
        for j in range(i + 1, g):
            cross += li * alpha[j] + li * ell[j] * cycle_distance(i, j, g) + ell[j] * ai
    # (n - g/2) * floor(g^2/4) is a half-integer for odd g; work with 2W
    twice = (2 * dec.n - g) * (g * g // 4) + 2 * ((g - 1) * sum(alpha) + sum(branch_wieners) + cross)
    if twice % 2:
        raise InvariantError("closed form produced a non-integral Wiener index")
    return twice // 2


def wiener(G: UnicyclicGraph) -> int:
    """Wiener index of a structured unicyclic graph via the closed form."""
    return wiener_closed_form(decompose(G), [b.wiener for b in G.branches])


def tree_wiener_edge_form(T) -> int:
    """``sum over edges uv of n_uv * n_vu`` for a tree."""
    adj = _adjacency(T)
    n = len(adj)
    if n == 0:
        return 0
    m = sum(len(a) for a in adj) // 2
    if m != n - 1:
        raise GraphError(f"not a tree: {m} edges on {n} vertices")
    parent = [-2] * n
    parent[0] = -1
    order = [0]
    for v in order:
        for u in adj[v]:
            if parent[u] == -2:
                parent[u] = v
                order.append(u)
            elif u != parent[v]:
                raise GraphError("not a tree: contains a cycle")
    if len(order) != n:
        raise GraphError("not a tree: disconnected")
    size = [1] * n
    total = 0
    for v in reversed(order[1:]):
        size[parent[v]] += size[v]
        total += size[v] * (n - size[v])
    return total


# --------------------------------------------------------------------------
# edge removal and Delta
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Tree:
    """Free tree on vertices ``0..n-1`` (ids are kept from its source graph)."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def rooted(self, root: int = 0) -> RootedTree:
        return RootedTree.from_adjacency(self.adjacency(), root)


def designated_removal_edge(G: UnicyclicGraph) -> tuple[int, int]:
    """The cycle edge between the two smallest-branch positions of the
    u/w labelling: ``(w_k, u_k)`` for even girth, ``(w_{k-1}, u_k)`` for odd."""
    h = G.girth // 2
    return (h, h + 1)


def cycle_edges(G: UnicyclicGraph) -> list[tuple[int, int]]:
    g = G.girth
    return [(i, (i + 1) % g) for i in range(g)]


def remove_cycle_edge(G: UnicyclicGraph, e: tuple[int, int]) -> Tree:
    key = frozenset(e)
    if key not in {frozenset(c) for c in cycle_edges(G)}:
        raise GraphError(f"{e} is not a cycle edge")
    return Tree(G.n, tuple(x for x in G.edges if frozenset(x) != key))


@dataclass(frozen=True)
class BranchSizeProfile:
    """Branch orders read off the u/w labelling.

    ``u`` holds ``|V(U_1)|, ..., |V(U_k)|`` and ``w`` holds
    ``|V(W_1)|, ...`` (k entries for even girth, k-1 for odd).
    """

    girth: int
    u: tuple[int, ...]
    w: tuple[int, ...]

    def __post_init__(self):
        g = self.girth
        if g < 3 or len(self.u) != (g + 1) // 2 or len(self.w) != g // 2:
            raise GraphError(f"malformed profile for girth {g}: {len(self.u)} u / {len(self.w)} w sizes")
        if min(self.u + self.w) < 1:
            raise GraphError("branch sizes must be >= 1")

    @property
    def k(self) -> int:
        return (self.girth + 1) // 2

    @classmethod
    def from_positions(cls, sizes: Sequence[int]) -> "BranchSizeProfile":
        g = len(sizes)
        w = tuple(sizes[p] for p in range(1, g // 2 + 1))
        u = (sizes[0],) + tuple(sizes[g - i + 1] for i in range(2, (g + 1) // 2 + 1))
        return cls(g, u, w)

    def positions(self) -> tuple[int, ...]:
        g = self.girth
        out = [0] * g
        out[0] = self.u[0]
        for j, s in enumerate(self.w, start=1):
            out[j] = s
        for i in range(2, self.k + 1):
            out[g - i + 1] = self.u[i - 1]
        return tuple(out)


def branch_size_profile(G: UnicyclicGraph) -> BranchSizeProfile:
    return BranchSizeProfile.from_positions(G.branch_orders)


def delta_of(profile: BranchSizeProfile) -> int:
    """``W(T_G) - W(G)`` for removal of the designated edge."""
    g = profile.girth
    k = profile.k
    U = (None,) + profile.u  # 1-based
    W = (None,) + profile.w
    total = 0
    if g % 2 == 0:
        for i in range(2, k + 1):
            for j in range(k + 2 - i, k + 1):
                total += 2 * (i + j - k - 1) * U[i] * W[j]
    else:
        for i in range(2, k + 1):
            for j in range(k + 1 - i, k):
                total += (2 * (i + j - k) - 1) * U[i] * W[j]
    return total


def delta_maximizing_profile(sizes: Sequence[int]) -> BranchSizeProfile:
    """Arrangement ``U1 <= W1 <= U2 <= W2 <= ...`` of the given branch sizes
    (ending ``U_k <= W_k`` for even girth, ``W_{k-1} <= U_k`` for odd)."""
    g = len(sizes)
    asc = sorted(sizes)
    u, w = [], []
    for idx, s in enumerate(asc):
        (u if idx % 2 == 0 else w).append(s)
    return BranchSizeProfile(g, tuple(u), tuple(w))


@dataclass(frozen=True)
class EvaluationRecord:
    wiener: int
    tree_wiener: int
    delta: int
    removed_edge: tuple[int, int]


def evaluate(G: UnicyclicGraph) -> EvaluationRecord:
    e = designated_removal_edge(G)
    w = wiener(G)
    wt = tree_wiener_edge_form(remove_cycle_edge(G, e))
    d = delta_of(branch_size_profile(G))
    if w != wt - d or d < 0:
        raise InvariantError(f"W = {w}, W(T_G) = {wt}, delta = {d}: W != W(T_G) - delta")
    return EvaluationRecord(w, wt, d, e)


# --------------------------------------------------------------------------
# rearrangements
# --------------------------------------------------------------------------


def plus_positions(count: int) -> list[int]:
    """Index order 0, 1, -1, 2, -2, ... of length ``count``."""
    out = [0]
    i = 1
    while len(out) < count:
        out.append(i)
        if len(out) < count:
            out.append(-i)
        i += 1
    return out[:count]


def plus_rearrangement(values: Sequence[int]) -> dict[int, int]:
    """Symmetric-decreasing placement: largest at 0, then +1, -1, +2, ..."""
    ordered = sorted(values, reverse=True)
    return dict(zip(plus_positions(len(ordered)), ordered))


def plus_cycle_order(items: Sequence, key) -> list:
    """Place ``items`` on a cycle of ``len(items)`` positions, largest
    ``key`` at position 0, then positions 1, -1, 2, -2, ... (mod g)."""
    g = len(items)
    ordered = sorted(items, key=key, reverse=True)
    out = [None] * g
    for p, it in zip(plus_positions(g), ordered):
        out[p % g] = it
    return out


def ord_graph(G: UnicyclicGraph) -> UnicyclicGraph:
    """Whole branches re-placed around the cycle in plus order of branch size."""
    placed = plus_cycle_order(list(G.branches), key=lambda b: (b.order, b.root_degree, b.shape))
    return UnicyclicGraph(tuple(placed))


def satisfies_size_chain(G: UnicyclicGraph) -> bool:
    """``|U1| >= |W1| >= |U2| >= |W2| >= ...`` in the current labelling."""
    sizes = G.branch_orders
    seq = [sizes[p % G.girth] for p in plus_positions(G.girth)]
    return all(a >= b for a, b in zip(seq, seq[1:]))


def satisfies_degree_chain(G: UnicyclicGraph) -> bool:
    """``d(u1) >= d(w1) >= d(u2) >= d(w2) >= ...`` in the current labelling."""
    deg = G.cycle_degrees
    seq = [deg[p % G.girth] for p in plus_positions(G.girth)]
    return all(a >= b for a, b in zip(seq, seq[1:]))


def chain_labellings(G: UnicyclicGraph) -> list[UnicyclicGraph]:
    """Dihedral relabellings meeting both the size chain and degree chain."""
    seen = set()
    out = []
    for _, H in G.dihedral_images():
        if H.shapes in seen:
            continue
        seen.add(H.shapes)
        if satisfies_size_chain(H) and satisfies_degree_chain(H):
            out.append(H)
    return out


def canonical_labelling(G: UnicyclicGraph) -> UnicyclicGraph:
    """A deterministic u/w labelling: a chain labelling if one exists, else
    the dihedral image with the largest plus-ordered size sequence."""
    chains = chain_labellings(G)
    if chains:
        return min(chains, key=lambda H: H.shapes)
    best = None
    best_key = None
    for _, H in G.dihedral_images():
        sizes = H.branch_orders
        key = (tuple(sizes[p % H.girth] for p in plus_positions(H.girth)), H.shapes)
        if best_key is None or key > best_key:
            best, best_key = H, key
    return best


__all__ = [
    "BranchSizeProfile",
    "EvaluationRecord",
    "InvariantError",
    "Tree",
    "branch_size_profile",
    "canonical_key",
    "canonical_labelling",
    "chain_labellings",
    "cycle_edges",
    "delta_maximizing_profile",
    "delta_of",
    "designated_removal_edge",
    "evaluate",
    "ord_graph",
    "plus_cycle_order",
    "plus_positions",
    "plus_rearrangement",
    "remove_cycle_edge",
    "satisfies_degree_chain",
    "satisfies_size_chain",
    "tree_wiener_edge_form",
    "wiener",
    "wiener_closed_form",
]
