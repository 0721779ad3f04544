"""Independent oracles shared by the test modules.

Nothing here uses the package's enumeration or formulas: distances come
from networkx and graphs are generated by brute force.
"""

from __future__ import annotations

import random
from functools import lru_cache

import networkx as nx

from uniwiener.graph_core import from_edges_with_map


D1 = (4, 3, 3, 3, 3, 3, 3, 3, 2, 2) + (1,) * 9
D2 = (4,) * 6 + (3, 3) + (1,) * 14

# expected minima for the two worked examples, keyed by girth
D1_EXPECTED = {3: 598, 4: 590, 5: 575, 6: 572, 7: 565, 8: 576}
D2_EXPECTED = {3: 538, 4: 538, 5: 519, 6: 528, 7: 523}

# exact minima frozen from the networkx-checked enumeration
D1_EXACT = {3: 591, 4: 590, 5: 575, 6: 572, 7: 565, 8: 576}
D1_COUNTS = {3: 8270, 4: 6968, 5: 4477, 6: 2857, 7: 1427, 8: 570}
D2_EXACT = {3: 775, 4: 768, 5: 751, 6: 759, 7: 759}


def to_nx(G) -> nx.Graph:
    H = nx.Graph()
    adj = G.adjacency()
    H.add_nodes_from(range(len(adj)))
    for v, nbrs in enumerate(adj):
        for u in nbrs:
            H.add_edge(v, u)
    return H


def nx_wiener(G) -> int:
    return int(nx.wiener_index(to_nx(G) if not isinstance(G, nx.Graph) else G))


def unicyclic_sequences(nmax: int, nmin: int = 3) -> list[tuple[int, ...]]:
    """Every degree sequence with sum 2n, 3 <= n <= nmax, at least three
    entries >= 2 (the leaves are forced)."""
    out = []

    def rec(prefix, maxd):
        if len(prefix) >= 3:
            leaves = sum(d - 2 for d in prefix)
            n = len(prefix) + leaves
            if nmin <= n <= nmax:
                out.append(tuple(prefix) + (1,) * leaves)
        for d in range(maxd, 1, -1):
            p = prefix + [d]
            if len(p) + sum(x - 2 for x in p) <= nmax:
                rec(p, d)

    rec([], nmax)
    return sorted(out, key=lambda s: (len(s), s))


def tree_sequences(nmax: int) -> list[tuple[int, ...]]:
    out = []
    for n in range(2, nmax + 1):
        for tree in nx.nonisomorphic_trees(n):
            out.append(tuple(sorted((d for _, d in tree.degree()), reverse=True)))
    return sorted(set(out), key=lambda s: (len(s), s))


@lru_cache(maxsize=None)
def trees_by_sequence(nmax: int) -> dict:
    groups: dict[tuple[int, ...], list[nx.Graph]] = {}
    for n in range(2, nmax + 1):
        for tree in nx.nonisomorphic_trees(n):
            key = tuple(sorted((d for _, d in tree.degree()), reverse=True))
            groups.setdefault(key, []).append(tree)
    return groups


def naive_unicyclic(degrees, girth) -> list[nx.Graph]:
    """All labelled graphs with the given degrees, kept if connected with
    a single cycle of the given length, deduplicated up to isomorphism."""
    degs = list(degrees)
    n = len(degs)
    found: list[nx.Graph] = []
    buckets: dict[str, list[nx.Graph]] = {}

    def consider(edges):
        H = nx.Graph(edges)
        if H.number_of_nodes() != n or not nx.is_connected(H):
            return
        cycles = nx.cycle_basis(H)
        if len(cycles) != 1 or len(cycles[0]) != girth:
            return
        key = nx.weisfeiler_lehman_graph_hash(H)
        for other in buckets.get(key, []):
            if nx.is_isomorphic(H, other):
                return
        buckets.setdefault(key, []).append(H)
        found.append(H)

    remaining = degs[:]

    def rec(v, edges):
        if v == n:
            consider(edges)
            return
        need = remaining[v]
        if need == 0:
            rec(v + 1, edges)
            return
        later = [u for u in range(v + 1, n) if remaining[u] > 0]
        if len(later) < need:
            return
        from itertools import combinations

        for nbrs in combinations(later, need):
            remaining[v] = 0
            for u in nbrs:
                remaining[u] -= 1
            rec(v + 1, edges + [(v, u) for u in nbrs])
            for u in nbrs:
                remaining[u] += 1
            remaining[v] = need

    rec(0, [])
    return found


def random_unicyclic_edges(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Random tree from a Pruefer sequence plus one extra non-edge."""
    if n < 3:
        raise ValueError("need n >= 3")
    T = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    while True:
        a, b = rng.sample(range(n), 2)
        if not T.has_edge(a, b):
            break
    edges = list(T.edges()) + [(a, b)]
    return edges


def random_unicyclic(n: int, rng: random.Random):
    """A random structured unicyclic graph on ``n`` vertices, its raw edge
    list and the raw -> structured vertex map."""
    edges = random_unicyclic_edges(n, rng)
    G, mapping = from_edges_with_map(n, edges)
    return G, edges, mapping
