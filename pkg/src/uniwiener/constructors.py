"""Greedy tree and the three candidate minimum-Wiener unicyclic graphs."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .degseq import DegreeSequence, DegreeSequenceError, validate_unicyclic
from .formulas import plus_cycle_order, plus_positions, wiener
from .graph_core import (
    LEAF,
    RootedTree,
    Shape,
    UnicyclicGraph,
    canonical_form,
    canonical_shape,
    from_edges_with_map,
    shape_size,
)


class ConstructionError(ValueError):
    pass


class CandidateKind(enum.Enum):
    GREEDY_UNICYCLIC = "GreedyUnicyclic"
    CYCLE_CENTERED = "CycleCentered"
    OUT_GREEDY = "OutGreedy"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class NotApplicable:
    """A constructor whose precondition fails for this ``(D, girth)``."""

    kind: CandidateKind
    reason: str

    def __bool__(self) -> bool:
        return False


def _as_degrees(D) -> DegreeSequence:
    return D if isinstance(D, DegreeSequence) else DegreeSequence(D)


# --------------------------------------------------------------------------
# greedy tree
# --------------------------------------------------------------------------


def greedy_parents(degrees: Sequence[int]) -> list[int]:
    """Parent array of the greedy tree in BFS order.

    The root takes the largest degree; the queue hands out the largest
    remaining degrees to the children of each vertex in turn.  Ties among
    equal degrees are broken by vertex label, i.e. BFS position.
    """
    degs = sorted(degrees, reverse=True)
    n = len(degs)
    if n == 1:
        return [-1]
    if sum(degs) != 2 * (n - 1) or degs[-1] < 1:
        raise DegreeSequenceError(f"{degs} is not a tree degree sequence")
    parents = [-1]
    nxt = 1
    for v in range(n):
        slots = degs[v] - (0 if v == 0 else 1)
        for _ in range(slots):
            if nxt >= n:
                raise DegreeSequenceError(f"{degs} is not a tree degree sequence")
            parents.append(v)
            nxt += 1
    return parents


def greedy_tree(D) -> RootedTree:
    D = _as_degrees(D)
    if not D.tree_feasible and D.n != 1:
        raise DegreeSequenceError(f"{D} is not a tree degree sequence")
    return RootedTree.from_parents(greedy_parents(D.degrees))


def greedy_forest(slots: int, degrees: Sequence[int]) -> list[Shape]:
    """Greedy filling below a virtual root with ``slots`` children.

    ``degrees`` are the internal degrees to place; leaves fill whatever
    slots remain.  Returns the root's child shapes in greedy (BFS) order.
    """
    degs = sorted((d for d in degrees if d >= 2), reverse=True)
    leaves = slots + sum(d - 2 for d in degs)
    full = degs + [1] * leaves
    if slots == 0:
        if degs:
            raise ConstructionError("no room for the remaining internal vertices")
        return []
    parents = [-1]
    deg_of = [None]
    nxt = 0
    q = deque([(0, slots)])
    while q:
        v, room = q.popleft()
        for _ in range(room):
            d = full[nxt]
            nxt += 1
            parents.append(v)
            deg_of.append(d)
            q.append((len(parents) - 1, d - 1))
    kids: list[list[int]] = [[] for _ in parents]
    for v, p in enumerate(parents):
        if p >= 0:
            kids[p].append(v)

    def build(v) -> Shape:
        return tuple(build(c) for c in kids[v])

    return [canonical_shape(build(c)) for c in kids[0]]


# --------------------------------------------------------------------------
# redistribution of the non-cycle material
# --------------------------------------------------------------------------


def _distribute(cycle_degrees: Sequence[int], children: list[Shape]) -> list[Shape]:
    """Hand the greedy children out to cycle positions, largest-degree
    position first (plus order, ties by position), largest children first."""
    g = len(cycle_degrees)
    order = sorted(range(g), key=lambda p: (-cycle_degrees[p], _plus_rank(p, g)))
    it = iter(children)
    branch_kids: list[list[Shape]] = [[] for _ in range(g)]
    for p in order:
        for _ in range(cycle_degrees[p] - 2):
            branch_kids[p].append(next(it))
    return [canonical_shape(tuple(k)) for k in branch_kids]


def _plus_rank(p: int, g: int) -> int:
    for r, q in enumerate(plus_positions(g)):
        if q % g == p:
            return r
    raise AssertionError


def arrange_on_cycle(cycle_degrees: Sequence[int], rest: Sequence[int]) -> UnicyclicGraph:
    """Cycle with the given degrees (cyclic order) and the remaining internal
    degrees arranged greedily outward from the cycle as one merged root."""
    slots = sum(d - 2 for d in cycle_degrees)
    children = greedy_forest(slots, rest)
    G = UnicyclicGraph.from_shapes(_distribute(cycle_degrees, children))
    return _ord_by_size(G)


def _ord_by_size(G: UnicyclicGraph) -> UnicyclicGraph:
    placed = plus_cycle_order(list(G.branches), key=lambda b: (b.order, b.root_degree, b.shape))
    return UnicyclicGraph(tuple(placed))


def _internal_non_cycle(G: UnicyclicGraph) -> list[int]:
    return [d for v, d in enumerate(G.degrees) if v >= G.girth and d >= 2]


def redistribute_outside_cycle(G: UnicyclicGraph) -> UnicyclicGraph:
    """Re-hang all non-cycle vertices as the greedy tree of the merged root
    (cycle degrees kept), then re-place branches by size.

    Keeps whichever of the input and the rearrangement has the smaller
    Wiener index, so the result never increases W.
    """
    H = arrange_on_cycle(G.cycle_degrees, _internal_non_cycle(G))
    return H if wiener(H) <= wiener(G) else G


# --------------------------------------------------------------------------
# cycle-centered
# --------------------------------------------------------------------------


def cycle_centered(D, girth: int):
    D = _as_degrees(D)
    rep = validate_unicyclic(D, girth)
    if not rep.ok:
        raise ConstructionError("; ".join(rep.failures))
    internal = list(D.internal)
    on_cycle = internal[:girth]
    rest = internal[girth:]
    cyc = plus_cycle_order(on_cycle, key=lambda d: d)
    if sum(d - 2 for d in cyc) == 0 and rest:
        return NotApplicable(CandidateKind.CYCLE_CENTERED, "cycle has no free slots")
    return arrange_on_cycle(cyc, rest)


# --------------------------------------------------------------------------
# greedy unicyclic
# --------------------------------------------------------------------------


def greedy_unicyclic_cycle_degrees(D: DegreeSequence, girth: int) -> tuple[list[int], list[int]]:
    """Breadth-first greedy labelling from a root on the cycle.

    At each level the new cycle vertices take the largest available
    degrees, then the non-cycle children of cycle vertices, then the
    children of non-cycle vertices, always keeping enough degrees >= 2 in
    reserve for the cycle vertices not yet reached.  Returns the cycle
    degrees by position and the degrees given to non-cycle vertices before
    the cycle closed.
    """
    pool = sorted(D.internal, reverse=True)
    g = girth
    cyc = [0] * g
    cyc[0] = pool.pop(0)
    labelled_off: list[int] = []  # degrees of labelled non-cycle vertices
    # frontier entries: (degree, kind, pos_or_None); kind 0 = cycle, 1 = off-cycle
    frontier = [(cyc[0], 0, 0)]
    depth = 0
    unlabelled = g - 1
    half = g // 2

    def take(on_cycle: bool) -> int:
        if on_cycle:
            return pool.pop(0)
        # an off-cycle vertex may only use a degree >= 2 if enough remain
        # for every cycle position not yet reached
        if len(pool) > unlabelled:
            return pool.pop(0)
        return 1

    while unlabelled > 0:
        depth += 1
        # cycle positions at this depth, children of the larger parent first
        new_pos = [p for p in (depth, g - depth) if p < g and min(p, g - p) == depth]
        new_pos = sorted(set(new_pos), key=lambda p: (0 if p <= half else 1, p))
        parents_by_deg = sorted((f for f in frontier if f[1] == 0), key=lambda f: (-f[0], _plus_rank(f[2], g)))
        ordered = []
        for f in parents_by_deg:
            for p in new_pos:
                if p not in ordered and (abs(p - f[2]) == 1 or abs(p - f[2]) == g - 1):
                    ordered.append(p)
        for p in ordered:
            cyc[p] = take(True)
            unlabelled -= 1
        new_frontier = [(cyc[p], 0, p) for p in ordered]
        for f in sorted(frontier, key=lambda f: (f[1], -f[0])):
            room = f[0] - 2 if f[1] == 0 else f[0] - 1
            for _ in range(room):
                d = take(False)
                if d >= 2:
                    labelled_off.append(d)
                new_frontier.append((d, 1, None))
        frontier = [f for f in new_frontier if f[0] >= 2]
    return cyc, labelled_off


def greedy_unicyclic(D, girth: int):
    D = _as_degrees(D)
    rep = validate_unicyclic(D, girth)
    if not rep.ok:
        raise ConstructionError("; ".join(rep.failures))
    cyc, _ = greedy_unicyclic_cycle_degrees(D, girth)
    rest = list(D.internal)
    for d in cyc:
        rest.remove(d)
    if sum(d - 2 for d in cyc) == 0 and rest:
        return NotApplicable(CandidateKind.GREEDY_UNICYCLIC, "cycle has no free slots")
    return arrange_on_cycle(cyc, rest)


# --------------------------------------------------------------------------
# out-greedy
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class OutGreedyChoice:
    """One admissible way to close the cycle inside a greedy tree."""

    tree_degrees: tuple[int, ...]
    endpoints: tuple[int, int]
    branch_sizes: tuple[int, int]
    final_degrees: tuple[int, int]
    graph: UnicyclicGraph = field(compare=False)


def _tree_variants(D: DegreeSequence) -> list[tuple[int, ...]]:
    """Tree degree sequences from which joining two leaves / pseudo-leaves
    (and dropping one pendant leaf per pseudo-leaf) restores ``D``."""
    internal = list(D.internal)
    out = []
    twos = internal.count(2)
    for leaf_ends in (2, 1, 0):
        if twos < leaf_ends:
            continue
        keep = list(internal)
        for _ in range(leaf_ends):
            keep.remove(2)
        extra = 2 - leaf_ends  # pendant leaves removed again after joining
        leaves = D.leaf_count + leaf_ends + extra
        out.append(tuple(keep) + (1,) * leaves)
    return out


def out_greedy_choices(D, girth: int) -> list[OutGreedyChoice]:
    D = _as_degrees(D)
    found = []
    for tdeg in _tree_variants(D):
        if sum(tdeg) != 2 * (len(tdeg) - 1):
            continue
        parents = greedy_parents(tdeg)
        n = len(parents)
        degs = sorted(tdeg, reverse=True)
        adj: list[list[int]] = [[] for _ in range(n)]
        for v, p in enumerate(parents):
            if p >= 0:
                adj[v].append(p)
                adj[p].append(v)
        top = [-1] * n  # root child whose branch holds v
        for v in range(1, n):
            top[v] = v if parents[v] == 0 else top[parents[v]]
        branch_size = [0] * n
        for v in range(1, n):
            branch_size[top[v]] += 1
        is_leaf = [len(a) == 1 for a in adj]
        pseudo = [len(a) > 1 and sum(1 for u in a if not is_leaf[u]) <= 1 for a in adj]
        dist = [_bfs(adj, s) for s in range(n)]
        for a, b in combinations(range(1, n), 2):
            if dist[a][b] != girth - 1:
                continue
            if not all(is_leaf[x] or pseudo[x] for x in (a, b)):
                continue
            drop = []
            ok = True
            for x in (a, b):
                if is_leaf[x]:
                    continue
                spare = [u for u in adj[x] if is_leaf[u] and u not in (a, b) and u not in drop]
                if not spare:
                    ok = False
                    break
                drop.append(max(spare))
            if not ok:
                continue
            edges = [(p, v) for v, p in enumerate(parents) if p >= 0 and v not in drop]
            edges.append((a, b))
            keep = [v for v in range(n) if v not in drop]
            relabel = {v: i for i, v in enumerate(keep)}
            try:
                G, _ = from_edges_with_map(len(keep), [(relabel[x], relabel[y]) for x, y in edges])
            except ValueError:
                continue
            if G.degree_sequence() != D or G.girth != girth:
                continue
            fin = (len(adj[a]) + 1 - (0 if is_leaf[a] else 1), len(adj[b]) + 1 - (0 if is_leaf[b] else 1))
            sizes = tuple(sorted((branch_size[top[a]], branch_size[top[b]]), reverse=True))
            found.append(OutGreedyChoice(tuple(degs), (a, b), sizes, tuple(sorted(fin, reverse=True)), G))
    return found


def _bfs(adj, s):
    dist = [-1] * len(adj)
    dist[s] = 0
    q = deque([s])
    while q:
        v = q.popleft()
        for u in adj[v]:
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                q.append(u)
    return dist


def out_greedy_precondition(D: DegreeSequence, girth: int) -> tuple[bool, int]:
    """``girth / 2 < h`` where ``h`` is the greedy-tree height of the
    reduced sequence completed with leaves into a tree."""
    tdeg = tuple(D.internal) + (1,) * (D.leaf_count + 2)
    h = RootedTree.from_parents(greedy_parents(tdeg)).height
    return girth < 2 * h, h


PAIR_RULES = ("min-wiener", "branch-degree")


def out_greedy(D, girth: int, rule: str = "min-wiener"):
    """Out-greedy candidate.

    ``rule`` picks among the eligible endpoint pairs: ``"min-wiener"``
    keeps the pair whose graph has the least Wiener index, while
    ``"branch-degree"`` maximizes the two branch sizes and then the final
    endpoint degrees.  Remaining ties go to the least canonical form.
    """
    if rule not in PAIR_RULES:
        raise ValueError(f"unknown pair rule {rule!r}; expected one of {PAIR_RULES}")
    D = _as_degrees(D)
    rep = validate_unicyclic(D, girth)
    if not rep.ok:
        raise ConstructionError("; ".join(rep.failures))
    ok, h = out_greedy_precondition(D, girth)
    if not ok:
        return NotApplicable(CandidateKind.OUT_GREEDY, f"girth/2 = {girth / 2} >= greedy height {h}")
    choices = out_greedy_choices(D, girth)
    if not choices:
        return NotApplicable(CandidateKind.OUT_GREEDY, f"no leaf/pseudo-leaf pair at distance {girth - 1}")
    if rule == "branch-degree":
        best = max(choices, key=lambda c: (c.branch_sizes, c.final_degrees, _neg_form(c.graph)))
    else:
        best = min(choices, key=lambda c: (wiener(c.graph), canonical_form(c.graph)))
    return best.graph


def _neg_form(G):
    # max() over this picks the least canonical string
    return tuple(-ord(ch) for ch in canonical_form(G))


# --------------------------------------------------------------------------
# best of the three
# --------------------------------------------------------------------------

BUILDERS = (
    (CandidateKind.GREEDY_UNICYCLIC, greedy_unicyclic),
    (CandidateKind.CYCLE_CENTERED, cycle_centered),
    (CandidateKind.OUT_GREEDY, out_greedy),
)


@dataclass(frozen=True)
class Candidate:
    kind: CandidateKind
    graph: UnicyclicGraph
    wiener: int
    canonical: str


@dataclass(frozen=True)
class CandidateSummary:
    """All three constructions for one ``(D, girth)`` and the winners.

    ``minimizers`` holds one entry per non-isomorphic minimum-W graph, each
    credited to the first constructor (in :class:`CandidateKind` order)
    that produced it.
    """

    degrees: DegreeSequence
    girth: int
    candidates: tuple[Candidate, ...]
    skipped: tuple[NotApplicable, ...]
    minimizers: tuple[Candidate, ...]

    @property
    def wiener(self) -> int:
        return self.minimizers[0].wiener

    @property
    def best(self) -> Candidate:
        return self.minimizers[0]


def build_candidates(D, girth: int, pair_rule: str = "min-wiener") -> CandidateSummary:
    D = _as_degrees(D)
    rep = validate_unicyclic(D, girth)
    if not rep.ok:
        raise ConstructionError("; ".join(rep.failures))
    built: list[Candidate] = []
    skipped: list[NotApplicable] = []
    for kind, fn in BUILDERS:
        G = fn(D, girth, pair_rule) if kind is CandidateKind.OUT_GREEDY else fn(D, girth)
        if isinstance(G, NotApplicable):
            skipped.append(G)
            continue
        built.append(Candidate(kind, G, wiener(G), canonical_form(G)))
    if not built:
        raise ConstructionError(f"no constructor applies to {D} with girth {girth}")
    low = min(c.wiener for c in built)
    seen: dict[str, Candidate] = {}
    for c in built:
        if c.wiener == low and c.canonical not in seen:
            seen[c.canonical] = c
    minimizers = tuple(sorted(seen.values(), key=lambda c: c.canonical))
    return CandidateSummary(D, girth, tuple(built), tuple(skipped), minimizers)


def best_candidate(D, girth: int, pair_rule: str = "min-wiener") -> tuple[CandidateKind, UnicyclicGraph, int]:
    """``(kind, graph, W)`` of the minimum-W candidate; ties go to the least
    canonical form.  :func:`build_candidates` reports every minimizer."""
    c = build_candidates(D, girth, pair_rule).best
    return c.kind, c.graph, c.wiener


# --------------------------------------------------------------------------
# conjectured best girth
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConjectureInput:
    """Data behind the conjectured optimal girth.

    ``reduced`` lowers the two smallest internal degrees of ``D`` by one,
    which yields a tree sequence.  ``gamma_star`` is ``2h - 1`` when a
    single leaf sits at the greatest depth ``h`` of its greedy tree and
    ``2h`` otherwise.  ``violations`` lists failed hypotheses; the numbers
    are still computed whenever the reduced sequence is a tree sequence.
    """

    degrees: DegreeSequence
    reduced: DegreeSequence | None
    tree: RootedTree | None
    height: int | None
    deepest_leaves: int | None
    gamma_star: int | None
    violations: tuple[str, ...]

    @property
    def hypothesis_holds(self) -> bool:
        return not self.violations


def conjectured_gamma_star(D) -> ConjectureInput:
    D = _as_degrees(D)
    internal = list(D.internal)
    violations = []
    if len(internal) < 2:
        violations.append("fewer than two degrees >= 2")
        return ConjectureInput(D, None, None, None, None, None, tuple(violations))
    if internal[1] == 2:
        violations.append("second largest degree is 2")
    if not D.unicyclic_feasible:
        violations.append("degree sum is not 2n")
    reduced_internal = internal[:-2] + [internal[-2] - 1, internal[-1] - 1]
    reduced = DegreeSequence(reduced_internal + [1] * D.leaf_count)
    if not reduced.tree_feasible:
        violations.append(f"{reduced} is not a tree sequence")
        return ConjectureInput(D, reduced, None, None, None, None, tuple(violations))
    T = greedy_tree(reduced)
    h = T.height
    deepest = sum(1 for v, dep in enumerate(T.depths) if dep == h and not T.children[v])
    gamma = 2 * h - 1 if deepest == 1 else 2 * h
    return ConjectureInput(D, reduced, T, h, deepest, gamma, tuple(violations))
