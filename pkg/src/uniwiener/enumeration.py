"""Isomorphism-free generation of every unicyclic graph with a given
degree sequence and girth.

Leaves are implied by degrees, so only internal vertices are placed:
a branch hanging at a cycle vertex of degree ``d`` has ``d - 2`` child
slots, a non-cycle vertex of degree ``d`` has ``d - 1``; unused slots are
leaves.  Degree multisets are count vectors over the distinct internal
degree values.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterator

from .graph_core import LEAF, Shape, canonical_shape


def sub_vectors(v: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    if not v:
        yield ()
        return
    for x in range(v[0] + 1):
        for rest in sub_vectors(v[1:]):
            yield (x,) + rest


def _minus(a, b):
    return tuple(x - y for x, y in zip(a, b))


@lru_cache(maxsize=None)
def child_forests(values: tuple[int, ...], slots: int, used: tuple[int, ...]) -> tuple[Shape, ...]:
    """All canonical child tuples with ``slots`` children whose internal
    descendants consume exactly the count vector ``used``."""
    out: set[Shape] = set()

    def rec(room: int, rem: tuple[int, ...], floor: Shape | None, acc: list[Shape]):
        if not any(rem):
            out.add(canonical_shape(tuple(acc) + (LEAF,) * room))
            return
        if room == 0:
            return
        for i, d in enumerate(values):
            if rem[i] == 0:
                continue
            after = list(rem)
            after[i] -= 1
            after = tuple(after)
            for sub in sub_vectors(after):
                for child in child_forests(values, d - 1, sub):
                    # children generated in non-increasing order to cut repeats
                    if floor is not None and child > floor:
                        continue
                    rec(room - 1, _minus(after, sub), child, acc + [child])

    rec(slots, used, None, [])
    return tuple(sorted(out, reverse=True))


def branch_shapes(values: tuple[int, ...], root_degree: int, used: tuple[int, ...]) -> tuple[Shape, ...]:
    """Branches hanging at a cycle vertex of the given degree."""
    if root_degree < 2:
        return ()
    return child_forests(values, root_degree - 2, used)


def degree_vector(internal: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    values = tuple(sorted(set(internal), reverse=True))
    return values, tuple(internal.count(v) for v in values)


def dihedral_min(seq: tuple[Shape, ...]) -> tuple[Shape, ...]:
    g = len(seq)
    best = None
    for r in range(g):
        rot = seq[r:] + seq[:r]
        for cand in (rot, (rot[0],) + tuple(reversed(rot[1:]))):
            if best is None or cand < best:
                best = cand
    return best


def first_items(values, counts, girth) -> list[Shape]:
    """Branches that may sit at position 0 (the lexicographic maximum)."""
    items = set()
    for i, d in enumerate(values):
        if counts[i] == 0:
            continue
        after = list(counts)
        after[i] -= 1
        after = tuple(after)
        for sub in sub_vectors(after):
            if sum(after) - sum(sub) < girth - 1:
                continue
            items.update(branch_shapes(values, d, sub))
    return sorted(items, reverse=True)


class BudgetExceeded(Exception):
    """Raised when a partition visits more arrangements than allowed.

    ``found`` holds the canonical keys collected before stopping.
    """

    def __init__(self, found=frozenset()):
        super().__init__("enumeration budget exceeded")
        self.found = found


def cyclic_sequences(values, counts, girth, first: Shape, budget: int | None = None,
                     visited: list[int] | None = None) -> set[tuple[Shape, ...]]:
    """Canonical keys of all graphs whose maximal branch is ``first``.

    ``visited`` (a one-element list) accumulates the number of complete
    arrangements inspected; :class:`BudgetExceeded` is raised past ``budget``.
    """
    if visited is None:
        visited = [0]
    d0 = len(first) + 2
    i0 = values.index(d0)
    start = list(counts)
    start[i0] -= 1
    used0 = _count_internal(first, values)
    rem0 = _minus(tuple(start), used0)
    if min(rem0, default=0) < 0:
        return set()
    found: set[tuple[Shape, ...]] = set()

    def rec(p: int, rem: tuple[int, ...], seq: list[Shape]):
        if p == girth:
            if any(rem):
                return
            visited[0] += 1
            if budget is not None and visited[0] > budget:
                raise BudgetExceeded(frozenset(found))
            found.add(dihedral_min(tuple(seq)))
            return
        left = girth - p - 1
        for i, d in enumerate(values):
            if rem[i] == 0:
                continue
            after = list(rem)
            after[i] -= 1
            after = tuple(after)
            total = sum(after)
            if total < left:
                continue
            for sub in sub_vectors(after):
                if total - sum(sub) < left:
                    continue
                for b in branch_shapes(values, d, sub):
                    if b > first:
                        continue
                    seq.append(b)
                    rec(p + 1, _minus(after, sub), seq)
                    seq.pop()

    rec(1, rem0, [first])
    return found


def _count_internal(shape: Shape, values) -> tuple[int, ...]:
    counts = [0] * len(values)
    stack = list(shape)
    while stack:
        s = stack.pop()
        if s:
            counts[values.index(len(s) + 1)] += 1
            stack.extend(s)
    return tuple(counts)
