"""Exhaustive enumeration of unicyclic graphs with given degrees and girth,
exact minima, structural checks on the optima and girth exploration."""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .constructors import build_candidates, conjectured_gamma_star
from .degseq import DegreeSequence, DegreeSequenceError, validate_unicyclic
from .enumeration import BudgetExceeded, cyclic_sequences, degree_vector, first_items
from .formulas import (
    chain_labellings,
    cycle_edges,
    designated_removal_edge,
    remove_cycle_edge,
    tree_wiener_edge_form,
    wiener,
)
from .graph_core import UnicyclicGraph, canonical_form, centroid

DEFAULT_BUDGET = 50_000_000
BUDGET_ENV = "WIENER_BUDGET"


class OracleError(ValueError):
    pass


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or raw == "":
        return DEFAULT_BUDGET
    try:
        value = int(float(raw))
    except ValueError:
        raise OracleError(f"{BUDGET_ENV}={raw!r} is not a number") from None
    if value < 1:
        raise OracleError(f"{BUDGET_ENV} must be positive, got {value}")
    return value


def _as_degrees(D) -> DegreeSequence:
    return D if isinstance(D, DegreeSequence) else DegreeSequence(D)


def _check_valid(D: DegreeSequence, girth: int):
    rep = validate_unicyclic(D, girth)
    if not rep.ok:
        raise DegreeSequenceError(f"{D} with girth {girth}: " + "; ".join(rep.failures))


def _partitions(D: DegreeSequence, girth: int):
    values, counts = degree_vector(tuple(D.internal))
    return values, counts, first_items(values, counts, girth)


def enumerate_unicyclic(D, girth: int) -> Iterator[UnicyclicGraph]:
    """Every isomorphism class of 𝕌 exactly once, in canonical-key order."""
    D = _as_degrees(D)
    _check_valid(D, girth)
    values, counts, firsts = _partitions(D, girth)
    for first in firsts:
        for key in sorted(cyclic_sequences(values, counts, girth, first)):
            yield UnicyclicGraph.from_shapes(key)


# --------------------------------------------------------------------------
# exhaustive minimum
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class _PartitionResult:
    visited: int
    exceeded: bool
    count: int
    minimum: int | None
    minimizers: tuple  # shape keys


def _run_partition(values, counts, girth, first, budget) -> _PartitionResult:
    visited = [0]
    exceeded = False
    try:
        keys = cyclic_sequences(values, counts, girth, first, budget, visited)
    except BudgetExceeded as exc:
        keys = exc.found
        exceeded = True
    best = None
    arg: list = []
    for k in keys:
        w = wiener(UnicyclicGraph.from_shapes(k))
        if best is None or w < best:
            best, arg = w, [k]
        elif w == best:
            arg.append(k)
    return _PartitionResult(visited[0], exceeded, len(keys), best, tuple(sorted(arg)))


@dataclass(frozen=True)
class CheckOutcome:
    theorem: str
    tested: int
    violations: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class EnumerationReport:
    degrees: DegreeSequence
    girth: int
    count: int
    minimum: int | None
    minimizers: tuple[str, ...]
    exhaustive: bool
    wall_time: float
    visited: int
    budget: int
    candidate_wiener: int | None = None
    checks: tuple[CheckOutcome, ...] = ()
    minimizer_graphs: tuple[UnicyclicGraph, ...] = field(default=(), compare=False, repr=False)

    @property
    def matches_candidate(self) -> bool | None:
        if self.candidate_wiener is None or self.minimum is None:
            return None
        return self.minimum == self.candidate_wiener


def exhaustive_minimum(D, girth: int, budget: int | None = None, workers: int = 1,
                       with_candidate: bool = True) -> EnumerationReport:
    """Exact minimum W over all graphs with degrees ``D`` and girth ``girth``.

    The search is split by the branch at the lexicographically largest
    cycle position; each part may run in its own process.  ``budget``
    bounds the total number of cyclic arrangements visited.  Parts are
    merged in a fixed order, so the report never depends on ``workers``.
    Past the budget, later parts are dropped and the report is marked
    non-exhaustive.
    """
    D = _as_degrees(D)
    _check_valid(D, girth)
    if budget is None:
        budget = default_budget()
    if workers < 1:
        raise OracleError(f"workers must be >= 1, got {workers}")
    t0 = time.perf_counter()
    values, counts, firsts = _partitions(D, girth)
    args = [(values, counts, girth, f, budget) for f in firsts]
    if workers == 1 or len(args) <= 1:
        results = [_run_partition(*a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_partition, *zip(*args)))

    visited = 0
    count = 0
    best = None
    keys: list = []
    exhaustive = True
    for r in results:
        visited += r.visited
        if r.exceeded or visited > budget:
            exhaustive = False
            break
        count += r.count
        if r.minimum is None:
            continue
        if best is None or r.minimum < best:
            best, keys = r.minimum, list(r.minimizers)
        elif r.minimum == best:
            keys.extend(r.minimizers)
    graphs = tuple(UnicyclicGraph.from_shapes(k) for k in keys)
    forms = sorted(canonical_form(G) for G in graphs)
    graphs = tuple(sorted(graphs, key=canonical_form))
    cand = build_candidates(D, girth).wiener if with_candidate else None
    return EnumerationReport(
        degrees=D,
        girth=girth,
        count=count,
        minimum=best,
        minimizers=tuple(forms),
        exhaustive=exhaustive,
        wall_time=time.perf_counter() - t0,
        visited=visited,
        budget=budget,
        candidate_wiener=cand,
        minimizer_graphs=graphs,
    )


# --------------------------------------------------------------------------
# structural checks on the optima
# --------------------------------------------------------------------------

CHECK_IDS = ("chain-labelling", "removal-edge", "centroid", "min-of-three")


def _removal_edge_violation(H: UnicyclicGraph) -> str | None:
    e = designated_removal_edge(H)
    target = tree_wiener_edge_form(remove_cycle_edge(H, e))
    for f in cycle_edges(H):
        w = tree_wiener_edge_form(remove_cycle_edge(H, f))
        if w < target:
            return f"{canonical_form(H)}: removing {f} gives W(T) = {w} < {target}"
    return None


def check_theorems(D, girth: int, report: EnumerationReport | None = None,
                   graphs: Iterable[UnicyclicGraph] | None = None) -> tuple[CheckOutcome, ...]:
    """Structural checks on one ``(D, girth)``.

    * chain-labelling: some minimizer has a cycle labelling meeting both the
      branch-size chain and the cycle-degree chain.
    * removal-edge: on every such labelling, deleting the designated edge
      gives the least tree Wiener index among all cycle-edge deletions.
    * centroid: every graph's centroid is a vertex, an edge or lies on the
      cycle.
    * min-of-three: the exact minimum equals the best candidate.

    Only minimizers enter the first two checks.  ``graphs`` defaults to the
    full enumeration.
    """
    D = _as_degrees(D)
    if report is None:
        report = exhaustive_minimum(D, girth)
    if not report.exhaustive:
        raise OracleError("structural checks need an exhaustive report")
    mins = report.minimizer_graphs
    chains = {canonical_form(G): chain_labellings(G) for G in mins}
    if mins and not any(chains.values()):
        chain_viol = (f"no minimizer of {D} (girth {girth}) has a chain labelling: " + ", ".join(chains),)
    else:
        chain_viol = ()
    chain = CheckOutcome("chain-labelling", len(mins), chain_viol)

    removal_tested = 0
    removal_viol = []
    for labellings in chains.values():
        for H in labellings:
            removal_tested += 1
            msg = _removal_edge_violation(H)
            if msg:
                removal_viol.append(msg)
    removal = CheckOutcome("removal-edge", removal_tested, tuple(removal_viol))

    if graphs is None:
        graphs = enumerate_unicyclic(D, girth)
    cen_tested = 0
    cen_viol = []
    for G in graphs:
        cen_tested += 1
        rep = centroid(G)
        if not rep.consistent:
            cen_viol.append(f"{canonical_form(G)}: centroid {rep.vertices}")
    cen = CheckOutcome("centroid", cen_tested, tuple(cen_viol))

    cand = report.candidate_wiener
    if cand is None:
        cand = build_candidates(D, girth).wiener
    mot_viol = () if cand == report.minimum else (
        f"{D} girth {girth}: exact minimum {report.minimum}, best candidate {cand}",)
    mot = CheckOutcome("min-of-three", 1, mot_viol)
    return (chain, removal, cen, mot)


# --------------------------------------------------------------------------
# girth exploration
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GirthRow:
    girth: int
    candidate_minimum: int
    candidate_kinds: tuple[str, ...]
    exact_minimum: int | None
    exhaustive: bool
    minimizer_count: int | None


@dataclass(frozen=True)
class ConjectureExploration:
    degrees: DegreeSequence
    rows: tuple[GirthRow, ...]
    candidate_argmin: tuple[int, ...]
    empirical_argmin: tuple[int, ...]
    conjectured: int | None
    hypothesis_violations: tuple[str, ...]

    @property
    def agrees(self) -> bool | None:
        if self.conjectured is None:
            return None
        return self.conjectured in self.empirical_argmin

    @property
    def finding(self) -> str:
        emp = ",".join(map(str, self.empirical_argmin))
        if self.conjectured is None:
            return f"conjectured girth undefined ({'; '.join(self.hypothesis_violations)}); empirical argmin girth {emp}"
        if self.agrees:
            return f"conjectured girth {self.conjectured} agrees with empirical argmin girth {emp}"
        return f"discrepancy: conjectured girth {self.conjectured} vs empirical argmin girth {emp}"


def _argmin(pairs) -> tuple[int, ...]:
    pairs = [(g, w) for g, w in pairs if w is not None]
    if not pairs:
        return ()
    low = min(w for _, w in pairs)
    return tuple(g for g, w in pairs if w == low)


def explore_conjecture(D, girths: Iterable[int] | None = None, budget: int | None = None,
                       workers: int = 1, exact: bool = True) -> ConjectureExploration:
    """Per-girth candidate and exact minima, their argmin girths and the
    conjectured optimal girth.

    The empirical argmin uses exact minima where the search finished and
    candidate minima otherwise.
    """
    D = _as_degrees(D)
    if girths is None:
        girths = [g for g in range(3, D.n + 1) if validate_unicyclic(D, g).ok]
    girths = list(girths)
    if not girths:
        raise OracleError(f"{D} has no feasible girth")
    rows = []
    for g in girths:
        _check_valid(D, g)
        summary = build_candidates(D, g)
        kinds = tuple(sorted({str(c.kind) for c in summary.minimizers}))
        if exact:
            rep = exhaustive_minimum(D, g, budget=budget, workers=workers, with_candidate=False)
            ex_min = rep.minimum if rep.exhaustive else None
            rows.append(GirthRow(g, summary.wiener, kinds, ex_min, rep.exhaustive,
                                 len(rep.minimizers) if rep.exhaustive else None))
        else:
            rows.append(GirthRow(g, summary.wiener, kinds, None, False, None))
    conj = conjectured_gamma_star(D)
    return ConjectureExploration(
        degrees=D,
        rows=tuple(rows),
        candidate_argmin=_argmin((r.girth, r.candidate_minimum) for r in rows),
        empirical_argmin=_argmin((r.girth, r.exact_minimum if r.exhaustive else r.candidate_minimum) for r in rows),
        conjectured=conj.gamma_star,
        hypothesis_violations=conj.violations,
    )
