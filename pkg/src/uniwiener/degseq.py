"""Degree sequences of unicyclic graphs: parsing, validation, majorization."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import accumulate


class DegreeSequenceError(ValueError):
    """Raised when a degree-sequence string or tuple is malformed."""


@dataclass(frozen=True)
class DegreeSequence:
    """Non-increasing sequence of positive vertex degrees.

    Input order is irrelevant; the constructor sorts.
    """

    degrees: tuple[int, ...]

    def __init__(self, degrees):
        degrees = tuple(int(d) for d in degrees)
        if not degrees:
            raise DegreeSequenceError("empty degree sequence")
        bad = [d for d in degrees if d < 1]
        if bad:
            raise DegreeSequenceError(f"degree {bad[0]} is not a positive integer")
        object.__setattr__(self, "degrees", tuple(sorted(degrees, reverse=True)))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def internal_count(self) -> int:
        return sum(1 for d in self.degrees if d >= 2)

    @property
    def leaf_count(self) -> int:
        return sum(1 for d in self.degrees if d == 1)

    @property
    def internal(self) -> tuple[int, ...]:
        return self.degrees[: self.internal_count]

    @property
    def unicyclic_feasible(self) -> bool:
        return sum(self.degrees) == 2 * self.n

    @property
    def tree_feasible(self) -> bool:
        return self.n >= 2 and sum(self.degrees) == 2 * (self.n - 1)

    def reduced(self) -> "ReducedDegreeSequence":
        return ReducedDegreeSequence(self.internal)

    def render(self) -> str:
        """Compact text form using the ``k^m`` shorthand for runs."""
        parts = []
        i = 0
        while i < self.n:
            j = i
            while j < self.n and self.degrees[j] == self.degrees[i]:
                j += 1
            run = j - i
            parts.append(str(self.degrees[i]) if run == 1 else f"{self.degrees[i]}^{run}")
            i = j
        return ",".join(parts)

    def __len__(self) -> int:
        return self.n

    def __iter__(self):
        return iter(self.degrees)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ReducedDegreeSequence:
    """The entries >= 2 of a unicyclic degree sequence.

    The number of leaves is forced by the handshake lemma, so this
    realizes exactly the same unicyclic graphs as its parent.
    """

    internal_degrees: tuple[int, ...]

    def expand(self) -> DegreeSequence:
        leaves = sum(d - 2 for d in self.internal_degrees)
        return DegreeSequence(self.internal_degrees + (1,) * leaves)


_TOKEN = re.compile(r"^(-?\d+)(?:\^(-?\d+))?$")


def parse_degree_sequence(text: str, leaves: str | None = None) -> DegreeSequence:
    """Parse ``"4,3^7,2^2,1^9"`` style text.

    Tokens are separated by commas and/or whitespace; ``k^m`` expands to
    ``m`` copies of ``k``.  With ``leaves="auto"`` any existing 1-entries
    are replaced by exactly as many leaves as make ``sum == 2n``.
    """
    tokens = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    if not tokens:
        raise DegreeSequenceError("empty degree sequence")
    degrees: list[int] = []
    for tok in tokens:
        m = _TOKEN.match(tok)
        if m is None:
            raise DegreeSequenceError(f"invalid token {tok!r}")
        value = int(m.group(1))
        count = int(m.group(2)) if m.group(2) is not None else 1
        if value < 1:
            raise DegreeSequenceError(f"invalid token {tok!r}: degrees must be positive")
        if count < 1:
            raise DegreeSequenceError(f"invalid token {tok!r}: repeat count must be positive")
        degrees.extend([value] * count)
    if leaves == "auto":
        internal = [d for d in degrees if d >= 2]
        if not internal:
            raise DegreeSequenceError("leaves=auto needs at least one degree >= 2")
        degrees = internal + [1] * sum(d - 2 for d in internal)
    elif leaves is not None:
        raise DegreeSequenceError(f"unknown leaves mode {leaves!r}")
    return DegreeSequence(degrees)


@dataclass(frozen=True)
class ValidationReport:
    degrees: DegreeSequence
    girth: int
    failures: tuple[str, ...] = field(default=())

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok


def validate_unicyclic(D: DegreeSequence, girth: int) -> ValidationReport:
    """Check whether some unicyclic graph with girth ``girth`` realizes ``D``.

    The three conditions (handshake sum, enough vertices, enough
    internal vertices for the cycle) are also sufficient.
    """
    failures = []
    if girth < 3:
        failures.append(f"girth {girth} < 3")
    if sum(D.degrees) != 2 * D.n:
        failures.append(f"degree sum {sum(D.degrees)} != 2n = {2 * D.n}")
    if D.n < girth:
        failures.append(f"n = {D.n} < girth {girth}")
    if D.internal_count < girth:
        failures.append(f"only {D.internal_count} entries >= 2, girth {girth} needs {girth}")
    # a 2-regular connected graph is a single cycle through every vertex
    if not failures and D.degrees[0] == 2 and girth != D.n:
        failures.append(f"all degrees are 2, so the only realization is the {D.n}-cycle")
    return ValidationReport(D, girth, tuple(failures))


def feasible_girths(D: DegreeSequence) -> list[int]:
    return [g for g in range(3, D.internal_count + 1) if validate_unicyclic(D, g).ok]


def majorizes(A, B) -> bool:
    """True iff ``A ⪯ B``: B majorizes every rearrangement of A.

    Equivalent to comparing prefix sums of A sorted non-increasingly
    against prefix sums of B in its given order.
    """
    a = tuple(A)
    b = tuple(B)
    if len(a) != len(b):
        raise DegreeSequenceError(f"length mismatch: {len(a)} vs {len(b)}")
    pa = accumulate(sorted(a, reverse=True))
    pb = accumulate(b)
    return all(x <= y for x, y in zip(pa, pb))
