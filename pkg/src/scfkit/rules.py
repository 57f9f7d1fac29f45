"""Concrete social choice functions and the table representation used by search.

A social choice function maps profiles (fixed m, any n >= 1) to a single
outcome.  The named rules here are total and deterministic; ``TabledFunction``
is the finite, canonical-profile-keyed representation the search engine
enumerates over.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .core import Outcome, Profile, enumerate_profiles, tally

__all__ = [
    "Rule",
    "TabledFunction",
    "IncompleteTableError",
    "TableParseError",
    "majority_rule",
    "unanimity_consent",
    "lexicographic_first",
    "constant_zero",
    "RULES",
]


@dataclass(frozen=True)
class Rule:
    """A named social choice function.

    ``claims_anonymous`` declares that evaluation factors through the sorted
    profile, which lets checkers memoize by anonymity class.  The claim is
    checked by the anonymity checker, never trusted by it.
    """

    name: str
    fn: Callable[[Profile], Outcome]
    claims_anonymous: bool = True

    def evaluate(self, p: Profile) -> Outcome:
        return self.fn(p)


def majority_rule(p: Profile) -> Outcome:
    """The candidate with strictly more votes than every other; 0 on any top
    tie or when nobody votes."""
    t = tally(p)
    best = max(t.counts)
    if best > 0 and t.counts.count(best) == 1:
        return t.counts.index(best) + 1
    return 0


def unanimity_consent(p: Profile) -> Outcome:
    """A candidate wins only when no one voted for anyone else (abstentions
    allowed); otherwise a tie."""
    support = tally(p).support()
    if len(support) == 1:
        return support[0]
    return 0


def lexicographic_first(p: Profile) -> Outcome:
    """The smallest-indexed candidate with any votes; 0 when everyone abstains.

    Deliberately candidate-biased: used as the neutrality counterexample.
    """
    support = tally(p).support()
    return support[0] if support else 0


def constant_zero(p: Profile) -> Outcome:
    """Always a tie, regardless of votes."""
    return 0


RULES: dict[str, Rule] = {
    "maj": Rule("maj", majority_rule),
    "uc": Rule("uc", unanimity_consent),
    "lex": Rule("lex", lexicographic_first),
    "zero": Rule("zero", constant_zero),
}


class IncompleteTableError(LookupError):
    """Evaluation hit an unassigned table entry (distinct from argument errors
    so the search engine can defer rather than fail)."""

    def __init__(self, ballots: tuple[int, ...]):
        self.ballots = ballots
        super().__init__(f"no outcome assigned for canonical profile {ballots}")


class TableParseError(ValueError):
    """Table text does not match the on-disk format; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


def _canonical_key(p: Profile) -> tuple[int, ...]:
    return tuple(sorted(p.ballots))


@dataclass(frozen=True)
class TabledFunction:
    """An explicit outcome table over canonical profiles with 1 <= n <= n_max.

    Keys are sorted ballot tuples, so anonymity is built into the
    representation.  Entries absent from ``table`` are unassigned; evaluating
    one raises :class:`IncompleteTableError`.
    """

    m: int
    n_max: int
    table: dict[tuple[int, ...], int]
    claims_anonymous: bool = field(default=True, compare=False)

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"candidate count must be >= 2, got {self.m}")
        if self.n_max < 1:
            raise ValueError(f"voter bound must be >= 1, got {self.n_max}")
        for key, out in self.table.items():
            if not 1 <= len(key) <= self.n_max:
                raise ValueError(f"key {key} has length outside [1, {self.n_max}]")
            if list(key) != sorted(key):
                raise ValueError(f"key {key} is not canonical (sorted)")
            if not all(0 <= b <= self.m for b in key):
                raise ValueError(f"key {key} has ballots outside [0, {self.m}]")
            if not 0 <= out <= self.m:
                raise ValueError(f"outcome {out} for {key} outside [0, {self.m}]")

    @classmethod
    def from_rule(cls, rule, m: int, n_max: int) -> "TabledFunction":
        """Tabulate any social choice function over canonical profiles."""
        table = {}
        for n in range(1, n_max + 1):
            for p in enumerate_profiles(m, n, canonical_only=True):
                table[p.ballots] = rule.evaluate(p)
        return cls(m, n_max, table)

    def is_complete(self) -> bool:
        from .core import profile_count

        want = sum(profile_count(self.m, n, canonical_only=True) for n in range(1, self.n_max + 1))
        return len(self.table) == want

    def evaluate(self, p: Profile) -> Outcome:
        if p.m != self.m:
            raise ValueError(f"profile has m={p.m}, table has m={self.m}")
        if p.n > self.n_max:
            raise ValueError(f"profile has {p.n} voters, table bound is {self.n_max}")
        key = _canonical_key(p)
        try:
            return self.table[key]
        except KeyError:
            raise IncompleteTableError(key) from None

    def to_text(self) -> str:
        """Persist as text: header ``"m n_max"``, one ``"b1 .. bn -> o"`` line
        per assigned entry, sorted by (n, ballots).  Round-trips bit-exactly."""
        lines = [f"{self.m} {self.n_max}"]
        for key in sorted(self.table, key=lambda k: (len(k), k)):
            lines.append(f"{' '.join(str(b) for b in key)} -> {self.table[key]}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TabledFunction":
        lines = text.splitlines()
        while lines and not lines[-1].strip():
            lines.pop()
        if not lines:
            raise TableParseError("empty table text", line=1)
        header = lines[0].split()
        if len(header) != 2:
            raise TableParseError(f"expected 'm n_max', found {len(header)} tokens", line=1)
        try:
            m, n_max = int(header[0]), int(header[1])
        except ValueError:
            raise TableParseError(f"non-integer header tokens {header!r}", line=1) from None
        table = {}
        for lineno, raw in enumerate(lines[1:], start=2):
            if "->" not in raw:
                raise TableParseError("missing '->' separator", line=lineno)
            left, _, right = raw.partition("->")
            try:
                key = tuple(int(tok) for tok in left.split())
                out = int(right.strip())
            except ValueError:
                raise TableParseError(f"non-integer entry {raw!r}", line=lineno) from None
            if not key:
                raise TableParseError("entry has no ballots", line=lineno)
            if key in table:
                raise TableParseError(f"duplicate entry for {key}", line=lineno)
            table[key] = out
        try:
            return cls(m, n_max, table)
        except ValueError as exc:
            raise TableParseError(str(exc)) from None
