"""Choose-one voting profiles with abstentions, tallies and permutation actions.

A ballot is a plain integer: 0 is an abstention, k in [1, m] is a vote for
candidate k.  Aggregation outcomes live in the same value space (0 means a
tie / no decision), so an outcome can be fed back in as a ballot -- the
subsociety-reduction axiom depends on that.

All values here are immutable and safe to share across workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations_with_replacement, product
from typing import Iterator

__all__ = [
    "Outcome",
    "Profile",
    "Tally",
    "CandidatePermutation",
    "VoterPermutation",
    "ProfileParseError",
    "tally",
    "apply_voter_permutation",
    "apply_candidate_permutation",
    "apply_to_outcome",
    "remove_voter",
    "canonicalize",
    "enumerate_profiles",
    "profile_count",
    "parse_profile",
    "format_profile",
]

# 0 = tie/abstention, k in [1, m] = candidate k.
Outcome = int


class ProfileParseError(ValueError):
    """Profile text does not match the on-disk format; carries a line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Profile:
    """An ordered sequence of ballots over a fixed candidate count.

    ``m`` is explicit: two profiles with equal ballots but different ``m``
    are distinct values, because candidate relabelings quantify over all m
    candidates, including those receiving zero votes.
    """

    m: int
    ballots: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "ballots", tuple(self.ballots))
        if self.m < 2:
            raise ValueError(f"candidate count must be >= 2, got {self.m}")
        if not self.ballots:
            raise ValueError("a profile needs at least one voter")
        for b in self.ballots:
            if not 0 <= b <= self.m:
                raise ValueError(f"ballot {b} outside [0, {self.m}]")

    @property
    def n(self) -> int:
        """Number of voters."""
        return len(self.ballots)

    def is_canonical(self) -> bool:
        return all(a <= b for a, b in zip(self.ballots, self.ballots[1:]))


@dataclass(frozen=True)
class Tally:
    """Vote counts per candidate plus the abstention count.

    ``counts[k-1]`` is the number of ballots for candidate k;
    ``abstentions + sum(counts)`` equals the source profile's voter count.
    """

    m: int
    counts: tuple[int, ...]
    abstentions: int

    def count(self, k: int) -> int:
        """Votes for candidate k (1-indexed)."""
        return self.counts[k - 1]

    def leaders(self) -> tuple[int, ...]:
        """Candidates sharing the maximum vote count.

        When nobody votes, every candidate is trivially tied at zero, so all
        of them are returned.
        """
        top = max(self.counts)
        return tuple(k for k in range(1, self.m + 1) if self.counts[k - 1] == top)

    def support(self) -> tuple[int, ...]:
        """Candidates with at least one vote, ascending."""
        return tuple(k for k in range(1, self.m + 1) if self.counts[k - 1] > 0)


@dataclass(frozen=True)
class CandidatePermutation:
    """A relabeling of the candidates 1..m; abstention (0) is always fixed.

    ``image[k-1]`` is the new label of candidate k.
    """

    m: int
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if sorted(self.image) != list(range(1, self.m + 1)):
            raise ValueError(f"image {self.image} is not a permutation of 1..{self.m}")

    @classmethod
    def identity(cls, m: int) -> "CandidatePermutation":
        return cls(m, tuple(range(1, m + 1)))

    @classmethod
    def transposition(cls, m: int, i: int, j: int) -> "CandidatePermutation":
        """The swap of candidates i and j, fixing everyone else."""
        image = list(range(1, m + 1))
        image[i - 1], image[j - 1] = j, i
        return cls(m, tuple(image))

    def outcome(self, value: int) -> int:
        """Apply to a single ballot or outcome value; 0 stays 0."""
        return 0 if value == 0 else self.image[value - 1]


@dataclass(frozen=True)
class VoterPermutation:
    """A reordering of the voters 1..n; ``image[l-1]`` is voter l's new position."""

    n: int
    image: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "image", tuple(self.image))
        if sorted(self.image) != list(range(1, self.n + 1)):
            raise ValueError(f"image {self.image} is not a permutation of 1..{self.n}")

    @classmethod
    def identity(cls, n: int) -> "VoterPermutation":
        return cls(n, tuple(range(1, n + 1)))


def tally(p: Profile) -> Tally:
    """Count votes per candidate and abstentions."""
    counts = [0] * p.m
    abstentions = 0
    for b in p.ballots:
        if b == 0:
            abstentions += 1
        else:
            counts[b - 1] += 1
    return Tally(p.m, tuple(counts), abstentions)


def apply_voter_permutation(p: Profile, sigma: VoterPermutation) -> Profile:
    """Reorder ballots: the result's ballot at position sigma.image[l] is p's at l."""
    if sigma.n != p.n:
        raise ValueError(f"permutation on {sigma.n} voters applied to {p.n}-voter profile")
    out = [0] * p.n
    for l in range(p.n):
        out[sigma.image[l] - 1] = p.ballots[l]
    return Profile(p.m, tuple(out))


def apply_candidate_permutation(p: Profile, tau: CandidatePermutation) -> Profile:
    """Relabel every ballot; abstentions are unchanged."""
    if tau.m != p.m:
        raise ValueError(f"permutation on {tau.m} candidates applied to m={p.m} profile")
    return Profile(p.m, tuple(tau.outcome(b) for b in p.ballots))


def apply_to_outcome(o: Outcome, tau: CandidatePermutation) -> Outcome:
    """Relabel a single outcome: 0 maps to 0, k maps to tau.image[k]."""
    if not 0 <= o <= tau.m:
        raise ValueError(f"outcome {o} outside [0, {tau.m}]")
    return tau.outcome(o)


def remove_voter(p: Profile, l: int) -> Profile:
    """Delete voter l (1-indexed), preserving the order of the others."""
    if not 1 <= l <= p.n:
        raise IndexError(f"voter index {l} outside [1, {p.n}]")
    if p.n == 1:
        raise ValueError("cannot remove the only voter")
    return Profile(p.m, p.ballots[: l - 1] + p.ballots[l:])


def canonicalize(p: Profile) -> Profile:
    """The sorted representative of p's anonymity class."""
    return Profile(p.m, tuple(sorted(p.ballots)))


def enumerate_profiles(m: int, n: int, canonical_only: bool = False) -> Iterator[Profile]:
    """Yield every profile in [0, m]^n in lexicographic ballot order.

    With ``canonical_only`` only sorted profiles are produced, one per
    anonymity class; both orders are deterministic, so downstream witness
    selection is stable across runs.
    """
    if m < 2:
        raise ValueError(f"candidate count must be >= 2, got {m}")
    if n < 1:
        raise ValueError(f"voter count must be >= 1, got {n}")
    values = range(m + 1)
    source = combinations_with_replacement(values, n) if canonical_only else product(values, repeat=n)
    for ballots in source:
        yield Profile(m, ballots)


def profile_count(m: int, n: int, canonical_only: bool = False) -> int:
    """Size of the profile space: (m+1)^n, or C(n+m, m) canonical classes."""
    return math.comb(n + m, m) if canonical_only else (m + 1) ** n


def parse_profile(text: str) -> Profile:
    """Parse the two-line text format: ``"m n"`` then n space-separated ballots."""
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) != 2:
        raise ProfileParseError(f"expected 2 lines, found {len(lines)}", line=min(len(lines), 3))
    header = lines[0].split()
    if len(header) != 2:
        raise ProfileParseError(f"expected 'm n', found {len(header)} tokens", line=1)
    try:
        m, n = int(header[0]), int(header[1])
    except ValueError:
        raise ProfileParseError(f"non-integer header tokens {header!r}", line=1) from None
    if m < 2:
        raise ProfileParseError(f"candidate count must be >= 2, got {m}", line=1)
    if n < 1:
        raise ProfileParseError(f"voter count must be >= 1, got {n}", line=1)
    tokens = lines[1].split()
    if len(tokens) != n:
        raise ProfileParseError(f"expected {n} ballots, found {len(tokens)}", line=2)
    ballots = []
    for col, tok in enumerate(tokens, start=1):
        try:
            b = int(tok)
        except ValueError:
            raise ProfileParseError(f"column {col}: non-integer ballot {tok!r}", line=2) from None
        if not 0 <= b <= m:
            raise ProfileParseError(f"column {col}: ballot {b} outside [0, {m}]", line=2)
        ballots.append(b)
    return Profile(m, tuple(ballots))


def format_profile(p: Profile) -> str:
    """Render the canonical two-line text form (byte-stable, trailing newline)."""
    return f"{p.m} {p.n}\n{' '.join(str(b) for b in p.ballots)}\n"
