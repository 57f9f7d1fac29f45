"""Bounded-exhaustive axiom checkers over the profile space (n <= n_max).

Each checker scans every profile up to the voter bound and returns an
:class:`AxiomReport`: a pass, or the minimal witness of a violation in
lexicographic (n, profile, permutation-or-pair-or-(candidate, voter)) order.
Witnesses are replayable: :func:`replay_witness` re-derives the violation
from the recorded configuration and the function alone.

The profile stream may be partitioned across worker threads; per-chunk minima
are merged in stream order, so the reported witness is identical for any
worker count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import permutations
from typing import Callable, Iterable

from .core import (
    CandidatePermutation,
    Profile,
    VoterPermutation,
    apply_candidate_permutation,
    apply_voter_permutation,
    canonicalize,
    enumerate_profiles,
    format_profile,
    remove_voter,
    tally,
)

__all__ = [
    "AXIOM_IDS",
    "PR_TIE_MODES",
    "Witness",
    "AxiomReport",
    "reduce_profile",
    "check_anonymity",
    "check_neutrality",
    "check_duel_property",
    "check_pareto",
    "check_rs",
    "check_positive_responsiveness",
    "check_no_tied_winner",
    "replay_witness",
    "CHECKERS",
]

AXIOM_IDS = ("A", "N", "DP", "PO", "RS", "PR", "NTW")

# How a tie (outcome 0) responds to one ballot moving to candidate k:
#   leaders: f(P') = k required when k is among P's plurality co-leaders
#            (every candidate, when nobody votes).  Default.
#   always:  f(P') = k required for every k.  Majority rule itself fails
#            this for m >= 3 (a vote for an outsider cannot crown them),
#            so it is kept only as the literal two-candidate reading.
#   wins:    ties are unconstrained; only existing wins must be preserved.
PR_TIE_MODES = ("leaders", "always", "wins")


@dataclass(frozen=True)
class Witness:
    """A violating configuration, with enough context to replay it.

    Field use varies by axiom: ``related_profile`` is the permuted, reduced
    or upgraded profile; ``actual``/``expected`` are the clashing outcomes
    (for the reduction axiom: left side vs. right side); ``pair`` is the
    duel or tied pair; ``candidate``/``voter`` locate a one-ballot upgrade.
    """

    profile: Profile
    actual: int
    expected: int | None = None
    related_profile: Profile | None = None
    permutation: tuple[int, ...] | None = None
    pair: tuple[int, int] | None = None
    candidate: int | None = None
    voter: int | None = None
    note: str = ""

    def to_dict(self) -> dict:
        doc: dict = {"profile": format_profile(self.profile), "actual": self.actual}
        if self.expected is not None:
            doc["expected"] = self.expected
        if self.related_profile is not None:
            doc["related_profile"] = format_profile(self.related_profile)
        if self.permutation is not None:
            doc["permutation"] = list(self.permutation)
        if self.pair is not None:
            doc["pair"] = list(self.pair)
        if self.candidate is not None:
            doc["candidate"] = self.candidate
        if self.voter is not None:
            doc["voter"] = self.voter
        if self.note:
            doc["note"] = self.note
        return doc


@dataclass(frozen=True)
class AxiomReport:
    """Outcome of one bounded-exhaustive check at scope (m, n_max)."""

    axiom: str
    m: int
    n_max: int
    passed: bool
    witness: Witness | None = None

    def __post_init__(self):
        if self.axiom not in AXIOM_IDS:
            raise ValueError(f"unknown axiom id {self.axiom!r}")
        if self.passed == (self.witness is not None):
            raise ValueError("a report fails exactly when it carries a witness")

    def to_dict(self) -> dict:
        doc: dict = {
            "axiom": self.axiom,
            "m": self.m,
            "n_max": self.n_max,
            "pass": self.passed,
        }
        if self.witness is not None:
            doc["witness"] = self.witness.to_dict()
        return doc


def _validate_scope(m: int, n_max: int) -> None:
    if m < 2:
        raise ValueError(f"candidate count must be >= 2, got {m}")
    if n_max < 1:
        raise ValueError(f"voter bound must be >= 1, got {n_max}")


def _memoized(f) -> Callable[[Profile], int]:
    """Per-check evaluation cache.

    Functions claiming anonymity are keyed by sorted ballots; the claim is
    validated by check_anonymity (which never uses this cache), so the other
    checkers may rely on it.
    """
    cache: dict[tuple[int, ...], int] = {}
    by_class = bool(getattr(f, "claims_anonymous", False))

    def evaluate(p: Profile) -> int:
        key = tuple(sorted(p.ballots)) if by_class else p.ballots
        try:
            return cache[key]
        except KeyError:
            out = f.evaluate(p)
            cache[key] = out
            return out

    return evaluate


def _first_witness(
    m: int,
    n_max: int,
    per_profile: Callable[[Profile], Witness | None],
    workers: int = 1,
    n_min: int = 1,
) -> Witness | None:
    """First violation in (n, profile) stream order, identical for any worker
    count: chunks are contiguous slices and their local minima merge in order."""
    if workers <= 1:
        for n in range(n_min, n_max + 1):
            for p in enumerate_profiles(m, n):
                w = per_profile(p)
                if w is not None:
                    return w
        return None

    def scan(chunk: list[Profile]) -> Witness | None:
        for p in chunk:
            w = per_profile(p)
            if w is not None:
                return w
        return None

    for n in range(n_min, n_max + 1):
        profiles = list(enumerate_profiles(m, n))
        size = max(1, -(-len(profiles) // workers))
        chunks = [profiles[i : i + size] for i in range(0, len(profiles), size)]
        with ThreadPoolExecutor(max_workers=workers) as pool:
            for w in pool.map(scan, chunks):
                if w is not None:
                    return w
    return None


def _sorting_permutation(p: Profile) -> VoterPermutation:
    """A voter permutation sending p to its canonical form (stable sort)."""
    order = sorted(range(p.n), key=lambda l: (p.ballots[l], l))
    image = [0] * p.n
    for new_pos, old_pos in enumerate(order, start=1):
        image[old_pos] = new_pos
    return VoterPermutation(p.n, tuple(image))


def check_anonymity(f, m: int, n_max: int, workers: int = 1) -> AxiomReport:
    """f(P sigma) = f(P) for every voter permutation sigma; implemented as
    "f is constant on each anonymity class" by comparing against the sorted
    representative.  Never trusts ``claims_anonymous``."""
    _validate_scope(m, n_max)

    def per_profile(p: Profile) -> Witness | None:
        if p.is_canonical():
            return None
        c = canonicalize(p)
        actual = f.evaluate(p)
        expected = f.evaluate(c)
        if actual != expected:
            return Witness(
                profile=p,
                related_profile=c,
                permutation=_sorting_permutation(p).image,
                actual=actual,
                expected=expected,
            )
        return None

    w = _first_witness(m, n_max, per_profile, workers)
    return AxiomReport("A", m, n_max, w is None, w)


def check_neutrality(f, m: int, n_max: int, workers: int = 1) -> AxiomReport:
    """f(tau P) = tau f(P) for all m! candidate permutations tau (no
    generator-only shortcut)."""
    _validate_scope(m, n_max)
    evaluate = _memoized(f)
    taus = [CandidatePermutation(m, image) for image in permutations(range(1, m + 1))]

    def per_profile(p: Profile) -> Witness | None:
        out = evaluate(p)
        for tau in taus:
            permuted = apply_candidate_permutation(p, tau)
            actual = evaluate(permuted)
            expected = tau.outcome(out)
            if actual != expected:
                return Witness(
                    profile=p,
                    related_profile=permuted,
                    permutation=tau.image,
                    actual=actual,
                    expected=expected,
                )
        return None

    w = _first_witness(m, n_max, per_profile, workers)
    return AxiomReport("N", m, n_max, w is None, w)


def _duel_pairs(support: tuple[int, ...], m: int) -> Iterable[tuple[int, int]]:
    """Pairs (i, j), i < j, for which a profile with this support is a duel."""
    if len(support) > 2:
        return
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            if all(k in (i, j) for k in support):
                yield (i, j)


def check_duel_property(f, m: int, n_max: int, workers: int = 1) -> AxiomReport:
    """On any profile supported by at most two candidates i, j the outcome is
    i, j or a tie; no third party wins a duel they did not take part in."""
    _validate_scope(m, n_max)
    evaluate = _memoized(f)

    def per_profile(p: Profile) -> Witness | None:
        support = tally(p).support()
        if len(support) > 2:
            return None
        out = evaluate(p)
        for i, j in _duel_pairs(support, m):
            if out not in (0, i, j):
                return Witness(profile=p, pair=(i, j), actual=out, note="outcome outside {0, i, j}")
        return None

    w = _first_witness(m, n_max, per_profile, workers)
    return AxiomReport("DP", m, n_max, w is None, w)


def check_pareto(f, m: int, n_max: int, workers: int = 1) -> AxiomReport:
    """Whenever exactly one candidate receives votes (everyone else abstains),
    that candidate must win."""
    _validate_scope(m, n_max)
    evaluate = _memoized(f)

    def per_profile(p: Profile) -> Witness | None:
        support = tally(p).support()
        if len(support) != 1:
            return None
        k = support[0]
        out = evaluate(p)
        if out != k:
            return Witness(profile=p, candidate=k, expected=k, actual=out)
        return None

    w = _first_witness(m, n_max, per_profile, workers)
    return AxiomReport("PO", m, n_max, w is None, w)


def reduce_profile(f, p: Profile) -> Profile:
    """The profile of subsociety outcomes: ballot l is f with voter l removed."""
    if p.n < 2:
        raise ValueError("subsociety reduction needs at least 2 voters")
    return Profile(p.m, tuple(f.evaluate(remove_voter(p, l)) for l in range(1, p.n + 1)))


def check_rs(f, m: int, n_max: int, workers: int = 1) -> AxiomReport:
    """Reducibility to subsocieties: the outcome on P equals the outcome on
    the profile collecting f over all voter-deleted subprofiles."""
    _validate_scope(m, n_max)
    if n_max < 2:
        raise ValueError("the reduction axiom needs a voter bound of at least 2")
    evaluate = _memoized(f)

    def per_profile(p: Profile) -> Witness | None:
        lhs = evaluate(p)
        reduced = Profile(m, tuple(evaluate(remove_voter(p, l)) for l in range(1, p.n + 1)))
        rhs = evaluate(reduced)
        if lhs != rhs:
            return Witness(profile=p, related_profile=reduced, actual=lhs, expected=rhs)
        return None

    w = _first_witness(m, n_max, per_profile, workers, n_min=2)
    return AxiomReport("RS", m, n_max, w is None, w)


def _tie_candidates(p: Profile, mode: str) -> tuple[int, ...]:
    if mode == "always":
        return tuple(range(1, p.m + 1))
    if mode == "leaders":
        return tally(p).leaders()
    return ()


def check_positive_responsiveness(
    f, m: int, n_max: int, tie_upgrade: str = "leaders", workers: int = 1
) -> AxiomReport:
    """One ballot moves to candidate k, all others fixed: a win for k must be
    preserved, and (per ``tie_upgrade``) a tie must become a win for k."""
    _validate_scope(m, n_max)
    if tie_upgrade not in PR_TIE_MODES:
        raise ValueError(f"tie_upgrade must be one of {PR_TIE_MODES}, got {tie_upgrade!r}")
    evaluate = _memoized(f)

    def per_profile(p: Profile) -> Witness | None:
        out = evaluate(p)
        if out == 0:
            targets = _tie_candidates(p, tie_upgrade)
            note = f"pr:tie:{tie_upgrade}"
        else:
            targets = (out,)
            note = "pr:win"
        for k in targets:
            for l in range(1, p.n + 1):
                if p.ballots[l - 1] == k:
                    continue
                upgraded = Profile(m, p.ballots[: l - 1] + (k,) + p.ballots[l:])
                actual = evaluate(upgraded)
                if actual != k:
                    return Witness(
                        profile=p,
                        related_profile=upgraded,
                        candidate=k,
                        voter=l,
                        expected=k,
                        actual=actual,
                        note=note,
                    )
        return None

    w = _first_witness(m, n_max, per_profile, workers)
    return AxiomReport("PR", m, n_max, w is None, w)


def check_no_tied_winner(f, m: int, n_max: int, workers: int = 1) -> AxiomReport:
    """Tied candidates cannot win: whenever two candidates have equal counts,
    neither is the outcome.  Meaningful for functions already known anonymous
    and neutral (the caller enforces that precondition)."""
    _validate_scope(m, n_max)
    evaluate = _memoized(f)

    def per_profile(p: Profile) -> Witness | None:
        counts = tally(p).counts
        out = evaluate(p)
        if out == 0:
            return None
        for i in range(1, m + 1):
            for j in range(i + 1, m + 1):
                if counts[i - 1] == counts[j - 1] and out in (i, j):
                    return Witness(profile=p, pair=(i, j), actual=out, note="tied pair won")
        return None

    w = _first_witness(m, n_max, per_profile, workers)
    return AxiomReport("NTW", m, n_max, w is None, w)


def replay_witness(f, report: AxiomReport) -> bool:
    """Re-derive a failing report's violation from its recorded configuration.

    Returns True iff evaluating ``f`` reproduces the recorded outcomes and
    they genuinely violate the axiom's definition.
    """
    if report.passed or report.witness is None:
        return False
    w = report.witness
    p = w.profile
    if report.axiom == "A":
        sigma = VoterPermutation(p.n, w.permutation)
        permuted = apply_voter_permutation(p, sigma)
        return (
            permuted == w.related_profile
            and f.evaluate(p) == w.actual
            and f.evaluate(permuted) == w.expected
            and w.actual != w.expected
        )
    if report.axiom == "N":
        tau = CandidatePermutation(report.m, w.permutation)
        permuted = apply_candidate_permutation(p, tau)
        return (
            permuted == w.related_profile
            and f.evaluate(permuted) == w.actual
            and tau.outcome(f.evaluate(p)) == w.expected
            and w.actual != w.expected
        )
    if report.axiom == "DP":
        i, j = w.pair
        support = tally(p).support()
        return all(k in (i, j) for k in support) and f.evaluate(p) == w.actual and w.actual not in (0, i, j)
    if report.axiom == "PO":
        support = tally(p).support()
        return support == (w.candidate,) and f.evaluate(p) == w.actual and w.actual != w.candidate
    if report.axiom == "RS":
        reduced = reduce_profile(f, p)
        return (
            reduced == w.related_profile
            and f.evaluate(p) == w.actual
            and f.evaluate(reduced) == w.expected
            and w.actual != w.expected
        )
    if report.axiom == "PR":
        k, l = w.candidate, w.voter
        if p.ballots[l - 1] == k:
            return False
        upgraded = Profile(p.m, p.ballots[: l - 1] + (k,) + p.ballots[l:])
        if upgraded != w.related_profile or f.evaluate(upgraded) != w.actual or w.actual == k:
            return False
        before = f.evaluate(p)
        if w.note == "pr:win":
            return before == k
        if w.note == "pr:tie:always":
            return before == 0
        if w.note == "pr:tie:leaders":
            return before == 0 and k in tally(p).leaders()
        return False
    if report.axiom == "NTW":
        i, j = w.pair
        counts = tally(p).counts
        return counts[i - 1] == counts[j - 1] and f.evaluate(p) == w.actual and w.actual in (i, j)
    return False


CHECKERS: dict[str, Callable] = {
    "A": check_anonymity,
    "N": check_neutrality,
    "DP": check_duel_property,
    "PO": check_pareto,
    "RS": check_rs,
    "PR": check_positive_responsiveness,
}
