from itertools import product

import pytest

from scfkit.axioms import (
    check_anonymity,
    check_duel_property,
    check_no_tied_winner,
    check_neutrality,
    check_pareto,
    check_positive_responsiveness,
    check_rs,
    reduce_profile,
    replay_witness,
)
from scfkit.core import Profile, tally
from scfkit.rules import RULES, Rule

MAJ = RULES["maj"]
UC = RULES["uc"]
LEX = RULES["lex"]
ZERO = RULES["zero"]

# a rule that copies voter 1's ballot: clearly not anonymous
DICTATOR = Rule("dict1", lambda p: p.ballots[0], claims_anonymous=False)


def _third_party(p: Profile) -> int:
    # on two-candidate duels at m=3 the absent candidate wins; ties otherwise
    support = tally(p).support()
    if p.m == 3 and len(support) == 2:
        return ({1, 2, 3} - set(support)).pop()
    return 0


THIRD_PARTY = Rule("third", _third_party)


class TestReduceProfile:
    def test_uc_reduction_collects_subsociety_outcomes(self):
        assert reduce_profile(UC, Profile(2, (1, 1, 2))).ballots == (0, 0, 1)

    def test_maj_reductions(self):
        assert reduce_profile(MAJ, Profile(2, (1, 1))).ballots == (1, 1)
        assert reduce_profile(MAJ, Profile(2, (1, 2))).ballots == (2, 1)

    def test_needs_two_voters(self):
        with pytest.raises(ValueError):
            reduce_profile(MAJ, Profile(2, (1,)))


class TestAnonymity:
    def test_majority_passes(self):
        assert check_anonymity(MAJ, 3, 4).passed

    def test_unanimity_passes(self):
        assert check_anonymity(UC, 2, 3).passed

    def test_dictator_fails_with_replayable_witness(self):
        report = check_anonymity(DICTATOR, 2, 2)
        assert not report.passed
        assert replay_witness(DICTATOR, report)
        # the documented violating pair, confirmed by direct evaluation
        assert DICTATOR.evaluate(Profile(2, (1, 2))) == 1
        assert DICTATOR.evaluate(Profile(2, (2, 1))) == 2

    def test_witness_is_lexicographically_minimal(self):
        report = check_anonymity(DICTATOR, 2, 2)
        w = report.witness
        # first non-canonical profile where the dictator diverges from its class
        assert w.profile.ballots == (1, 0)
        assert w.related_profile.ballots == (0, 1)
        assert (w.actual, w.expected) == (1, 0)


class TestNeutrality:
    def test_lex_fails_with_swap_witness(self):
        report = check_neutrality(LEX, 2, 2)
        assert not report.passed
        w = report.witness
        assert w.profile.ballots == (1, 2)
        assert w.permutation == (2, 1)
        assert (w.actual, w.expected) == (1, 2)
        assert replay_witness(LEX, report)

    def test_majority_and_zero_pass(self):
        assert check_neutrality(MAJ, 3, 3).passed
        assert check_neutrality(ZERO, 4, 2).passed


class TestDuelProperty:
    def test_majority_and_unanimity_pass(self):
        assert check_duel_property(MAJ, 3, 4).passed
        assert check_duel_property(UC, 3, 3).passed

    def test_third_party_rule_fails_on_first_duel(self):
        report = check_duel_property(THIRD_PARTY, 3, 2)
        assert not report.passed
        w = report.witness
        assert w.profile.ballots == (1, 2)
        assert w.pair == (1, 2)
        assert w.actual == 3
        assert replay_witness(THIRD_PARTY, report)

    def test_m2_duels_never_constrain(self):
        # with two candidates every outcome belongs to the only pair
        assert check_duel_property(LEX, 2, 3).passed
        assert check_duel_property(DICTATOR, 2, 2).passed


class TestPareto:
    def test_zero_fails_on_single_vote(self):
        report = check_pareto(ZERO, 2, 1)
        assert not report.passed
        w = report.witness
        assert w.profile.ballots == (1,)
        assert (w.candidate, w.expected, w.actual) == (1, 1, 0)
        assert replay_witness(ZERO, report)

    def test_majority_and_lex_pass(self):
        assert check_pareto(MAJ, 3, 4).passed
        assert check_pareto(LEX, 3, 3).passed


class TestReducibility:
    def test_uc_fails_with_paper_exact_witness(self):
        report = check_rs(UC, 2, 3)
        assert not report.passed
        w = report.witness
        assert w.profile.ballots == (1, 1, 2)
        assert w.actual == 0
        assert w.related_profile.ballots == (0, 0, 1)
        assert w.expected == 1
        assert replay_witness(UC, report)

    def test_failure_is_monotone_in_scope(self):
        assert not check_rs(UC, 2, 3).passed
        assert not check_rs(UC, 2, 4).passed

    def test_lex_passes(self):
        assert check_rs(LEX, 2, 3).passed

    def test_majority_passes_against_independent_oracle(self):
        # independent re-derivation with inline counting, no library calls
        m, n_max = 3, 4

        def maj_local(ballots):
            counts = [ballots.count(k) for k in range(1, m + 1)]
            top = max(counts)
            if top > 0 and counts.count(top) == 1:
                return counts.index(top) + 1
            return 0

        violations = []
        for n in range(2, n_max + 1):
            for ballots in product(range(m + 1), repeat=n):
                reduced = tuple(
                    maj_local(ballots[:l] + ballots[l + 1 :]) for l in range(n)
                )
                if maj_local(ballots) != maj_local(reduced):
                    violations.append(ballots)
        assert violations == []
        assert check_rs(MAJ, m, n_max).passed


class TestPositiveResponsiveness:
    def test_majority_passes_small_scope_against_oracle(self):
        # oracle: scan every single-ballot upgrade by hand at m=2, n <= 3
        m, n_max = 2, 3

        def maj_local(ballots):
            ones, twos = ballots.count(1), ballots.count(2)
            return 1 if ones > twos else 2 if twos > ones else 0

        for n in range(1, n_max + 1):
            for ballots in product(range(m + 1), repeat=n):
                before = maj_local(ballots)
                for k in (1, 2):
                    if before not in (0, k):
                        continue
                    for l in range(n):
                        if ballots[l] == k:
                            continue
                        after = maj_local(ballots[:l] + (k,) + ballots[l + 1 :])
                        assert after == k, (ballots, k, l)
        assert check_positive_responsiveness(MAJ, 2, 3).passed

    def test_majority_passes_every_acceptance_scope(self):
        for m, n_max in [(2, 5), (3, 4), (4, 3)]:
            assert check_positive_responsiveness(MAJ, m, n_max).passed

    def test_majority_fails_the_literal_tie_clause_beyond_two_candidates(self):
        # a vote for an uninvolved outsider cannot crown them, so the
        # unconditional tie-upgrade reading rejects majority rule
        report = check_positive_responsiveness(MAJ, 3, 2, tie_upgrade="always")
        assert not report.passed
        assert report.witness.profile.ballots == (1, 2)
        assert report.witness.candidate == 3
        assert replay_witness(MAJ, report)

    def test_uc_coincides_with_majority_up_to_two_voters(self):
        # no axiom relating equal-sized profiles can split them at n_max = 2
        assert check_positive_responsiveness(UC, 2, 2).passed

    def test_uc_fails_at_three_voters(self):
        report = check_positive_responsiveness(UC, 2, 3)
        assert not report.passed
        w = report.witness
        assert w.profile.ballots == (0, 1, 2)
        assert (w.candidate, w.voter) == (1, 1)
        assert w.related_profile.ballots == (1, 1, 2)
        assert (w.expected, w.actual) == (1, 0)
        assert replay_witness(UC, report)

    def test_zero_cannot_respond(self):
        report = check_positive_responsiveness(ZERO, 2, 2)
        assert not report.passed
        assert report.witness.profile.ballots == (0,)
        assert replay_witness(ZERO, report)
        # the documented two-voter configuration is also a genuine violation
        assert ZERO.evaluate(Profile(2, (1, 0))) == 0
        assert ZERO.evaluate(Profile(2, (1, 1))) == 0  # never becomes 1

    def test_wins_only_mode_ignores_ties(self):
        assert check_positive_responsiveness(ZERO, 2, 3, tie_upgrade="wins").passed

    def test_rejects_unknown_mode(self):
        with pytest.raises(ValueError):
            check_positive_responsiveness(MAJ, 2, 2, tie_upgrade="sometimes")


class TestNoTiedWinner:
    def test_majority_never_crowns_tied_candidates(self):
        assert check_no_tied_winner(MAJ, 3, 4).passed
        assert MAJ.evaluate(Profile(2, (1, 2))) == 0

    def test_lex_shows_the_hypotheses_matter(self):
        # lex is anonymous but not neutral, and crowns a tied candidate
        report = check_no_tied_winner(LEX, 2, 2)
        assert not report.passed
        w = report.witness
        assert w.profile.ballots == (1, 2)
        assert w.pair == (1, 2)
        assert w.actual == 1
        assert replay_witness(LEX, report)


class TestCheckerInfrastructure:
    def test_scope_validation(self):
        with pytest.raises(ValueError):
            check_anonymity(MAJ, 1, 2)
        with pytest.raises(ValueError):
            check_neutrality(MAJ, 2, 0)
        with pytest.raises(ValueError):
            check_rs(MAJ, 2, 1)

    def test_reports_serialize_with_profiles_in_text_format(self):
        report = check_rs(UC, 2, 3)
        doc = report.to_dict()
        assert doc["axiom"] == "RS"
        assert doc["pass"] is False
        assert doc["witness"]["profile"] == "2 3\n1 1 2\n"
        assert doc["witness"]["related_profile"] == "2 3\n0 0 1\n"

    def test_replay_rejects_passing_reports(self):
        assert not replay_witness(MAJ, check_rs(MAJ, 2, 2))

    @pytest.mark.parametrize("workers", [2, 4, 8])
    def test_workers_do_not_change_witnesses(self, workers):
        for f, checker, scope in [
            (UC, check_rs, (2, 3)),
            (LEX, check_neutrality, (2, 3)),
            (ZERO, check_pareto, (2, 2)),
            (UC, check_positive_responsiveness, (2, 3)),
            (MAJ, check_neutrality, (3, 3)),
        ]:
            assert checker(f, *scope, workers=workers) == checker(f, *scope)

    def test_every_failing_report_replays(self):
        cases = [
            (DICTATOR, check_anonymity(DICTATOR, 2, 2)),
            (LEX, check_neutrality(LEX, 3, 3)),
            (THIRD_PARTY, check_duel_property(THIRD_PARTY, 3, 2)),
            (ZERO, check_pareto(ZERO, 3, 2)),
            (UC, check_rs(UC, 3, 3)),
            (UC, check_positive_responsiveness(UC, 2, 3)),
            (ZERO, check_positive_responsiveness(ZERO, 3, 2, tie_upgrade="always")),
            (LEX, check_no_tied_winner(LEX, 2, 2)),
        ]
        for f, report in cases:
            assert not report.passed
            assert replay_witness(f, report), report


class TestNeutralityImpliesDuels:
    def test_neutrality_implies_duel_property_from_four_candidates(self):
        from scfkit.search import enumerate_neutral_functions

        for f in enumerate_neutral_functions(4, 2):
            assert check_duel_property(f, 4, 2).passed

    def test_three_candidates_admit_a_neutral_duel_violation(self):
        from scfkit.search import enumerate_neutral_functions

        failing = [
            f for f in enumerate_neutral_functions(3, 2)
            if not check_duel_property(f, 3, 2).passed
        ]
        assert failing
        # the violation is exactly the third-party behaviour on a duel
        report = check_duel_property(failing[0], 3, 2)
        assert report.witness.actual not in (0, *report.witness.pair)
