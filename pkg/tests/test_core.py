import pytest
from hypothesis import given, strategies as st

from scfkit.core import (
    CandidatePermutation,
    Profile,
    ProfileParseError,
    VoterPermutation,
    apply_candidate_permutation,
    apply_to_outcome,
    apply_voter_permutation,
    canonicalize,
    enumerate_profiles,
    format_profile,
    parse_profile,
    profile_count,
    remove_voter,
    tally,
)


@st.composite
def profiles(draw, m_max=4, n_max=5):
    m = draw(st.integers(2, m_max))
    n = draw(st.integers(1, n_max))
    ballots = tuple(draw(st.lists(st.integers(0, m), min_size=n, max_size=n)))
    return Profile(m, ballots)


@st.composite
def profiles_with_voter_perm(draw):
    p = draw(profiles())
    image = tuple(draw(st.permutations(tuple(range(1, p.n + 1)))))
    return p, VoterPermutation(p.n, image)


@st.composite
def profiles_with_candidate_perm(draw):
    p = draw(profiles())
    image = tuple(draw(st.permutations(tuple(range(1, p.m + 1)))))
    return p, CandidatePermutation(p.m, image)


class TestTypes:
    def test_profile_validation(self):
        with pytest.raises(ValueError):
            Profile(1, (0,))
        with pytest.raises(ValueError):
            Profile(2, ())
        with pytest.raises(ValueError):
            Profile(2, (3,))
        with pytest.raises(ValueError):
            Profile(2, (-1,))

    def test_profiles_with_different_m_are_distinct(self):
        assert Profile(2, (1, 2)) != Profile(3, (1, 2))

    def test_permutation_validation(self):
        with pytest.raises(ValueError):
            CandidatePermutation(2, (1, 1))
        with pytest.raises(ValueError):
            VoterPermutation(3, (1, 2, 4))

    def test_tally_accounts_for_everyone(self):
        t = tally(Profile(3, (3, 0, 3, 1)))
        assert t.counts == (1, 0, 2)
        assert t.abstentions == 1
        assert t.abstentions + sum(t.counts) == 4

    def test_tally_leaders(self):
        assert tally(Profile(3, (1, 1, 2))).leaders() == (1,)
        assert tally(Profile(3, (1, 2))).leaders() == (1, 2)
        assert tally(Profile(3, (0, 0))).leaders() == (1, 2, 3)


class TestOperations:
    @pytest.mark.parametrize(
        "ballots,counts,abst",
        [
            ((1, 1, 2), (2, 1, 0), 0),
            ((3, 0, 3, 1), (1, 0, 2), 1),
        ],
    )
    def test_tally_examples_m3(self, ballots, counts, abst):
        t = tally(Profile(3, ballots))
        assert t.counts == counts and t.abstentions == abst

    def test_tally_all_abstain(self):
        t = tally(Profile(2, (0, 0)))
        assert t.counts == (0, 0) and t.abstentions == 2

    def test_voter_permutation_identity_and_swap(self):
        p = Profile(2, (1, 2, 0))
        assert apply_voter_permutation(p, VoterPermutation.identity(3)) == p
        q = apply_voter_permutation(Profile(2, (1, 2)), VoterPermutation(2, (2, 1)))
        assert q.ballots == (2, 1)

    def test_voter_permutation_places_ballots(self):
        # ballot at position image[l] is the original ballot at position l
        p = Profile(3, (1, 2, 3))
        sigma = VoterPermutation(3, (2, 3, 1))
        assert apply_voter_permutation(p, sigma).ballots == (3, 1, 2)

    def test_voter_permutation_length_mismatch(self):
        with pytest.raises(ValueError):
            apply_voter_permutation(Profile(2, (1,)), VoterPermutation(2, (1, 2)))

    def test_candidate_permutation_swap(self):
        p = Profile(2, (1, 2))
        tau = CandidatePermutation.transposition(2, 1, 2)
        assert apply_candidate_permutation(p, tau).ballots == (2, 1)

    def test_candidate_permutation_fixes_abstentions(self):
        p = Profile(2, (0, 0))
        for image in ((1, 2), (2, 1)):
            assert apply_candidate_permutation(p, CandidatePermutation(2, image)) == p

    def test_candidate_permutation_cycle(self):
        p = Profile(3, (3, 1))
        tau = CandidatePermutation(3, (2, 3, 1))
        assert apply_candidate_permutation(p, tau).ballots == (1, 2)

    def test_candidate_permutation_m_mismatch(self):
        with pytest.raises(ValueError):
            apply_candidate_permutation(Profile(3, (1,)), CandidatePermutation(2, (2, 1)))

    def test_apply_to_outcome(self):
        swap = CandidatePermutation.transposition(2, 1, 2)
        assert apply_to_outcome(0, swap) == 0
        assert apply_to_outcome(1, swap) == 2
        assert apply_to_outcome(3, CandidatePermutation.identity(3)) == 3

    def test_remove_voter(self):
        p = Profile(2, (1, 1, 2))
        assert remove_voter(p, 3).ballots == (1, 1)
        assert remove_voter(p, 1).ballots == (1, 2)
        assert remove_voter(Profile(2, (0, 2)), 2).ballots == (0,)

    def test_remove_voter_errors(self):
        with pytest.raises(ValueError):
            remove_voter(Profile(2, (1,)), 1)
        with pytest.raises(IndexError):
            remove_voter(Profile(2, (1, 2)), 3)
        with pytest.raises(IndexError):
            remove_voter(Profile(2, (1, 2)), 0)

    @pytest.mark.parametrize(
        "ballots,expected",
        [((2, 0, 1), (0, 1, 2)), ((1, 1, 2), (1, 1, 2)), ((3, 3, 0, 1), (0, 1, 3, 3))],
    )
    def test_canonicalize(self, ballots, expected):
        assert canonicalize(Profile(3, ballots)).ballots == expected


class TestEnumeration:
    def test_counts_match_formulas(self):
        assert len(list(enumerate_profiles(2, 3))) == 27 == profile_count(2, 3)
        assert len(list(enumerate_profiles(2, 3, canonical_only=True))) == 10
        assert profile_count(2, 3, canonical_only=True) == 10

    def test_single_voter_enumeration(self):
        assert [p.ballots for p in enumerate_profiles(3, 1)] == [(0,), (1,), (2,), (3,)]

    @pytest.mark.parametrize("m,n", [(2, 1), (2, 4), (3, 3), (4, 2)])
    def test_enumeration_is_exact_and_distinct(self, m, n):
        full = [p.ballots for p in enumerate_profiles(m, n)]
        assert len(full) == len(set(full)) == profile_count(m, n)
        assert full == sorted(full)
        canon = [p.ballots for p in enumerate_profiles(m, n, canonical_only=True)]
        assert len(canon) == len(set(canon)) == profile_count(m, n, canonical_only=True)
        assert all(list(b) == sorted(b) for b in canon)
        # one representative per anonymity class
        assert set(canon) == {tuple(sorted(b)) for b in full}

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            list(enumerate_profiles(1, 2))
        with pytest.raises(ValueError):
            list(enumerate_profiles(2, 0))


class TestProperties:
    @given(profiles_with_voter_perm())
    def test_tally_invariant_under_voter_permutation(self, case):
        p, sigma = case
        assert tally(apply_voter_permutation(p, sigma)) == tally(p)

    @given(profiles_with_candidate_perm())
    def test_tally_pushforward_under_candidate_permutation(self, case):
        p, tau = case
        before = tally(p)
        after = tally(apply_candidate_permutation(p, tau))
        for k in range(1, p.m + 1):
            assert after.count(tau.outcome(k)) == before.count(k)
        assert after.abstentions == before.abstentions

    @given(profiles())
    def test_canonicalize_idempotent_and_tally_preserving(self, p):
        c = canonicalize(p)
        assert canonicalize(c) == c
        assert tally(c) == tally(p)
        assert sorted(c.ballots) == list(c.ballots)

    @given(profiles().filter(lambda p: p.n >= 2), st.data())
    def test_remove_voter_drops_one_occurrence(self, p, data):
        l = data.draw(st.integers(1, p.n))
        smaller = remove_voter(p, l)
        expected = list(p.ballots)
        expected.remove(p.ballots[l - 1])
        assert sorted(smaller.ballots) == sorted(expected)
        assert smaller.n == p.n - 1


class TestTextFormat:
    def test_documented_example(self):
        p = parse_profile("3 3\n1 1 2")
        assert p == Profile(3, (1, 1, 2))
        assert format_profile(p) == "3 3\n1 1 2\n"

    @given(profiles())
    def test_round_trip(self, p):
        text = format_profile(p)
        assert parse_profile(text) == p
        assert format_profile(parse_profile(text)) == text

    @pytest.mark.parametrize(
        "text,line",
        [
            ("3 3\n1 1\n", 2),
            ("3\n1 1 2\n", 1),
            ("a b\n1 1 2\n", 1),
            ("3 3\n1 1 9\n", 2),
            ("3 3\n1 x 2\n", 2),
            ("1 1\n0\n", 1),
            ("3 3\n1 1 2\nextra\n", 3),
        ],
    )
    def test_parse_errors_carry_line(self, text, line):
        with pytest.raises(ProfileParseError) as err:
            parse_profile(text)
        assert err.value.line == line
