import itertools
import random
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import load
from judgagg.agenda import JudgmentSet, majoritarian_set
from judgagg.errors import InputError
from judgagg.preferences import (
    VoteProfile, borda, check_generalization, condorcet_iff_majority_consistent,
    condorcet_winner, majority_graph, preference_agenda, vote_via_ja, votes_to_profile,
    winners,
)
from judgagg.rules import make_rule

REVERSAL = make_rule("scoring", s="reversal")


@st.composite
def votes(draw, max_options=4, max_voters=5):
    m = draw(st.integers(2, max_options))
    opts = "abcd"[:m]
    ballots = draw(st.lists(st.permutations(opts), min_size=1, max_size=max_voters))
    return VoteProfile(tuple(opts), tuple(tuple(b) for b in ballots))


def random_votes(seed, count, max_options=4, max_voters=5):
    rng = random.Random(seed)
    for _ in range(count):
        m, n = rng.randint(2, max_options), rng.randint(1, max_voters)
        opts = "abcd"[:m]
        yield VoteProfile(tuple(opts), tuple(tuple(rng.sample(opts, m)) for _ in range(n)))


# -- translation -------------------------------------------------------------

def test_agenda_shape():
    a = preference_agenda("abcd")
    assert [str(f) for f in a.pre_agenda] == ["aPb", "aPc", "aPd", "bPc", "bPd", "cPd"]
    assert a.m == 6


@pytest.mark.parametrize("m", [2, 3, 4])
def test_transitive_codomain_is_all_rankings(m):
    assert len(preference_agenda("abcd"[:m]).codomain) == factorial(m)


def test_w_codomain_is_larger():
    # W only asks for an undominated option
    tr = set(preference_agenda("abcd", "tr").codomain)
    w = set(preference_agenda("abcd", "w").codomain)
    assert tr < w and len(w) == 32


def test_w_accepts_what_tr_rejects():
    # aPb, aPc, bPc, dPb, cPe, ePb over options a..e
    verdicts = {0: 1, 1: 1, 4: 1, 5: -1, 8: 1, 6: -1}
    j = JudgmentSet(tuple(verdicts.get(k, 0) for k in range(10)))
    assert not preference_agenda("abcde", "tr").consistent(j)
    assert preference_agenda("abcde", "w").consistent(j)


def test_agenda_validation():
    with pytest.raises(InputError):
        preference_agenda("a")
    with pytest.raises(InputError):
        preference_agenda("aba")
    with pytest.raises(InputError, match="constraint mode"):
        preference_agenda("abc", "q")
    with pytest.raises(InputError, match="permutation"):
        VoteProfile(("a", "b"), (("a", "a"),))


def test_ballots_translate_to_rankings():
    v = load("v1.json")
    p = votes_to_profile(v)
    assert p.agents[0].signs() == "+++--+"
    for j, b in zip(p.agents, v.ballots):
        assert winners(j, v.options) == {b[0]}


# -- voting methods ----------------------------------------------------------

def test_condorcet_winner_v1():
    v = load("v1.json")
    assert condorcet_winner(v) == "d"
    g = majority_graph(v)
    assert not any(g.beats(x, "d") for x in v.options)


def test_no_condorcet_winner_v2():
    v = load("v2.json")
    assert condorcet_winner(v) is None
    g = majority_graph(v)
    assert sorted(g.edges) == [("a", "b"), ("b", "c"), ("c", "a")]


def test_borda_v1():
    scores, top = borda(load("v1.json"))
    assert scores == {"a": 10, "b": 5, "c": 6, "d": 9}
    assert top == {"a"}


def test_borda_ties_on_opposite_ballots():
    scores, top = borda(VoteProfile("abc", ("abc", "cba")))
    assert set(scores.values()) == {2} and top == {"a", "b", "c"}


@given(votes())
def test_borda_total(v):
    m = len(v.options)
    assert sum(borda(v)[0].values()) == v.n * m * (m - 1) // 2


@given(votes())
def test_majority_graph_matches_majoritarian_set(v):
    m, _ = majoritarian_set(votes_to_profile(v))
    pairs = list(itertools.combinations(v.options, 2))
    g = majority_graph(v)
    for (x, y), s in zip(pairs, m.verdicts):
        assert g.beats(x, y) == (s == 1)
        assert g.beats(y, x) == (s == -1)


@given(votes())
def test_rankings_have_one_winner(v):
    for j in votes_to_profile(v).agenda.codomain:
        assert len(winners(j, v.options)) == 1


def test_winners_needs_complete_sets():
    with pytest.raises(InputError):
        winners(JudgmentSet((1, 0, 1)), "abc")
    with pytest.raises(InputError):
        winners(JudgmentSet((1, 1)), "abc")


# -- voting through judgment aggregation -------------------------------------

def test_reversal_scoring_gives_borda_on_v1():
    v = load("v1.json")
    assert vote_via_ja(v, REVERSAL) == {"a"}
    assert check_generalization(v, REVERSAL, "borda")


@pytest.mark.parametrize("k, v", list(enumerate(random_votes(7, 50))))
def test_reversal_scoring_gives_borda(k, v):
    assert vote_via_ja(v, REVERSAL) == borda(v)[1]


def test_condorcet_generalization_is_vacuous_without_winner():
    assert check_generalization(load("v2.json"), make_rule("mc"), "condorcet")
    with pytest.raises(InputError):
        check_generalization(load("v2.json"), REVERSAL, "plurality")


@given(votes(max_options=3))
def test_majority_preserving_rules_pick_the_condorcet_winner(v):
    for name in ("mc", "mcc", "med"):
        assert check_generalization(v, make_rule(name), "condorcet")


# -- Condorcet winners against majority consistency --------------------------

def _all_profiles(m, n):
    opts = "abcd"[:m]
    for bs in itertools.combinations_with_replacement(itertools.permutations(opts), n):
        yield VoteProfile(tuple(opts), bs)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_condorcet_iff_majority_consistent_three_options_odd_n(n):
    for v in _all_profiles(3, n):
        has, ok = condorcet_iff_majority_consistent(v)
        assert has == ok


def test_equivalence_fails_on_even_electorates():
    # b and c tie, so m(P) is consistent but nobody beats both
    v = VoteProfile("abc", ("bca", "cba"))
    assert condorcet_iff_majority_consistent(v) == (False, True)


def test_equivalence_fails_with_four_options():
    # d wins, while a, b, c form a majority cycle below it
    v = VoteProfile("abcd", ("dacb", "dbac", "dcba"))
    assert condorcet_winner(v) == "d"
    assert condorcet_iff_majority_consistent(v) == (True, False)


def test_condorcet_winner_implies_consistency_with_three_options():
    for n in (2, 4):
        for v in _all_profiles(3, n):
            has, ok = condorcet_iff_majority_consistent(v)
            assert not has or ok
