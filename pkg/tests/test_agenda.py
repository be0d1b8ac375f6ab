from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles as O
from conftest import load
from judgagg.agenda import (
    JudgmentSet, Profile, agenda_report, check_independent_partition, check_iod,
    check_syntactic_partition, codomain, common_agents, ext, is_subprofile, lift,
    majoritarian_set, make_agenda, minimal_inconsistent_subsets, project, quota_set,
    restrict, sum_profiles, support, unanimity_set,
)
from judgagg.binary import from_binary, to_binary
from judgagg.domains import restricted_domain_report
from judgagg.errors import CapExceededError, InputError, PreconditionError
from judgagg.logic import evaluate, parse_formula


def js(signs):
    return JudgmentSet(tuple({"+": 1, "-": -1, ".": 0}[c] for c in signs))


def signs(sets):
    return sorted(j.signs() for j in sets)


AGENDAS = [
    (["p", "q", "d"], ["(p & q) <-> d"]),
    (["p", "(p & r) -> q", "q"], []),
    (["p", "q"], ["p -> q"]),
    (["p & r", "p & s", "q", "p & q", "t"], []),
    (["b", "c", "p", "k"], ["b xor c", "k xor p"]),
    (["p", "p -> q", "q", "r"], ["r | q"]),
]


@pytest.mark.parametrize("pre, gamma", AGENDAS)
def test_codomain_matches_truth_tables(pre, gamma):
    a = make_agenda(pre, gamma)
    assert codomain(a) == tuple(O.codomain(a))


def test_doctrinal_codomain():
    a = make_agenda(["p", "q", "d"], ["(p & q) <-> d"])
    assert signs(codomain(a)) == ["+++", "+--", "-+-", "---"] and len(codomain(a)) == 4


def test_co2_codomain():
    # rejecting p makes the second issue true, so "--x" is irrational
    a = make_agenda(["p", "(p & r) -> q", "q"])
    assert signs(codomain(a)) == ["+++", "++-", "+--", "-++", "-+-"]


def test_issue_versus_constraint():
    a1 = make_agenda(["p", "p -> q", "q"])
    assert signs(codomain(a1)) == ["+++", "+--", "-++", "-+-"]
    a2 = make_agenda(["p", "q"], ["p -> q"])
    assert signs(codomain(a2)) == ["++", "-+", "--"]


@pytest.mark.parametrize("pre, gamma, msg", [
    ([], [], "empty"),
    (["p", "p"], [], "duplicate"),
    (["p & !p"], [], "contradiction"),
    (["p | !p"], [], "tautology"),
    (["true"], [], "constant"),
    (["p", "q"], ["p & !p"], "inconsistent"),
    (["p", "q"], ["p"], "resolved"),
    (["p", "q"], ["!q"], "resolved"),
    (["p", "q"], ["r | s"], "share no atom"),
])
def test_agenda_validation(pre, gamma, msg):
    with pytest.raises(InputError, match=msg):
        make_agenda(pre, gamma)


def test_profile_validation(pdp):
    with pytest.raises(InputError, match="not rational"):
        Profile(pdp.agenda, (js("++-"),))
    with pytest.raises(InputError, match="verdicts"):
        Profile(pdp.agenda, (js("++"),))
    Profile(pdp.agenda, (js("++-"), js("+..")), strict=False)


def test_atom_cap():
    names = [f"x{i}" for i in range(21)]
    with pytest.raises(CapExceededError):
        make_agenda([" | ".join(names)])


# -- ext ----------------------------------------------------------------------

partials = st.lists(st.sampled_from([1, -1, 0]), min_size=3, max_size=3).map(
    lambda v: JudgmentSet(tuple(v)))


@given(partials)
def test_ext_invariants(j):
    a = make_agenda(["p", "q", "d"], ["(p & q) <-> d"])
    if not a.consistent(j):
        with pytest.raises(PreconditionError):
            ext(j, a)
        return
    out = ext(j, a)
    assert out, "a consistent set has an extension"
    assert set(out) == O.ext(a, j.verdicts)
    for J_ in out:
        assert j.issubset(J_) and J_.is_complete
    if j.is_complete:
        assert out == (j,)


def test_ext_of_empty_is_codomain(pdp):
    assert ext(JudgmentSet.empty(3), pdp.agenda) == codomain(pdp.agenda)


# -- supports and majorities -------------------------------------------------

def test_supports_sum_to_n(p17):
    for i in range(p17.agenda.m):
        assert support(i, 1, p17) + support(i, -1, p17) == p17.n
    assert [support(i, 1, p17) for i in range(5)] == [10, 10, 13, 6, 10]


def test_doctrinal_majority_is_inconsistent(pdp):
    m, ok = majoritarian_set(pdp)
    assert m.signs() == "++-" and not ok


def test_p17_majority(p17):
    m, ok = majoritarian_set(p17)
    assert m.signs() == "+++-+" and not ok


def test_quota_and_unanimity(p17):
    assert quota_set(p17, 16).signs() == "....."
    assert quota_set(p17, 10).signs() == "..+-."
    assert unanimity_set(p17).signs() == "....."
    pdp = load("pdp.json")
    assert unanimity_set(pdp.replace(pdp.agents[:1])).signs() == "+++"


@given(st.lists(st.sampled_from(["+++", "+--", "-+-", "---"]), min_size=1, max_size=7))
def test_majoritarian_flag_matches_oracle(rows):
    a = make_agenda(["p", "q", "d"], ["(p & q) <-> d"])
    p = Profile(a, tuple(js(r) for r in rows))
    m, ok = majoritarian_set(p)
    assert m.verdicts == O.majority(p)
    assert ok == O.consistent(a, m.verdicts)


def test_restrict_project_lift(p17):
    r = restrict(p17, [2, 3])
    assert {j.signs() for j in r.agents} == {"..++.", "..--.", "..+-."}
    q = project(p17, [4, 2])
    assert q.agenda.m == 2 and q.agents[0].signs() == "++"
    assert lift(q.agents[-1], [4, 2], 5).signs() == "..+.-"


def test_sum_and_common_agents(pdp):
    a, b, c = pdp.agents
    p1 = pdp.replace([a, a, b])
    p2 = pdp.replace([a, c])
    assert sum_profiles(p1, p2).n == 5
    assert common_agents(p1, p2).agents == (a,)
    assert common_agents(p1, p2, semantics="set").agents == (a,)
    assert common_agents(p1, p1).agents == (a, a, b)
    assert is_subprofile(pdp.replace([a]), p1)
    assert not is_subprofile(pdp.replace([a, a, a]), p1)
    assert is_subprofile(pdp.replace([a, a, a]), p1, semantics="set")


# -- agenda structure --------------------------------------------------------

def test_doctrinal_mis(pdp):
    mis = minimal_inconsistent_subsets(pdp.agenda)
    three = {frozenset(z) for z in mis if len(z) == 3}
    assert three == {
        frozenset({(0, 1), (1, 1), (2, -1)}),
    }
    two = {frozenset(z) for z in mis if len(z) == 2 and z[0][0] != z[1][0]}
    assert two == {frozenset({(0, -1), (2, 1)}), frozenset({(1, -1), (2, 1)})}
    rep = agenda_report(pdp.agenda)
    assert not rep.simple and rep.smallest_k_median == 3
    assert rep.closed_under_atoms


@pytest.mark.parametrize("pre, gamma", AGENDAS[:4])
def test_mis_are_minimal_and_inconsistent(pre, gamma):
    a = make_agenda(pre, gamma)
    for z in minimal_inconsistent_subsets(a):
        v = [0] * a.m
        for i, s in z:
            v[i] = s
        if len({i for i, _ in z}) < len(z):
            continue
        assert not O.consistent(a, v)
        for drop in z:
            w = list(v)
            w[drop[0]] = 0
            assert O.consistent(a, w)


def test_path_connectedness():
    assert agenda_report(make_agenda(["p", "q", "d"], ["(p & q) <-> d"])).path_connected is False
    scw = make_agenda(["p & r", "p & s", "q", "p & q", "t"])
    assert not agenda_report(scw).path_connected
    chain = make_agenda(["p", "q", "r"], ["(p & q) -> r", "r -> p", "r -> q", "p | q"])
    assert agenda_report(chain).path_connected


def test_pair_only_agenda_is_simple():
    a = make_agenda(["p", "q"], ["p -> q"])
    rep = agenda_report(a)
    assert rep.simple and rep.smallest_k_median == 2


def test_independent_partitions(party, p17, pdp):
    assert check_independent_partition(party.agenda, [0, 1], [2, 3])
    assert not check_independent_partition(party.agenda, [0, 2], [1, 3])
    assert check_independent_partition(p17.agenda, [0, 1, 2, 3], [4])
    assert check_syntactic_partition(p17.agenda, [0, 1, 2, 3], [4])
    assert not check_independent_partition(pdp.agenda, [0, 1], [2])
    with pytest.raises(InputError):
        check_independent_partition(pdp.agenda, [0], [2])
    with pytest.raises(PreconditionError):
        check_syntactic_partition(pdp.agenda, [0, 1], [2])


def test_iod():
    p = load("iod.json")
    assert check_iod(p.agenda, [0, 1, 2, 3, 4], [3, 4, 5, 6, 7])
    pdp = load("pdp.json")
    assert not check_iod(pdp.agenda, [0, 2], [1, 2])
    assert not check_iod(pdp.agenda, [0], [1, 2])


# -- binary view -------------------------------------------------------------

REFERENCE_MODELS = {
    (1, 1, 1, 1, 1), (1, 1, 1, 1, 0), (1, 1, 0, 0, 1), (1, 1, 0, 0, 0),
    (1, 0, 1, 1, 1), (1, 0, 1, 1, 0), (1, 0, 0, 0, 1), (1, 0, 0, 0, 0),
    (0, 1, 1, 1, 1), (0, 1, 1, 1, 0), (0, 1, 0, 0, 1), (0, 1, 0, 0, 0),
    (0, 0, 1, 1, 1), (0, 0, 1, 1, 0), (0, 0, 1, 0, 1), (0, 0, 1, 0, 0),
    (0, 0, 0, 0, 1), (0, 0, 0, 0, 0),
}


def _models(b):
    out = set()
    for bits in product((0, 1), repeat=len(b.variables)):
        v = dict(zip(b.variables, map(bool, bits)))
        if all(evaluate(f, v) for f in b.integrity_constraints):
            out.add(bits)
    return out


def test_binary_models_match_reference(p17):
    b = to_binary(p17.agenda, p17)
    models = _models(b)
    assert len(models) == 18 and models == REFERENCE_MODELS
    reference_ic = [parse_formula(t) for t in ["((x1 | x2) & x3) -> x4", "x4 -> x3"]]
    for bits in product((0, 1), repeat=5):
        v = dict(zip(b.variables, map(bool, bits)))
        assert (bits in models) == all(evaluate(f, v) for f in reference_ic)


def test_binary_ballots(p17):
    b = to_binary(p17.agenda, p17)
    assert b.ballots[0] == (1, 1, 1, 1, 1)
    assert b.ballots[-1] == (0, 0, 1, 0, 0)
    assert (0, 0, 1, 0, 1) in REFERENCE_MODELS


@pytest.mark.parametrize("name", ["pdp.json", "p17.json", "party-goers.json"])
def test_binary_round_trip(name):
    p = load(name)
    b = to_binary(p.agenda, p)
    a2, p2 = from_binary(b)
    assert [j.verdicts for j in p2.agents] == [j.verdicts for j in p.agents]
    assert len(codomain(a2)) == len(codomain(p.agenda))


def test_binary_rejects_bad_ballot():
    from judgagg.binary import BinaryProblem
    with pytest.raises(InputError):
        BinaryProblem(("x1", "x2"), ("x1 -> x2",), ((1, 0),))


# -- restricted domains ------------------------------------------------------

def test_doctrinal_domains(pdp):
    rep = restricted_domain_report(pdp)
    assert rep.single_plateaued is None
    assert rep.single_canyoned is None
    assert rep.unidimensionally_aligned is None
    assert rep.unidimensionally_ordered is None


def test_unanimous_profile_is_in_every_domain(pdp):
    p = pdp.replace(pdp.agents[:1] * 3)
    rep = restricted_domain_report(p)
    assert rep.single_plateaued is not None
    assert rep.unidimensionally_aligned is not None
    assert rep.unidimensionally_ordered is not None


@given(st.lists(st.sampled_from(["+++", "+--", "-+-", "---"]), min_size=1, max_size=4))
def test_canyoned_implies_plateaued(rows):
    a = make_agenda(["p", "q", "d"], ["(p & q) <-> d"])
    rep = restricted_domain_report(Profile(a, tuple(js(r) for r in rows)))
    if rep.single_canyoned is not None:
        assert rep.single_plateaued is not None
