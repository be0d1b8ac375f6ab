from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from judgagg.errors import CapExceededError, FormulaSyntaxError, UnboundAtomError
from judgagg.logic import (
    BOTTOM, TOP, Atom, Binary, Not, atoms, entails, evaluate, format_formula,
    is_consistent_set, is_contradiction, is_tautology, models, parse_formula,
    truth_mask,
)

NAMES = ["p", "q", "r"]


def formulas(depth=3):
    leaves = st.sampled_from([Atom(n) for n in NAMES] + [TOP, BOTTOM])
    ops = st.sampled_from(["and", "or", "implies", "iff", "xor"])
    return st.recursive(
        leaves,
        lambda sub: st.one_of(st.builds(Not, sub), st.builds(Binary, ops, sub, sub)),
        max_leaves=8,
    )


@given(formulas())
def test_format_parse_round_trip(f):
    assert parse_formula(format_formula(f)) == f


@given(formulas())
def test_truth_mask_matches_truth_table(f):
    mask = truth_mask(f, NAMES)
    for v, bits in enumerate(product((False, True), repeat=3)):
        val = {n: bool(v >> i & 1) for i, n in enumerate(NAMES)}
        assert bool(mask >> v & 1) == evaluate(f, val)


@given(st.lists(formulas(), max_size=3), formulas())
def test_entailment_is_inconsistency_with_negation(premises, c):
    assert entails(premises, c, NAMES) == (not is_consistent_set(premises + [Not(c)], NAMES))


@given(st.lists(formulas(), max_size=3))
def test_consistent_iff_a_model_exists(fs):
    assert is_consistent_set(fs, NAMES) == any(True for _ in models(fs, NAMES))


@pytest.mark.parametrize("text, expected", [
    ("p & q | r", "(p & q) | r"),
    ("p | q & r", "p | (q & r)"),
    ("p -> q -> r", "p -> (q -> r)"),
    ("p <-> q -> r", "p <-> (q -> r)"),
    ("p xor q & r", "p xor (q & r)"),
    ("p | q xor r", "p | (q xor r)"),
    ("!p & q", "(!p) & q"),
    ("~p", "!p"),
    ("p <-> q <-> r", "(p <-> q) <-> r"),
])
def test_precedence(text, expected):
    assert parse_formula(text) == parse_formula(expected)


def test_minimal_parentheses():
    assert format_formula(parse_formula("((p & q)) <-> (d)")) == "p & q <-> d"
    assert format_formula(parse_formula("(p -> q) -> r")) == "(p -> q) -> r"
    assert format_formula(parse_formula("!(p & r)")) == "!(p & r)"


@pytest.mark.parametrize("text, pos", [
    ("p &", 3),
    ("(p | q", 6),
    ("p q", 2),
    ("P", 0),
    ("p & # q", 4),
])
def test_syntax_error_positions(text, pos):
    with pytest.raises(FormulaSyntaxError) as info:
        parse_formula(text)
    assert info.value.position == pos


def test_unbound_atom():
    with pytest.raises(UnboundAtomError):
        evaluate(parse_formula("p & q"), {"p": True})
    with pytest.raises(UnboundAtomError):
        is_consistent_set([parse_formula("s")], ["p"])


def test_constants_and_classics():
    assert is_tautology(parse_formula("p | !p"))
    assert is_contradiction(parse_formula("p & !p"))
    assert not is_consistent_set([parse_formula("false")])
    assert is_consistent_set([])
    assert atoms(parse_formula("(p & q) <-> d")) == {"p", "q", "d"}


def test_doctrinal_inconsistency():
    fs = [parse_formula(t) for t in ["p", "q", "!d", "(p & q) <-> d"]]
    assert not is_consistent_set(fs)
    assert entails(fs[:2] + fs[3:], parse_formula("d"))


def test_atom_cap():
    names = [f"x{i}" for i in range(5)]
    with pytest.raises(CapExceededError):
        truth_mask(parse_formula("x0"), names, cap=4)
