"""Voting problems translated into judgment aggregation.

Options ``o1 .. om`` become one atom per unordered pair, oriented by option
order: ``aPb`` reads "a is ranked above b" and its rejection reads "b above
a". Two constraint sets are available: ``tr`` (transitivity over ordered
triples) and ``w`` (some option beats every other).
"""

from dataclasses import dataclass
from itertools import combinations, permutations
from math import factorial

from .agenda import Agenda, JudgmentSet, Profile, majoritarian_set
from .config import check_cap, current_caps
from .errors import InputError, PreconditionError
from .logic import ATOM_RE, KEYWORDS, Atom, Not, conj, disj, implies

__all__ = ["VoteProfile", "MajorityGraph", "GAMMA_MODES", "preference_agenda",
           "votes_to_profile", "majority_graph", "condorcet_winner", "borda",
           "winners", "vote_via_ja", "check_generalization",
           "condorcet_iff_majority_consistent"]

GAMMA_MODES = ("tr", "w")


@dataclass(frozen=True)
class VoteProfile:
    options: tuple
    ballots: tuple

    def __post_init__(self):
        options = tuple(str(o) for o in self.options)
        ballots = tuple(tuple(str(o) for o in b) for b in self.ballots)
        if len(options) < 2:
            raise InputError("a vote profile needs at least two options")
        if len(set(options)) != len(options):
            raise InputError("duplicate options")
        for k, b in enumerate(ballots):
            if sorted(b) != sorted(options):
                raise InputError(f"ballot {k} is not a permutation of the options")
        object.__setattr__(self, "options", options)
        object.__setattr__(self, "ballots", ballots)

    @property
    def n(self):
        return len(self.ballots)

    def to_json(self):
        return {"options": list(self.options), "ballots": [list(b) for b in self.ballots]}


@dataclass(frozen=True)
class MajorityGraph:
    nodes: tuple
    edges: frozenset

    def beats(self, x, y):
        return (x, y) in self.edges

    def to_json(self):
        return {"nodes": list(self.nodes),
                "edges": sorted([list(e) for e in self.edges])}


def _pairs(options):
    return list(combinations(range(len(options)), 2))


def _atom_name(options, i, j):
    x, y = options[i], options[j]
    name = f"{x}P{y}"
    if ATOM_RE.match(name) and name not in KEYWORDS:
        return name
    return f"o{i + 1}P{j + 1}"


def _pref_literal(options, x, y):
    """Formula for "x above y" over the canonical atoms."""
    if x < y:
        return Atom(_atom_name(options, x, y))
    return Not(Atom(_atom_name(options, y, x)))


def preference_agenda(options, gamma="tr"):
    """Agenda with one issue per unordered pair of options.

    Issue ``k`` corresponds to the ``k``-th pair ``(i, j)``, ``i < j``, in
    lexicographic order.
    """
    options = tuple(options)
    if len(options) < 2:
        raise InputError("a preference agenda needs at least two options")
    if len(set(options)) != len(options):
        raise InputError("duplicate options")
    pairs = _pairs(options)
    check_cap("issues", len(pairs), current_caps().max_issues)
    pre = tuple(Atom(_atom_name(options, i, j)) for i, j in pairs)
    names = {a.name for a in pre}
    if len(names) != len(pre):
        raise InputError("option names produce clashing atoms")
    r = range(len(options))
    if gamma == "tr":
        cons = tuple(
            implies(conj([_pref_literal(options, x, y), _pref_literal(options, y, z)]),
                    _pref_literal(options, x, z))
            for x in r for y in r for z in r if len({x, y, z}) == 3
        )
    elif gamma == "w":
        cons = (disj(conj(_pref_literal(options, x, y) for y in r if y != x) for x in r),)
    else:
        raise InputError(f"unknown constraint mode {gamma!r}; expected one of {GAMMA_MODES}")
    return Agenda(pre, cons or (conj(()),))


def _ballot_set(options, ballot):
    rank = {o: k for k, o in enumerate(ballot)}
    return JudgmentSet(tuple(1 if rank[options[i]] < rank[options[j]] else -1
                             for i, j in _pairs(options)))


def votes_to_profile(v, gamma="tr"):
    agenda = preference_agenda(v.options, gamma)
    return Profile(agenda, tuple(_ballot_set(v.options, b) for b in v.ballots))


def majority_graph(v):
    edges = set()
    for x, y in permutations(v.options, 2):
        above = sum(1 for b in v.ballots if b.index(x) < b.index(y))
        if 2 * above > v.n:
            edges.add((x, y))
    return MajorityGraph(v.options, frozenset(edges))


def condorcet_winner(v):
    """The option beating every other one in pairwise majority, or None."""
    g = majority_graph(v)
    for x in v.options:
        if all(g.beats(x, y) for y in v.options if y != x):
            return x
    return None


def borda(v):
    """Borda scores (m-1 for a top rank down to 0) and the set of top scorers."""
    m = len(v.options)
    scores = {o: 0 for o in v.options}
    for b in v.ballots:
        for k, o in enumerate(b):
            scores[o] += m - 1 - k
    best = max(scores.values())
    return scores, frozenset(o for o, s in scores.items() if s == best)


def winners(j, options):
    """Options that no other option is ranked above in ``j``."""
    options = tuple(options)
    pairs = _pairs(options)
    if j.m != len(pairs):
        raise InputError(f"judgment set has {j.m} issues, expected {len(pairs)}")
    if not j.is_complete:
        raise InputError("winner extraction needs a complete judgment set")
    beaten = set()
    for (i, k), v in zip(pairs, j.verdicts):
        beaten.add(options[k] if v == 1 else options[i])
    return frozenset(o for o in options if o not in beaten)


def vote_via_ja(v, rule, gamma="tr"):
    """Union of the winners of every judgment set the rule returns."""
    p = votes_to_profile(v, gamma)
    if gamma == "tr":
        check_cap("Tr codomain", factorial(len(v.options)), 1 << current_caps().max_issues)
    outcome = rule(p)
    if not hasattr(outcome, "sets"):
        raise PreconditionError("voting through judgment aggregation needs an irresolute rule")
    out = set()
    for j in outcome.sets:
        out |= winners(j, v.options)
    return frozenset(out)


def check_generalization(v, rule, reference="borda", gamma="tr"):
    """Does the rule pick the reference method's winners on this instance?

    The Condorcet comparison is vacuously true when there is no Condorcet
    winner.
    """
    got = vote_via_ja(v, rule, gamma)
    if reference == "borda":
        return got == borda(v)[1]
    if reference == "condorcet":
        w = condorcet_winner(v)
        return w is None or got == frozenset({w})
    raise InputError(f"unknown reference method {reference!r}")


def condorcet_iff_majority_consistent(v):
    """Both sides of the Condorcet / majority-consistency correspondence."""
    _, consistent = majoritarian_set(votes_to_profile(v, "tr"))
    return condorcet_winner(v) is not None, consistent
