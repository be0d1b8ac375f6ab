"""Conversion between the formula-based agenda view and the binary view.

In the binary view every issue is a fresh propositional variable
``x1 .. xm`` (in pre-agenda order) and the integrity constraints range over
those variables only. The constraints are the projection of
``Γ ∪ {x_i <-> φ_i}`` onto the fresh variables, written as one blocking
clause per minimally inconsistent set of signed judgments.
"""

from dataclasses import dataclass

from .agenda import Agenda, JudgmentSet, Profile, minimal_inconsistent_subsets
from .errors import InputError, PreconditionError
from .logic import TOP, Atom, Formula, Not, disj, evaluate, format_formula, parse_formula

__all__ = ["BinaryProblem", "to_binary", "from_binary"]


@dataclass(frozen=True)
class BinaryProblem:
    variables: tuple
    integrity_constraints: tuple
    ballots: tuple

    def __post_init__(self):
        variables = tuple(self.variables)
        ics = tuple(f if isinstance(f, Formula) else parse_formula(f)
                    for f in self.integrity_constraints) or (TOP,)
        ballots = tuple(tuple(int(b) for b in row) for row in self.ballots)
        object.__setattr__(self, "variables", variables)
        object.__setattr__(self, "integrity_constraints", ics)
        object.__setattr__(self, "ballots", ballots)
        names = set(variables)
        if len(names) != len(variables):
            raise InputError("duplicate binary variable names")
        for k, row in enumerate(ballots):
            if len(row) != len(variables) or any(b not in (0, 1) for b in row):
                raise InputError(f"ballot {k} is not a bit vector of length {len(variables)}")
            v = dict(zip(variables, (bool(b) for b in row)))
            if not all(evaluate(f, v) for f in ics):
                raise InputError(f"ballot {k} violates the integrity constraints")

    def to_json(self):
        return {
            "variables": list(self.variables),
            "integrity_constraints": [format_formula(f) for f in self.integrity_constraints],
            "ballots": [list(b) for b in self.ballots],
        }


def _clause(z, names):
    # blocks the conjunction of the judgments in z
    return disj(Not(Atom(names[i])) if s == 1 else Atom(names[i]) for i, s in z)


def to_binary(agenda, p):
    if p.agenda != agenda:
        raise InputError("profile is over a different agenda")
    if not p.strict:
        raise PreconditionError("binary conversion needs a strict-mode profile")
    names = tuple(f"x{i + 1}" for i in range(agenda.m))
    ics = tuple(_clause(z, names) for z in minimal_inconsistent_subsets(agenda)
                if len({i for i, _ in z}) == len(z))
    ballots = tuple(tuple(1 if v == 1 else 0 for v in j.verdicts) for j in p.agents)
    return BinaryProblem(names, ics or (TOP,), ballots)


def from_binary(b):
    """Agenda with one atomic issue per variable and Γ = IC, plus the profile."""
    agenda = Agenda(tuple(Atom(v) for v in b.variables), b.integrity_constraints)
    if not agenda.codomain:
        raise InputError("the integrity constraints are inconsistent")
    agents = tuple(JudgmentSet(tuple(1 if x else -1 for x in row)) for row in b.ballots)
    return agenda, Profile(agenda, agents)
