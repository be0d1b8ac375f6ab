"""Agendas, judgment sets, profiles and the operations on them.

Issues are identified by their position in the pre-agenda. A signed
judgment is a pair ``(issue, sign)`` with sign ``+1`` (accept, the formula
itself) or ``-1`` (reject, its negation). A judgment set is a vector of
verdicts in ``{+1, -1, 0}`` where ``0`` means the issue is absent.
"""

from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from . import _kernels
from .config import check_cap, current_caps
from .errors import InputError, PreconditionError
from .logic import (
    TOP, Atom, Const, Formula, Not, atoms, format_formula, is_consistent_set,
    parse_formula, truth_mask,
)

ACCEPT = 1
REJECT = -1
ABSENT = 0

__all__ = [
    "ACCEPT", "REJECT", "ABSENT", "JudgmentSet", "Agenda", "Profile",
    "Outcome", "PartialOutcome", "AgendaReport", "make_agenda", "codomain",
    "is_rational", "ext", "support", "majoritarian_set", "unanimity_set",
    "quota_set", "restrict", "project", "lift", "sum_profiles",
    "is_subprofile", "common_agents", "agenda_report",
    "check_independent_partition", "check_syntactic_partition", "check_iod",
    "sub_codomain", "as_sign",
]


def as_sign(sign):
    """Normalize ``'accept'``/``'reject'``/``+1``/``-1`` to ``+1``/``-1``."""
    if sign in (1, "+", "accept", "+1"):
        return ACCEPT
    if sign in (-1, "-", "reject", "-1"):
        return REJECT
    raise InputError(f"invalid sign {sign!r}")


@dataclass(frozen=True)
class JudgmentSet:
    """A signed selection over the issues of an agenda."""

    verdicts: tuple

    def __post_init__(self):
        v = tuple(int(x) for x in self.verdicts)
        if any(x not in (-1, 0, 1) for x in v):
            raise InputError(f"verdicts must be +1, -1 or 0, got {self.verdicts!r}")
        object.__setattr__(self, "verdicts", v)

    @classmethod
    def from_bits(cls, m, bits):
        return cls(tuple(1 if bits >> i & 1 else -1 for i in range(m)))

    @classmethod
    def from_literals(cls, m, literals):
        v = [0] * m
        for i, s in literals:
            s = as_sign(s)
            if v[i] not in (0, s):
                raise InputError(f"issue {i} judged both ways")
            v[i] = s
        return cls(tuple(v))

    @classmethod
    def empty(cls, m):
        return cls((0,) * m)

    @property
    def m(self):
        return len(self.verdicts)

    @property
    def is_complete(self):
        return 0 not in self.verdicts

    @cached_property
    def accept_bits(self):
        return sum(1 << i for i, v in enumerate(self.verdicts) if v == 1)

    @cached_property
    def defined_bits(self):
        return sum(1 << i for i, v in enumerate(self.verdicts) if v != 0)

    def literals(self):
        return tuple((i, v) for i, v in enumerate(self.verdicts) if v)

    def size(self):
        return sum(1 for v in self.verdicts if v)

    def __contains__(self, literal):
        i, s = literal
        return 0 <= i < len(self.verdicts) and self.verdicts[i] == as_sign(s)

    def issubset(self, other):
        return (self.m == other.m
                and all(v == 0 or v == w for v, w in zip(self.verdicts, other.verdicts)))

    def restrict(self, indices):
        keep = set(indices)
        return JudgmentSet(tuple(v if i in keep else 0 for i, v in enumerate(self.verdicts)))

    def sort_key(self):
        # complete sets sort as binary numbers with accept = 1, issue 0 first
        return tuple(v + 1 for v in self.verdicts)

    def signs(self):
        return "".join("+" if v == 1 else "-" if v == -1 else "." for v in self.verdicts)

    def __repr__(self):
        return f"JudgmentSet({self.signs()})"


def canonical(sets):
    """Deduplicate and sort judgment sets into canonical order."""
    return tuple(sorted(set(sets), key=JudgmentSet.sort_key))


def _coerce_formula(f):
    if isinstance(f, Formula):
        return f
    return parse_formula(f)


def _trivial_gamma(constraints):
    return all(isinstance(g, Const) and g.value for g in constraints)


@dataclass(frozen=True)
class Agenda:
    """Ordered pre-agenda plus constraints.

    Construct validated agendas with :func:`make_agenda`; the constructor
    itself performs no semantic checks so that derived agendas (restrictions
    to issue subsets) can be built cheaply.
    """

    pre_agenda: tuple
    constraints: tuple = (TOP,)

    def __post_init__(self):
        object.__setattr__(self, "pre_agenda",
                           tuple(_coerce_formula(f) for f in self.pre_agenda))
        cons = tuple(_coerce_formula(f) for f in self.constraints) or (TOP,)
        object.__setattr__(self, "constraints", cons)

    @property
    def m(self):
        return len(self.pre_agenda)

    @cached_property
    def atom_universe(self):
        return tuple(sorted(atoms(self.pre_agenda + self.constraints)))

    @property
    def gamma_is_top(self):
        return _trivial_gamma(self.constraints)

    def literal(self, issue, sign):
        f = self.pre_agenda[issue]
        return f if as_sign(sign) == ACCEPT else Not(f)

    def literal_text(self, issue, sign):
        return format_formula(self.literal(issue, sign))

    def formulas(self, j):
        """The formula set induced by a judgment set."""
        return [self.literal(i, s) for i, s in j.literals()]

    @cached_property
    def _masks(self):
        uni = self.atom_universe
        check_cap("atoms", len(uni), current_caps().max_atoms)
        full = (1 << (1 << len(uni))) - 1
        pos = [truth_mask(f, uni) for f in self.pre_agenda]
        neg = [full ^ x for x in pos]
        gamma = full
        for g in self.constraints:
            gamma &= truth_mask(g, uni)
        return pos, neg, gamma

    def mask(self, j, extra=None):
        """Models of ``j`` together with the constraints (and ``extra`` mask)."""
        self._check_width(j)
        pos, neg, acc = self._masks
        if extra is not None:
            acc &= extra
        for i, s in j.literals():
            acc &= pos[i] if s == 1 else neg[i]
            if not acc:
                return 0
        return acc

    def formula_mask(self, f):
        return truth_mask(f, self.atom_universe)

    def consistent(self, j):
        """True iff ``j`` together with the constraints is satisfiable."""
        return self.mask(j) != 0

    def _check_width(self, j):
        if j.m != self.m:
            raise InputError(f"judgment set has {j.m} verdicts, agenda has {self.m} issues")

    @cached_property
    def codomain(self):
        check_cap("issues", self.m, current_caps().max_issues)
        pos, neg, gamma = self._masks
        patterns = _kernels.enumerate_patterns(pos, neg, gamma)
        return canonical(JudgmentSet.from_bits(self.m, b) for b in patterns)

    def subagenda(self, indices):
        """The agenda restricted to ``indices`` (in the given order), same constraints."""
        return Agenda(tuple(self.pre_agenda[i] for i in indices), self.constraints)

    def to_json(self):
        return {
            "pre_agenda": [format_formula(f) for f in self.pre_agenda],
            "constraints": [format_formula(g) for g in self.constraints],
        }


def make_agenda(pre, gamma=()):
    """Build and validate an agenda.

    Issues must be contingent, pairwise distinct, non-constant and not
    settled syntactically by the constraints; the constraints must be
    consistent and share an atom with the pre-agenda unless they are
    trivially true.
    """
    pre = [_coerce_formula(f) for f in pre]
    gamma = [_coerce_formula(g) for g in gamma] or [TOP]
    if not pre:
        raise InputError("the pre-agenda is empty")
    check_cap("atoms", len(atoms(pre + gamma)), current_caps().max_atoms)
    seen = set()
    for i, f in enumerate(pre):
        text = format_formula(f)
        if isinstance(f, Const):
            raise InputError(f"issue {i} ({text}) is a constant")
        if not is_consistent_set([f]):
            raise InputError(f"issue {i} ({text}) is a contradiction")
        if not is_consistent_set([Not(f)]):
            raise InputError(f"issue {i} ({text}) is a tautology")
        if f in seen:
            raise InputError(f"issue {i} ({text}) is a duplicate")
        seen.add(f)
    universe = atoms(pre + gamma)
    if not is_consistent_set(gamma, universe):
        raise InputError("the constraints are inconsistent")
    for i, f in enumerate(pre):
        settled = f in gamma or Not(f) in gamma or (isinstance(f, Not) and f.child in gamma)
        if settled:
            raise InputError(f"issue {i} ({format_formula(f)}) is resolved by the constraints")
    if not _trivial_gamma(gamma) and not atoms(gamma) & atoms(pre):
        raise InputError("the constraints share no atom with the pre-agenda")
    return Agenda(tuple(pre), tuple(gamma))


def codomain(agenda):
    """All rational judgment sets, in canonical order."""
    return agenda.codomain


def is_rational(j, agenda):
    return j.m == agenda.m and j.is_complete and agenda.consistent(j)


def ext(j, agenda):
    """All rational judgment sets extending the consistent partial set ``j``."""
    agenda._check_width(j)
    if not agenda.consistent(j):
        raise PreconditionError(f"judgment set {j.signs()} is inconsistent")
    acc, dfn = j.accept_bits, j.defined_bits
    return tuple(J for J in agenda.codomain if J.accept_bits & dfn == acc)


def sub_codomain(agenda, indices):
    """Rational judgment sets of the sub-agenda ``indices``, embedded as
    partial sets of the full agenda (absent outside ``indices``)."""
    indices = sorted(set(indices))
    check_cap("issues", len(indices), current_caps().max_issues)
    pos, neg, gamma = agenda._masks
    pats = _kernels.enumerate_patterns([pos[i] for i in indices],
                                       [neg[i] for i in indices], gamma)
    out = []
    for b in pats:
        v = [0] * agenda.m
        for k, i in enumerate(indices):
            v[i] = 1 if b >> k & 1 else -1
        out.append(JudgmentSet(tuple(v)))
    return canonical(out)


@dataclass(frozen=True)
class Profile:
    """Ordered agents' judgment sets over one agenda.

    In strict mode (the default) every agent must be rational; open mode
    admits partial and inconsistent sets.
    """

    agenda: Agenda
    agents: tuple
    strict: bool = True

    def __post_init__(self):
        agents = tuple(a if isinstance(a, JudgmentSet) else JudgmentSet(tuple(a))
                       for a in self.agents)
        object.__setattr__(self, "agents", agents)
        for k, j in enumerate(agents):
            if j.m != self.agenda.m:
                raise InputError(f"agent {k} has {j.m} verdicts, agenda has {self.agenda.m}")
            if self.strict and not is_rational(j, self.agenda):
                raise InputError(f"agent {k} ({j.signs()}) is not rational")

    @property
    def n(self):
        return len(self.agents)

    def replace(self, agents):
        return Profile(self.agenda, tuple(agents), self.strict)

    @cached_property
    def counts(self):
        """Per-issue (accept, reject) support counts."""
        m = self.agenda.m
        pos = [0] * m
        negc = [0] * m
        for j in self.agents:
            for i, v in enumerate(j.verdicts):
                if v == 1:
                    pos[i] += 1
                elif v == -1:
                    negc[i] += 1
        return tuple(pos), tuple(negc)


@dataclass(frozen=True)
class Outcome:
    """Non-empty collection of rational judgment sets chosen by a rule."""

    sets: tuple
    rule_name: str
    note: str = None

    def __post_init__(self):
        sets = canonical(self.sets)
        if not sets:
            raise PreconditionError(f"rule {self.rule_name} produced no judgment set")
        object.__setattr__(self, "sets", sets)

    def as_set(self):
        return frozenset(self.sets)

    def __len__(self):
        return len(self.sets)

    def __iter__(self):
        return iter(self.sets)

    def __contains__(self, j):
        return j in self.sets


@dataclass(frozen=True)
class PartialOutcome:
    """Result of a partial rule (majority, quota, unanimity, CBP)."""

    judgment: JudgmentSet
    consistent: bool
    rule_name: str


def support(issue, sign, p):
    """N(φ, P): number of agents holding the signed judgment."""
    if not 0 <= issue < p.agenda.m:
        raise InputError(f"issue index {issue} out of range")
    pos, negc = p.counts
    return pos[issue] if as_sign(sign) == ACCEPT else negc[issue]


def quota_set(p, k):
    """Judgments supported by more than ``k`` agents (possibly partial)."""
    pos, negc = p.counts
    return JudgmentSet(tuple(1 if a > k else -1 if r > k else 0 for a, r in zip(pos, negc)))


def majoritarian_set(p):
    """m(P) with a flag telling whether it is consistent with the constraints."""
    pos, negc = p.counts
    n = p.n
    j = JudgmentSet(tuple(1 if 2 * a > n else -1 if 2 * r > n else 0
                          for a, r in zip(pos, negc)))
    return j, p.agenda.consistent(j)


def unanimity_set(p):
    """u(P): judgments held by every agent."""
    pos, negc = p.counts
    n = p.n
    if n == 0:
        return JudgmentSet.empty(p.agenda.m)
    return JudgmentSet(tuple(1 if a == n else -1 if r == n else 0 for a, r in zip(pos, negc)))


def restrict(p, sub):
    """P restricted to the issues ``sub``; other verdicts become absent."""
    sub = set(sub)
    bad = [i for i in sub if not 0 <= i < p.agenda.m]
    if bad:
        raise InputError(f"issue indices {bad} out of range")
    return Profile(p.agenda, tuple(j.restrict(sub) for j in p.agents), strict=False)


def project(p, indices):
    """P over the sub-agenda ``indices``, re-indexed (issue ``k`` of the result
    is issue ``indices[k]`` of ``p``)."""
    indices = list(indices)
    agents = tuple(JudgmentSet(tuple(j.verdicts[i] for i in indices)) for j in p.agents)
    return Profile(p.agenda.subagenda(indices), agents, strict=p.strict)


def lift(j, indices, m):
    """Inverse of :func:`project` for one judgment set."""
    v = [0] * m
    for k, i in enumerate(indices):
        v[i] = j.verdicts[k]
    return JudgmentSet(tuple(v))


def _same_agenda(p1, p2):
    if p1.agenda != p2.agenda:
        raise InputError("profiles are over different agendas")


def sum_profiles(p1, p2):
    """P1 + P2: concatenation of agents."""
    _same_agenda(p1, p2)
    return Profile(p1.agenda, p1.agents + p2.agents, p1.strict and p2.strict)


def is_subprofile(p1, p2, semantics="multiset"):
    """P1 ⊑ P2: every agent of P1 also occurs in P2.

    With multiset semantics each judgment set of P1 must occur in P2 at least
    as often as in P1; with set semantics once suffices.
    """
    _same_agenda(p1, p2)
    c1, c2 = Counter(p1.agents), Counter(p2.agents)
    if semantics == "set":
        return set(c1) <= set(c2)
    if semantics != "multiset":
        raise InputError(f"unknown semantics {semantics!r}")
    return all(c2[j] >= k for j, k in c1.items())


def common_agents(p1, p2, semantics="multiset"):
    """P1 ⊓ P2: agents occurring in both profiles, in P1's order."""
    _same_agenda(p1, p2)
    c2 = Counter(p2.agents)
    out = []
    if semantics == "set":
        seen = set()
        for j in p1.agents:
            if j in c2 and j not in seen:
                out.append(j)
                seen.add(j)
    elif semantics == "multiset":
        for j in p1.agents:
            if c2[j] > 0:
                out.append(j)
                c2[j] -= 1
    else:
        raise InputError(f"unknown semantics {semantics!r}")
    return Profile(p1.agenda, tuple(out), p1.strict and p2.strict)


# -- agenda structure -------------------------------------------------------

@dataclass(frozen=True)
class AgendaReport:
    closed_under_atoms: bool
    minimal_inconsistent_subsets: tuple
    simple: bool
    smallest_k_median: int
    path_connected: bool
    conditional_entailment: tuple = field(repr=False, default=())

    def to_json(self, agenda):
        return {
            "closed_under_atoms": self.closed_under_atoms,
            "minimal_inconsistent_subsets": [
                [agenda.literal_text(i, s) for i, s in z]
                for z in self.minimal_inconsistent_subsets
            ],
            "simple": self.simple,
            "smallest_k_median": self.smallest_k_median,
            "path_connected": self.path_connected,
        }


REPORT_MAX_ISSUES = 12


def minimal_inconsistent_subsets(agenda):
    """All minimally inconsistent sets of signed judgments, including the
    complementary pairs ``{φ, ¬φ}``; sorted by size, then lexicographically."""
    check_cap("issues", agenda.m, min(REPORT_MAX_ISSUES, current_caps().max_issues))
    pos, neg, gamma = agenda._masks
    m = agenda.m
    found = [((i, 1), (i, -1)) for i in range(m)]
    if not gamma:
        return ()
    lit_mask = {}
    for i in range(m):
        lit_mask[(i, 1)] = pos[i]
        lit_mask[(i, -1)] = neg[i]

    def minimal(lits):
        for k in range(len(lits)):
            acc = gamma
            for t, lit in enumerate(lits):
                if t != k:
                    acc &= lit_mask[lit]
            if not acc:
                return False
        return True

    def dfs(start, lits, acc):
        for i in range(start, m):
            for s in (1, -1):
                lit = (i, s)
                a = acc & lit_mask[lit]
                chosen = lits + [lit]
                if a:
                    dfs(i + 1, chosen, a)
                elif minimal(chosen):
                    found.append(tuple(chosen))

    dfs(0, [], gamma)
    return tuple(sorted(set(found), key=lambda z: (len(z), z)))


def conditional_entailment(agenda, mis=None):
    """Pairs (φ, ψ) of signed judgments with φ ⊢* ψ.

    φ ⊢* ψ holds iff φ and ¬ψ are distinct members of one minimally
    inconsistent set: the rest of that set is the conditioning subset.
    """
    if mis is None:
        mis = minimal_inconsistent_subsets(agenda)
    rel = set()
    for z in mis:
        for a in z:
            for b in z:
                if a != b:
                    rel.add((a, (b[0], -b[1])))
    return tuple(sorted(rel))


def agenda_report(agenda):
    mis = minimal_inconsistent_subsets(agenda)
    pre_atoms = atoms(agenda.pre_agenda)
    issue_atoms = {f.name for f in agenda.pre_agenda if isinstance(f, Atom)}
    closed = pre_atoms <= issue_atoms
    largest = max((len(z) for z in mis), default=2)
    rel = conditional_entailment(agenda, mis)
    lits = [(i, s) for i in range(agenda.m) for s in (1, -1)]
    reach = {a: {b for (x, b) in rel if x == a} for a in lits}
    changed = True
    while changed:  # transitive closure
        changed = False
        for a in lits:
            new = set(reach[a])
            for b in reach[a]:
                new |= reach[b]
            if new != reach[a]:
                reach[a] = new
                changed = True
    connected = all(b in reach[a] for a in lits for b in lits)
    return AgendaReport(
        closed_under_atoms=closed,
        minimal_inconsistent_subsets=mis,
        simple=largest < 3,
        smallest_k_median=max(2, largest),
        path_connected=connected,
        conditional_entailment=rel,
    )


def _check_indices(agenda, *parts):
    for part in parts:
        for i in part:
            if not 0 <= i < agenda.m:
                raise InputError(f"issue index {i} out of range")


def check_independent_partition(agenda, part1, part2):
    """Semantic independence: every rational set of part 1 combines with every
    rational set of part 2 into a rational set of the whole agenda."""
    part1, part2 = set(part1), set(part2)
    _check_indices(agenda, part1, part2)
    if part1 & part2 or part1 | part2 != set(range(agenda.m)) or not part1 or not part2:
        raise InputError("the parts do not partition the issues into two non-empty sets")
    return _combine_all(agenda, sub_codomain(agenda, part1), sub_codomain(agenda, part2))


def check_syntactic_partition(agenda, part1, part2):
    """Syntactic independence: the parts share no atom (constraints must be trivial)."""
    part1, part2 = set(part1), set(part2)
    _check_indices(agenda, part1, part2)
    if part1 & part2 or part1 | part2 != set(range(agenda.m)) or not part1 or not part2:
        raise InputError("the parts do not partition the issues into two non-empty sets")
    if not agenda.gamma_is_top:
        raise PreconditionError("the syntactic check needs trivial constraints")
    a1 = atoms(agenda.pre_agenda[i] for i in part1)
    a2 = atoms(agenda.pre_agenda[i] for i in part2)
    return not a1 & a2


def _merge(j1, j2):
    return JudgmentSet(tuple(a or b for a, b in zip(j1.verdicts, j2.verdicts)))


def _combine_all(agenda, sets1, sets2):
    for j1 in sets1:
        for j2 in sets2:
            if not agenda.consistent(_merge(j1, j2)):
                return False
    return True


def check_iod(agenda, a1, a2):
    """Independent overlapping decomposition: rational sets of the two parts
    that agree on the overlap always combine into a rational set."""
    a1, a2 = set(a1), set(a2)
    _check_indices(agenda, a1, a2)
    if a1 | a2 != set(range(agenda.m)) or not a1 or not a2:
        raise InputError("the parts do not cover the issues")
    overlap = a1 & a2
    sets2 = sub_codomain(agenda, a2)
    for j1 in sub_codomain(agenda, a1):
        for j2 in sets2:
            if any(j1.verdicts[i] != j2.verdicts[i] for i in overlap):
                continue
            if not agenda.consistent(_merge(j1, j2)):
                return False
    return True


def all_sign_vectors(m):
    """Every complete sign vector over ``m`` issues (2**m of them)."""
    return [JudgmentSet(v) for v in product((1, -1), repeat=m)]
