"""Aggregation rules.

Irresolute rules return an :class:`Outcome` holding every tied winner;
partial rules (majority, quota, unanimity, conclusion-based) return a
:class:`PartialOutcome`. No rule breaks ties internally; :func:`tie_break`
is a separate post-processing step.
"""

from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from . import _kernels
from .agenda import (
    JudgmentSet, Outcome, PartialOutcome, canonical, ext, majoritarian_set,
    quota_set, sub_codomain, unanimity_set,
)
from .config import check_cap, current_caps
from .errors import InputError, PreconditionError
from .logic import conj, disj, format_formula
from .metrics import DISTANCES, NORMS, apply_norm, distance_matrix, reversal_scores

__all__ = [
    "rule_majority", "rule_pbp", "rule_cbp", "rule_extended_cbp", "rule_quota",
    "rule_unanimity", "rule_mc", "rule_mcc", "rule_ra", "rule_leximax",
    "rule_med", "rule_young", "rule_distance_based", "rule_scoring",
    "rule_full", "rule_mrv", "max_consistent_subsets", "med_value",
    "med_values", "young_removals", "leximax_vector", "tie_break",
    "RuleSpec", "make_rule", "RULE_NAMES", "PARTIAL_RULES",
]


def _require_strict(p, rule):
    if not p.strict:
        raise PreconditionError(f"{rule} needs a strict-mode profile")


def _check_issue_set(p, issues, what):
    issues = sorted(set(issues))
    if not issues:
        raise InputError(f"the {what} set is empty")
    bad = [i for i in issues if not 0 <= i < p.agenda.m]
    if bad:
        raise InputError(f"{what} indices {bad} out of range")
    return issues


def _check_distance(d, norm):
    if d not in DISTANCES:
        raise InputError(f"unknown distance {d!r}; expected one of {DISTANCES}")
    if norm not in NORMS:
        raise InputError(f"unknown norm {norm!r}; expected one of {NORMS}")


def _argbest(cands, values, best=min):
    target = best(values)
    return [c for c, v in zip(cands, values) if v == target], target


# -- majority-based partial rules ------------------------------------------

def rule_majority(p):
    j, ok = majoritarian_set(p)
    return PartialOutcome(j, ok, "majority")


def rule_quota(p, k):
    """UQ_k: judgments supported by more than ``k`` agents, 0 < k <= n."""
    if not 0 < k <= p.n:
        raise InputError(f"quota k={k} outside 0 < k <= n={p.n}")
    j = quota_set(p, k)
    return PartialOutcome(j, p.agenda.consistent(j), f"quota{k}")


def rule_unanimity(p):
    j = unanimity_set(p)
    return PartialOutcome(j, p.agenda.consistent(j), "unanimity")


def rule_pbp(p, premises):
    """Premise-based procedure: extensions of the premise-wise majority."""
    _require_strict(p, "pbp")
    premises = _check_issue_set(p, premises, "premise")
    j, _ = majoritarian_set(p)
    j = j.restrict(premises)
    if not p.agenda.consistent(j):
        raise PreconditionError("the premise majority is inconsistent")
    return Outcome(ext(j, p.agenda), "pbp")


def rule_cbp(p, conclusions):
    """Conclusion-based procedure: issue-wise majority on the conclusions only."""
    _require_strict(p, "cbp")
    conclusions = _check_issue_set(p, conclusions, "conclusion")
    j, _ = majoritarian_set(p)
    j = j.restrict(conclusions)
    return PartialOutcome(j, p.agenda.consistent(j), "cbp")


def rule_extended_cbp(p, conclusions, d="hamming", norm="sum"):
    """Distance-based rule on the conclusions, then on the full agenda with the
    constraints strengthened by the disjunction of the first-step results."""
    _require_strict(p, "ecbp")
    conclusions = _check_issue_set(p, conclusions, "conclusion")
    _check_distance(d, norm)
    if d == "geodesic":
        raise InputError("the extended conclusion-based procedure cannot use the geodesic distance")
    agenda = p.agenda
    step1 = sub_codomain(agenda, conclusions)
    agents1 = [j.restrict(conclusions) for j in p.agents]
    rows = distance_matrix(agenda, agents1, step1, d)
    values = [apply_norm((row[c] for row in rows), norm) for c in range(len(step1))]
    chosen, _ = _argbest(step1, values)
    delta = disj(conj(agenda.formulas(j)) for j in chosen)
    delta_mask = agenda.formula_mask(delta)
    cands = [J for J in agenda.codomain if agenda.mask(J, delta_mask)]
    rows = distance_matrix(agenda, p.agents, cands, d)
    values = [apply_norm((row[c] for row in rows), norm) for c in range(len(cands))]
    winners, best = _argbest(cands, values)
    return Outcome(winners, "ecbp", note=f"added constraint: {format_formula(delta)}; distance {best}")


# -- majority-preserving rules ----------------------------------------------

def max_consistent_subsets(agenda, j, maximum_cardinality=False):
    """Inclusion-maximal (or maximum-cardinality) consistent subsets of ``j``."""
    lits = j.literals()
    pos, neg, gamma = agenda._masks
    masks = [pos[i] if s == 1 else neg[i] for i, s in lits]
    found = []

    def dfs(k, acc, chosen):
        if k == len(lits):
            # maximal iff every left-out judgment clashes with the chosen ones
            if all(not (acc & masks[t]) for t in range(len(lits)) if t not in chosen):
                found.append(tuple(chosen))
            return
        a = acc & masks[k]
        if a:
            dfs(k + 1, a, chosen + [k])
        dfs(k + 1, acc, chosen)

    if gamma:
        dfs(0, gamma, [])
    if maximum_cardinality and found:
        top = max(len(s) for s in found)
        found = [s for s in found if len(s) == top]
    subsets = [JudgmentSet.from_literals(agenda.m, [lits[t] for t in s]) for s in found]
    return canonical(subsets)


def _union_ext(agenda, partials):
    out = []
    for s in partials:
        out.extend(ext(s, agenda))
    return out


def rule_mc(p):
    """Union of the extensions of all maximal consistent subsets of m(P)."""
    j, _ = majoritarian_set(p)
    return Outcome(_union_ext(p.agenda, max_consistent_subsets(p.agenda, j)), "mc")


def rule_mcc(p):
    """As MC, restricted to consistent subsets of maximum cardinality."""
    j, _ = majoritarian_set(p)
    subsets = max_consistent_subsets(p.agenda, j, maximum_cardinality=True)
    return Outcome(_union_ext(p.agenda, subsets), "mcc")


def _literal_supports(p):
    pos, negc = p.counts
    return [((i, 1), pos[i]) for i in range(p.agenda.m)] + \
           [((i, -1), negc[i]) for i in range(p.agenda.m)]


def rule_ra(p):
    """Ranked agenda: greedy acceptance in order of decreasing support, over
    every order consistent with the support ranking.

    Only the order inside a block of equally supported judgments matters, and
    the sets a greedy pass over a block can reach from a state ``S`` are
    exactly ``S ∪ T`` for the maximal ``T`` within the block that keep
    ``S ∪ T`` consistent.
    """
    agenda = p.agenda
    pos, neg, gamma = agenda._masks
    supports = _literal_supports(p)
    blocks = {}
    for lit, n in supports:
        blocks.setdefault(n, []).append(lit)
    states = {(JudgmentSet.empty(agenda.m), gamma)} if gamma else set()
    for n in sorted(blocks, reverse=True):
        block = sorted(blocks[n])
        bmasks = [pos[i] if s == 1 else neg[i] for i, s in block]
        new_states = set()
        for state, acc in states:
            for t_idx, t_acc in _maximal_extensions(bmasks, acc):
                v = list(state.verdicts)
                for t in t_idx:
                    i, s = block[t]
                    v[i] = s
                new_states.add((JudgmentSet(tuple(v)), t_acc))
        states = new_states
    results = []
    for state, _ in states:
        results.extend([state] if state.is_complete else ext(state, agenda))
    return Outcome(results, "ra")


def _maximal_extensions(masks, acc):
    out = []

    def dfs(k, a, chosen):
        if k == len(masks):
            if all(not (a & masks[t]) for t in range(len(masks)) if t not in chosen):
                out.append((tuple(chosen), a))
            return
        b = a & masks[k]
        if b:
            dfs(k + 1, b, chosen + [k])
        dfs(k + 1, a, chosen)

    dfs(0, acc, [])
    return out


def leximax_vector(J, p):
    """(s_n, s_{n-1}, ..., s_k) for strict-majority k, where s_k counts the
    judgments of ``J`` with support exactly k."""
    pos, negc = p.counts
    n = p.n
    levels = range(n, n // 2, -1)
    sup = [pos[i] if v == 1 else negc[i] for i, v in enumerate(J.verdicts)]
    c = Counter(sup)
    return tuple(c[k] for k in levels)


def rule_leximax(p):
    cands = p.agenda.codomain
    vectors = [leximax_vector(J, p) for J in cands]
    winners, _ = _argbest(cands, vectors, best=max)
    return Outcome(winners, "leximax")


def med_values(p, cands=None):
    """Summed support Σ_{φ∈J} N(φ,P) of each candidate (codomain by default)."""
    cands = p.agenda.codomain if cands is None else cands
    pos, negc = p.counts
    return _kernels.support_values([c.accept_bits for c in cands], list(pos), list(negc))


def med_value(J, p):
    return med_values(p, [J])[0]


def rule_med(p):
    cands = p.agenda.codomain
    winners, best = _argbest(cands, med_values(p, cands), best=max)
    return Outcome(winners, "med", note=f"value {best}")


def young_removals(p):
    """Smallest number of agents whose removal makes the majority consistent,
    with the majoritarian sets of every such sub-profile."""
    types = sorted(Counter(p.agents).items(), key=lambda kv: kv[0].sort_key())
    sets = [t for t, _ in types]
    mult = [c for _, c in types]
    m = p.agenda.m
    for r in range(p.n + 1):
        found = set()
        for removal in _bounded_compositions(r, mult):
            keep = [c - x for c, x in zip(mult, removal)]
            size = sum(keep)
            acc = [0] * m
            rej = [0] * m
            for j, k in zip(sets, keep):
                if not k:
                    continue
                for i, v in enumerate(j.verdicts):
                    if v == 1:
                        acc[i] += k
                    elif v == -1:
                        rej[i] += k
            maj = JudgmentSet(tuple(1 if 2 * a > size else -1 if 2 * b > size else 0
                                    for a, b in zip(acc, rej)))
            if p.agenda.consistent(maj):
                found.add(maj)
        if found:
            return r, canonical(found)
    raise PreconditionError("no sub-profile has a consistent majority")  # unreachable


def _bounded_compositions(total, bounds):
    """Vectors x with 0 <= x[k] <= bounds[k] and sum(x) == total."""
    if not bounds:
        if total == 0:
            yield ()
        return
    head, rest = bounds[0], bounds[1:]
    room = sum(rest)
    for x in range(max(0, total - room), min(head, total) + 1):
        for tail in _bounded_compositions(total - x, rest):
            yield (x,) + tail


def rule_young(p):
    """Extensions of m(Q) over the largest sub-profiles Q with consistent majority."""
    r, majorities = young_removals(p)
    return Outcome(_union_ext(p.agenda, majorities), "young", note=f"removed {r} agents")


# -- distance and scoring rules ---------------------------------------------

def rule_distance_based(p, d="hamming", norm="sum"):
    """Rational sets minimizing η(d(J1, J), ..., d(Jn, J))."""
    _check_distance(d, norm)
    if d != "drastic":
        _require_strict(p, f"dist with {d}")
    cands = p.agenda.codomain
    rows = distance_matrix(p.agenda, p.agents, cands, d)
    values = [apply_norm((row[c] for row in rows), norm) for c in range(len(cands))]
    winners, best = _argbest(cands, values)
    return Outcome(winners, f"dist-{d}-{norm}", note=f"distance {best}")


def scoring_weights(p, s):
    """Per-issue (accept, reject) weights: Σ over agents of s(φ, J_i) for the
    agents holding φ."""
    m = p.agenda.m
    wpos = [0] * m
    wneg = [0] * m
    for j, k in Counter(p.agents).items():
        if s == "simple":
            sc = (1,) * m
        elif s == "reversal":
            sc = reversal_scores(j, p.agenda)
        else:
            raise InputError(f"unknown scoring {s!r}; expected simple or reversal")
        for i, v in enumerate(j.verdicts):
            if v == 1:
                wpos[i] += k * sc[i]
            elif v == -1:
                wneg[i] += k * sc[i]
    return wpos, wneg


def rule_scoring(p, s="simple"):
    """argmax over rational J of Σ_i Σ_{φ ∈ J_i ∩ J} s(φ, J_i)."""
    _require_strict(p, "scoring")
    wpos, wneg = scoring_weights(p, s)
    cands = p.agenda.codomain
    values = _kernels.support_values([c.accept_bits for c in cands], wpos, wneg)
    winners, best = _argbest(cands, values, best=max)
    return Outcome(winners, f"scoring-{s}", note=f"score {best}")


def rule_full(p, d="hamming", norm="sum", oracle=False):
    """Nearest majority-consistent profiles P' and the extensions of m(P').

    ``oracle=True`` enumerates every profile of rational sets directly
    instead of calling the branch-and-bound kernel.
    """
    _require_strict(p, "full")
    _check_distance(d, norm)
    caps = current_caps()
    cands = p.agenda.codomain
    check_cap("agents for full", p.n, caps.full_max_agents)
    check_cap("codomain for full", len(cands), caps.full_max_codomain)
    rows = distance_matrix(p.agenda, p.agents, cands, d)
    if oracle:
        return Outcome(_full_oracle(p, cands, rows, norm), f"full-{d}-{norm}")
    best, mask = _kernels.full_search(rows, [c.accept_bits for c in cands], p.agenda.m,
                                      norm == "max")
    winners = [c for k, c in enumerate(cands) if mask >> k & 1]
    return Outcome(winners, f"full-{d}-{norm}", note=f"distance {best}")


def _full_oracle(p, cands, rows, norm):
    from .agenda import Profile  # local: only the oracle builds profiles

    best = None
    out = []
    for choice in product(range(len(cands)), repeat=p.n):
        q = Profile(p.agenda, tuple(cands[c] for c in choice))
        maj, ok = majoritarian_set(q)
        if not ok:
            continue
        dist = apply_norm((rows[r][c] for r, c in enumerate(choice)), norm)
        if best is None or dist < best:
            best, out = dist, list(ext(maj, p.agenda))
        elif dist == best:
            out.extend(ext(maj, p.agenda))
    return out


def rule_mrv(p, d=None, norm="sum"):
    """Most representative voter: the base rule's optimum restricted to the
    judgment sets that occur in the profile. Without a distance the base is
    MED (maximize summed support)."""
    _require_strict(p, "mrv")
    cands = canonical(p.agents)
    if not cands:
        raise PreconditionError("mrv needs at least one agent")
    if d is None:
        winners, best = _argbest(cands, med_values(p, cands), best=max)
        return Outcome(winners, "mrv-med", note=f"value {best}")
    _check_distance(d, norm)
    rows = distance_matrix(p.agenda, p.agents, cands, d)
    values = [apply_norm((row[c] for row in rows), norm) for c in range(len(cands))]
    winners, best = _argbest(cands, values)
    return Outcome(winners, f"mrv-{d}-{norm}", note=f"distance {best}")


def tie_break(outcome):
    """Resolute post-processing: keep the first set in canonical order."""
    return Outcome(outcome.sets[:1], outcome.rule_name + "+tiebreak", outcome.note)


# -- dispatch ----------------------------------------------------------------

RULE_NAMES = ("majority", "pbp", "cbp", "ecbp", "quota", "unanimity", "mc", "mcc",
              "ra", "leximax", "med", "young", "dist", "scoring", "full", "mrv")
PARTIAL_RULES = frozenset({"majority", "cbp", "quota", "unanimity"})


@dataclass(frozen=True)
class RuleSpec:
    """A rule name plus its parameters; calling it aggregates a profile."""

    name: str
    params: tuple = field(default=())

    def __post_init__(self):
        if self.name not in RULE_NAMES:
            raise InputError(f"unknown rule {self.name!r}; expected one of {', '.join(RULE_NAMES)}")
        params = {k: tuple(sorted(v)) if isinstance(v, (list, set, frozenset, tuple)) else v
                  for k, v in dict(self.params).items()}
        if self.name in ("pbp", "cbp", "ecbp"):
            key = "premises" if self.name == "pbp" else "conclusions"
            if not params.get(key):
                raise InputError(f"rule {self.name} needs --{key}")
        if self.name == "quota" and params.get("k") is None:
            raise InputError("rule quota needs --k")
        if "d" in params and params["d"] is not None and params["d"] not in DISTANCES:
            raise InputError(f"unknown distance {params['d']!r}")
        if "norm" in params and params["norm"] not in NORMS:
            raise InputError(f"unknown norm {params['norm']!r}")
        object.__setattr__(self, "params", tuple(sorted(params.items())))

    @property
    def label(self):
        extra = ",".join(f"{k}={v}" for k, v in self.params if v is not None)
        return f"{self.name}({extra})" if extra else self.name

    @property
    def partial(self):
        return self.name in PARTIAL_RULES

    def __call__(self, p):
        kw = dict(self.params)
        name = self.name
        if name == "majority":
            return rule_majority(p)
        if name == "unanimity":
            return rule_unanimity(p)
        if name == "quota":
            return rule_quota(p, kw["k"])
        if name == "pbp":
            return rule_pbp(p, kw["premises"])
        if name == "cbp":
            return rule_cbp(p, kw["conclusions"])
        if name == "ecbp":
            return rule_extended_cbp(p, kw["conclusions"], kw.get("d") or "hamming",
                                     kw.get("norm", "sum"))
        if name == "dist":
            return rule_distance_based(p, kw.get("d") or "hamming", kw.get("norm", "sum"))
        if name == "full":
            return rule_full(p, kw.get("d") or "hamming", kw.get("norm", "sum"))
        if name == "scoring":
            return rule_scoring(p, kw.get("s", "simple"))
        if name == "mrv":
            return rule_mrv(p, kw.get("d"), kw.get("norm", "sum"))
        return {"mc": rule_mc, "mcc": rule_mcc, "ra": rule_ra, "leximax": rule_leximax,
                "med": rule_med, "young": rule_young}[name](p)


def make_rule(name, **params):
    """``make_rule("dist", d="hamming", norm="max")`` and so on."""
    return RuleSpec(name, tuple((k, v) for k, v in params.items() if v is not None))
