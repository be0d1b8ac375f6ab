"""Aggregator properties checked on instances and searched over small domains.

Every checker takes a rule (any callable mapping a profile to an outcome,
such as a :class:`~judgagg.rules.RuleSpec`) and returns a
:class:`PropertyVerdict`. A failing verdict carries a witness holding the
checker's arguments, so :func:`replay` can re-run it.

Searches never claim more than they checked: a passing verdict reports the
bounds it was obtained under.
"""

import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations

from .agenda import (
    JudgmentSet, Profile, check_independent_partition, check_iod, ext,
    lift, majoritarian_set, make_agenda, project, sum_profiles, unanimity_set,
)
from .config import check_cap, current_caps, default_seed, default_threads
from .errors import InputError, PreconditionError
from .logic import Atom, Binary, Not, format_formula

__all__ = [
    "PropertyVerdict", "PROPERTIES", "check_majority_preservation",
    "check_unanimity", "check_monotonicity", "strengthened_literal",
    "check_agenda_separability", "check_oas", "check_reinforcement",
    "check_homogeneity", "check_sen", "check_anonymity", "check_property",
    "replay", "Bounds", "parse_bounds", "instance_catalog", "search_counterexample",
    "compare_rules", "bounded_instances",
]

# exhaustive searches refuse to enumerate more instances than this
MAX_INSTANCES = 200_000


@dataclass(frozen=True)
class PropertyVerdict:
    property: str
    holds_on_instance: bool
    witness: dict = None
    search_bounds: str = None
    vacuous: bool = False

    def to_json(self):
        out = {"property": self.property, "holds_on_instance": self.holds_on_instance,
               "vacuous": self.vacuous}
        if self.witness is not None:
            out["witness"] = _witness_json(self.witness)
        if self.search_bounds is not None:
            out["search_bounds"] = self.search_bounds
        return out


def _profile_json(p):
    return {"agenda": p.agenda.to_json(), "agents": [j.signs() for j in p.agents]}


def _witness_json(w):
    out = {}
    for key, value in sorted(w.items()):
        if isinstance(value, Profile):
            out[key] = _profile_json(value)
        elif isinstance(value, JudgmentSet):
            out[key] = value.signs()
        elif isinstance(value, (list, tuple, frozenset, set)):
            items = sorted(value, key=_sort_any) if isinstance(value, (set, frozenset)) else value
            out[key] = [v.signs() if isinstance(v, JudgmentSet) else v for v in items]
        else:
            out[key] = value
    return out


def _sort_any(v):
    return v.sort_key() if isinstance(v, JudgmentSet) else (repr(v),)


def _sets(rule, p):
    """The rule's outcome as a frozenset of judgment sets (partial rules give
    a singleton holding their partial set)."""
    out = rule(p)
    if hasattr(out, "sets"):
        return frozenset(out.sets)
    return frozenset({out.judgment})


def _canon(sets):
    return sorted(sets, key=lambda j: j.sort_key())


def _verdict(name, holds, witness=None, vacuous=False):
    return PropertyVerdict(name, holds, None if holds else witness, vacuous=vacuous)


# -- checkers ------------------------------------------------------------------

def check_majority_preservation(rule, p):
    """F(P) = ext(m(P)) whenever m(P) is consistent; vacuous otherwise."""
    name = "majority-preservation"
    mp, ok = majoritarian_set(p)
    if not ok:
        return _verdict(name, True, vacuous=True)
    got = _sets(rule, p)
    want = frozenset(ext(mp, p.agenda))
    return _verdict(name, got == want,
                    {"profile": p, "outcome": _canon(got), "expected": _canon(want)})


def check_unanimity(rule, p, mode="weak"):
    """Unanimously held judgments appear in some (weak) or every (strong) outcome set."""
    if mode not in ("weak", "strong"):
        raise InputError(f"unknown unanimity mode {mode!r}")
    name = f"{mode}-unanimity"
    u = unanimity_set(p)
    sets = _canon(_sets(rule, p))
    test = any if mode == "weak" else all
    for lit in u.literals():
        if not test(lit in j for j in sets):
            return _verdict(name, False, {"profile": p, "mode": mode,
                                          "issue": list(lit), "outcome": sets})
    return _verdict(name, True, vacuous=not u.literals())


def strengthened_literal(p, p_strength):
    """The signed judgment φ for which ``p_strength`` is a φ-strengthening of
    ``p``: one agent changes its verdict on exactly one issue.

    Raises :class:`PreconditionError` when the pair does not have that shape.
    """
    if p.agenda != p_strength.agenda or p.n != p_strength.n:
        raise PreconditionError("a strengthening must keep the agenda and the number of agents")
    changes = [(k, i) for k, (a, b) in enumerate(zip(p.agents, p_strength.agents))
               for i, (x, y) in enumerate(zip(a.verdicts, b.verdicts)) if x != y]
    if len(changes) != 1:
        raise PreconditionError(f"the profiles differ in {len(changes)} judgments, not exactly one")
    k, i = changes[0]
    old, new = p.agents[k].verdicts[i], p_strength.agents[k].verdicts[i]
    if old == 0 or new == 0:
        raise PreconditionError("a strengthening replaces a judgment by its negation")
    return i, new


def check_monotonicity(rule, p, p_strength, issue=None, sign=None):
    """If φ is in every set of F(P), it is in every set of F(P') for the
    φ-strengthening P' of P."""
    name = "monotonicity"
    lit = strengthened_literal(p, p_strength)
    if issue is not None and (issue, sign) != lit:
        i, s = lit
        raise PreconditionError(
            f"the second profile strengthens {p.agenda.literal_text(i, s)}, "
            f"not {p.agenda.literal_text(issue, sign)}")
    before = _sets(rule, p)
    if not all(lit in j for j in before):
        return _verdict(name, True, vacuous=True)
    after = _sets(rule, p_strength)
    return _verdict(name, all(lit in j for j in after),
                    {"profile": p, "strengthened": p_strength, "issue": list(lit),
                     "outcome": _canon(before), "strengthened_outcome": _canon(after)})


def _restricted_sets(rule, p, part):
    part = sorted(part)
    return [lift(j, part, p.agenda.m) for j in _sets(rule, project(p, part))]


def _unions(sets1, sets2):
    return frozenset(JudgmentSet(tuple(a or b for a, b in zip(j1.verdicts, j2.verdicts)))
                     for j1 in sets1 for j2 in sets2)


def check_agenda_separability(rule, p, part1, part2):
    """F(P) is the set of unions of the outcomes on the two independent parts."""
    name = "agenda-separability"
    if not check_independent_partition(p.agenda, part1, part2):
        raise PreconditionError("the parts are not an independent partition")
    s1 = _restricted_sets(rule, p, part1)
    s2 = _restricted_sets(rule, p, part2)
    got = _sets(rule, p)
    want = _unions(s1, s2)
    return _verdict(name, got == want,
                    {"profile": p, "part1": sorted(part1), "part2": sorted(part2),
                     "outcome": _canon(got), "unions": _canon(want)})


def check_oas(rule, p, a1, a2):
    """Overlapping separability; vacuous unless the restricted outcomes all
    agree on the overlap."""
    name = "oas"
    if not check_iod(p.agenda, a1, a2):
        raise PreconditionError("the parts are not an independent overlapping decomposition")
    overlap = sorted(set(a1) & set(a2))
    s1 = _restricted_sets(rule, p, a1)
    s2 = _restricted_sets(rule, p, a2)
    on_overlap = {tuple(j.verdicts[i] for i in overlap) for j in s1 + s2}
    if len(on_overlap) > 1:
        return _verdict(name, True, vacuous=True)
    got = _sets(rule, p)
    want = _unions(s1, s2)
    return _verdict(name, got == want,
                    {"profile": p, "a1": sorted(a1), "a2": sorted(a2),
                     "outcome": _canon(got), "unions": _canon(want)})


def check_reinforcement(rule, p1, p2):
    """F(P1 + P2) = F(P1) ∩ F(P2) when the intersection is non-empty."""
    name = "reinforcement"
    common = _sets(rule, p1) & _sets(rule, p2)
    if not common:
        return _verdict(name, True, vacuous=True)
    got = _sets(rule, sum_profiles(p1, p2))
    return _verdict(name, got == common,
                    {"profile": p1, "profile2": p2, "outcome": _canon(got),
                     "intersection": _canon(common)})


def check_homogeneity(rule, p, k=2):
    """F(kP) = F(P) for the k-fold copy of P."""
    if k < 1:
        raise InputError("homogeneity needs k >= 1")
    name = "homogeneity"
    base = _sets(rule, p)
    got = _sets(rule, p.replace(p.agents * k))
    return _verdict(name, got == base, {"profile": p, "k": k, "outcome": _canon(base),
                                        "scaled_outcome": _canon(got)})


def check_sen(rule, p, subagenda, variant="alpha"):
    """Sen's α (contraction) or β (expansion) for the issues ``subagenda``."""
    if variant not in ("alpha", "beta"):
        raise InputError(f"unknown Sen variant {variant!r}")
    sub = sorted(set(subagenda))
    if not sub or any(not 0 <= i < p.agenda.m for i in sub):
        raise InputError("the sub-agenda must be a non-empty set of issue indices")
    name = f"sen-{variant}"
    full = _canon(_sets(rule, p))
    small = _restricted_sets(rule, p, sub)
    lits = [(i, s) for i in sub for s in (1, -1)]
    witness = {"profile": p, "subagenda": sub, "variant": variant,
               "outcome": full, "restricted_outcome": _canon(small)}
    if variant == "alpha":
        for lit in lits:
            if all(lit in j for j in full) and not all(lit in j for j in small):
                return _verdict(name, False, dict(witness, issue=list(lit)))
        return _verdict(name, True)
    chosen = [lit for lit in lits if all(lit in j for j in small)]
    for l1, l2 in combinations(chosen, 2):
        if any((l1 in j) != (l2 in j) for j in full):
            return _verdict(name, False, dict(witness, issue=list(l1), issue2=list(l2)))
    return _verdict(name, True)


def _agent_orders(n):
    if n <= 5:
        return list(permutations(range(n)))
    orders = [tuple(reversed(range(n)))]
    orders += [tuple(range(k, n)) + tuple(range(k)) for k in range(1, n)]
    return orders


def check_anonymity(rule, p):
    """F(P) does not depend on the order of the agents."""
    name = "anonymity"
    base = _sets(rule, p)
    for order in _agent_orders(p.n):
        q = p.replace([p.agents[k] for k in order])
        got = _sets(rule, q)
        if got != base:
            return _verdict(name, False, {"profile": p, "permuted": q,
                                          "outcome": _canon(base),
                                          "permuted_outcome": _canon(got)})
    return _verdict(name, True)


# -- registry ------------------------------------------------------------------

def _args_none(p):
    yield {}


def _args_strengthenings(p):
    codomain = set(p.agenda.codomain)
    for k, j in enumerate(p.agents):
        for i, v in enumerate(j.verdicts):
            flipped = list(j.verdicts)
            flipped[i] = -v
            new = JudgmentSet(tuple(flipped))
            if new in codomain:
                agents = list(p.agents)
                agents[k] = new
                yield {"p_strength": p.replace(agents)}


def _bipartitions(m):
    for r in range(1, m):
        for part1 in combinations(range(m), r):
            if 0 in part1:
                yield list(part1), [i for i in range(m) if i not in part1]


def _args_partitions(p):
    for part1, part2 in _bipartitions(p.agenda.m):
        if check_independent_partition(p.agenda, part1, part2):
            yield {"part1": part1, "part2": part2}


def _args_iods(p):
    m = p.agenda.m
    subsets = [list(c) for r in range(1, m) for c in combinations(range(m), r)]
    for a1 in subsets:
        for a2 in subsets:
            if a1 < a2 and set(a1) | set(a2) == set(range(m)) and set(a1) & set(a2):
                if check_iod(p.agenda, a1, a2):
                    yield {"a1": a1, "a2": a2}


def _args_homogeneity(p):
    for k in (2, 3):
        yield {"k": k}


def _args_subagendas(p):
    m = p.agenda.m
    for r in range(1, m):
        for sub in combinations(range(m), r):
            yield {"subagenda": list(sub)}


def _args_self_pair(p):
    yield {"p2": p}


# name -> (checker, extra fixed kwargs, per-profile argument generator)
PROPERTIES = {
    "majority-preservation": (check_majority_preservation, {}, _args_none),
    "weak-unanimity": (check_unanimity, {"mode": "weak"}, _args_none),
    "strong-unanimity": (check_unanimity, {"mode": "strong"}, _args_none),
    "monotonicity": (check_monotonicity, {}, _args_strengthenings),
    "agenda-separability": (check_agenda_separability, {}, _args_partitions),
    "oas": (check_oas, {}, _args_iods),
    "reinforcement": (check_reinforcement, {}, _args_self_pair),
    "homogeneity": (check_homogeneity, {}, _args_homogeneity),
    "sen-alpha": (check_sen, {"variant": "alpha"}, _args_subagendas),
    "sen-beta": (check_sen, {"variant": "beta"}, _args_subagendas),
    "anonymity": (check_anonymity, {}, _args_none),
}

_PROFILE_KEYS = {"reinforcement": "p1"}


def _lookup(prop):
    if prop not in PROPERTIES:
        raise InputError(f"unknown property {prop!r}; expected one of {', '.join(PROPERTIES)}")
    return PROPERTIES[prop]


def check_property(rule, prop, p, **kwargs):
    checker, fixed, _ = _lookup(prop)
    key = _PROFILE_KEYS.get(prop, "p")
    return checker(rule, **{key: p}, **fixed, **kwargs)


def replay(rule, verdict):
    """Re-run the checker on a verdict's witness."""
    if verdict.witness is None:
        raise InputError("the verdict has no witness")
    w = verdict.witness
    prop = verdict.property
    kwargs = {
        "monotonicity": lambda: {"p_strength": w["strengthened"]},
        "agenda-separability": lambda: {"part1": w["part1"], "part2": w["part2"]},
        "oas": lambda: {"a1": w["a1"], "a2": w["a2"]},
        "reinforcement": lambda: {"p2": w["profile2"]},
        "homogeneity": lambda: {"k": w["k"]},
        "sen-alpha": lambda: {"subagenda": w["subagenda"]},
        "sen-beta": lambda: {"subagenda": w["subagenda"]},
    }.get(prop, dict)()
    return check_property(rule, prop, w["profile"], **kwargs)


# -- bounded search --------------------------------------------------------------

@dataclass(frozen=True)
class Bounds:
    atoms: int = 3
    issues: int = 4
    agents: int = 3
    random: int = 200

    def describe(self):
        return f"a={self.atoms},m={self.issues},n={self.agents},r={self.random}"


def parse_bounds(text):
    """``"a=3,m=4,n=3,r=200"``; missing keys keep their defaults."""
    if text is None or isinstance(text, Bounds):
        return text or Bounds()
    keys = {"a": "atoms", "m": "issues", "n": "agents", "r": "random"}
    values = {}
    for item in filter(None, (s.strip() for s in text.split(","))):
        k, sep, v = item.partition("=")
        if not sep or k.strip() not in keys:
            raise InputError(f"bad bounds item {item!r}; expected a=, m=, n= or r=")
        try:
            values[keys[k.strip()]] = int(v)
        except ValueError:
            raise InputError(f"bad bounds value in {item!r}") from None
    b = Bounds(**values)
    if min(b.atoms, b.issues, b.agents) < 1 or b.random < 0:
        raise InputError("bounds must be positive")
    return b


# small agendas covering independent, dependent, simple and non-simple cases
_CATALOG = (
    (("p", "q"), ()),
    (("p", "q", "p & q"), ()),
    (("p", "q", "p | q"), ()),
    (("p", "p -> q", "q"), ()),
    (("p", "q", "p xor q"), ()),
    (("p", "q", "d"), ("(p & q) <-> d",)),
    (("p", "q", "r"), ("p | q | r",)),
    (("p & q", "p & r", "q & r"), ()),
    (("p", "q", "p & q", "r"), ()),
    (("p", "q", "r", "p & q"), ("r -> p",)),
    (("p", "q", "p <-> q", "r"), ()),
)


def instance_catalog(bounds):
    """Catalog agendas that fit the bounds, in a fixed order."""
    out = []
    for pre, gamma in _CATALOG:
        agenda = make_agenda(pre, gamma)
        if agenda.m <= bounds.issues and len(agenda.atom_universe) <= bounds.atoms:
            out.append(agenda)
    return out


def _random_formula(rng, names, depth):
    if depth == 0 or rng.random() < 0.3:
        f = Atom(rng.choice(names))
        return Not(f) if rng.random() < 0.2 else f
    op = rng.choice(("and", "or", "implies", "iff", "xor"))
    return Binary(op, _random_formula(rng, names, depth - 1), _random_formula(rng, names, depth - 1))


def _random_agenda(rng, bounds):
    names = ["p", "q", "r", "s", "t", "u"][:bounds.atoms]
    for _ in range(200):
        m = rng.randint(1, bounds.issues)
        pre = [_random_formula(rng, names, 2) for _ in range(m)]
        gamma = [_random_formula(rng, names, 2)] if rng.random() < 0.3 else []
        try:
            agenda = make_agenda([format_formula(f) for f in pre],
                                 [format_formula(g) for g in gamma])
        except InputError:
            continue
        if agenda.codomain:
            return agenda
    return make_agenda(names[:min(bounds.issues, len(names))])


def _exhaustive_profiles(agenda, max_agents):
    cod = agenda.codomain
    for n in range(1, max_agents + 1):
        for combo in combinations_with_replacement(cod, n):
            yield Profile(agenda, combo)


def _count_multisets(c, n_max):
    from math import comb
    return sum(comb(c + n - 1, n) for n in range(1, n_max + 1))


def _check_bounds(bounds):
    caps = current_caps()
    check_cap("atoms bound", bounds.atoms, min(caps.max_atoms, 6))
    check_cap("issues bound", bounds.issues, caps.max_issues)
    check_cap("agents bound", bounds.agents, caps.max_agents)


def _instances(bounds, seed, profiles=(), domain=True):
    """Instances as (label, profile) pairs: supplied profiles, then (with
    ``domain``) every multiset profile over the catalog agendas and seeded
    random ones."""
    out = [(f"input[{k}]", p) for k, p in enumerate(profiles)]
    if not domain:
        return out
    total = 0
    for a, agenda in enumerate(instance_catalog(bounds)):
        total += _count_multisets(len(agenda.codomain), bounds.agents)
        check_cap("search instances", total, MAX_INSTANCES)
        out += [(f"catalog[{a}]", p) for p in _exhaustive_profiles(agenda, bounds.agents)]
    rng = random.Random(seed)
    for r in range(bounds.random):
        agenda = _random_agenda(rng, bounds)
        n = rng.randint(1, bounds.agents)
        cod = agenda.codomain
        out.append((f"random[{r}]", Profile(agenda, tuple(rng.choice(cod) for _ in range(n)))))
    return out


def bounded_instances(bounds=None, seed=None):
    """The (label, profile) stream the bounded searches walk."""
    bounds = parse_bounds(bounds)
    _check_bounds(bounds)
    return _instances(bounds, default_seed() if seed is None else seed)


def _check_instance(rule, prop, label, p, pair_pool):
    """(checked, vacuous, skipped, failing verdict or None) for one profile."""
    checker, fixed, gen = _lookup(prop)
    checked = vacuous = skipped = 0
    if prop == "reinforcement":
        arg_list = [{"p2": q} for q in pair_pool.get(p.agenda, ()) if q.n <= p.n]
    else:
        arg_list = list(gen(p))
    key = _PROFILE_KEYS.get(prop, "p")
    for kwargs in arg_list:
        try:
            v = checker(rule, **{key: p}, **fixed, **kwargs)
        except PreconditionError:
            skipped += 1
            continue
        checked += 1
        vacuous += v.vacuous
        if not v.holds_on_instance:
            return checked, vacuous, skipped, v
    return checked, vacuous, skipped, None


def _scope(bounds, seed, domain):
    return f"{bounds.describe()},seed={seed}" if domain else "supplied profiles only"


def _shards(items, threads):
    size = max(1, -(-len(items) // max(1, threads)))
    return [items[k:k + size] for k in range(0, len(items), size)]


def _run_sharded(fn, items, threads):
    """Apply ``fn`` to shards of ``items``; results come back in item order
    whatever the thread count."""
    threads = threads or default_threads()
    shards = _shards(items, threads)
    if threads <= 1 or len(shards) <= 1:
        return [fn(s) for s in shards]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, shards))


def search_counterexample(rule, prop, bounds=None, seed=None, profiles=(), threads=None,
                          domain=True):
    """First witness against ``prop`` over the bounded instance stream, or a
    passing verdict listing what was searched."""
    bounds = parse_bounds(bounds)
    _check_bounds(bounds)
    _lookup(prop)
    seed = default_seed() if seed is None else seed
    items = _instances(bounds, seed, profiles, domain)
    pair_pool = {}
    if prop == "reinforcement":
        for _, p in items:
            pair_pool.setdefault(p.agenda, []).append(p)

    def work(shard):
        out = []
        for label, p in shard:
            res = _check_instance(rule, prop, label, p, pair_pool)
            out.append((label, res))
            if res[3] is not None:
                break
        return out

    checked = vacuous = skipped = 0
    for shard in _run_sharded(work, items, threads):
        for label, (c, v, s, failing) in shard:
            checked += c
            vacuous += v
            skipped += s
            if failing is not None:
                desc = (f"{_scope(bounds, seed, domain)}; witness at {label} "
                        f"after {checked} checks")
                return PropertyVerdict(failing.property, False, failing.witness, desc)
    desc = (f"{_scope(bounds, seed, domain)}; {len(items)} profiles, {checked} checks, "
            f"{vacuous} vacuous, {skipped} skipped; no witness")
    return PropertyVerdict(prop, True, None, desc)


def compare_rules(rule1, rule2, bounds=None, seed=None, profiles=(), threads=None,
                  domain=True):
    """Classify two rules as ``equal``, ``refines`` (F1 ⊆ F2 everywhere),
    ``refined_by`` or ``different`` over the bounded instance stream."""
    bounds = parse_bounds(bounds)
    _check_bounds(bounds)
    seed = default_seed() if seed is None else seed
    items = _instances(bounds, seed, profiles, domain)

    def work(shard):
        out = []
        for label, p in shard:
            try:
                s1, s2 = _sets(rule1, p), _sets(rule2, p)
            except PreconditionError:
                out.append((label, p, None, None))
                continue
            out.append((label, p, s1, s2))
        return out

    w12 = w21 = None
    skipped = 0
    for shard in _run_sharded(work, items, threads):
        for label, p, s1, s2 in shard:
            if s1 is None:
                skipped += 1
                continue
            if w12 is None and not s1 <= s2:
                w12 = {"at": label, "profile": _profile_json(p),
                       "only_first": [j.signs() for j in _canon(s1 - s2)]}
            if w21 is None and not s2 <= s1:
                w21 = {"at": label, "profile": _profile_json(p),
                       "only_second": [j.signs() for j in _canon(s2 - s1)]}
    if w12 is None and w21 is None:
        relation = "equal"
    elif w12 is None:
        relation = "refines"
    elif w21 is None:
        relation = "refined_by"
    else:
        relation = "different"
    witness = {k: v for k, v in (("first_not_second", w12), ("second_not_first", w21)) if v}
    return {
        "relation": relation,
        "witness": witness or None,
        "search_bounds": (f"{_scope(bounds, seed, domain)}; {len(items)} profiles, "
                          f"{skipped} skipped"),
    }
