"""Slow, obviously-correct reference implementations used by the tests.

Everything here works from truth tables and explicit enumeration; none of
it goes through the bitmask machinery or the compiled kernels.
"""

from itertools import combinations, permutations, product

from judgagg.agenda import JudgmentSet
from judgagg.logic import Not, atoms, evaluate


def satisfiable(formulas):
    formulas = list(formulas)
    names = sorted(atoms(formulas))
    for bits in product((False, True), repeat=len(names)):
        v = dict(zip(names, bits))
        if all(evaluate(f, v) for f in formulas):
            return True
    return False


def literal(agenda, i, s):
    f = agenda.pre_agenda[i]
    return f if s == 1 else Not(f)


def consistent(agenda, verdicts):
    lits = [literal(agenda, i, s) for i, s in enumerate(verdicts) if s]
    return satisfiable(lits + list(agenda.constraints))


def codomain(agenda):
    return sorted((JudgmentSet(v) for v in product((1, -1), repeat=agenda.m)
                   if consistent(agenda, v)), key=lambda j: j.sort_key())


def ext(agenda, verdicts):
    return {J for J in codomain(agenda)
            if all(a == 0 or a == b for a, b in zip(verdicts, J.verdicts))}


def supports(p):
    m = p.agenda.m
    pos = [sum(1 for j in p.agents if j.verdicts[i] == 1) for i in range(m)]
    neg = [sum(1 for j in p.agents if j.verdicts[i] == -1) for i in range(m)]
    return pos, neg


def majority(p):
    pos, neg = supports(p)
    n = p.n
    return tuple(1 if 2 * a > n else -1 if 2 * r > n else 0 for a, r in zip(pos, neg))


def _from_lits(m, lits):
    v = [0] * m
    for i, s in lits:
        v[i] = s
    return tuple(v)


def max_consistent(agenda, verdicts):
    lits = [(i, s) for i, s in enumerate(verdicts) if s]
    good = [frozenset(c) for r in range(len(lits) + 1) for c in combinations(lits, r)
            if consistent(agenda, _from_lits(agenda.m, c))]
    return [s for s in good if not any(s < t for t in good)]


def mc(p):
    out = set()
    for s in max_consistent(p.agenda, majority(p)):
        out |= ext(p.agenda, _from_lits(p.agenda.m, s))
    return out


def mcc(p):
    subs = max_consistent(p.agenda, majority(p))
    top = max(len(s) for s in subs)
    out = set()
    for s in subs:
        if len(s) == top:
            out |= ext(p.agenda, _from_lits(p.agenda.m, s))
    return out


def med_value(p, J):
    pos, neg = supports(p)
    return sum(pos[i] if v == 1 else neg[i] for i, v in enumerate(J.verdicts))


def med(p):
    cod = codomain(p.agenda)
    best = max(med_value(p, J) for J in cod)
    return {J for J in cod if med_value(p, J) == best}


def hamming(a, b):
    return sum(1 for x, y in zip(a.verdicts, b.verdicts) if x and x != y)


def dist(p, norm="sum"):
    eta = sum if norm == "sum" else max
    cod = codomain(p.agenda)
    vals = {J: eta(hamming(a, J) for a in p.agents) for J in cod}
    best = min(vals.values())
    return {J for J, v in vals.items() if v == best}


def young(p):
    for r in range(p.n):
        out = set()
        for keep in combinations(range(p.n), p.n - r):
            q = p.replace([p.agents[k] for k in keep])
            mp = majority(q)
            if consistent(p.agenda, mp):
                out |= ext(p.agenda, mp)
        if out:
            return r, out
    raise AssertionError("removing all but one agent always works")


def ra(p):
    """Greedy over every order of the signed judgments that sorts them by
    non-increasing support. Ties are explored in every order; the search is
    memoised on (accepted so far, judgments left in the tie block)."""
    pos, neg = supports(p)
    m = p.agenda.m
    sup = {(i, 1): pos[i] for i in range(m)}
    sup.update({(i, -1): neg[i] for i in range(m)})
    levels = sorted(set(sup.values()), reverse=True)
    blocks = [frozenset(l for l in sup if sup[l] == k) for k in levels]
    seen = set()
    finals = set()

    def walk(acc, b, left):
        if (acc, b, left) in seen:
            return
        seen.add((acc, b, left))
        if not left:
            if b + 1 == len(blocks):
                finals.add(acc)
            else:
                walk(acc, b + 1, blocks[b + 1])
            return
        for lit in left:
            trial = acc | {lit}
            ok = (lit[0], -lit[1]) not in acc and consistent(p.agenda, _from_lits(m, trial))
            nxt = trial if ok else acc
            walk(nxt, b, left - {lit})

    walk(frozenset(), 0, blocks[0])
    return {JudgmentSet(_from_lits(m, acc)) for acc in finals}


def leximax(p):
    pos, neg = supports(p)
    n = p.n
    cod = codomain(p.agenda)

    def vector(J):
        per = [pos[i] if v == 1 else neg[i] for i, v in enumerate(J.verdicts)]
        return tuple(sum(1 for x in per if x == k) for k in range(n, n // 2, -1))

    best = max(vector(J) for J in cod)
    return {J for J in cod if vector(J) == best}


def reversal_score(agenda, J, i):
    return min(hamming(J, K) for K in codomain(agenda) if K.verdicts[i] != J.verdicts[i])


def full(p, norm="sum"):
    """Extensions of m(P') over the nearest profiles P' of rational sets whose
    majority is consistent (Hamming distance, agent by agent)."""
    eta = sum if norm == "sum" else max
    cod = codomain(p.agenda)
    best, out = None, set()
    for choice in product(cod, repeat=p.n):
        q = p.replace(choice)
        mp = majority(q)
        if not consistent(p.agenda, mp):
            continue
        d = eta(hamming(a, b) for a, b in zip(p.agents, choice))
        if best is None or d < best:
            best, out = d, set(ext(p.agenda, mp))
        elif d == best:
            out |= ext(p.agenda, mp)
    return out
