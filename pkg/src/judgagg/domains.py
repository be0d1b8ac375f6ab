"""Recognizers for restricted profile domains.

* single-plateaued: some total order of the 2m signed judgments makes every
  agent's accepted judgments a contiguous block;
* single-canyoned: some total order makes every agent's rejected judgments
  (the negations of what it accepts) a contiguous block;
* unidimensionally aligned: some order of the agents puts every agent
  between its two neighbours, ``J[k-1] ∩ J[k+1] ⊆ J[k]``;
* unidimensionally ordered: some order of the agents makes the supporters
  of every signed judgment a contiguous block.

The searches are exhaustive, so sizes are capped (``m <= 8``, ``n <= 8``).
"""

from dataclasses import dataclass
from itertools import permutations

from .config import check_cap, current_caps
from .errors import PreconditionError

__all__ = ["DomainReport", "restricted_domain_report", "contiguous_order",
           "is_single_plateaued", "is_single_canyoned",
           "is_unidimensionally_aligned", "is_unidimensionally_ordered"]

MAX_DOMAIN_ISSUES = 8


def contiguous_order(universe, blocks):
    """An ordering of ``universe`` in which every block is contiguous, or None.

    Backtracking over prefixes; a block is *open* once one of its members is
    placed and *closed* once a non-member follows; placing a member of a
    closed block is a dead end. Failed (placed, states) pairs are memoized.
    """
    universe = list(universe)
    blocks = [frozenset(b) for b in set(map(frozenset, blocks)) if 1 < len(b) < len(universe)]
    blocks.sort(key=lambda b: sorted(b))
    member = {u: [k for k, b in enumerate(blocks) if u in b] for u in universe}
    dead = set()
    order = []

    def step(placed, states):
        if len(order) == len(universe):
            return True
        key = (placed, states)
        if key in dead:
            return False
        for idx, u in enumerate(universe):
            if placed >> idx & 1:
                continue
            new = list(states)
            ok = True
            for k in range(len(blocks)):
                if k in member[u]:
                    if new[k] == 2:
                        ok = False
                        break
                    new[k] = 1
                elif new[k] == 1:
                    new[k] = 2
            if not ok:
                continue
            order.append(u)
            if step(placed | (1 << idx), tuple(new)):
                return True
            order.pop()
        dead.add(key)
        return False

    if step(0, (0,) * len(blocks)):
        return list(order)
    return None


def _literal_universe(m):
    return [(i, s) for i in range(m) for s in (1, -1)]


def _check(p):
    if not p.strict:
        raise PreconditionError("restricted-domain checks need a strict-mode profile")
    check_cap("issues", p.agenda.m, MAX_DOMAIN_ISSUES)
    check_cap("agents", p.n, current_caps().max_agents)


def is_single_plateaued(p):
    _check(p)
    return contiguous_order(_literal_universe(p.agenda.m), [j.literals() for j in p.agents])


def is_single_canyoned(p):
    _check(p)
    rejected = [[(i, -s) for i, s in j.literals()] for j in p.agents]
    return contiguous_order(_literal_universe(p.agenda.m), rejected)


def _between(a, b, c):
    # b lies between a and c: whatever a and c share, b has as well
    return all(x != z or y == x for x, y, z in zip(a.verdicts, b.verdicts, c.verdicts))


def is_unidimensionally_aligned(p):
    _check(p)
    for perm in permutations(range(p.n)):
        seq = [p.agents[k] for k in perm]
        if all(_between(seq[k - 1], seq[k], seq[k + 1]) for k in range(1, len(seq) - 1)):
            return list(perm)
    return None


def is_unidimensionally_ordered(p):
    _check(p)
    lits = _literal_universe(p.agenda.m)
    for perm in permutations(range(p.n)):
        seq = [p.agents[k] for k in perm]
        good = True
        for lit in lits:
            hits = [k for k, j in enumerate(seq) if lit in j]
            if hits and hits[-1] - hits[0] + 1 != len(hits):
                good = False
                break
        if good:
            return list(perm)
    return None


@dataclass(frozen=True)
class DomainReport:
    single_plateaued: object
    single_canyoned: object
    unidimensionally_aligned: object
    unidimensionally_ordered: object

    def to_json(self, agenda):
        def lits(order):
            return None if order is None else [agenda.literal_text(i, s) for i, s in order]

        def entry(order, render):
            return {"holds": order is not None, "order": render(order)}

        return {
            "single_plateaued": entry(self.single_plateaued, lits),
            "single_canyoned": entry(self.single_canyoned, lits),
            "unidimensionally_aligned": entry(self.unidimensionally_aligned, lambda o: o),
            "unidimensionally_ordered": entry(self.unidimensionally_ordered, lambda o: o),
        }


def restricted_domain_report(p):
    """Membership in the four restricted domains, each with a witness order
    (``None`` when the profile is not in the domain)."""
    return DomainReport(
        single_plateaued=is_single_plateaued(p),
        single_canyoned=is_single_canyoned(p),
        unidimensionally_aligned=is_unidimensionally_aligned(p),
        unidimensionally_ordered=is_unidimensionally_ordered(p),
    )
