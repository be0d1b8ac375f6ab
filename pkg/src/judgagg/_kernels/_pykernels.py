"""Pure-Python hot kernels (reference implementation and fallback).

Conventions shared with the compiled twin ``_ckernels``:

* a complete judgment set over ``m`` issues is an int whose bit ``i`` is set
  iff issue ``i`` is accepted;
* model sets are Python ints used as bitsets over valuations;
* results never depend on iteration order beyond what is documented.
"""


def enumerate_patterns(pos_masks, neg_masks, base):
    """All accept patterns whose literal masks intersect ``base``.

    Patterns come out in canonical order: issue 0 is the most significant
    position and rejection sorts before acceptance.
    """
    m = len(pos_masks)
    out = []
    if not base:
        return out

    def dfs(i, acc, pattern):
        if i == m:
            out.append(pattern)
            return
        a = acc & neg_masks[i]
        if a:
            dfs(i + 1, a, pattern)
        a = acc & pos_masks[i]
        if a:
            dfs(i + 1, a, pattern | (1 << i))

    dfs(0, base, 0)
    return out


def hamming_rows(cands, agents):
    """Row ``r`` holds the distances from agent ``r`` to each candidate.

    ``agents`` holds ``(accept_bits, defined_bits)`` pairs; only issues the
    agent has a verdict on are counted.
    """
    return [[((c ^ a) & d).bit_count() for c in cands] for a, d in agents]


def support_values(cands, pos_counts, neg_counts):
    """Summed support of each candidate: sum over issues of N(literal)."""
    base = sum(neg_counts)
    gain = [p - q for p, q in zip(pos_counts, neg_counts)]
    out = []
    for c in cands:
        v = base
        i = 0
        while c:
            if c & 1:
                v += gain[i]
            c >>= 1
            i += 1
        out.append(v)
    return out


def full_search(dist, cand_bits, m, use_max):
    """Nearest profiles whose issue-wise majority extends to a candidate.

    ``dist[r][c]`` is the distance from agent ``r`` to candidate ``c``. Every
    assignment of one candidate per agent is a profile; its majority is
    consistent iff some candidate agrees with all strict-majority verdicts.
    Returns ``(best_distance, ext_mask)`` where bit ``c`` of ``ext_mask`` is
    set iff candidate ``c`` extends the majority of some nearest profile.
    """
    n = len(dist)
    C = len(cand_bits)
    orders = [sorted(range(C), key=lambda c, row=row: (row[c], c)) for row in dist]
    # lower bounds for the remaining agents
    mins = [min(row) for row in dist]
    rest = [0] * (n + 1)
    for r in range(n - 1, -1, -1):
        rest[r] = max(rest[r + 1], mins[r]) if use_max else rest[r + 1] + mins[r]
    counts = [0] * m
    best = [None, 0]

    def leaf(total):
        acc = 0
        rej = 0
        for i in range(m):
            if 2 * counts[i] > n:
                acc |= 1 << i
            elif 2 * (n - counts[i]) > n:
                rej |= 1 << i
        ext = 0
        for c in range(C):
            b = cand_bits[c]
            if b & acc == acc and not b & rej:
                ext |= 1 << c
        if not ext:
            return
        if best[0] is None or total < best[0]:
            best[0] = total
            best[1] = ext
        elif total == best[0]:
            best[1] |= ext

    def dfs(r, total):
        if r == n:
            leaf(total)
            return
        for c in orders[r]:
            d = dist[r][c]
            t = max(total, d) if use_max else total + d
            bound = max(t, rest[r + 1]) if use_max else t + rest[r + 1]
            if best[0] is not None and bound > best[0]:
                break  # candidates are sorted by distance
            b = cand_bits[c]
            for i in range(m):
                if b >> i & 1:
                    counts[i] += 1
            dfs(r + 1, t)
            for i in range(m):
                if b >> i & 1:
                    counts[i] -= 1

    if n == 0:
        return 0, (1 << C) - 1
    dfs(0, 0)
    return best[0], best[1]
