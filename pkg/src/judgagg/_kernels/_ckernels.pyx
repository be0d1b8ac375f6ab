# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels. Signatures and results match ``_pykernels``."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free
from libc.string cimport memset


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil


cdef inline int popcount64(uint64_t x) nogil:
    return __builtin_popcountll(x)


cdef void _to_words(object value, uint64_t* dst, Py_ssize_t nwords):
    cdef bytes raw = (<object>value).to_bytes(nwords * 8, "little")
    cdef const unsigned char* p = raw
    cdef Py_ssize_t w, b
    cdef uint64_t acc
    for w in range(nwords):
        acc = 0
        for b in range(8):
            acc |= (<uint64_t>p[w * 8 + b]) << (8 * b)
        dst[w] = acc


cdef bint _and_into(const uint64_t* a, const uint64_t* b, uint64_t* dst,
                    Py_ssize_t nwords) nogil:
    cdef Py_ssize_t w
    cdef uint64_t any_bits = 0
    for w in range(nwords):
        dst[w] = a[w] & b[w]
        any_bits |= dst[w]
    return any_bits != 0


cdef void _dfs(Py_ssize_t i, Py_ssize_t m, Py_ssize_t nwords, uint64_t* stack,
               const uint64_t* pos, const uint64_t* neg, uint64_t pattern,
               list out):
    if i == m:
        out.append(pattern)
        return
    cdef uint64_t* cur = stack + i * nwords
    cdef uint64_t* nxt = stack + (i + 1) * nwords
    if _and_into(cur, neg + i * nwords, nxt, nwords):
        _dfs(i + 1, m, nwords, stack, pos, neg, pattern, out)
    if _and_into(cur, pos + i * nwords, nxt, nwords):
        _dfs(i + 1, m, nwords, stack, pos, neg, pattern | ((<uint64_t>1) << i), out)


def enumerate_patterns(pos_masks, neg_masks, base):
    cdef Py_ssize_t m = len(pos_masks)
    out = []
    if not base:
        return out
    if m > 63:
        from . import _pykernels
        return _pykernels.enumerate_patterns(pos_masks, neg_masks, base)
    width = max([base.bit_length()] + [x.bit_length() for x in pos_masks]
                + [x.bit_length() for x in neg_masks])
    cdef Py_ssize_t nwords = max(1, (width + 63) // 64)
    cdef uint64_t* pos = <uint64_t*>malloc(max(1, m) * nwords * sizeof(uint64_t))
    cdef uint64_t* neg = <uint64_t*>malloc(max(1, m) * nwords * sizeof(uint64_t))
    cdef uint64_t* stack = <uint64_t*>malloc((m + 1) * nwords * sizeof(uint64_t))
    cdef Py_ssize_t i
    if pos == NULL or neg == NULL or stack == NULL:
        free(pos); free(neg); free(stack)
        raise MemoryError()
    try:
        for i in range(m):
            _to_words(pos_masks[i], pos + i * nwords, nwords)
            _to_words(neg_masks[i], neg + i * nwords, nwords)
        _to_words(base, stack, nwords)
        _dfs(0, m, nwords, stack, pos, neg, 0, out)
    finally:
        free(pos); free(neg); free(stack)
    return out


def hamming_rows(cands, agents):
    cdef Py_ssize_t C = len(cands), r, c
    cdef uint64_t a, d
    cdef uint64_t* cb = <uint64_t*>malloc(max(1, C) * sizeof(uint64_t))
    if cb == NULL:
        raise MemoryError()
    rows = []
    try:
        for c in range(C):
            cb[c] = cands[c]
        for pair in agents:
            a = pair[0]
            d = pair[1]
            row = [0] * C
            for c in range(C):
                row[c] = popcount64((cb[c] ^ a) & d)
            rows.append(row)
    finally:
        free(cb)
    return rows


def support_values(cands, pos_counts, neg_counts):
    cdef Py_ssize_t m = len(pos_counts), i
    cdef long long base = 0
    cdef long long v
    cdef uint64_t c
    cdef long long* gain = <long long*>malloc(max(1, m) * sizeof(long long))
    if gain == NULL:
        raise MemoryError()
    out = []
    try:
        for i in range(m):
            base += neg_counts[i]
            gain[i] = pos_counts[i] - neg_counts[i]
        for cand in cands:
            c = cand
            v = base
            i = 0
            while c:
                if c & 1:
                    v += gain[i]
                c >>= 1
                i += 1
            out.append(v)
    finally:
        free(gain)
    return out


cdef struct FullState:
    Py_ssize_t n
    Py_ssize_t C
    Py_ssize_t m
    bint use_max
    long long* dist      # n x C
    int* order           # n x C, candidates sorted by distance
    long long* rest      # n + 1
    uint64_t* cand
    int* counts          # m
    bint found
    long long best
    uint64_t ext


cdef void _full_leaf(FullState* s, long long total) nogil:
    cdef uint64_t acc = 0, rej = 0, ext = 0, b
    cdef Py_ssize_t i, c
    for i in range(s.m):
        if 2 * s.counts[i] > s.n:
            acc |= (<uint64_t>1) << i
        elif 2 * (s.n - s.counts[i]) > s.n:
            rej |= (<uint64_t>1) << i
    for c in range(s.C):
        b = s.cand[c]
        if (b & acc) == acc and (b & rej) == 0:
            ext |= (<uint64_t>1) << c
    if ext == 0:
        return
    if not s.found or total < s.best:
        s.found = True
        s.best = total
        s.ext = ext
    elif total == s.best:
        s.ext |= ext


cdef void _full_dfs(FullState* s, Py_ssize_t r, long long total) nogil:
    cdef Py_ssize_t k, c, i
    cdef long long d, t, bound
    cdef uint64_t b
    if r == s.n:
        _full_leaf(s, total)
        return
    for k in range(s.C):
        c = s.order[r * s.C + k]
        d = s.dist[r * s.C + c]
        if s.use_max:
            t = total if total > d else d
            bound = t if t > s.rest[r + 1] else s.rest[r + 1]
        else:
            t = total + d
            bound = t + s.rest[r + 1]
        if s.found and bound > s.best:
            break
        b = s.cand[c]
        for i in range(s.m):
            if (b >> i) & 1:
                s.counts[i] += 1
        _full_dfs(s, r + 1, t)
        for i in range(s.m):
            if (b >> i) & 1:
                s.counts[i] -= 1


def full_search(dist, cand_bits, m, use_max):
    cdef Py_ssize_t n = len(dist), C = len(cand_bits), r, c
    if n == 0:
        return 0, (1 << <object>C) - 1
    if C > 64 or m > 64:
        from . import _pykernels
        return _pykernels.full_search(dist, cand_bits, m, use_max)
    cdef FullState s
    s.n = n
    s.C = C
    s.m = m
    s.use_max = bool(use_max)
    s.found = False
    s.best = 0
    s.ext = 0
    s.dist = <long long*>malloc(n * C * sizeof(long long))
    s.order = <int*>malloc(n * C * sizeof(int))
    s.rest = <long long*>malloc((n + 1) * sizeof(long long))
    s.cand = <uint64_t*>malloc(C * sizeof(uint64_t))
    s.counts = <int*>malloc(max(1, m) * sizeof(int))
    if (s.dist == NULL or s.order == NULL or s.rest == NULL or s.cand == NULL
            or s.counts == NULL):
        free(s.dist); free(s.order); free(s.rest); free(s.cand); free(s.counts)
        raise MemoryError()
    try:
        memset(s.counts, 0, max(1, m) * sizeof(int))
        for c in range(C):
            s.cand[c] = cand_bits[c]
        mins = []
        for r in range(n):
            row = dist[r]
            ordered = sorted(range(C), key=lambda j, row=row: (row[j], j))
            for c in range(C):
                s.dist[r * C + c] = row[c]
                s.order[r * C + c] = ordered[c]
            mins.append(min(row))
        s.rest[n] = 0
        for r in range(n - 1, -1, -1):
            if s.use_max:
                s.rest[r] = max(s.rest[r + 1], mins[r])
            else:
                s.rest[r] = s.rest[r + 1] + mins[r]
        with nogil:
            _full_dfs(&s, 0, 0)
        if not s.found:
            return None, 0
        return int(s.best), int(s.ext)
    finally:
        free(s.dist); free(s.order); free(s.rest); free(s.cand); free(s.counts)
