"""Distances between judgment sets, norms, profile distances and scores."""

from collections import deque
from dataclasses import dataclass, field

from . import _kernels
from .agenda import as_sign
from .errors import InputError, PreconditionError

__all__ = [
    "DISTANCES", "NORMS", "d_drastic", "d_hamming", "AgendaGraph",
    "build_agenda_graph", "d_geodesic", "apply_norm", "profile_distance",
    "score_simple", "score_reversal", "reversal_scores", "distance_matrix",
    "similarity",
]

DISTANCES = ("drastic", "hamming", "geodesic")
NORMS = ("sum", "max")


def _same_width(j1, j2):
    if j1.m != j2.m:
        raise InputError("judgment sets are over different agendas")


def d_drastic(j1, j2):
    _same_width(j1, j2)
    return 0 if j1 == j2 else 1


def d_hamming(j1, j2):
    """Number of issues on which two complete judgment sets disagree."""
    _same_width(j1, j2)
    if not (j1.is_complete and j2.is_complete):
        raise InputError("Hamming distance needs complete judgment sets")
    return sum(1 for a, b in zip(j1.verdicts, j2.verdicts) if a != b)


@dataclass
class AgendaGraph:
    """Graph on the codomain; J and J'' are adjacent iff no third rational set
    lies between them (contains every judgment they share)."""

    vertices: tuple
    edges: frozenset
    _adj: dict = field(default_factory=dict, repr=False)
    _bfs: dict = field(default_factory=dict, repr=False)

    def neighbours(self, j):
        return self._adj[j]

    def distances_from(self, j):
        if j not in self._adj:
            raise InputError(f"{j.signs()} is not a rational judgment set of this agenda")
        if j not in self._bfs:
            dist = {j: 0}
            queue = deque([j])
            while queue:
                u = queue.popleft()
                for w in self._adj[u]:
                    if w not in dist:
                        dist[w] = dist[u] + 1
                        queue.append(w)
            self._bfs[j] = dist
        return self._bfs[j]

    def is_connected(self):
        return not self.vertices or len(self.distances_from(self.vertices[0])) == len(self.vertices)


def build_agenda_graph(agenda):
    verts = agenda.codomain
    m = agenda.m
    full = (1 << m) - 1
    bits = [v.accept_bits for v in verts]
    edges = set()
    adj = {v: [] for v in verts}
    for a in range(len(verts)):
        for c in range(a + 1, len(verts)):
            agree = full & ~(bits[a] ^ bits[c])
            between = any(
                b != a and b != c and not (bits[b] ^ bits[a]) & agree
                for b in range(len(verts))
            )
            if not between:
                edges.add(frozenset((verts[a], verts[c])))
                adj[verts[a]].append(verts[c])
                adj[verts[c]].append(verts[a])
    return AgendaGraph(verts, frozenset(edges), adj)


def d_geodesic(j1, j2, graph):
    """Length of a shortest path between two rational sets in the agenda graph."""
    _same_width(j1, j2)
    dist = graph.distances_from(j1)
    if j2 not in graph._adj:
        raise InputError(f"{j2.signs()} is not a rational judgment set of this agenda")
    if j2 not in dist:
        raise PreconditionError(f"{j1.signs()} and {j2.signs()} are in different components")
    return dist[j2]


def apply_norm(values, norm):
    values = list(values)
    if norm == "sum":
        return sum(values)
    if norm == "max":
        return max(values, default=0)
    raise InputError(f"unknown norm {norm!r}; expected one of {NORMS}")


def distance_matrix(agenda, agents, candidates, d, graph=None):
    """``rows[r][c]``: distance from ``agents[r]`` to ``candidates[c]``.

    Hamming counts disagreements only on the issues the agent judged, which
    lets partial agents be compared against complete candidates.
    """
    if d == "hamming":
        return _kernels.hamming_rows([c.accept_bits for c in candidates],
                                     [(a.accept_bits, a.defined_bits) for a in agents])
    if d == "drastic":
        return [[0 if a == c else 1 for c in candidates] for a in agents]
    if d == "geodesic":
        graph = graph or build_agenda_graph(agenda)
        return [[d_geodesic(a, c, graph) for c in candidates] for a in agents]
    raise InputError(f"unknown distance {d!r}; expected one of {DISTANCES}")


def profile_distance(p1, p2, d, norm):
    """η(d(J1, J1'), ..., d(Jn, Jn')) for two profiles of equal size."""
    if p1.agenda != p2.agenda:
        raise InputError("profiles are over different agendas")
    if p1.n != p2.n:
        raise InputError("profiles have different numbers of agents")
    if d == "hamming":
        per = [d_hamming(a, b) for a, b in zip(p1.agents, p2.agents)]
    elif d == "drastic":
        per = [d_drastic(a, b) for a, b in zip(p1.agents, p2.agents)]
    elif d == "geodesic":
        graph = build_agenda_graph(p1.agenda)
        per = [d_geodesic(a, b, graph) for a, b in zip(p1.agents, p2.agents)]
    else:
        raise InputError(f"unknown distance {d!r}; expected one of {DISTANCES}")
    return apply_norm(per, norm)


def score_simple(literal, j):
    """1 if the signed judgment is in ``j``, else 0."""
    return 1 if literal in j else 0


def reversal_scores(j, agenda):
    """Per-issue reversal scores of the rational set ``j``.

    Entry ``i`` is the smallest Hamming distance from ``j`` to a rational set
    that reverses ``j``'s verdict on issue ``i``.
    """
    if not (j.is_complete and agenda.consistent(j)):
        raise PreconditionError(f"{j.signs()} is not rational")
    cands = agenda.codomain
    row = _kernels.hamming_rows([c.accept_bits for c in cands],
                                [(j.accept_bits, j.defined_bits)])[0]
    out = []
    for i in range(agenda.m):
        best = None
        for c, dist in zip(cands, row):
            if c.verdicts[i] != j.verdicts[i] and (best is None or dist < best):
                best = dist
        if best is None:
            raise PreconditionError(f"no rational set reverses issue {i}")
        out.append(best)
    return tuple(out)


def score_reversal(literal, j, agenda):
    """s_rev(φ, J): 0 when φ is not in J, otherwise the minimal number of
    verdict changes that reach a rational set containing the negation of φ."""
    i, s = literal
    if j.verdicts[i] != as_sign(s):
        return 0
    return reversal_scores(j, agenda)[i]


def similarity(j1, j2, score, agenda=None):
    """Σ_{φ ∈ J1 ∩ J2} s(φ, J1)."""
    if score == "simple":
        return sum(1 for a, b in zip(j1.verdicts, j2.verdicts) if a and a == b)
    if score == "reversal":
        rev = reversal_scores(j1, agenda)
        return sum(r for r, a, b in zip(rev, j1.verdicts, j2.verdicts) if a == b)
    raise InputError(f"unknown scoring {score!r}")
