"""Automata and st-graph data model, preprocessing and run counting."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Transition = tuple[int, int, int]
Edge = tuple[int, int]


@dataclass(frozen=True)
class Nfa:
    num_states: int
    alphabet_size: int
    transitions: frozenset[Transition]
    initial: frozenset[int]
    final: frozenset[int]

    def __post_init__(self):
        object.__setattr__(self, "transitions", frozenset(self.transitions))
        object.__setattr__(self, "initial", frozenset(self.initial))
        object.__setattr__(self, "final", frozenset(self.final))
        n, k = self.num_states, self.alphabet_size
        if n < 0 or k < 0:
            raise ValueError("negative size")
        for p, a, q in self.transitions:
            if not (0 <= p < n and 0 <= q < n):
                raise ValueError(f"state out of range in {(p, a, q)}")
            if not 0 <= a < k:
                raise ValueError(f"symbol out of range in {(p, a, q)}")
        for q in self.initial | self.final:
            if not 0 <= q < n:
                raise ValueError(f"state {q} out of range")

    @cached_property
    def delta(self) -> list[dict[int, list[int]]]:
        """delta[p][a] -> sorted successor list."""
        out: list[dict[int, list[int]]] = [{} for _ in range(self.num_states)]
        for p, a, q in sorted(self.transitions):
            out[p].setdefault(a, []).append(q)
        return out

    @property
    def size(self) -> int:
        return self.num_states + len(self.transitions)

    def is_deterministic(self) -> bool:
        if len(self.initial) > 1:
            return False
        return all(len(qs) == 1 for row in self.delta for qs in row.values())

    def accepts(self, word: Sequence[int]) -> bool:
        cur = set(self.initial)
        for a in word:
            cur = {q for p in cur for q in self.delta[p].get(a, ())}
            if not cur:
                return False
        return bool(cur & self.final)

    def is_run(self, states: Sequence[int], word: Sequence[int]) -> bool:
        """True iff `states` is an accepting run on `word`."""
        if len(states) != len(word) + 1:
            return False
        if states[0] not in self.initial or states[-1] not in self.final:
            return False
        return self.is_path(states, word)

    def is_path(self, states: Sequence[int], word: Sequence[int]) -> bool:
        if len(states) != len(word) + 1:
            return False
        return all((states[i], a, states[i + 1]) in self.transitions
                   for i, a in enumerate(word))


@dataclass(frozen=True)
class WeightedAutomaton:
    nfa: Nfa
    weight: Mapping[Transition, int]

    def __post_init__(self):
        missing = self.nfa.transitions - set(self.weight)
        if missing:
            raise ValueError(f"weight missing for {min(missing)}")

    def path_weight(self, states: Sequence[int], word: Sequence[int]) -> int:
        return sum(self.weight[(states[i], a, states[i + 1])]
                   for i, a in enumerate(word))


@dataclass(frozen=True)
class StGraph:
    num_vertices: int
    edges: frozenset[Edge]
    s: int
    t: int
    weight: Mapping[Edge, int] | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "edges", frozenset(self.edges))
        n = self.num_vertices
        if not (0 <= self.s < n and 0 <= self.t < n):
            raise ValueError("s or t out of range")
        for u, v in self.edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {(u, v)} out of range")
        if self.weight is not None:
            missing = self.edges - set(self.weight)
            if missing:
                raise ValueError(f"weight missing for {min(missing)}")

    @cached_property
    def succ(self) -> list[list[int]]:
        return adjacency(self.num_vertices, self.edges)

    @cached_property
    def pred(self) -> list[list[int]]:
        return adjacency(self.num_vertices, ((v, u) for u, v in self.edges))

    def is_walk(self, walk: Sequence[int]) -> bool:
        return len(walk) > 0 and all((walk[i], walk[i + 1]) in self.edges
                                     for i in range(len(walk) - 1))

    def is_st_walk(self, walk: Sequence[int]) -> bool:
        return self.is_walk(walk) and walk[0] == self.s and walk[-1] == self.t

    def walk_weight(self, walk: Sequence[int]) -> int:
        assert self.weight is not None
        return sum(self.weight[(walk[i], walk[i + 1])] for i in range(len(walk) - 1))

    def to_nfa(self) -> Nfa:
        """The unary automaton whose runs are the st-walks."""
        return Nfa(self.num_vertices, 1, frozenset((u, 0, v) for u, v in self.edges),
                   frozenset({self.s}), frozenset({self.t}))

    def to_weighted_nfa(self) -> WeightedAutomaton:
        a = self.to_nfa()
        w = self.weight or {}
        return WeightedAutomaton(a, {(u, 0, v): w.get((u, v), 0) for u, v in self.edges})


# ----------------------------------------------------------------- graph utils

def adjacency(n: int, edges: Iterable[Edge]) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
    for row in adj:
        row.sort()
    return adj


def reachable(adj: Sequence[Sequence[int]], sources: Iterable[int]) -> list[bool]:
    seen = [False] * len(adj)
    stack = []
    for x in sources:
        if not seen[x]:
            seen[x] = True
            stack.append(x)
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if not seen[v]:
                seen[v] = True
                stack.append(v)
    return seen


def bfs_path(adj: Sequence[Sequence[int]], sources: Iterable[int], targets) -> list[int] | None:
    """Shortest path (vertex list) from any source to any vertex in `targets`."""
    parent = {}
    queue = deque()
    for x in sources:
        if x not in parent:
            parent[x] = -1
            queue.append(x)
    while queue:
        u = queue.popleft()
        if u in targets:
            path = [u]
            while parent[path[-1]] != -1:
                path.append(parent[path[-1]])
            return path[::-1]
        for v in adj[u]:
            if v not in parent:
                parent[v] = u
                queue.append(v)
    return None


def tarjan_scc(n: int, adj: Sequence[Sequence[int]]) -> tuple[list[int], int]:
    """Iterative Tarjan. Returns (comp, count); component ids come out in
    reverse topological order of the condensation (sinks first)."""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    comp = [-1] * n
    stack: list[int] = []
    counter = 0
    ncomp = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = adj[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w] and index[w] < low[v]:
                    low[v] = index[w]
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
            if low[v] == index[v]:
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp[w] = ncomp
                    if w == v:
                        break
                ncomp += 1
    return comp, ncomp


# ------------------------------------------------------------- preprocessing

def trim(a: Nfa) -> tuple[Nfa, list[int]]:
    """Restrict to useful states. Returns the trimmed automaton and
    `origin`, where origin[new_id] is the state id in `a`."""
    fwd = adjacency(a.num_states, ((p, q) for p, _, q in a.transitions))
    bwd = adjacency(a.num_states, ((q, p) for p, _, q in a.transitions))
    r1 = reachable(fwd, a.initial)
    r2 = reachable(bwd, a.final)
    origin = [q for q in range(a.num_states) if r1[q] and r2[q]]
    new_id = {q: i for i, q in enumerate(origin)}
    trans = frozenset((new_id[p], c, new_id[q]) for p, c, q in a.transitions
                      if p in new_id and q in new_id)
    return Nfa(len(origin), a.alphabet_size, trans,
               frozenset(new_id[q] for q in a.initial if q in new_id),
               frozenset(new_id[q] for q in a.final if q in new_id)), origin


def trim_weighted(w: WeightedAutomaton) -> tuple[WeightedAutomaton, list[int]]:
    t, origin = trim(w.nfa)
    weight = {(p, a, q): w.weight[(origin[p], a, origin[q])] for p, a, q in t.transitions}
    return WeightedAutomaton(t, weight), origin


def trim_graph(g: StGraph) -> tuple[StGraph | None, list[int]]:
    """Restrict to vertices on some st-walk. Returns (None, []) when t is
    unreachable from s."""
    r1 = reachable(g.succ, [g.s])
    r2 = reachable(g.pred, [g.t])
    origin = [v for v in range(g.num_vertices) if r1[v] and r2[v]]
    if not origin:
        return None, []
    if len(origin) == g.num_vertices:
        return g, origin
    new_id = {v: i for i, v in enumerate(origin)}
    edges = frozenset((new_id[u], new_id[v]) for u, v in g.edges
                      if u in new_id and v in new_id)
    weight = None
    if g.weight is not None:
        weight = {(new_id[u], new_id[v]): g.weight[(u, v)] for u, v in g.edges
                  if u in new_id and v in new_id}
    return StGraph(len(origin), edges, new_id[g.s], new_id[g.t], weight), origin


def framing(a: Nfa) -> tuple[int, int]:
    """Number of padding letters (symbol 0) that `normalize` puts in front
    of and behind each accepted word."""
    return int(len(a.initial) != 1), int(len(a.final) != 1)


def frame_word(a: Nfa, word: Sequence[int]) -> list[int]:
    pre, suf = framing(a)
    return [0] * pre + list(word) + [0] * suf


def normalize(a: Nfa) -> Nfa:
    """Automaton with exactly one initial and one final state.

    A single initial (final) state cannot in general carry the run counts of
    several: two initial states with a-transitions into the same state would
    collapse into one transition. Instead a fresh initial state s reads one
    padding letter 0 into each old initial state, and each old final state
    reads 0 into a fresh final state t. Hence Runs_B(frame(w)) = Runs_A(w) and
    unframed words have no runs. Automata already in normal form are
    returned unchanged.
    """
    pre, suf = framing(a)
    if not pre and not suf:
        return a
    if a.alphabet_size == 0:
        raise ValueError("cannot frame words over an empty alphabet")
    n = a.num_states
    trans = set(a.transitions)
    initial, final = a.initial, a.final
    if pre:
        s = n
        n += 1
        trans.update((s, 0, p) for p in a.initial)
        initial = frozenset({s})
    if suf:
        t = n
        n += 1
        trans.update((q, 0, t) for q in a.final)
        final = frozenset({t})
    return Nfa(n, a.alphabet_size, frozenset(trans), initial, final)


def normalize_weighted(w: WeightedAutomaton) -> WeightedAutomaton:
    b = normalize(w.nfa)
    weight = dict(w.weight)
    for tr in b.transitions - w.nfa.transitions:
        weight[tr] = 0
    return WeightedAutomaton(b, weight)


def count_runs(a: Nfa, word: Sequence[int]) -> int:
    """Exact number of accepting runs (Python ints never overflow)."""
    vec = {q: 1 for q in a.initial}
    delta = a.delta
    for c in word:
        nxt: dict[int, int] = {}
        for p, k in vec.items():
            for q in delta[p].get(c, ()):
                nxt[q] = nxt.get(q, 0) + k
        vec = nxt
        if not vec:
            return 0
    return sum(k for q, k in vec.items() if q in a.final)


def to_st_graph(a: Nfa | WeightedAutomaton) -> StGraph:
    weighted = isinstance(a, WeightedAutomaton)
    nfa = a.nfa if weighted else a
    if nfa.alphabet_size != 1:
        raise ValueError("to_st_graph needs a unary automaton")
    if len(nfa.initial) != 1 or len(nfa.final) != 1:
        raise ValueError("to_st_graph needs normal form (|I| = |F| = 1)")
    edges = frozenset((p, q) for p, _, q in nfa.transitions)
    weight = None
    if weighted:
        weight = {(p, q): a.weight[(p, c, q)] for p, c, q in nfa.transitions}
    (s,), (t,) = nfa.initial, nfa.final
    return StGraph(nfa.num_states, edges, s, t, weight)


# ------------------------------------------------------------------ verdicts

class AmbiguityClass(str, Enum):
    UNAMBIGUOUS = "Unambiguous"
    FINITE = "FinitelyAmbiguous"
    POLYNOMIAL = "PolynomiallyAmbiguous"
    EXPONENTIAL = "ExponentiallyAmbiguous"


@dataclass(frozen=True)
class RunPair:
    """Two distinct accepting runs on the same word."""
    word: tuple[int, ...]
    run1: tuple[int, ...]
    run2: tuple[int, ...]

    def replays(self, a: Nfa) -> bool:
        return (self.run1 != self.run2 and a.is_run(self.run1, self.word)
                and a.is_run(self.run2, self.word))


@dataclass(frozen=True)
class EdaWitness:
    """Two distinct cycles at `state` reading the same non-empty word."""
    state: int
    word: tuple[int, ...]
    cycle1: tuple[int, ...]
    cycle2: tuple[int, ...]

    def replays(self, a: Nfa) -> bool:
        q = self.state
        return (len(self.word) > 0 and self.cycle1 != self.cycle2
                and self.cycle1[0] == self.cycle1[-1] == q
                and self.cycle2[0] == self.cycle2[-1] == q
                and a.is_path(self.cycle1, self.word) and a.is_path(self.cycle2, self.word))


@dataclass(frozen=True)
class IdaWitness:
    """States p != q with runs p->p, p->q and q->q on one non-empty word."""
    p: int
    q: int
    word: tuple[int, ...]
    run_pp: tuple[int, ...]
    run_pq: tuple[int, ...]
    run_qq: tuple[int, ...]

    def replays(self, a: Nfa) -> bool:
        p, q = self.p, self.q
        ends = [(self.run_pp, p, p), (self.run_pq, p, q), (self.run_qq, q, q)]
        return (p != q and len(self.word) > 0
                and all(r[0] == x and r[-1] == y and a.is_path(r, self.word)
                        for r, x, y in ends))


@dataclass(frozen=True)
class AmbiguityVerdict:
    cls: AmbiguityClass
    witness: RunPair | EdaWitness | IdaWitness | None = None

    def replays(self, a: Nfa) -> bool:
        if self.cls is AmbiguityClass.UNAMBIGUOUS:
            return self.witness is None
        return self.witness is not None and self.witness.replays(a)
