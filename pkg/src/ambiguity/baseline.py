"""Reference deciders for general alphabets built on self-products.

* Unambiguity: an accepting path of the synchronized square automaton that
  visits an off-diagonal pair (p, q), p != q.
* EDA: a diagonal pair (p, p) sharing a strongly connected component of the
  square automaton with an off-diagonal pair.
* IDA: for some p != q, a non-empty path (p, p, q) -> (p, q, q) in the
  synchronized cube automaton.

All three work on the trim part and explore products lazily from the
relevant start states.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .core import (AmbiguityClass, AmbiguityVerdict, EdaWitness, IdaWitness, Nfa, RunPair,
                   adjacency, reachable, tarjan_scc, trim)

ProductState = tuple[int, ...]


@dataclass
class _Product:
    """Explicit part of a synchronized product reachable from `starts`."""
    nodes: list[ProductState]
    index: dict[ProductState, int]
    succ: list[list[tuple[int, int]]]  # (symbol, node id)


def _explore(a: Nfa, starts: Iterable[ProductState]) -> _Product:
    delta = a.delta
    nodes: list[ProductState] = []
    index: dict[ProductState, int] = {}
    succ: list[list[tuple[int, int]]] = []

    def visit(x):
        if x not in index:
            index[x] = len(nodes)
            nodes.append(x)
            succ.append([])
            queue.append(x)

    queue: deque = deque()
    for x in starts:
        visit(x)
    while queue:
        x = queue.popleft()
        i = index[x]
        rows = [delta[p] for p in x]
        for c in sorted(set.intersection(*[set(r) for r in rows])):
            for y in _combos([r[c] for r in rows]):
                visit(y)
                succ[i].append((c, index[y]))
    return _Product(nodes, index, succ)


def _combos(options: Sequence[Sequence[int]]):
    out: list[tuple[int, ...]] = [()]
    for opts in options:
        out = [x + (q,) for x in out for q in opts]
    return out


def _bfs(prod: _Product, sources: Iterable[int], goal, allowed=None) -> list[tuple[int, int]] | None:
    """Shortest path as [(symbol, node)] after the source; `goal(node)`
    tests targets, `allowed(node)` restricts the search."""
    parent: dict[int, tuple[int, int] | None] = {}
    queue = deque()
    for s in sources:
        parent[s] = None
        queue.append(s)
    while queue:
        u = queue.popleft()
        if goal(u):
            path = []
            while parent[u] is not None:
                c, prev = parent[u]
                path.append((c, u))
                u = prev
            return path[::-1]
        for c, v in prod.succ[u]:
            if v not in parent and (allowed is None or allowed(v)):
                parent[v] = (c, u)
                queue.append(v)
    return None


def _tracks(prod: _Product, start: int, path: list[tuple[int, int]]):
    word = tuple(c for c, _ in path)
    states = [prod.nodes[start]] + [prod.nodes[v] for _, v in path]
    return word, [tuple(x[k] for x in states) for k in range(len(states[0]))]


def _lift(seq: Sequence[int], origin: Sequence[int]) -> tuple[int, ...]:
    return tuple(origin[q] for q in seq)


# ---------------------------------------------------------------- unambiguity

def is_unambiguous(a: Nfa) -> tuple[bool, RunPair | None]:
    t, origin = trim(a)
    init = sorted(t.initial)
    both = [q for q in init if q in t.final]
    if len(both) >= 2:
        return False, RunPair((), (origin[both[0]],), (origin[both[1]],))
    # the flag records whether an off-diagonal pair has been visited
    starts = [(p, q) for p in init for q in init]
    prod = _explore(t, starts)
    parent: dict[tuple[int, int], tuple | None] = {}
    queue = deque()
    for x in starts:
        node = (prod.index[x], int(x[0] != x[1]))
        parent[node] = None
        queue.append(node)
    final = t.final
    while queue:
        u, flag = queue.popleft()
        p, q = prod.nodes[u]
        if flag and p in final and q in final:
            word, runs = [], [(p, q)]
            cur = (u, flag)
            while parent[cur] is not None:
                c, prev = parent[cur]
                word.append(c)
                cur = prev
                runs.append(prod.nodes[cur[0]])
            word.reverse()
            runs.reverse()
            r1 = _lift([x[0] for x in runs], origin)
            r2 = _lift([x[1] for x in runs], origin)
            return False, RunPair(tuple(word), r1, r2)
        for c, v in prod.succ[u]:
            x, y = prod.nodes[v]
            node = (v, flag or int(x != y))
            if node not in parent:
                parent[node] = (c, (u, flag))
                queue.append(node)
    return True, None


# ------------------------------------------------------------------------ EDA

def has_eda(a: Nfa) -> tuple[bool, EdaWitness | None]:
    t, origin = trim(a)
    prod = _explore(t, [(p, p) for p in range(t.num_states)])
    adj = [sorted({v for _, v in row}) for row in prod.succ]
    comp, count = tarjan_scc(len(prod.nodes), adj)
    has_off = [False] * count
    for i, (p, q) in enumerate(prod.nodes):
        if p != q:
            has_off[comp[i]] = True
    for p in range(t.num_states):
        d = prod.index[(p, p)]
        c = comp[d]
        if not has_off[c]:
            continue
        inside = lambda v, c=c: comp[v] == c
        there = _bfs(prod, [d], lambda v: prod.nodes[v][0] != prod.nodes[v][1], inside)
        mid = there[-1][1]
        back = _bfs(prod, [mid], lambda v: v == d, inside)
        word, (c1, c2) = _tracks(prod, d, there + back)
        return True, EdaWitness(origin[p], word, _lift(c1, origin), _lift(c2, origin))
    return False, None


# ------------------------------------------------------------------------ IDA

def has_ida(a: Nfa) -> tuple[bool, IdaWitness | None]:
    t, origin = trim(a)
    n = t.num_states
    graph = adjacency(n, {(p, q) for p, _, q in t.transitions})
    comp, count = tarjan_scc(n, graph)
    on_cycle = [False] * n
    for p, _, q in t.transitions:
        if comp[p] == comp[q]:
            on_cycle[p] = True
    square = _explore(t, [(p, p) for p in range(n) if on_cycle[p]])
    sq_adj = [sorted({v for _, v in row}) for row in square.succ]
    sq_comp, _ = tarjan_scc(len(square.nodes), sq_adj)
    looped = set()
    for i, row in enumerate(square.succ):
        for _, j in row:
            if sq_comp[i] == sq_comp[j]:
                looped.add(square.nodes[i])
    for p in range(n):
        if not on_cycle[p]:
            continue
        reach = reachable(graph, [p])
        for q in range(n):
            if q == p or not on_cycle[q] or not reach[q] or (p, q) not in looped:
                continue
            cube = _explore(t, [(p, p, q)])
            goal = cube.index.get((p, q, q))
            if goal is None:
                continue
            # (p, p, q) != (p, q, q), so the path found is non-empty
            path = _bfs(cube, [cube.index[(p, p, q)]], lambda v: v == goal)
            word, (r1, r2, r3) = _tracks(cube, cube.index[(p, p, q)], path)
            return True, IdaWitness(origin[p], origin[q], word,
                                    _lift(r1, origin), _lift(r2, origin), _lift(r3, origin))
    return False, None


# ------------------------------------------------------------------- classify

def classify(a: Nfa) -> AmbiguityVerdict:
    ok, pair = is_unambiguous(a)
    if ok:
        return AmbiguityVerdict(AmbiguityClass.UNAMBIGUOUS)
    ida, iw = has_ida(a)
    if not ida:
        return AmbiguityVerdict(AmbiguityClass.FINITE, pair)
    eda, ew = has_eda(a)
    if not eda:
        return AmbiguityVerdict(AmbiguityClass.POLYNOMIAL, iw)
    return AmbiguityVerdict(AmbiguityClass.EXPONENTIAL, ew)
