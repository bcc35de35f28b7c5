"""Slow reference implementations used to cross-check the fast deciders.

Nothing here imports from the fast modules except the plain data types, so
a bug in a decider cannot hide behind a shared helper.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Sequence

from .core import Nfa, StGraph, WeightedAutomaton


class CapExceeded(RuntimeError):
    """An oracle was asked for an instance above its documented cap."""


@dataclass(frozen=True)
class WalkLengthProfile:
    cap: int
    counts: tuple[int, ...]  # counts[l] = number of st-walks of length l

    def as_dict(self) -> dict[int, int]:
        return {length: c for length, c in enumerate(self.counts) if c}

    def first_repeat(self) -> int | None:
        return next((length for length, c in enumerate(self.counts) if c >= 2), None)


def enumerate_walk_lengths(g: StGraph, cap: int, saturate: int | None = None) -> WalkLengthProfile:
    """Per-length st-walk counts for lengths 0..cap by iterating the count
    vector. `saturate` clips counts (e.g. 2 when only repeats matter)."""
    if cap > 10_000 * max(g.num_vertices, 1):
        raise CapExceeded(f"cap {cap} above 10^4 * n")
    edges = sorted(g.edges)
    vec = [0] * g.num_vertices
    vec[g.s] = 1
    counts = []
    for _ in range(cap + 1):
        counts.append(vec[g.t])
        nxt = [0] * g.num_vertices
        for u, v in edges:
            if vec[u]:
                nxt[v] += vec[u]
        if saturate is not None:
            nxt = [min(x, saturate) for x in nxt]
        vec = nxt
    return WalkLengthProfile(cap, tuple(counts))


def naive_dp_disjoint(entries: Sequence[tuple[int, Sequence[int]]]) -> bool:
    """Enumerate each pair of progressions up to lcm(b, d) + max base."""
    if sum(b for b, _ in entries) > 1000:
        raise CapExceeded("sum of steps above 10^3")
    progs = [(b, a, i) for i, (b, bases) in enumerate(entries) for a in bases]
    for (b, a, i), (d, c, j) in itertools.combinations(progs, 2):
        top = b * d // gcd(b, d) + max(a, c)
        if set(range(a, top + 1, b)) & set(range(c, top + 1, d)):
            return False
    return True


def naive_ov(sets: Sequence[Sequence[Sequence[int]]]) -> bool:
    """Is there one vector per set with no coordinate where all are 1?"""
    k = len(sets)
    n = max((len(s) for s in sets), default=0)
    d = len(sets[0][0]) if sets and sets[0] else 0
    if n * k * d > 10_000:
        raise CapExceeded("n*k*d above 10^4")
    for choice in itertools.product(*sets):
        if all(not all(vec[pos] for vec in choice) for pos in range(d)):
            return True
    return False


def naive_intersection(automata: Sequence[Nfa], limit: int = 10 ** 6) -> tuple[bool, tuple[int, ...] | None]:
    """Exact emptiness check of the intersection via product BFS."""
    sigma = max(a.alphabet_size for a in automata)
    rows = []
    for a in automata:
        table: dict[tuple[int, int], list[int]] = {}
        for p, c, q in a.transitions:
            table.setdefault((p, c), []).append(q)
        rows.append(table)
    starts = list(itertools.product(*[sorted(a.initial) for a in automata]))
    parent: dict[tuple, tuple | None] = {s: None for s in starts}
    queue = deque(starts)
    while queue:
        cur = queue.popleft()
        if all(q in a.final for q, a in zip(cur, automata)):
            word = []
            while parent[cur] is not None:
                cur, c = parent[cur]
                word.append(c)
            return True, tuple(reversed(word))
        for c in range(sigma):
            options = [rows[i].get((q, c), []) for i, q in enumerate(cur)]
            for nxt in itertools.product(*options):
                if nxt not in parent:
                    parent[nxt] = (cur, c)
                    if len(parent) > limit:
                        raise CapExceeded("product exceeds 10^6 states")
                    queue.append(nxt)
    return False, None


def _useful(n: int, edges, sources, targets) -> set[int]:
    fwd = {v: [] for v in range(n)}
    bwd = {v: [] for v in range(n)}
    for u, v in edges:
        fwd[u].append(v)
        bwd[v].append(u)

    def close(adj, start):
        seen = set(start)
        stack = list(start)
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return seen

    return close(fwd, sources) & close(bwd, targets)


def simple_cycles(n: int, edges) -> list[list[int]]:
    """All simple cycles, each listed once from its smallest vertex."""
    adj = {v: sorted(w for u, w in edges if u == v) for v in range(n)}
    out = []
    for start in range(n):
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == start:
                    out.append(path + [start])
                elif w > start and w not in path:
                    stack.append((w, path + [w]))
    return out


def naive_twins(g: StGraph, word_cap: int | None = None) -> bool:
    """Twins for a unary weighted st-graph: on the useful part, every simple
    cycle has the same average weight (cycles decompose into simple ones)."""
    if g.num_vertices > 15 or len(g.edges) > 1000:
        raise CapExceeded("graph above n = 15 or m = 10^3")
    keep = _useful(g.num_vertices, g.edges, [g.s], [g.t])
    edges = [(u, v) for u, v in g.edges if u in keep and v in keep]
    averages = set()
    for cyc in simple_cycles(g.num_vertices, edges):
        if word_cap is not None and len(cyc) - 1 > word_cap:
            continue
        w = sum(g.weight[(cyc[i], cyc[i + 1])] for i in range(len(cyc) - 1))
        averages.add(Fraction(w, len(cyc) - 1))
    return len(averages) <= 1


def naive_sibling_twins(w: WeightedAutomaton) -> bool:
    """Twins for a general weighted automaton by the pair construction: a
    pair of siblings fails to be twins iff the synchronized pair graph has,
    in a component reachable from I x I, a cycle whose two weight tracks
    differ. Checked by assigning potentials to the weight difference."""
    a = w.nfa
    by_sym: dict[int, list[tuple[int, int, int]]] = {}
    for p, c, q in a.transitions:
        by_sym.setdefault(c, []).append((p, q, w.weight[(p, c, q)]))
    succ: dict[tuple[int, int], list[tuple[tuple[int, int], int]]] = {}

    def out(pair):
        if pair not in succ:
            p1, p2 = pair
            lst = []
            for trs in by_sym.values():
                for x, y, wx in trs:
                    if x != p1:
                        continue
                    for x2, y2, wy in trs:
                        if x2 == p2:
                            lst.append(((y, y2), wx - wy))
            succ[pair] = lst
        return succ[pair]

    start = [(p, q) for p in a.initial for q in a.initial]
    seen = set(start)
    queue = deque(start)
    while queue:
        u = queue.popleft()
        for v, _ in out(u):
            if v not in seen:
                seen.add(v)
                queue.append(v)
    nodes = sorted(seen)
    idx = {v: i for i, v in enumerate(nodes)}
    # strongly connected components by double reachability (small inputs)
    fwd = [[idx[v] for v, _ in out(u)] for u in nodes]
    bwd: list[list[int]] = [[] for _ in nodes]
    for i, lst in enumerate(fwd):
        for j in lst:
            bwd[j].append(i)
    comp = [-1] * len(nodes)
    for root in range(len(nodes)):
        if comp[root] != -1:
            continue
        f = _close(fwd, root)
        b = _close(bwd, root)
        for v in f & b:
            comp[v] = root
    pot: dict[int, int] = {}
    for root in range(len(nodes)):
        if comp[root] != root:
            continue
        pot[root] = 0
        stack = [root]
        while stack:
            i = stack.pop()
            for v, dw in out(nodes[i]):
                j = idx[v]
                if comp[j] != root:
                    continue
                if j not in pot:
                    pot[j] = pot[i] + dw
                    stack.append(j)
                elif pot[j] != pot[i] + dw:
                    return False
    return True


def _close(adj, root) -> set[int]:
    seen = {root}
    stack = [root]
    while stack:
        u = stack.pop()
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def naive_kcycle(k: int, n: int, edges: Sequence[tuple[int, int, int]]) -> bool:
    """Search for v_0 -> v_1 -> ... -> v_{k-1} -> v_0 through the layers,
    with edges given as (layer, i, j)."""
    if len(edges) > 1000:
        raise CapExceeded("more than 10^3 edges")
    nxt: dict[tuple[int, int], list[int]] = {}
    for layer, i, j in edges:
        nxt.setdefault((layer, i), []).append(j)
    for start in range(n):
        stack = [(0, start)]
        while stack:
            layer, v = stack.pop()
            for w in nxt.get((layer, v), []):
                if layer == k - 1:
                    if w == start:
                        return True
                else:
                    stack.append((layer + 1, w))
    return False


# ----------------------------------------------------- ambiguity by monoids

def _capped_rows(a: Nfa, starts, cap: int):
    """All vectors (capped run counts) reachable from the given start vector
    by non-empty words, with one word per vector."""
    n = a.num_states
    by_sym: dict[int, list[tuple[int, int]]] = {}
    for p, c, q in a.transitions:
        by_sym.setdefault(c, []).append((p, q))
    init = tuple(starts)
    found: dict[tuple[int, ...], tuple[int, ...]] = {}
    queue = deque([(init, ())])
    first = True
    while queue:
        vec, word = queue.popleft()
        if not first and vec in found:
            continue
        if not first:
            found[vec] = word
        first = False
        for c in range(a.alphabet_size):
            nxt = [0] * n
            for p, q in by_sym.get(c, ()):
                if vec[p]:
                    nxt[q] = min(cap, nxt[q] + vec[p])
            t = tuple(nxt)
            if t not in found:
                queue.append((t, word + (c,)))
    return found


def brute_unambiguous(a: Nfa) -> bool:
    """No word with two accepting runs; explored over capped count vectors."""
    if len(a.initial & a.final) >= 2:
        return False
    start = [1 if q in a.initial else 0 for q in range(a.num_states)]
    for vec in _capped_rows(a, start, 2):
        if sum(vec[q] for q in a.final) >= 2:
            return False
    return True


def _useful_nfa(a: Nfa) -> Nfa:
    keep = _useful(a.num_states, [(p, q) for p, _, q in a.transitions], a.initial, a.final)
    return Nfa(a.num_states, a.alphabet_size,
               frozenset(t for t in a.transitions if t[0] in keep and t[2] in keep),
               a.initial & keep, a.final & keep)


def brute_eda(a: Nfa) -> bool:
    """Some useful state has two distinct cycles on one word."""
    a = _useful_nfa(a)
    live = {q for tr in a.transitions for q in (tr[0], tr[2])}
    for q in sorted(live):
        start = [1 if x == q else 0 for x in range(a.num_states)]
        if any(vec[q] >= 2 for vec in _capped_rows(a, start, 2)):
            return True
    return False


def brute_ida(a: Nfa, limit: int = 200_000) -> bool:
    """Useful p != q and a word with runs p->p, p->q and q->q, found by
    exploring the boolean transition monoid (matrices as row bitmasks)."""
    a = _useful_nfa(a)
    n = a.num_states
    gens = []
    for c in range(a.alphabet_size):
        rows = [0] * n
        for p, s, q in a.transitions:
            if s == c:
                rows[p] |= 1 << q
        gens.append(tuple(rows))

    def mul(x, y):
        out = []
        for r in x:
            acc = 0
            while r:
                low = r & -r
                acc |= y[low.bit_length() - 1]
                r ^= low
            out.append(acc)
        return tuple(out)

    seen = set(gens)
    queue = deque(gens)
    while queue:
        m = queue.popleft()
        for p in range(n):
            if not m[p] >> p & 1:
                continue
            for q in range(n):
                if q != p and m[p] >> q & 1 and m[q] >> q & 1:
                    return True
        for g in gens:
            x = mul(m, g)
            if x not in seen:
                seen.add(x)
                if len(seen) > limit:
                    raise CapExceeded("transition monoid too large")
                queue.append(x)
    return False


def brute_class(a: Nfa) -> str:
    if brute_unambiguous(a):
        return "Unambiguous"
    if not brute_ida(a):
        return "FinitelyAmbiguous"
    if not brute_eda(a):
        return "PolynomiallyAmbiguous"
    return "ExponentiallyAmbiguous"
