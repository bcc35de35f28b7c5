"""Twins property for unary weighted st-graphs in linear time.

A trim weighted graph has a pair of non-twin siblings exactly when it has two
cycles of different average weight. After shifting every weight by the
average of one reference cycle, that becomes the question of whether any
cycle has nonzero weight, which a potential function answers per SCC.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import StGraph, bfs_path, reachable, tarjan_scc, trim_graph

Walk = tuple[int, ...]


@dataclass(frozen=True)
class NonTwinSiblings:
    """Vertices p, q reached from s by walks of equal length, each with a
    cycle, such that cycle_p repeated reps_p times and cycle_q repeated
    reps_q times have the same length but different weight.

    Cycles are closed vertex sequences (first == last). Repetition counts are
    stored instead of unrolled walks to keep the witness small.
    """
    p: int
    q: int
    walk_p: Walk
    walk_q: Walk
    cycle_p: Walk
    reps_p: int
    cycle_q: Walk
    reps_q: int

    def replays(self, g: StGraph) -> bool:
        if not (g.is_walk(self.walk_p) and g.is_walk(self.walk_q)):
            return False
        if self.walk_p[0] != g.s or self.walk_q[0] != g.s:
            return False
        if len(self.walk_p) != len(self.walk_q):
            return False
        if self.walk_p[-1] != self.p or self.walk_q[-1] != self.q:
            return False
        for cyc, v in ((self.cycle_p, self.p), (self.cycle_q, self.q)):
            if len(cyc) < 2 or cyc[0] != v or cyc[-1] != v or not g.is_walk(cyc):
                return False
        len_p = (len(self.cycle_p) - 1) * self.reps_p
        len_q = (len(self.cycle_q) - 1) * self.reps_q
        if len_p != len_q or len_p == 0:
            return False
        return (g.walk_weight(self.cycle_p) * self.reps_p
                != g.walk_weight(self.cycle_q) * self.reps_q)


@dataclass
class TwinsStats:
    """Instrumentation: how often each edge was looked at."""
    edge_inspections: int = 0


# ------------------------------------------------------------------ helpers

def find_cycle(g: StGraph) -> Walk | None:
    """Some cycle of g as a closed vertex sequence, or None if acyclic."""
    n = g.num_vertices
    succ = g.succ
    color = [0] * n  # 0 new, 1 on stack, 2 done
    parent = [-1] * n
    for root in range(n):
        if color[root]:
            continue
        stack = [(root, 0)]
        color[root] = 1
        while stack:
            u, i = stack[-1]
            if i < len(succ[u]):
                stack[-1] = (u, i + 1)
                v = succ[u][i]
                if color[v] == 0:
                    color[v] = 1
                    parent[v] = u
                    stack.append((v, 0))
                elif color[v] == 1:
                    path = [u]
                    while path[-1] != v:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return tuple(path) + (v,)
            else:
                color[u] = 2
                stack.pop()
    return None


def shift_weights(g: StGraph, ref_cycle: Sequence[int]) -> StGraph:
    """Integer weights l*w(e) - W where l and W are the length and weight of
    `ref_cycle`. The reference cycle gets weight 0 and a cycle c gets
    weight l*|c|*(avg(c) - W/l), so signs and equalities survive."""
    if g.weight is None:
        raise ValueError("graph carries no weights")
    if len(ref_cycle) < 2 or ref_cycle[0] != ref_cycle[-1] or not g.is_walk(ref_cycle):
        raise ValueError("ref_cycle is not a cycle of g")
    length = len(ref_cycle) - 1
    total = g.walk_weight(ref_cycle)
    weight = {e: length * w - total for e, w in g.weight.items()}
    return StGraph(g.num_vertices, g.edges, g.s, g.t, weight)


def _potential(succ: Sequence[Sequence[int]], wsucc: Sequence[Sequence[int]], comp: Sequence[int],
               root: int, phi: list, parent: list[int], stats: TwinsStats | None):
    """DFS potential over the component of `root`, filling phi and parent.

    Returns the first edge (u, v) inside the component that violates
    phi(v) = phi(u) + w(u, v), or None. Weights are given per adjacency
    slot: wsucc[u][i] is the weight of (u, succ[u][i]).
    """
    c = comp[root]
    phi[root] = 0
    order = [root]
    stack = [root]
    while stack:
        u = stack.pop()
        pu = phi[u]
        for v, w in zip(succ[u], wsucc[u]):
            if comp[v] != c:
                continue
            if phi[v] is None:
                phi[v] = pu + w
                parent[v] = u
                order.append(v)
                stack.append(v)
    inspected = 0
    for u in order:
        pu = phi[u]
        for v, w in zip(succ[u], wsucc[u]):
            if comp[v] == c:
                inspected += 1
                if phi[v] != pu + w:
                    if stats is not None:
                        stats.edge_inspections += 2 * inspected
                    return u, v
    if stats is not None:
        stats.edge_inspections += 2 * inspected
    return None


def _tree_path(parent: Sequence[int], v: int) -> list[int]:
    path = [v]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path[::-1]


def _nonzero_cycle(g: StGraph, weight, parent, edge, comp) -> Walk:
    """Two root-v walks of different weight closed by one return walk: one
    of the two cycles has nonzero weight."""
    u, v = edge
    rho1 = _tree_path(parent, v)
    rho2 = _tree_path(parent, u) + [v]
    root = rho1[0]
    c = comp[root]
    succ = [[w for w in row if comp[w] == c] for row in g.succ]
    back = bfs_path(succ, [v], {root})
    sigma1 = tuple(rho1 + back[1:])
    sigma2 = tuple(rho2 + back[1:])

    def wt(cyc):
        return sum(weight(cyc[i], cyc[i + 1]) for i in range(len(cyc) - 1))
    return sigma1 if wt(sigma1) != 0 else sigma2


def _weights_by_slot(g: StGraph, scale: int = 1, offset: int = 0) -> list[list[int]]:
    wt = g.weight
    return [[scale * wt[(u, v)] - offset for v in row] for u, row in enumerate(g.succ)]


def potential_check(g: StGraph) -> tuple[dict[int, int] | None, Walk | None]:
    """Potential function of a strongly connected weighted graph, or a
    cycle of nonzero weight."""
    if g.weight is None:
        raise ValueError("graph carries no weights")
    n = g.num_vertices
    if n == 0 or not all(reachable(g.succ, [0])) or not all(reachable(g.pred, [0])):
        raise ValueError("graph is not strongly connected")
    phi: list = [None] * n
    parent = [-1] * n
    comp = [0] * n
    bad = _potential(g.succ, _weights_by_slot(g), comp, 0, phi, parent, None)
    if bad is None:
        return dict(enumerate(phi)), None
    return None, _nonzero_cycle(g, lambda a, b: g.weight[(a, b)], parent, bad, comp)


# ------------------------------------------------------------------ witness

def _rotate(cycle: Walk, v: int) -> Walk:
    body = list(cycle[:-1])
    i = body.index(v)
    body = body[i:] + body[:i]
    return tuple(body + [v])


def _siblings_witness(g: StGraph, c1: Walk, c2: Walk) -> NonTwinSiblings:
    """Non-twin siblings from two cycles of different average weight."""
    l1, l2 = len(c1) - 1, len(c2) - 1
    r1 = bfs_path(g.succ, [g.s], set(c1))
    r2 = bfs_path(g.succ, [g.s], set(c2))
    if len(r1) > len(r2):
        c1, c2, l1, l2, r1, r2 = c2, c1, l2, l1, r2, r1
    # walk the first cycle until both walks have the same length
    c1 = _rotate(c1, r1[-1])
    walk1 = list(r1)
    pos = 0
    while len(walk1) < len(r2):
        pos = (pos + 1) % l1
        walk1.append(c1[pos])
    walk2 = list(r2)
    c1 = _rotate(c1, walk1[-1])
    c2 = _rotate(c2, walk2[-1])
    # if both walks end in the same vertex, advance along both cycles until
    # they part; they must, since the cycles differ in average weight
    i = 0
    while walk1[-1] == walk2[-1] and i < l1 * l2:
        i += 1
        walk1.append(c1[i % l1])
        walk2.append(c2[i % l2])
    c1 = _rotate(c1, walk1[-1])
    c2 = _rotate(c2, walk2[-1])
    return NonTwinSiblings(walk1[-1], walk2[-1], tuple(walk1), tuple(walk2), c1, l2, c2, l1)


def _lift(w: NonTwinSiblings, origin: Sequence[int]) -> NonTwinSiblings:
    def up(seq):
        return tuple(origin[v] for v in seq)
    return NonTwinSiblings(origin[w.p], origin[w.q], up(w.walk_p), up(w.walk_q),
                           up(w.cycle_p), w.reps_p, up(w.cycle_q), w.reps_q)


# --------------------------------------------------------------------- main

def unary_twins(g: StGraph, stats: TwinsStats | None = None) -> tuple[bool, NonTwinSiblings | None]:
    """Do all sibling pairs of the trim part of g form twins?"""
    if g.weight is None:
        raise ValueError("graph carries no weights")
    h, origin = trim_graph(g)
    if h is None:
        return True, None
    pi = find_cycle(h)
    if pi is None:
        return True, None
    if stats is not None:
        stats.edge_inspections += len(h.edges)  # cycle search
    # shift so that pi has weight 0 (see shift_weights)
    length, total = len(pi) - 1, h.walk_weight(pi)
    wsucc = _weights_by_slot(h, length, total)
    comp, _ = tarjan_scc(h.num_vertices, h.succ)
    n = h.num_vertices
    phi: list = [None] * n
    parent = [-1] * n
    for root in range(n):
        if phi[root] is not None:
            continue
        bad = _potential(h.succ, wsucc, comp, root, phi, parent, stats)
        if bad is None:
            continue
        shifted = lambda a, b: length * h.weight[(a, b)] - total
        sigma = _nonzero_cycle(h, shifted, parent, bad, comp)
        return False, _lift(_siblings_witness(h, pi, sigma), origin)
    return True, None
