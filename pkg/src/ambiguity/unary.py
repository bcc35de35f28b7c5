"""Unambiguity, EDA and IDA for unary automata viewed as st-graphs.

Unambiguity asks whether two distinct st-walks have the same length. The
pipeline trims the graph, checks that its cycles are vertex-disjoint with
no walk between any two of them, rewires every cycle so that all walks
enter and leave through a single gate vertex, computes walk lengths in the
remaining DAG, and finally reduces to disjointness of arithmetic
progressions (one step per distinct cycle length).
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core import Nfa, StGraph, bfs_path, normalize, tarjan_scc, to_st_graph, trim_graph
from .progressions import ProgressionsInstance, common_value, disjoint_progressions

SPARSITY = 12


@dataclass(frozen=True)
class WalkPair:
    """Two distinct st-walks (vertex sequences) of equal length."""
    walk1: tuple[int, ...]
    walk2: tuple[int, ...]

    @property
    def length(self) -> int:
        return len(self.walk1) - 1

    def replays(self, g: StGraph) -> bool:
        return (self.walk1 != self.walk2 and len(self.walk1) == len(self.walk2)
                and g.is_st_walk(self.walk1) and g.is_st_walk(self.walk2))


@dataclass(frozen=True)
class Verdict:
    """Early decision. For ambiguous verdicts `length` (when known) is a
    length with at least two st-walks in the graph the verdict refers to."""
    unambiguous: bool
    reason: str
    length: int | None = None
    walks: WalkPair | None = None


@dataclass(frozen=True)
class CycleGateGraph:
    graph: StGraph
    gates: frozenset[int]
    # vertex_remap[v] is ("v", old) for kept vertices, ("in", gate, j) for
    # i_j and ("out", gate, j) for o_j on the gateway paths
    vertex_remap: tuple[tuple, ...]
    cycles: tuple[tuple[int, ...], ...]  # each starts at its gate


@dataclass(frozen=True)
class DagWalkLengths:
    p_st: frozenset[int]
    p_vt: dict[int, frozenset[int]] = field(default_factory=dict)
    stored: int = 0  # total number of lengths held in STAY/JUMP sets


@dataclass(frozen=True)
class ProgressionsReduction:
    instance: ProgressionsInstance
    # bases[b][r] = an st-walk length through a cycle of length b, = r mod b
    bases: dict[int, dict[int, int]]
    transformed: CycleGateGraph


# ----------------------------------------------------------------- components

@dataclass
class _Components:
    comp: list[int]
    count: int
    size: list[int]
    inner_edges: list[int]
    members: list[list[int]]

    def nontrivial(self, c: int) -> bool:
        return self.inner_edges[c] > 0

    def simple_cycle(self, c: int) -> bool:
        return self.inner_edges[c] == self.size[c]


def _components(g: StGraph) -> _Components:
    comp, count = tarjan_scc(g.num_vertices, g.succ)
    size = [0] * count
    inner = [0] * count
    members: list[list[int]] = [[] for _ in range(count)]
    for v in range(g.num_vertices):
        size[comp[v]] += 1
        members[comp[v]].append(v)
    for u, v in g.edges:
        if comp[u] == comp[v]:
            inner[comp[u]] += 1
    return _Components(comp, count, size, inner, members)


def _cycle_walk(g: StGraph, comps: _Components, v: int, first: int) -> list[int]:
    """Closed walk v -> first -> ... -> v inside v's component."""
    c = comps.comp[v]
    inside = [[w for w in g.succ[u] if comps.comp[w] == c] for u in range(g.num_vertices)]
    back = bfs_path(inside, [first], {v})
    assert back is not None
    return [v] + back


def _disjointness_witness(g: StGraph, comps: _Components) -> WalkPair | None:
    """Two equal-length st-walks if the cycles are not disjoint, else None."""
    succ = g.succ
    for c in range(comps.count):
        if comps.nontrivial(c) and not comps.simple_cycle(c):
            v = next(u for u in comps.members[c]
                     if sum(comps.comp[w] == c for w in succ[u]) >= 2)
            a, b = [w for w in succ[v] if comps.comp[w] == c][:2]
            c1, c2 = _cycle_walk(g, comps, v, a), _cycle_walk(g, comps, v, b)
            p = bfs_path(succ, [g.s], {v})
            q = bfs_path(succ, [v], {g.t})
            w1 = p + c1[1:] + c2[1:] + q[1:]
            w2 = p + c2[1:] + c1[1:] + q[1:]
            return WalkPair(tuple(w1), tuple(w2))
    # condensation edges run from higher to lower component ids
    cross: list[list[int]] = [[] for _ in range(comps.count)]
    for u, v in g.edges:
        cu, cv = comps.comp[u], comps.comp[v]
        if cu != cv:
            cross[cv].append(cu)
    origin = [-1] * comps.count  # a cycle component strictly before c
    for c in range(comps.count - 1, -1, -1):
        for d in cross[c]:
            src = d if comps.nontrivial(d) else origin[d]
            if src != -1:
                origin[c] = src
                break
        if comps.nontrivial(c) and origin[c] != -1:
            v1, v2 = comps.members[origin[c]][0], comps.members[c][0]
            l1, l2 = comps.size[origin[c]], comps.size[c]
            c1 = _cycle_walk(g, comps, v1, _inner_succ(g, comps, v1))
            c2 = _cycle_walk(g, comps, v2, _inner_succ(g, comps, v2))
            p = bfs_path(succ, [g.s], {v1})
            q = bfs_path(succ, [v1], {v2})
            r = bfs_path(succ, [v2], {g.t})
            w1 = p + c1[1:] * l2 + q[1:] + r[1:]
            w2 = p + q[1:] + c2[1:] * l1 + r[1:]
            return WalkPair(tuple(w1), tuple(w2))
    return None


def _inner_succ(g: StGraph, comps: _Components, v: int) -> int:
    return next(w for w in g.succ[v] if comps.comp[w] == comps.comp[v])


def check_disjoint_cycles(g: StGraph) -> bool:
    """Every SCC is trivial or a simple cycle and no walk joins two cycles.

    A false answer certifies ambiguity of a trim graph."""
    return _disjointness_witness(g, _components(g)) is None


# ------------------------------------------------------------------ transform

def cycle_gate_transform(g: StGraph) -> CycleGateGraph | Verdict:
    """Rewire each cycle so that a single gate vertex carries all of its
    entries and exits, preserving the st-walk length multiset.

    For a cycle v_0 (gate), v_1, ..., v_{l-1}: an entry (u, v_j) becomes
    (u, i_j) where i_j -> ... -> i_{l-1} -> v_0 is an incoming path, plus a
    bypass (u, o_j) when some exit sits at index >= j; an exit (v_j, w)
    becomes (o_j, w) on the outgoing path v_0 = o_0 -> o_1 -> ... .
    """
    comps = _components(g)
    bad = _disjointness_witness(g, comps)
    if bad is not None:
        return Verdict(False, "cycles not disjoint", bad.length, bad)
    cs, ct = comps.comp[g.s], comps.comp[g.t]
    if cs == ct and comps.nontrivial(cs):
        return Verdict(True, "s and t lie on one simple cycle")

    n = g.num_vertices
    succ, pred, comp = g.succ, g.pred, comps.comp
    remap: list[tuple] = [("v", v) for v in range(n)]
    edges: set[tuple[int, int]] = set()
    moved: set[tuple[int, int]] = set()
    gates = []
    cycles = []
    for c in range(comps.count):
        if not comps.nontrivial(c):
            continue
        mem = comps.members[c]
        gate = g.s if comp[g.s] == c else g.t if comp[g.t] == c else min(mem)
        cyc = [gate]
        while len(cyc) < len(mem):
            cyc.append(_inner_succ(g, comps, cyc[-1]))
        ell = len(cyc)
        entry_idx = [j for j in range(1, ell) if any(comp[u] != c for u in pred[cyc[j]])]
        exit_idx = [j for j in range(1, ell) if any(comp[w] != c for w in succ[cyc[j]])]
        l_in = ell - min(entry_idx) if entry_idx else 0
        l_out = max(exit_idx) if exit_idx else 0
        inpath = {ell: gate}
        for j in range(ell - l_in, ell):
            inpath[j] = len(remap)
            remap.append(("in", gate, j))
        outpath = {0: gate}
        for j in range(1, l_out + 1):
            outpath[j] = len(remap)
            remap.append(("out", gate, j))
        for j in range(ell - l_in, ell):
            edges.add((inpath[j], inpath[j + 1]))
        for j in range(l_out):
            edges.add((outpath[j], outpath[j + 1]))
        for j in entry_idx:
            v = cyc[j]
            for u in pred[v]:
                if comp[u] != c:
                    moved.add((u, v))
                    edges.add((u, inpath[j]))
                    if j <= l_out:
                        edges.add((u, outpath[j]))
        for j in exit_idx:
            v = cyc[j]
            for w in succ[v]:
                if comp[w] != c:
                    moved.add((v, w))
                    edges.add((outpath[j], w))
        gates.append(gate)
        cycles.append(tuple(cyc))
    edges.update(e for e in g.edges if e not in moved)
    out = StGraph(len(remap), frozenset(edges), g.s, g.t)
    return CycleGateGraph(out, frozenset(gates), tuple(remap), tuple(cycles))


# ------------------------------------------------------------------------ DAG

def dag_walk_lengths(g: StGraph, marks: Iterable[int] = (),
                     guard: bool = True) -> DagWalkLengths | Verdict:
    """Lengths of all st-walks in a trim DAG, plus vt-walk lengths for every
    vertex of in-degree >= 2 and every vertex in `marks`.

    Uses a BFS spanning tree T from s. For the cut vertices K (in-degree
    >= 2, marks, s, t) STAY_v collects lengths of vt-walks starting with a
    tree edge; for every v, JUMP_v collects those starting with a non-tree
    edge. Both are assembled in reverse topological order. A repeated length
    means two equal-length walks, hence ambiguity.
    """
    n = g.num_vertices
    m = len(g.edges)
    if guard and m > SPARSITY * n:
        return Verdict(False, "too many edges for an unambiguous graph")
    succ = g.succ
    s, t = g.s, g.t
    indeg = [0] * n
    for _, v in g.edges:
        indeg[v] += 1
    order: list[int] = [v for v in range(n) if indeg[v] == 0]
    left = indeg[:]
    head = 0
    while head < len(order):
        u = order[head]
        head += 1
        for v in succ[u]:
            left[v] -= 1
            if left[v] == 0:
                order.append(v)
    if len(order) != n:
        raise ValueError("dag_walk_lengths needs an acyclic graph")

    parent = [-1] * n
    depth = [-1] * n
    depth[s] = 0
    queue = deque([s])
    children: list[list[int]] = [[] for _ in range(n)]
    while queue:
        u = queue.popleft()
        for v in succ[u]:
            if depth[v] < 0:
                depth[v] = depth[u] + 1
                parent[v] = u
                children[u].append(v)
                queue.append(v)
    if any(d < 0 for d in depth):
        raise ValueError("dag_walk_lengths needs a trim graph")

    marks = set(marks)
    cut = [indeg[v] >= 2 for v in range(n)]
    for v in marks:
        cut[v] = True
    cut[s] = cut[t] = True

    stamp = [0] * (n + 1)
    epoch = 0
    stay: dict[int, list[int]] = {t: [0]}
    jump: list[list[int]] = [[] for _ in range(n)]
    stored = 1
    limit = 4 * n + 4

    for v in reversed(order):
        epoch += 1
        acc = jump[v]
        for u in succ[v]:
            if parent[u] == v:
                continue
            for src in (stay.get(u, ()), jump[u]):
                for x in src:
                    y = x + 1
                    if stamp[y] == epoch:
                        return Verdict(False, "repeated length", depth[v] + y)
                    stamp[y] = epoch
                    acc.append(y)
        if not cut[v] or v == t:
            stored += len(acc)
            if guard and stored > limit:
                return Verdict(False, "too many walk lengths")
            continue
        # STAY_v over the tree part hanging below v down to the next cut vertices
        epoch += 1
        col = []
        for y in acc:
            stamp[y] = epoch
        stack = [(c, 1) for c in children[v]]
        while stack:
            u, d = stack.pop()
            sources = (jump[u], stay[u]) if cut[u] else (jump[u],)
            for src in sources:
                for x in src:
                    y = x + d
                    if stamp[y] == epoch:
                        return Verdict(False, "repeated length", depth[v] + y)
                    stamp[y] = epoch
                    col.append(y)
            if not cut[u]:
                stack.extend((c, d + 1) for c in children[u])
        stay[v] = col
        stored += len(acc) + len(col)
        if guard and stored > limit:
            return Verdict(False, "too many walk lengths")

    p_st = frozenset(stay[s]) | frozenset(jump[s])
    p_vt = {v: frozenset(stay[v]) | frozenset(jump[v])
            for v in range(n) if cut[v] and v not in (s, t)}
    if indeg[t] >= 2 or t in marks:
        p_vt[t] = frozenset({0})
    if s in marks:
        p_vt[s] = p_st
    return DagWalkLengths(p_st, p_vt, stored)


def _reverse(g: StGraph) -> StGraph:
    return StGraph(g.num_vertices, frozenset((v, u) for u, v in g.edges), g.t, g.s)


# --------------------------------------------------------------- progressions

def unary_to_progressions(g: StGraph, guard: bool = True) -> ProgressionsReduction | Verdict:
    """Either decide a trim graph directly or produce a progressions
    instance that is disjoint iff the graph is unambiguous.

    With guard=False the DAG stage never stops early on size grounds, so
    every ambiguous verdict carries a concrete length."""
    cg = cycle_gate_transform(g)
    if isinstance(cg, Verdict):
        return cg
    gp = cg.graph
    if not cg.gates:
        res = dag_walk_lengths(gp, guard=guard)
        if isinstance(res, Verdict):
            return res
        return Verdict(True, "acyclic and no repeated length")

    # H: drop the non-gate cycle vertices
    inner = set()
    for cyc in cg.cycles:
        inner.update(cyc[1:])
    keep = [v for v in range(gp.num_vertices) if v not in inner]
    new_id = {v: i for i, v in enumerate(keep)}
    h_edges = frozenset((new_id[u], new_id[v]) for u, v in gp.edges
                        if u in new_id and v in new_id and u != v)
    h = StGraph(len(keep), h_edges, new_id[gp.s], new_id[gp.t])
    gates = [new_id[c[0]] for c in cg.cycles]

    fwd = dag_walk_lengths(h, gates, guard)
    if isinstance(fwd, Verdict):
        return fwd
    rev = dag_walk_lengths(_reverse(h), gates, guard)
    if isinstance(rev, Verdict):
        return rev

    by_step: dict[int, list[int]] = {}
    seen: set[int] = set()
    for gate, cyc in zip(gates, cg.cycles):
        before, after = rev.p_vt[gate], fwd.p_vt[gate]
        lst = by_step.setdefault(len(cyc), [])
        for x in before:
            for y in after:
                if x + y in seen:
                    return Verdict(False, "repeated length through gates", x + y)
                seen.add(x + y)
                lst.append(x + y)

    plain = sorted(fwd.p_st - seen)
    if plain:
        top = plain[-1]
        marked = bytearray(top + 1)
        for a in plain:
            marked[a] = 1
        for b in sorted(by_step):
            for a in by_step[b]:
                for v in range(a, top + 1, b):
                    if marked[v]:
                        return Verdict(False, "progression meets a plain length", v)
                    marked[v] = 1

    bases: dict[int, dict[int, int]] = {}
    for b in sorted(by_step):
        res: dict[int, int] = {}
        for a in sorted(by_step[b]):
            r = a % b
            if r in res:
                return Verdict(False, "repeated residue", a)
            res[r] = a
        bases[b] = res
    inst = ProgressionsInstance(tuple((b, tuple(sorted(bases[b]))) for b in sorted(bases)))
    return ProgressionsReduction(inst, bases, cg)


def progressions_to_graph(inst: ProgressionsInstance) -> StGraph:
    """s = 0, t = 1; one cycle per entry with s -> v_{i,0} and
    v_{i,a} -> t for a in A_i, so walk lengths are 2 + a + x*b_i."""
    edges = set()
    n = 2
    for b, bases in inst.entries:
        first = n
        n += b
        for j in range(b):
            edges.add((first + j, first + (j + 1) % b))
        edges.add((0, first))
        for a in bases:
            edges.add((first + a, 1))
    return StGraph(n, frozenset(edges), 0, 1)


# ---------------------------------------------------------------------- driver

def two_walks_of_length(g: StGraph, length: int) -> WalkPair | None:
    """Two distinct st-walks of the given length, if they exist."""
    n = g.num_vertices
    succ = g.succ
    # cnt[r][v]: number of v->t walks of length r, capped at 2
    cnt = [[0] * n]
    cnt[0][g.t] = 1
    for _ in range(length):
        prev = cnt[-1]
        row = [min(2, sum(prev[w] for w in succ[v])) for v in range(n)]
        cnt.append(row)
    if cnt[length][g.s] < 2:
        return None

    def complete(walk: list[int], r: int) -> list[int]:
        while r > 0:
            v = walk[-1]
            walk.append(next(w for w in succ[v] if cnt[r - 1][w] > 0))
            r -= 1
        return walk

    walk = [g.s]
    r = length
    while True:
        v = walk[-1]
        options = [w for w in succ[v] if cnt[r - 1][w] > 0]
        if len(options) >= 2:
            return WalkPair(tuple(complete(walk + [options[0]], r - 1)),
                            tuple(complete(walk + [options[1]], r - 1)))
        walk.append(options[0])
        r -= 1


def _lift(walks: WalkPair, origin: Sequence[int]) -> WalkPair:
    return WalkPair(tuple(origin[v] for v in walks.walk1), tuple(origin[v] for v in walks.walk2))


def unary_is_unambiguous(g: StGraph, witness: bool = True) -> tuple[bool, WalkPair | None]:
    """Decide whether all st-walks have pairwise distinct lengths.

    With witness=False the sparsity guard may answer without producing
    walks; otherwise two equal-length st-walks of `g` are returned on a
    negative answer.
    """
    tg, origin = trim_graph(g)
    if tg is None:
        return True, None
    if not witness and len(tg.edges) > SPARSITY * tg.num_vertices:
        return False, None
    red = unary_to_progressions(tg, guard=not witness)
    if isinstance(red, Verdict):
        if red.unambiguous:
            return True, None
        if not witness:
            return False, None
        if red.walks is not None:
            return False, _lift(red.walks, origin)
        length = red.length
    else:
        ok, col = disjoint_progressions(red.instance)
        if ok:
            return True, None
        if not witness:
            return False, None
        bi, bj = red.instance.entries[col.i][0], red.instance.entries[col.j][0]
        a = red.bases[bi][col.a_i]
        c = red.bases[bj][col.a_j]
        length = common_value(a, bi, c, bj)
    assert length is not None
    pair = two_walks_of_length(tg, length)
    assert pair is not None, "internal error: no walk pair at the reported length"
    return False, _lift(pair, origin)


def unary_has_eda(g: StGraph) -> bool:
    """Some SCC carries two distinct simple cycles."""
    tg, _ = trim_graph(g)
    if tg is None:
        return False
    comps = _components(tg)
    return any(comps.nontrivial(c) and not comps.simple_cycle(c) for c in range(comps.count))


def unary_has_ida(g: StGraph) -> bool:
    """EDA, or a walk from one cycle component to another."""
    tg, _ = trim_graph(g)
    if tg is None:
        return False
    comps = _components(tg)
    if any(comps.nontrivial(c) and not comps.simple_cycle(c) for c in range(comps.count)):
        return True
    reach = [False] * comps.count  # some cycle component lies strictly before
    cross: list[list[int]] = [[] for _ in range(comps.count)]
    for u, v in tg.edges:
        cu, cv = comps.comp[u], comps.comp[v]
        if cu != cv:
            cross[cv].append(cu)
    for c in range(comps.count - 1, -1, -1):
        reach[c] = any(comps.nontrivial(d) or reach[d] for d in cross[c])
        if reach[c] and comps.nontrivial(c):
            return True
    return False


def nfa_graph(a: Nfa) -> StGraph:
    """st-graph of a unary automaton after normalization."""
    if a.alphabet_size != 1:
        raise ValueError("unary automaton expected")
    return to_st_graph(normalize(a))
