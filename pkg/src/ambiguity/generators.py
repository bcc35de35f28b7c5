"""Random instance generators shared by the test suites and the bench."""

from __future__ import annotations

import random

from .core import Nfa, StGraph
from .progressions import ProgressionsInstance


def random_nfa(rng: random.Random, n: int, sigma: int, density: float | None = None,
               max_initial: int = 2, max_final: int = 2) -> Nfa:
    if density is None:
        density = rng.uniform(0.8, 2.2) / max(n, 1)
    trans = frozenset((p, a, q) for p in range(n) for a in range(sigma) for q in range(n)
                      if rng.random() < density)
    initial = frozenset(rng.sample(range(n), rng.randint(1, min(max_initial, n))))
    final = frozenset(rng.sample(range(n), rng.randint(1, min(max_final, n))))
    return Nfa(n, sigma, trans, initial, final)


def random_dfa(rng: random.Random, n: int, sigma: int, fill: float = 0.7) -> Nfa:
    trans = frozenset((p, a, rng.randrange(n)) for p in range(n) for a in range(sigma)
                      if rng.random() < fill)
    final = frozenset(q for q in range(n) if rng.random() < 0.4)
    return Nfa(n, sigma, trans, frozenset({0}), final)


def near_dfa(rng: random.Random, n: int, sigma: int) -> Nfa:
    """A partial DFA with one or two extra transitions: mostly unambiguous
    or finitely ambiguous."""
    trans = {(p, a, rng.randrange(n)) for p in range(n) for a in range(sigma) if rng.random() < 0.75}
    for _ in range(rng.randint(1, 2)):
        trans.add((rng.randrange(n), rng.randrange(sigma), rng.randrange(n)))
    initial = frozenset(rng.sample(range(n), rng.randint(1, min(2, n))))
    final = frozenset(rng.sample(range(n), rng.randint(1, min(2, n))))
    return Nfa(n, sigma, frozenset(trans), initial, final)


def cycle_chain_nfa(rng: random.Random, n: int, sigma: int) -> Nfa:
    """Up to three labelled cycles joined by forward transitions, the usual
    shape of polynomially ambiguous automata."""
    cuts = sorted(rng.sample(range(1, n), min(n - 1, rng.randint(0, 2)))) if n > 1 else []
    bounds = [0] + cuts + [n]
    trans = set()
    for lo, hi in zip(bounds, bounds[1:]):
        for p in range(lo, hi):
            q = p + 1 if p + 1 < hi else lo
            trans.add((p, rng.randrange(sigma), q))
    for _ in range(rng.randint(1, n)):
        p = rng.randrange(n)
        trans.add((p, rng.randrange(sigma), rng.randrange(p, n)))
    return Nfa(n, sigma, frozenset(trans), frozenset({0}), frozenset({rng.randrange(n), n - 1}))


def mixed_nfa(rng: random.Random, n: int, sigma: int) -> Nfa:
    """One of the three NFA generators above, chosen at random."""
    pick = rng.random()
    if pick < 0.4:
        return random_nfa(rng, n, sigma)
    if pick < 0.7:
        return near_dfa(rng, n, sigma)
    return cycle_chain_nfa(rng, n, sigma)


def random_graph(rng: random.Random, n: int, extra: float = 0.5) -> StGraph:
    m = rng.randint(n - 1, int((1 + extra) * n) + 1)
    edges = {(rng.randrange(n), rng.randrange(n)) for _ in range(m)}
    return StGraph(n, frozenset(edges), 0, n - 1)


def structured_graph(rng: random.Random, n: int, leak: float = 0.1) -> StGraph:
    """Vertices split into a front DAG, disjoint cycles and a back DAG, so
    that cycles never reach each other unless `leak` adds a stray edge."""
    s, t = 0, 1
    ids = list(range(2, n))
    rng.shuffle(ids)
    cycles = []
    pos = 0
    while pos < len(ids) and rng.random() < 0.75:
        length = min(rng.choice([1, 1, 2, 2, 3, 3, 4, 5, 6, 7]), len(ids) - pos)
        cycles.append(ids[pos:pos + length])
        pos += length
    rest = ids[pos:]
    cut = rng.randint(0, len(rest))
    front = [s] + rest[:cut]
    back = rest[cut:] + [t]
    edges = set()
    for cyc in cycles:
        for i, v in enumerate(cyc):
            edges.add((v, cyc[(i + 1) % len(cyc)]))

    def add_random(src_pool, dst_pool, count, forward=False):
        for _ in range(count):
            u = rng.choice(src_pool)
            v = rng.choice(dst_pool)
            if forward and src_pool is dst_pool:
                i, j = sorted((src_pool.index(u), src_pool.index(v)))
                if i == j:
                    continue
                u, v = src_pool[i], src_pool[j]
            edges.add((u, v))

    density = rng.uniform(0.6, 1.4)
    add_random(front, front, int(density * len(front)), forward=True)
    add_random(back, back, int(density * len(back)), forward=True)
    for cyc in cycles:
        add_random(front, cyc, rng.randint(1, 3))
        add_random(cyc, back, rng.randint(1, 3))
    add_random(front, back, rng.randint(0, 3))
    if rng.random() < leak and len(cycles) >= 2:
        a, b = rng.sample(cycles, 2)
        edges.add((rng.choice(a), rng.choice(b)))
    if rng.random() < leak and cycles:
        cyc = rng.choice(cycles)
        edges.add((rng.choice(cyc), rng.choice(cyc)))
    return StGraph(n, frozenset(edges), s, t)


def random_unary_graph(rng: random.Random, n: int) -> StGraph:
    r = rng.random()
    if r < 0.25:
        return random_graph(rng, n, extra=rng.uniform(0.0, 0.8))
    if r < 0.35:
        return progressions_to_graph_random(rng, n)
    return structured_graph(rng, n)


def progressions_to_graph_random(rng: random.Random, n: int) -> StGraph:
    from .unary import progressions_to_graph
    inst = random_progressions(rng, max(1, n - 2))
    return progressions_to_graph(inst)


def random_progressions(rng: random.Random, max_total: int) -> ProgressionsInstance:
    """Random valid instance with sum of steps <= max_total."""
    entries = []
    total = 0
    b = 0
    while True:
        b = b + rng.randint(1, 4)
        if total + b > max_total or (entries and rng.random() < 0.25):
            break
        k = rng.randint(1, min(b, 3))
        entries.append((b, tuple(rng.sample(range(b), k))))
        total += b
    if not entries:
        entries.append((1, (0,)))
    return ProgressionsInstance.of(entries)


def disjoint_instance(rng: random.Random, target: int) -> ProgressionsInstance:
    """Guaranteed-disjoint instance with sum of steps close to `target`.

    Every step is a multiple of M and each entry owns its own residues modulo
    M, so any two progressions differ modulo gcd(b_i, b_j), a multiple of M.
    """
    target = max(target, 1)
    modulus = max(1, int(round(target ** (1 / 3))))
    count = modulus
    while count > 1 and modulus * count * (count + 1) // 2 > target:
        count -= 1
    residues = list(range(modulus))
    rng.shuffle(residues)
    owned = [[residues[i]] for i in range(count)]
    for r in residues[count:]:
        owned[rng.randrange(count)].append(r)
    mults = sorted(rng.sample(range(1, 2 * count + 1), count))
    while modulus * sum(mults) > target and mults[-1] > count:
        mults = sorted(rng.sample(range(1, mults[-1]), count))
    entries = []
    for c, res in zip(mults, owned):
        b = modulus * c
        bases = sorted({r + modulus * rng.randrange(c) for r in res})
        entries.append((b, tuple(bases)))
    return ProgressionsInstance.of(entries)


def random_weighted_graph(rng: random.Random, n: int, wmax: int = 5) -> StGraph:
    """Unary weighted graph; half the time weights come from a potential plus
    a constant, so all cycles share one average and twins holds."""
    g = structured_graph(rng, n, leak=0.3) if rng.random() < 0.5 else random_graph(rng, n)
    if rng.random() < 0.5:
        phi = [rng.randint(-2, 2) for _ in range(n)]
        c = rng.randint(-1, 1)
        weight = {(u, v): max(-wmax, min(wmax, phi[v] - phi[u] + c)) for u, v in g.edges}
    else:
        weight = {e: rng.randint(-wmax, wmax) for e in g.edges}
    return StGraph(g.num_vertices, g.edges, g.s, g.t, weight)


def random_ov(rng: random.Random, k: int, n: int, d: int, ones: float | None = None):
    if ones is None:
        ones = rng.uniform(0.3, 0.85)
    return [[tuple(int(rng.random() < ones) for _ in range(d)) for _ in range(n)]
            for _ in range(k)]


def random_layered(rng: random.Random, k: int, n: int, p: float | None = None):
    if p is None:
        p = rng.uniform(0.1, 0.6)
    return [(layer, i, j) for layer in range(k) for i in range(n) for j in range(n)
            if rng.random() < p]
