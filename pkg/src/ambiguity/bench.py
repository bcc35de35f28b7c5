"""Benchmark harness: instance families, timed runs and doubling ratios."""

from __future__ import annotations

import csv
import gc
import random
import statistics
import time
from dataclasses import dataclass
from typing import Callable, Iterable, TextIO

from .core import StGraph
from .generators import disjoint_instance
from .progressions import ProgressionsInstance, gcd_sum, sigma1_total
from .twins import unary_twins
from .unary import progressions_to_graph, unary_has_eda, unary_has_ida, unary_is_unambiguous

CSV_HEADER = ["algo", "family", "n", "m", "millis", "verdict", "extra"]


@dataclass(frozen=True)
class BenchRecord:
    algo: str
    family: str
    n: int
    m: int
    millis: float
    verdict: str
    extra: str = ""

    def row(self) -> list:
        return [self.algo, self.family, self.n, self.m, f"{self.millis:.3f}", self.verdict, self.extra]


# ---------------------------------------------------------------- families

def _steps_extra(inst: ProgressionsInstance) -> str:
    steps = inst.steps
    return f"k={len(steps)};sum_gcd={gcd_sum(steps)};sigma1={sigma1_total(steps)}"


def pad_source(g: StGraph, n: int) -> StGraph:
    """Prepend a path to s so that g has exactly n vertices. Every st-walk
    grows by the same amount, so walk-length collisions, cycles and weights
    of cycles are unchanged."""
    extra = n - g.num_vertices
    if extra <= 0:
        return g
    v0 = g.num_vertices
    path = list(range(v0, n)) + [g.s]
    new_edges = {(path[i], path[i + 1]) for i in range(extra)}
    weight = None
    if g.weight is not None:
        weight = dict(g.weight)
        weight.update({e: 0 for e in new_edges})
    return StGraph(n, g.edges | new_edges, v0, g.t, weight)


def unambiguous_family(rng: random.Random, n: int) -> tuple[StGraph, str]:
    """progressions_to_graph of a disjoint instance: unambiguous, trim."""
    inst = disjoint_instance(rng, max(1, n - 2))
    return pad_source(progressions_to_graph(inst), n), _steps_extra(inst)


def ambiguous_family(rng: random.Random, n: int) -> tuple[StGraph, str]:
    """As above, but the largest step also receives the first base of the
    smallest step, so both progressions contain that value."""
    inst = disjoint_instance(rng, max(1, n - 2))
    entries = [list(e) for e in inst.entries]
    if len(entries) >= 2:
        first = entries[0][1][0]
        entries[-1][1] = tuple(sorted(set(entries[-1][1]) | {first}))
    else:
        b, bases = entries[0]
        entries.append((b + 1, (bases[0],)))
    inst = ProgressionsInstance.of(entries)
    return pad_source(progressions_to_graph(inst), n), _steps_extra(inst)


def comb_family(rng: random.Random, n: int) -> tuple[StGraph, str]:
    """Chain v_0 .. v_{n-1} with a shortcut from every v_i to the end; the
    st-walk lengths 1 .. n-1 are all distinct."""
    n = max(n, 2)
    edges = {(i, i + 1) for i in range(n - 1)} | {(i, n - 1) for i in range(n - 1)}
    return StGraph(n, frozenset(edges), 0, n - 1), ""


def cycles_family(rng: random.Random, n: int) -> tuple[StGraph, str]:
    """Disjoint cycles hanging between s and t, none reaching another."""
    s, t = 0, 1
    edges = set()
    v = 2
    count = 0
    while v + 3 <= n:
        length = min(rng.randint(3, 16), n - v)
        cyc = list(range(v, v + length))
        for i in range(length):
            edges.add((cyc[i], cyc[(i + 1) % length]))
        edges.add((s, cyc[0]))
        edges.add((cyc[rng.randrange(length)], t))
        v += length
        count += 1
    edges.add((s, t))
    return pad_source(StGraph(v, frozenset(edges), s, t), n), f"cycles={count}"


def twins_family(rng: random.Random, n: int) -> tuple[StGraph, str]:
    """Chain of strongly connected blocks, each a cycle with one chord,
    weighted by a potential plus a constant: every cycle has the same
    average, so the whole graph is scanned and twins holds."""
    c = rng.randint(-3, 3)
    edges = set()
    blocks = []
    v = 0
    while v < n:
        length = min(rng.randint(3, 12), n - v)
        block = list(range(v, v + length))
        for i in range(length):
            edges.add((block[i], block[(i + 1) % length]))
        if length >= 3:
            edges.add((block[-1], block[length // 2]))
        if blocks:
            edges.add((blocks[-1][-1], block[0]))
        blocks.append(block)
        v += length
    phi = [rng.randint(-5, 5) for _ in range(v)]
    weight = {(a, b): phi[b] - phi[a] + c for a, b in edges}
    return StGraph(v, frozenset(edges), 0, v - 1, weight), f"blocks={len(blocks)}"


def _run_unamb(g: StGraph) -> str:
    return "unambiguous" if unary_is_unambiguous(g, witness=False)[0] else "ambiguous"


def _run_eda(g: StGraph) -> str:
    return "eda" if unary_has_eda(g) else "no-eda"


def _run_ida(g: StGraph) -> str:
    return "ida" if unary_has_ida(g) else "no-ida"


def _run_twins(g: StGraph) -> str:
    return "twins" if unary_twins(g)[0] else "not-twins"


Family = tuple[Callable[[random.Random, int], tuple[StGraph, str]], list[tuple[str, Callable[[StGraph], str]]]]

FAMILIES: dict[str, Family] = {
    "unary-unambiguity": (unambiguous_family, [("unary_is_unambiguous", _run_unamb)]),
    "unary-unambiguity-amb": (ambiguous_family, [("unary_is_unambiguous", _run_unamb)]),
    "unary-comb": (comb_family, [("unary_is_unambiguous", _run_unamb)]),
    "unary-cycles": (cycles_family, [("unary_has_eda", _run_eda), ("unary_has_ida", _run_ida)]),
    "unary-twins": (twins_family, [("unary_twins", _run_twins)]),
}

# thresholds on the median doubling ratio used by the scaling check
RATIO_LIMITS = {
    "unary_is_unambiguous": 2.6,
    "unary_has_eda": 2.3,
    "unary_has_ida": 2.3,
    "unary_twins": 2.3,
}


# ------------------------------------------------------------------ timing

def time_call(fn: Callable[[], str]) -> tuple[float, str]:
    """Run fn once with the garbage collector paused; (millis, result)."""
    gc.collect()
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        start = time.perf_counter()
        result = fn()
        elapsed = time.perf_counter() - start
    finally:
        if was_enabled:
            gc.enable()
    return elapsed * 1000.0, result


def run_bench(family: str, sizes: Iterable[int], repeats: int = 3, seed: int = 0) -> list[BenchRecord]:
    if family not in FAMILIES:
        raise KeyError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}")
    make, algos = FAMILIES[family]
    records = []
    for n in sorted(sizes):
        rng = random.Random(f"{seed}:{family}:{n}")
        g, extra = make(rng, n)
        # adjacency lists are part of the input representation: build them
        # once here so that every timed repeat sees the same state
        g.succ, g.pred
        for algo, run in algos:
            for _ in range(repeats):
                millis, verdict = time_call(lambda: run(g))
                records.append(BenchRecord(algo, family, g.num_vertices, len(g.edges),
                                           millis, verdict, extra))
        del g
    return records


def write_csv(records: Iterable[BenchRecord], out: TextIO):
    w = csv.writer(out, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in records:
        w.writerow(r.row())


def doubling_ratios(records: Iterable[BenchRecord]) -> dict[tuple[str, str], list[float]]:
    """Per (algo, family), ratios of median times of consecutive sizes."""
    runs: dict[tuple[str, str], dict[int, list[float]]] = {}
    for r in records:
        runs.setdefault((r.algo, r.family), {}).setdefault(r.n, []).append(r.millis)
    out = {}
    for key, by_n in runs.items():
        sizes = sorted(by_n)
        med = [statistics.median(by_n[n]) for n in sizes]
        out[key] = [med[i + 1] / med[i] if med[i] > 0 else float("inf")
                    for i in range(len(med) - 1)]
    return out


def top_ratio(ratios: list[float], top: int = 5) -> float:
    """Median of the last `top` doubling ratios."""
    tail = ratios[-top:]
    return statistics.median(tail) if tail else float("nan")
