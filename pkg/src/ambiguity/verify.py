"""Randomized cross-checks of the fast deciders against the oracles.

Each suite takes a seed and an instance count and returns (ok, detail).
Suites stop at the first mismatch and describe it in `detail`.
"""

from __future__ import annotations

import math
import random
from typing import Callable

from .baseline import classify, has_eda, has_ida, is_unambiguous
from .core import StGraph, trim, trim_graph
from .generators import (disjoint_instance, mixed_nfa, random_ov, random_progressions,
                         random_unary_graph, random_weighted_graph)
from .oracles import (brute_class, brute_unambiguous, enumerate_walk_lengths, naive_dp_disjoint,
                      naive_intersection, naive_ov, naive_sibling_twins, naive_twins)
from .progressions import disjoint_progressions, gcd_sum, precompute_mod_sets, sigma0
from .reductions import (OvInstance, expand_wildcards, ie2_to_unambiguity, ie3_to_ida, kov_to_kie,
                         unambiguity_to_eda, unambiguity_to_twins)
from .twins import unary_twins
from .unary import SPARSITY, progressions_to_graph, unary_has_eda, unary_has_ida, unary_is_unambiguous


class Mismatch(AssertionError):
    pass


def _check(cond: bool, what: str, *context):
    if not cond:
        raise Mismatch(f"{what}: {context!r}")


def _rng(seed: int, suite: str) -> random.Random:
    return random.Random(f"{seed}:{suite}")


# ----------------------------------------------------------------- suites

def suite_general(seed: int, count: int = 2000) -> str:
    """classify against the brute-force class on small binary NFAs."""
    rng = _rng(seed, "general")
    tally: dict[str, int] = {}
    for _ in range(count):
        a, _ = trim(mixed_nfa(rng, rng.randint(1, 6), 2))
        verdict = classify(a)
        want = brute_class(a)
        _check(verdict.cls.value == want, "class differs from brute force", a, verdict, want)
        _check(verdict.replays(a), "witness does not replay", a, verdict)
        tally[want] = tally.get(want, 0) + 1
    return ", ".join(f"{k}={v}" for k, v in sorted(tally.items()))


def suite_unary(seed: int, count: int = 2000) -> str:
    """Unary deciders against walk-length enumeration and the baseline."""
    rng = _rng(seed, "unary")
    amb = done = 0
    while done < count:
        g = random_unary_graph(rng, rng.randint(2, 40))
        tg, _ = trim_graph(g)
        if tg is None:
            continue
        done += 1
        n = tg.num_vertices
        cap = 3 * n * n + 3 * n
        prof = enumerate_walk_lengths(tg, cap, saturate=2)
        ok, walks = unary_is_unambiguous(g)
        _check(ok == (prof.first_repeat() is None), "unambiguity differs from walk lengths", g)
        if not ok:
            amb += 1
            _check(walks is not None and walks.replays(g), "walk pair does not replay", g, walks)
            _check(walks.length <= cap, "collision beyond the enumeration cap", g, walks)
        a = tg.to_nfa()
        _check(unary_has_eda(g) == has_eda(a)[0], "EDA differs from baseline", g)
        _check(unary_has_ida(g) == has_ida(a)[0], "IDA differs from baseline", g)
    return f"{count} graphs, {amb} ambiguous"


def suite_progressions(seed: int, count: int = 5000, precompute: int = 200) -> str:
    rng = _rng(seed, "progressions")
    hits = 0
    for _ in range(count):
        inst = random_progressions(rng, 50)
        ok, col = disjoint_progressions(inst)
        _check(ok == naive_dp_disjoint(inst.entries), "disjointness differs from enumeration", inst)
        if col is not None:
            hits += 1
            bi, bj = inst.entries[col.i][0], inst.entries[col.j][0]
            _check(col.value % bi == col.a_i and col.value % bj == col.a_j
                   and col.value >= max(col.a_i, col.a_j), "bad collision", inst, col)
    for _ in range(precompute):
        N = rng.randint(1, 10 ** 4)
        A = rng.sample(range(N), rng.randint(1, min(N, 30)))
        table = precompute_mod_sets(A, N)
        divs = [d for d in range(1, N + 1) if N % d == 0]
        _check(sorted(table) == divs, "divisor set differs", N)
        for d in divs:
            _check(table[d] == {a % d for a in A}, "residues differ", N, d)
    return f"{count} instances ({hits} collisions), {precompute} precomputations"


def suite_sparsity(seed: int, count: int = 1000) -> str:
    rng = _rng(seed, "sparsity")
    worst = 0.0
    for _ in range(count):
        inst = disjoint_instance(rng, rng.randint(1, 400))
        g = progressions_to_graph(inst)
        _check(len(g.edges) <= SPARSITY * g.num_vertices, "sparsity violated", inst)
        worst = max(worst, len(g.edges) / g.num_vertices)
    return f"{count} graphs, max m/n = {worst:.2f}"


def sibling_gadget(y1: int, y2: int, x1: int = 0, x2: int = 0) -> StGraph:
    """s reaches p and q on one letter; p and q carry 1-cycles of weights
    y1 and y2 and both lead to t."""
    s, p, q, t = 0, 1, 2, 3
    weight = {(s, p): x1, (s, q): x2, (p, p): y1, (q, q): y2, (p, t): 0, (q, t): 0}
    return StGraph(4, frozenset(weight), s, t, weight)


def suite_twins(seed: int, count: int = 2000, roundtrip: int = 500) -> str:
    rng = _rng(seed, "twins")
    bad = done = 0
    while done < count:
        g = random_weighted_graph(rng, rng.randint(2, 12), 5)
        if trim_graph(g)[0] is None:
            continue
        done += 1
        ok, w = unary_twins(g)
        _check(ok == naive_twins(g), "twins differs from cycle averages", g)
        if not ok:
            bad += 1
            _check(w is not None and w.replays(g), "sibling witness does not replay", g, w)
    for y1 in range(-2, 3):
        for y2 in range(-2, 3):
            _check(unary_twins(sibling_gadget(y1, y2))[0] == (y1 == y2), "sibling gadget", y1, y2)
    amb = 0
    for _ in range(roundtrip):
        a, _ = trim(mixed_nfa(rng, rng.randint(1, 5), 2))
        unamb = brute_unambiguous(a)
        amb += not unamb
        _check(naive_sibling_twins(unambiguity_to_twins(a)) == unamb, "twins round trip", a)
    return f"{count} graphs ({bad} not twins), {roundtrip} round trips ({amb} ambiguous)"


def suite_reductions(seed: int, count: int = 500, triples: int = 200, binary: bool = True) -> str:
    """k-OV -> k-IE -> ambiguity questions, every link against an oracle."""
    rng = _rng(seed, "reductions")
    found = [0, 0]
    for k, total in ((2, count), (3, triples)):
        for _ in range(total):
            ov = OvInstance(tuple(tuple(s) for s in random_ov(rng, k, rng.randint(1, 8),
                                                              rng.randint(1, 6))))
            want = naive_ov(ov.sets)
            found[k - 2] += want
            gadgets = kov_to_kie(ov)
            dfas = [d.to_nfa() for d in gadgets]
            _check(naive_intersection(dfas)[0] == want, "k-IE differs from k-OV", ov)
            if binary:
                bits = [expand_wildcards(d) for d in gadgets]
                _check(naive_intersection(bits)[0] == want, "binary k-IE differs", ov)
            if k == 2:
                union = ie2_to_unambiguity(*dfas)
                _check((not is_unambiguous(union)[0]) == want, "unambiguity link", ov)
                _check(has_eda(unambiguity_to_eda(union))[0] == want, "EDA link", ov)
            else:
                _check(has_ida(ie3_to_ida(*dfas))[0] == want, "IDA link", ov)
    return f"2-OV {count} ({found[0]} yes), 3-OV {triples} ({found[1]} yes)"


def random_sum_set(rng: random.Random, N: int) -> list[int]:
    """Distinct positive integers summing exactly to N."""
    top = max(1, 4 * math.isqrt(N))
    used: set[int] = set()
    left = N
    while True:
        a = rng.randint(1, top)
        if a in used:
            continue
        if a >= left:
            break
        used.add(a)
        left -= a
    # the remainder joins the set directly, or is folded into the maximum
    if left in used:
        big = max(used)
        used.remove(big)
        left += big
    used.add(left)
    return sorted(used)


def gcd_growth(seed: int, count: int = 50) -> list[tuple[int, int, int]]:
    """(N, gcd_sum, N * max sigma0) for `count` random sets with sum N."""
    rng = _rng(seed, "gcd")
    rows = []
    for i in range(count):
        N = int(round(10 ** (3 + 3 * i / max(count - 1, 1))))
        A = random_sum_set(rng, N)
        rows.append((N, gcd_sum(A), N * max(sigma0(a) for a in A)))
    return rows


def growth_exponent(rows: list[tuple[int, int, int]]) -> float:
    """Least-squares slope of log(gcd_sum) against log(N)."""
    xs = [math.log(r[0]) for r in rows]
    ys = [math.log(r[1]) for r in rows]
    mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
    return sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)


def suite_gcd(seed: int, count: int = 50) -> str:
    rows = gcd_growth(seed, count)
    for N, total, bound in rows:
        _check(total <= bound, "gcd sum above N * max sigma0", N, total, bound)
    return f"{count} sets, growth exponent {growth_exponent(rows):.3f}"


SUITES: dict[str, Callable[..., str]] = {
    "general": suite_general,
    "unary": suite_unary,
    "progressions": suite_progressions,
    "sparsity": suite_sparsity,
    "twins": suite_twins,
    "reductions": suite_reductions,
    "gcd": suite_gcd,
}


def run_suite(name: str, seed: int = 0, count: int | None = None, cap: int | None = None) -> tuple[bool, str]:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if cap is not None and count is not None:
        count = min(count, cap)
    fn = SUITES[name]
    try:
        detail = fn(seed) if count is None else fn(seed, count)
    except Mismatch as exc:
        return False, str(exc)
    return True, detail
