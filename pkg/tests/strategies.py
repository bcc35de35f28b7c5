"""Hypothesis strategies for automata, graphs and progressions."""

from __future__ import annotations

from hypothesis import strategies as st

from ambiguity.core import Nfa, StGraph
from ambiguity.progressions import ProgressionsInstance


@st.composite
def nfas(draw, max_states: int = 5, sigma: int = 2, min_states: int = 1):
    n = draw(st.integers(min_states, max_states))
    triples = [(p, a, q) for p in range(n) for a in range(sigma) for q in range(n)]
    trans = draw(st.sets(st.sampled_from(triples), max_size=3 * n * sigma))
    states = st.integers(0, n - 1)
    initial = draw(st.sets(states, min_size=1, max_size=2))
    final = draw(st.sets(states, min_size=1, max_size=2))
    return Nfa(n, sigma, frozenset(trans), frozenset(initial), frozenset(final))


@st.composite
def dfas(draw, max_states: int = 4, sigma: int = 2):
    n = draw(st.integers(1, max_states))
    trans = set()
    for p in range(n):
        for a in range(sigma):
            q = draw(st.one_of(st.none(), st.integers(0, n - 1)))
            if q is not None:
                trans.add((p, a, q))
    final = draw(st.sets(st.integers(0, n - 1), max_size=n))
    return Nfa(n, sigma, frozenset(trans), frozenset({0}), frozenset(final))


def words(sigma: int = 2, max_len: int = 8):
    return st.lists(st.integers(0, sigma - 1), max_size=max_len)


@st.composite
def st_graphs(draw, max_vertices: int = 8, weights: int | None = None, min_vertices: int = 2):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(n)]
    edges = draw(st.sets(st.sampled_from(pairs), max_size=3 * n))
    weight = None
    if weights is not None:
        weight = {e: draw(st.integers(-weights, weights)) for e in sorted(edges)}
    s = draw(st.integers(0, n - 1))
    t = draw(st.integers(0, n - 1))
    return StGraph(n, frozenset(edges), s, t, weight)


@st.composite
def progressions(draw, max_total: int = 40):
    steps = sorted(draw(st.sets(st.integers(1, 15), min_size=1, max_size=4)))
    while sum(steps) > max_total:
        steps.pop()
    entries = []
    for b in steps:
        bases = draw(st.sets(st.integers(0, b - 1), min_size=1, max_size=min(b, 3)))
        entries.append((b, bases))
    return ProgressionsInstance.of(entries)
