import itertools

import pytest
from hypothesis import given

from ambiguity.core import (AmbiguityClass, AmbiguityVerdict, EdaWitness, IdaWitness, Nfa,
                            RunPair, StGraph, WeightedAutomaton, count_runs, frame_word,
                            normalize, normalize_weighted, reachable, tarjan_scc, to_st_graph,
                            trim, trim_graph)

from cases import HASH, load_nfa
from strategies import nfas, st_graphs, words


def all_words(sigma, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(sigma), repeat=n)


# ------------------------------------------------------------- data model

def test_nfa_rejects_out_of_range():
    with pytest.raises(ValueError):
        Nfa(2, 1, frozenset({(0, 0, 2)}), frozenset({0}), frozenset({1}))
    with pytest.raises(ValueError):
        Nfa(2, 1, frozenset({(0, 1, 1)}), frozenset({0}), frozenset({1}))
    with pytest.raises(ValueError):
        Nfa(2, 1, frozenset(), frozenset({3}), frozenset({1}))


def test_weighted_needs_every_weight():
    a = Nfa(2, 1, frozenset({(0, 0, 1)}), frozenset({0}), frozenset({1}))
    with pytest.raises(ValueError):
        WeightedAutomaton(a, {})
    w = WeightedAutomaton(a, {(0, 0, 1): 7})
    assert w.path_weight((0, 1), (0,)) == 7


def test_stgraph_validation():
    with pytest.raises(ValueError):
        StGraph(2, frozenset({(0, 2)}), 0, 1)
    with pytest.raises(ValueError):
        StGraph(2, frozenset({(0, 1)}), 0, 1, {})
    g = StGraph(3, frozenset({(0, 1), (1, 2)}), 0, 2)
    assert g.is_st_walk((0, 1, 2))
    assert not g.is_st_walk((0, 2))


def test_accepts_and_runs_on_first_automaton():
    a1 = load_nfa("a1.nfa")
    # the third letter from the end is a 1
    for w in all_words(2, 6):
        want = len(w) >= 3 and w[-3] == 1
        assert a1.accepts(w) == want
        assert count_runs(a1, w) == int(want)


@pytest.mark.parametrize("n", range(1, 6))
def test_second_automaton_doubles_runs(n):
    a2 = load_nfa("a2.nfa")
    word = [0, HASH] * (n - 1) + [0]
    assert count_runs(a2, word) == 2 ** n


def test_run_count_is_exact_beyond_machine_words():
    a2 = load_nfa("a2.nfa")
    assert count_runs(a2, [0, HASH] * 80 + [0]) == 2 ** 81


def test_fourth_automaton_on_seven_letters():
    a4 = load_nfa("a4.nfa")
    runs = count_runs(a4, [0] * 7)
    assert 7 / 6 < runs < 7


@given(nfas())
def test_empty_word_runs(a):
    assert count_runs(a, []) == len(a.initial & a.final)


# ------------------------------------------------------------------- trim

def test_trim_removes_unreachable_state():
    a = Nfa(3, 1, frozenset({(0, 0, 1), (2, 0, 1)}), frozenset({0}), frozenset({1}))
    t, origin = trim(a)
    assert origin == [0, 1]
    assert t.transitions == {(0, 0, 1)}


def test_trim_keeps_trim_automaton():
    a1 = load_nfa("a1.nfa")
    t, origin = trim(a1)
    assert origin == list(range(a1.num_states))
    assert t == a1


@given(nfas(max_states=6), words())
def test_trim_and_normalize_preserve_runs(a, w):
    want = count_runs(a, w)
    assert count_runs(trim(a)[0], w) == want
    b = normalize(a)
    assert count_runs(b, frame_word(a, w)) == want


@given(nfas(max_states=5))
def test_normalize_gives_one_initial_and_final(a):
    b = normalize(a)
    assert len(b.initial) == 1 and len(b.final) == 1


def test_normalize_leaves_normal_form_alone():
    a1 = load_nfa("a1.nfa")
    assert normalize(a1) is a1


def test_normalize_third_automaton_keeps_run_counts():
    a3 = load_nfa("a3.nfa")
    b = normalize(a3)
    assert len(b.final) == 1
    for w in ([0], [0, 1], [0, 0]):
        assert count_runs(b, frame_word(a3, w)) == count_runs(a3, w)
    assert count_runs(a3, [0]) == 2


def test_normalize_weighted_gives_zero_to_new_transitions():
    a = Nfa(2, 1, frozenset({(0, 0, 1)}), frozenset({0, 1}), frozenset({1}))
    w = normalize_weighted(WeightedAutomaton(a, {(0, 0, 1): 3}))
    assert w.weight[(0, 0, 1)] == 3
    assert {v for k, v in w.weight.items() if k != (0, 0, 1)} == {0}


# ------------------------------------------------------------- graph view

def test_chain_projects_to_path():
    a = Nfa(3, 1, frozenset({(0, 0, 1), (1, 0, 2)}), frozenset({0}), frozenset({2}))
    g = to_st_graph(a)
    assert g.edges == {(0, 1), (1, 2)} and (g.s, g.t) == (0, 2)


def test_to_st_graph_checks_shape():
    with pytest.raises(ValueError):
        to_st_graph(load_nfa("a1.nfa"))
    with pytest.raises(ValueError):
        to_st_graph(load_nfa("a3.nfa"))


def test_fourth_automaton_as_graph():
    # already in normal form: five vertices, a 2-cycle and a 3-cycle
    g = to_st_graph(normalize(load_nfa("a4.nfa")))
    assert g.num_vertices == 5
    comp, count = tarjan_scc(g.num_vertices, g.succ)
    sizes = sorted(sum(1 for v in range(5) if comp[v] == c) for c in range(count))
    assert sizes == [2, 3]


@given(nfas(max_states=4, sigma=1))
def test_walks_match_runs(a):
    b = normalize(a)
    g = to_st_graph(b)
    # number of st-walks of length l equals the runs on the unary word of length l
    vec = [0] * g.num_vertices
    vec[g.s] = 1
    for length in range(9):
        assert vec[g.t] == count_runs(b, [0] * length)
        nxt = [0] * g.num_vertices
        for u, v in g.edges:
            nxt[v] += vec[u]
        vec = nxt


@given(st_graphs(max_vertices=7))
def test_trim_graph_keeps_exactly_useful_vertices(g):
    tg, origin = trim_graph(g)
    fwd = reachable(g.succ, [g.s])
    bwd = reachable(g.pred, [g.t])
    useful = [v for v in range(g.num_vertices) if fwd[v] and bwd[v]]
    if tg is None:
        assert not useful
        return
    assert origin == useful
    assert origin[tg.s] == g.s and origin[tg.t] == g.t
    for u, v in tg.edges:
        assert (origin[u], origin[v]) in g.edges


@given(st_graphs(max_vertices=8))
def test_tarjan_matches_mutual_reachability(g):
    comp, count = tarjan_scc(g.num_vertices, g.succ)
    reach = [reachable(g.succ, [v]) for v in range(g.num_vertices)]
    for u in range(g.num_vertices):
        for v in range(g.num_vertices):
            same = reach[u][v] and reach[v][u]
            assert (comp[u] == comp[v]) == same
    # components come out in reverse topological order
    for u, v in g.edges:
        assert comp[u] >= comp[v]
    assert sorted(set(comp)) == list(range(count))


# -------------------------------------------------------------- witnesses

def test_witnesses_reject_bad_replays():
    a3 = load_nfa("a3.nfa")
    assert RunPair((0,), (0, 1), (0, 2)).replays(a3)
    assert not RunPair((0,), (0, 1), (0, 1)).replays(a3)
    assert not RunPair((1,), (0, 1), (0, 2)).replays(a3)
    a2 = load_nfa("a2.nfa")
    assert EdaWitness(0, (0, HASH), (0, 1, 0), (0, 2, 0)).replays(a2)
    assert not EdaWitness(0, (), (0,), (0,)).replays(a2)
    a4 = load_nfa("a4.nfa")
    good = IdaWitness(0, 3, (0,) * 6, (0, 1, 0, 1, 0, 1, 0), (0, 1, 0, 1, 0, 2, 3),
                      (3, 4, 2, 3, 4, 2, 3))
    assert good.replays(a4)
    assert not IdaWitness(0, 0, (0,) * 2, (0, 1, 0), (0, 1, 0), (0, 1, 0)).replays(a4)


def test_verdict_replays():
    a1 = load_nfa("a1.nfa")
    assert AmbiguityVerdict(AmbiguityClass.UNAMBIGUOUS).replays(a1)
    assert not AmbiguityVerdict(AmbiguityClass.FINITE).replays(a1)
