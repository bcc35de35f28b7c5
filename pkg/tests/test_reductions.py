import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ambiguity.baseline import has_eda, has_ida, is_unambiguous
from ambiguity.core import IdaWitness, Nfa, normalize, trim
from ambiguity.oracles import (brute_unambiguous, naive_intersection, naive_kcycle, naive_ov,
                               naive_sibling_twins)
from ambiguity.reductions import (GadgetDfa, Label, LayeredGraph, OvInstance, binary_encode,
                                  bits_needed, cycle_word, decode_word, encode_symbol,
                                  encode_word, expand_wildcards, expand_wildcards_named,
                                  ie2_to_unambiguity, ie3_to_ida, kcycle_to_2ie, kov_to_kie,
                                  unambiguity_to_eda, unambiguity_to_twins)

from cases import (load_layered, load_nfa, load_ov, star_dfa, twins_source_nfa, unary_aa_dfa,
                   wildcard_gadget)
from strategies import dfas, nfas


def block_targets(a: Nfa, x: int, bits) -> set[int]:
    cur = {x}
    for b in bits:
        cur = {q for p in cur for q in a.delta[p].get(b, ())}
    return cur


def all_words(sigma, max_len):
    for n in range(max_len + 1):
        yield from itertools.product(range(sigma), repeat=n)


# ------------------------------------------------------------------ inputs

def test_input_validation():
    with pytest.raises(ValueError):
        OvInstance(())
    with pytest.raises(ValueError):
        OvInstance((((0, 1),), ((0, 1, 1),)))
    with pytest.raises(ValueError):
        LayeredGraph(2, 2, frozenset({(2, 0, 0)}))
    with pytest.raises(ValueError):
        GadgetDfa(2, 4, ((0, Label.any(0, 3), 1), (0, Label.symbol(2), 0)), 0, frozenset({1}))


# -------------------------------------------------------- binary encoding

def test_bits_needed():
    assert [bits_needed(s) for s in (1, 2, 3, 4, 5, 8, 9, 16, 17)] == [1, 1, 2, 2, 3, 3, 4, 4, 5]


def test_encode_nine():
    assert encode_symbol(9, 4) == [1, 0, 0, 1]


@given(st.lists(st.integers(0, 15), max_size=6), st.integers(4, 6))
def test_encode_decode(word, h):
    assert decode_word(encode_word(word, h), h) == word


def test_binary_alphabet_keeps_structure():
    a = star_dfa(1)
    b = binary_encode(a)
    assert b.transitions == a.transitions
    assert b.num_states == a.num_states


@settings(max_examples=40)
@given(st.integers(2, 8).flatmap(lambda s: dfas(max_states=6, sigma=s)))
def test_binary_encoding_preserves_language(a):
    b = binary_encode(a)
    h = bits_needed(a.alphabet_size)
    assert b.alphabet_size == 2 and b.is_deterministic()
    for w in all_words(a.alphabet_size, 3 if a.alphabet_size > 4 else 4):
        assert b.accepts(encode_word(w, h)) == a.accepts(w)


def test_tree_gadget_for_eight_symbols():
    # one state with a distinct successor per symbol: a three-level tree
    trans = frozenset((0, c, 1 + c) for c in range(8))
    a = Nfa(9, 8, trans, frozenset({0}), frozenset(range(1, 9)))
    b = binary_encode(a)
    for c in range(8):
        assert block_targets(b, 0, encode_symbol(c, 3)) == {1 + c}
    # a full binary tree of depth 3 has 1 + 2 + 4 internal nodes
    assert b.num_states == 9 + 2 + 4


def test_wildcard_reads_every_block():
    b, names = expand_wildcards_named(wildcard_gadget(16))
    x, y = names.index("x"), names.index("y")
    assert all(block_targets(b, x, encode_symbol(c, 4)) == {y} for c in range(16))
    assert b.num_states <= 2 + 4


def test_almost_wildcard_rejects_only_its_symbol():
    b, names = expand_wildcards_named(wildcard_gadget(16, but=9))
    x, y = names.index("x"), names.index("y")
    hits = [c for c in range(16) if block_targets(b, x, encode_symbol(c, 4)) == {y}]
    assert len(hits) == 15 and 9 not in hits
    assert not block_targets(b, x, [1, 0, 0, 1])


@st.composite
def gadgets(draw):
    sigma = draw(st.integers(2, 16))
    n = draw(st.integers(1, 4))
    trans = []
    for p in range(n):
        kind = draw(st.sampled_from(["none", "any", "anybut", "symbols"]))
        q = st.integers(0, n - 1)
        if kind == "any":
            trans.append((p, Label.any(0, sigma - 1), draw(q)))
        elif kind == "anybut":
            c = draw(st.integers(0, sigma - 1))
            trans.append((p, Label.anybut(0, sigma - 1, c), draw(q)))
            if draw(st.booleans()):
                trans.append((p, Label.symbol(c), draw(q)))
        elif kind == "symbols":
            for c in draw(st.sets(st.integers(0, sigma - 1), max_size=4)):
                trans.append((p, Label.symbol(c), draw(q)))
    return GadgetDfa(n, sigma, tuple(trans), 0, frozenset({n - 1}))


@given(gadgets())
def test_gadget_blocks_follow_labels(d):
    b = expand_wildcards(d)
    h = bits_needed(d.alphabet_size)
    assert b.is_deterministic()
    for p in range(d.num_states):
        for c in range(d.alphabet_size):
            want = {q for x, lab, q in d.transitions if x == p and c in lab.symbols()}
            assert block_targets(b, p, encode_symbol(c, h)) == want
        for c in range(d.alphabet_size, 2 ** h):
            assert not block_targets(b, p, encode_symbol(c, h)) & set(range(d.num_states))


# ---------------------------------------------------------------------- OV

def test_ov_example_accepts_its_word():
    ov = load_ov("ov_pair.ov")
    word = [2, 1, 1, 2, 2, 1]
    gadgets_ = kov_to_kie(ov)
    assert all(d.to_nfa().accepts(word) for d in gadgets_)
    h = bits_needed(gadgets_[0].alphabet_size)
    assert all(expand_wildcards(d).accepts(encode_word(word, h)) for d in gadgets_)
    assert naive_ov(ov.sets)


def test_all_ones_vectors_give_empty_intersection():
    ov = OvInstance(tuple(((1, 1, 1),) * 2 for _ in range(3)))
    assert not naive_intersection([d.to_nfa() for d in kov_to_kie(ov)])[0]


@st.composite
def ov_instances(draw, k=None, max_n=8, max_d=6):
    k = k or draw(st.integers(2, 3))
    n = draw(st.integers(1, max_n))
    d = draw(st.integers(1, max_d))
    vec = st.tuples(*[st.integers(0, 1)] * d)
    return OvInstance(tuple(tuple(draw(st.lists(vec, min_size=n, max_size=n))) for _ in range(k)))


@settings(max_examples=60)
@given(ov_instances())
def test_ov_to_intersection(ov):
    want = naive_ov(ov.sets)
    gadgets_ = kov_to_kie(ov)
    assert naive_intersection([d.to_nfa() for d in gadgets_])[0] == want
    assert naive_intersection([expand_wildcards(d) for d in gadgets_])[0] == want


@settings(max_examples=60)
@given(ov_instances(k=2))
def test_two_ov_chain(ov):
    want = naive_ov(ov.sets)
    d1, d2 = (d.to_nfa() for d in kov_to_kie(ov))
    union = ie2_to_unambiguity(d1, d2)
    assert (not is_unambiguous(union)[0]) == want
    assert has_eda(unambiguity_to_eda(union))[0] == want


@settings(max_examples=30)
@given(ov_instances(k=2, max_n=2, max_d=2))
def test_two_ov_chain_to_twins(ov):
    d1, d2 = (d.to_nfa() for d in kov_to_kie(ov))
    w = unambiguity_to_twins(ie2_to_unambiguity(d1, d2))
    assert (not naive_sibling_twins(w)) == naive_ov(ov.sets)


@settings(max_examples=40)
@given(ov_instances(k=3, max_n=4, max_d=4))
def test_three_ov_chain(ov):
    d1, d2, d3 = (d.to_nfa() for d in kov_to_kie(ov))
    assert has_ida(ie3_to_ida(d1, d2, d3))[0] == naive_ov(ov.sets)


# ------------------------------------------------------------------ k-Cycle

def test_layered_example_word():
    g = load_layered("three_layers.layers")
    d1, d2 = kcycle_to_2ie(g)
    assert cycle_word([1, 1, 0]) == [1, 1, 0, 1]
    assert d1.to_nfa().accepts([1, 1, 0, 1]) and d2.to_nfa().accepts([1, 1, 0, 1])
    assert naive_intersection([d1.to_nfa(), d2.to_nfa()]) == (True, (1, 1, 0, 1))
    assert naive_kcycle(g.k, g.n, sorted(g.edges))


def test_edgeless_layers_have_no_cycle():
    d1, d2 = kcycle_to_2ie(LayeredGraph(3, 3, frozenset()))
    assert not naive_intersection([d1.to_nfa(), d2.to_nfa()])[0]


@st.composite
def layered_graphs(draw):
    n = draw(st.integers(1, 4))
    triples = [(layer, i, j) for layer in range(3) for i in range(n) for j in range(n)]
    return LayeredGraph(3, n, frozenset(draw(st.sets(st.sampled_from(triples)))))


@given(layered_graphs())
def test_kcycle_to_intersection(g):
    want = naive_kcycle(g.k, g.n, sorted(g.edges))
    d1, d2 = kcycle_to_2ie(g)
    assert naive_intersection([d1.to_nfa(), d2.to_nfa()])[0] == want
    assert naive_intersection([expand_wildcards(d1), expand_wildcards(d2)])[0] == want
    union = ie2_to_unambiguity(d1.to_nfa(), d2.to_nfa())
    assert (not is_unambiguous(union)[0]) == want


# ------------------------------------------------------ 2-IE to unambiguity

def test_same_dfa_twice_is_ambiguous():
    d = star_dfa(0)
    assert not is_unambiguous(ie2_to_unambiguity(d, d))[0]


def test_disjoint_languages_are_unambiguous():
    assert is_unambiguous(ie2_to_unambiguity(star_dfa(0), star_dfa(1)))[0]


def test_union_needs_dfas():
    with pytest.raises(ValueError):
        ie2_to_unambiguity(load_nfa("a3.nfa"), star_dfa(0))


@given(dfas(), dfas())
def test_union_size_and_meaning(d1, d2):
    u = ie2_to_unambiguity(d1, d2)
    assert u.num_states == d1.num_states + d2.num_states
    assert (not brute_unambiguous(u)) == naive_intersection([d1, d2])[0]


# ---------------------------------------------------- unambiguity to EDA

def test_eda_from_unambiguous_first_automaton():
    assert not has_eda(unambiguity_to_eda(load_nfa("a1.nfa")))[0]


def test_eda_from_two_run_automaton():
    a3 = load_nfa("a3.nfa")
    b = unambiguity_to_eda(a3)
    ok, w = has_eda(b)
    assert ok and w.replays(b)
    assert w.word[-1] == b.alphabet_size - 1


@given(nfas(max_states=5))
def test_eda_reduction(a):
    b = normalize(trim(a)[0])
    out = unambiguity_to_eda(a)
    assert len(out.transitions) == len(b.transitions) + 1
    assert out.alphabet_size == b.alphabet_size + 1
    assert has_eda(out)[0] == (not is_unambiguous(a)[0])


# ------------------------------------------------------------ 3-IE to IDA

def test_ida_from_three_copies_of_aa():
    d = unary_aa_dfa()
    b = ie3_to_ida(d, d, d)
    dollar, hash_ = 1, 2
    s, t = 3, 10
    word = (dollar, 0, 0, hash_)
    w = IdaWitness(s, t, word, (s, 0, 1, 2, s), (s, 4, 5, 6, t), (t, 7, 8, 9, t))
    assert w.replays(b)
    assert has_ida(b)[0]


def test_ida_needs_nonempty_languages():
    d = unary_aa_dfa()
    empty = Nfa(1, 1, frozenset({(0, 0, 0)}), frozenset({0}), frozenset())
    assert not has_ida(ie3_to_ida(d, empty, d))[0]


@settings(max_examples=80)
@given(dfas(), dfas(), dfas())
def test_ida_reduction(d1, d2, d3):
    out = ie3_to_ida(d1, d2, d3)
    n = d1.num_states + d2.num_states + d3.num_states
    m = len(d1.transitions) + len(d2.transitions) + len(d3.transitions)
    assert out.num_states == n + 2
    assert len(out.transitions) <= m + n + 3
    assert out.alphabet_size == max(d.alphabet_size for d in (d1, d2, d3)) + 2
    assert has_ida(out)[0] == naive_intersection([d1, d2, d3])[0]


# --------------------------------------------------------- unambiguity to twins

def test_twins_example_cycles_have_weights_one_and_two():
    a = twins_source_nfa()
    w = unambiguity_to_twins(a)
    n = 4
    qi, x, y, qf = 0, 1, 2, 3
    a_, b_, dollar, hash_ = 0, 1, 2, 3
    word = (a_, hash_, a_, dollar, b_)
    c1 = (y + 2 * n, qf + 2 * n, qi, x, x + n, y + 2 * n)
    c2 = (qf + 2 * n, qf + 2 * n, qi, x, x + n, qf + 2 * n)
    assert w.nfa.is_path(c1, word) and w.nfa.is_path(c2, word)
    assert w.path_weight(c1, word) == 1
    assert w.path_weight(c2, word) == 2
    assert not naive_sibling_twins(w)


@given(dfas(max_states=4))
def test_dfa_gives_twins(d):
    assert naive_sibling_twins(unambiguity_to_twins(d))


@settings(max_examples=80)
@given(nfas(max_states=4))
def test_twins_reduction(a):
    b = normalize(a)
    w = unambiguity_to_twins(a)
    assert w.nfa.num_states == 3 * b.num_states
    assert len(w.nfa.transitions) == b.num_states + 3 * len(b.transitions) + 1
    assert w.nfa.alphabet_size == b.alphabet_size + 2
    assert naive_sibling_twins(w) == brute_unambiguous(a)
