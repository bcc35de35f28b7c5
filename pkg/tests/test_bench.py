import io
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ambiguity.bench import (FAMILIES, BenchRecord, doubling_ratios, pad_source, run_bench,
                             top_ratio, write_csv)
from ambiguity.core import trim_graph
from ambiguity.oracles import enumerate_walk_lengths, naive_twins
from ambiguity.twins import unary_twins
from ambiguity.unary import unary_has_eda, unary_has_ida, unary_is_unambiguous

from cases import two_step_graph

EXPECTED = {
    "unary-unambiguity": "unambiguous",
    "unary-unambiguity-amb": "ambiguous",
    "unary-comb": "unambiguous",
    "unary-cycles": "no-ida",
    "unary-twins": "twins",
}


@pytest.mark.parametrize("family", sorted(FAMILIES))
@pytest.mark.parametrize("n", [16, 64, 256])
def test_family_sizes_and_verdicts(family, n):
    make, algos = FAMILIES[family]
    g, _ = make(random.Random(n), n)
    assert g.num_vertices == n
    assert trim_graph(g)[0] is not None
    verdicts = {run(g) for _, run in algos}
    assert EXPECTED[family] in verdicts


@given(st.integers(0, 2 ** 32), st.integers(4, 14))
def test_small_families_against_oracles(seed, n):
    rng = random.Random(seed)
    g, _ = FAMILIES["unary-unambiguity"][0](rng, n)
    cap = 3 * n * n + 3 * n
    assert enumerate_walk_lengths(g, cap, saturate=2).first_repeat() is None
    g, _ = FAMILIES["unary-unambiguity-amb"][0](rng, n)
    ok, walks = unary_is_unambiguous(g)
    assert not ok and walks.replays(g)
    g, _ = FAMILIES["unary-twins"][0](rng, n)
    assert naive_twins(g) and unary_twins(g)[0]
    g, _ = FAMILIES["unary-cycles"][0](rng, n)
    assert not unary_has_eda(g) and not unary_has_ida(g)


def test_pad_source_shifts_lengths():
    g = two_step_graph()
    h = pad_source(g, 14)
    assert h.num_vertices == 14
    before = enumerate_walk_lengths(g, 30).counts
    after = enumerate_walk_lengths(h, 35).counts
    assert after[5:] == before[:31]
    assert pad_source(g, 3) is g


def test_run_bench_records():
    recs = run_bench("unary-cycles", [32, 16], repeats=2, seed=1)
    assert [(r.algo, r.n) for r in recs] == [
        ("unary_has_eda", 16), ("unary_has_eda", 16), ("unary_has_ida", 16), ("unary_has_ida", 16),
        ("unary_has_eda", 32), ("unary_has_eda", 32), ("unary_has_ida", 32), ("unary_has_ida", 32)]
    assert all(r.millis >= 0 for r in recs)
    with pytest.raises(KeyError):
        run_bench("nope", [8])


def test_doubling_ratios_use_medians():
    recs = [BenchRecord("f", "x", n, n, ms, "v") for n, ms in
            [(1, 1.0), (1, 9.0), (1, 2.0), (2, 4.0), (2, 4.0), (2, 100.0), (4, 8.0)]]
    assert doubling_ratios(recs) == {("f", "x"): [2.0, 2.0]}


def test_top_ratio():
    assert top_ratio([9.0, 1.0, 2.0, 3.0, 4.0, 5.0]) == 3.0
    assert top_ratio([2.0, 4.0], top=5) == 3.0


def test_csv_layout():
    buf = io.StringIO()
    write_csv([BenchRecord("a", "f", 8, 9, 1.23456, "ok", "k=1")], buf)
    assert buf.getvalue() == "algo,family,n,m,millis,verdict,extra\na,f,8,9,1.235,ok,k=1\n"
