"""Acceptance checks, one test per criterion.

Each test records a single PASS/FAIL line which conftest prints in the
terminal summary, so a plain `pytest -v` run ends with the whole table.
Counts, tolerances and time limits are the required ones.
"""

import csv
import time

from ambiguity.baseline import classify
from ambiguity.bench import RATIO_LIMITS, BenchRecord, doubling_ratios, top_ratio
from ambiguity.cli import main
from ambiguity.core import count_runs
from ambiguity.oracles import naive_dp_disjoint, naive_intersection, naive_sibling_twins
from ambiguity.progressions import disjoint_progressions
from ambiguity.reductions import (cycle_word, ie3_to_ida, kcycle_to_2ie, kov_to_kie,
                                  unambiguity_to_twins)
from ambiguity.verify import gcd_growth, growth_exponent, run_suite

from cases import HASH, load_layered, load_nfa, load_ov, load_progressions, twins_source_nfa, \
    unary_aa_dfa

REPORT: list[str] = []


def report(label: str, ok: bool, detail: str, elapsed: float, limit: float | None):
    budget = f" (limit {limit:.0f}s)" if limit else ""
    REPORT.append(f"{'PASS' if ok else 'FAIL'} {label}: {detail} [{elapsed:.1f}s{budget}]")


def timed_suite(label, suite, limit, **kw):
    start = time.perf_counter()
    try:
        ok, detail = run_suite(suite, seed=0, **kw)
    except AssertionError as err:
        ok, detail = False, str(err)
    elapsed = time.perf_counter() - start
    report(label, ok and elapsed < limit, detail, elapsed, limit)
    assert ok, detail
    assert elapsed < limit
    return detail


# ---------------------------------------------------------------------------

def test_c1_example_automata():
    start = time.perf_counter()
    want = {"a1.nfa": "Unambiguous", "a2.nfa": "ExponentiallyAmbiguous",
            "a3.nfa": "FinitelyAmbiguous", "a4.nfa": "PolynomiallyAmbiguous"}
    got = {name: classify(load_nfa(name)).cls.value for name in want}
    a2 = load_nfa("a2.nfa")
    runs = [count_runs(a2, [0, HASH] * (n - 1) + [0]) for n in range(1, 6)]
    elapsed = time.perf_counter() - start
    ok = got == want and runs == [2, 4, 8, 16, 32] and elapsed < 1.0
    report("1 example automata", ok, f"classes {list(got.values())}, runs {runs}", elapsed, 1)
    assert got == want
    assert runs == [2 ** n for n in range(1, 6)]
    assert elapsed < 1.0


def test_c2_general_against_brute_force():
    timed_suite("2 general classifier vs brute force", "general", 120, count=2000)


def test_c3_unary_against_enumeration():
    timed_suite("3 unary vs walk enumeration", "unary", 120, count=2000)


def test_c4_progressions():
    start = time.perf_counter()
    inst = load_progressions("two_steps.prog")
    ok2, col = disjoint_progressions(inst)
    two_step = (not ok2 and not naive_dp_disjoint(inst.entries)
                and col.value % 1 == 0 and col.value % 2 == col.a_i and col.value % 3 == col.a_j)
    try:
        ok, detail = run_suite("progressions", seed=0, count=5000)
    except AssertionError as err:
        ok, detail = False, str(err)
    elapsed = time.perf_counter() - start
    report("4 disjoint progressions", ok and two_step and elapsed < 60,
           f"{detail}; two-step instance collides at {col.value}", elapsed, 60)
    assert two_step
    assert ok, detail
    assert elapsed < 60


def test_c5_sparsity():
    timed_suite("5 sparsity m <= 12n", "sparsity", 120, count=1000)


def test_c6_twins():
    timed_suite("6 unary twins", "twins", 120, count=2000)


def test_c7_reductions():
    start = time.perf_counter()
    try:
        ok, detail = run_suite("reductions", seed=0, count=500)
    except AssertionError as err:
        ok, detail = False, str(err)

    examples = {}
    d1, d2 = kcycle_to_2ie(load_layered("three_layers.layers"))
    word = cycle_word([1, 1, 0])
    examples["1101"] = (word == [1, 1, 0, 1] and d1.to_nfa().accepts(word)
                        and d2.to_nfa().accepts(word))
    ov_word = [2, 1, 1, 2, 2, 1]
    examples["211221"] = all(d.to_nfa().accepts(ov_word) for d in kov_to_kie(load_ov("ov_pair.ov")))
    aa = unary_aa_dfa()
    b = ie3_to_ida(aa, aa, aa)
    dollar, hash_ = 1, 2
    examples["$aa#"] = (naive_intersection([aa, aa, aa]) == (True, (0, 0))
                        and b.is_path((3, 0, 1, 2, 3), (dollar, 0, 0, hash_))
                        and b.is_path((3, 4, 5, 6, 10), (dollar, 0, 0, hash_))
                        and b.is_path((10, 7, 8, 9, 10), (dollar, 0, 0, hash_)))
    w = unambiguity_to_twins(twins_source_nfa())
    cword = (0, 3, 0, 2, 1)
    c1, c2 = (10, 11, 0, 1, 5, 10), (11, 11, 0, 1, 5, 11)
    examples["weights 1/2"] = (w.path_weight(c1, cword) == 1 and w.path_weight(c2, cword) == 2
                               and not naive_sibling_twins(w))
    elapsed = time.perf_counter() - start
    all_ok = ok and all(examples.values()) and elapsed < 180
    shown = ", ".join(f"{k} {'ok' if v else 'BAD'}" for k, v in examples.items())
    report("7 reduction chain", all_ok, f"{detail}; examples {shown}", elapsed, 180)
    assert ok, detail
    assert all(examples.values()), examples
    assert elapsed < 180


BENCH_FAMILIES = ["unary-unambiguity", "unary-unambiguity-amb", "unary-cycles", "unary-twins"]


def test_c8_scaling(tmp_path):
    start = time.perf_counter()
    records = []
    for fam in BENCH_FAMILIES:
        out = tmp_path / f"{fam}.csv"
        code = main(["--seed", "0", "bench", fam, "--sizes", "10..20", "--repeats", "3",
                     "--out", str(out)])
        assert code == 0
        with open(out) as fh:
            for row in csv.DictReader(fh):
                records.append(BenchRecord(row["algo"], row["family"], int(row["n"]),
                                           int(row["m"]), float(row["millis"]),
                                           row["verdict"], row["extra"]))
    elapsed = time.perf_counter() - start
    tops = {key: top_ratio(r) for key, r in sorted(doubling_ratios(records).items())}
    bad = {key: v for key, v in tops.items() if v > RATIO_LIMITS[key[0]]}
    shown = ", ".join(f"{algo}/{fam} {v:.2f}" for (algo, fam), v in tops.items())
    report("8 scaling (soft)", not bad and elapsed < 600, shown, elapsed, 600)
    assert not bad, f"doubling ratios over the limit: {bad}"
    assert elapsed < 600


def test_c9_gcd_sum():
    start = time.perf_counter()
    rows = gcd_growth(0, count=50)
    elapsed = time.perf_counter() - start
    over = [r for r in rows if r[1] > r[2]]
    Ns = [r[0] for r in rows]
    ok = len(rows) == 50 and not over and min(Ns) >= 10 ** 3 and max(Ns) <= 10 ** 6
    report("9 gcd sums", ok and elapsed < 60,
           f"{len(rows)} sets, growth exponent {growth_exponent(rows):.3f}", elapsed, 60)
    assert ok, over
    assert elapsed < 60

