"""Command-line interface.

Exit codes: 0 when a question was decided (whatever the verdict), 2 for
unreadable input, 3 when a size cap was exceeded. Verdicts go to stdout and
diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, is_dataclass
from pathlib import Path

from . import bench as benchmod
from .baseline import classify
from .core import (AmbiguityClass, AmbiguityVerdict, Nfa, RunPair, WeightedAutomaton,
                   normalize_weighted, to_st_graph)
from .io import (ParseError, dump_automata, parse_automata, parse_layered, parse_nfa,
                 parse_ov, parse_progressions)
from .oracles import CapExceeded
from .progressions import disjoint_progressions
from .reductions import (binary_encode, expand_wildcards, ie2_to_unambiguity, ie3_to_ida,
                         kcycle_to_2ie, kov_to_kie, unambiguity_to_eda, unambiguity_to_twins)
from .twins import unary_twins
from .unary import nfa_graph, unary_has_eda, unary_has_ida, unary_is_unambiguous

EXIT_OK, EXIT_PARSE, EXIT_CAP = 0, 2, 3

REDUCTIONS = ("ov2ie", "kcycle2ie", "ie2unamb", "unamb2eda", "3ie2ida", "unamb2twins", "binencode")


class InputError(Exception):
    pass


def _jsonable(x):
    if is_dataclass(x):
        return {k: _jsonable(v) for k, v in asdict(x).items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, AmbiguityClass):
        return x.value
    return x


def _emit(args, payload: dict, text: list[str]):
    if args.json:
        print(json.dumps(_jsonable(payload), sort_keys=True))
    else:
        print("\n".join(text))


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _check_cap(args, size: int, what: str):
    if args.cap is not None and size > args.cap:
        raise CapExceeded(f"{what} has size {size}, above --cap {args.cap}")


def _load_nfa(args, path: str) -> Nfa | WeightedAutomaton:
    a = parse_nfa(_read(path))
    _check_cap(args, (a.nfa if isinstance(a, WeightedAutomaton) else a).size, "automaton")
    return a


# ---------------------------------------------------------------- classify

def _unary_runs(a: Nfa, walks) -> RunPair:
    """Strip the framing states that normalization added around the walks."""
    def strip(w):
        w = list(w)
        if w and w[0] >= a.num_states:
            w = w[1:]
        if w and w[-1] >= a.num_states:
            w = w[:-1]
        return tuple(w)
    r1, r2 = strip(walks.walk1), strip(walks.walk2)
    return RunPair((0,) * (len(r1) - 1), r1, r2)


def _classify_unary(a: Nfa) -> AmbiguityVerdict:
    g = nfa_graph(a)
    ok, walks = unary_is_unambiguous(g)
    if ok:
        return AmbiguityVerdict(AmbiguityClass.UNAMBIGUOUS)
    if not unary_has_ida(g):
        return AmbiguityVerdict(AmbiguityClass.FINITE, _unary_runs(a, walks))
    if not unary_has_eda(g):
        return AmbiguityVerdict(AmbiguityClass.POLYNOMIAL)
    return AmbiguityVerdict(AmbiguityClass.EXPONENTIAL)


def cmd_classify(args) -> int:
    a = _load_nfa(args, args.path)
    if isinstance(a, WeightedAutomaton):
        a = a.nfa
    if args.unary_fast:
        if a.alphabet_size != 1:
            raise InputError("--unary-fast needs a unary automaton (alphabet size 1)")
        verdict = _classify_unary(a)
    else:
        verdict = classify(a)
    text = [f"class: {verdict.cls.value}"]
    w = verdict.witness
    if w is not None:
        text += [f"{k}: {v}" for k, v in asdict(w).items()]
    _emit(args, {"class": verdict.cls.value, "witness": w}, text)
    return EXIT_OK


# ------------------------------------------------------------------- twins

def cmd_twins(args) -> int:
    w = _load_nfa(args, args.path)
    if not isinstance(w, WeightedAutomaton):
        raise InputError("twins needs a weighted automaton (a weight on every trans line)")
    if w.nfa.alphabet_size != 1:
        raise InputError("twins decides the unary case only (alphabet size 1)")
    g = to_st_graph(normalize_weighted(w))
    ok, witness = unary_twins(g)
    text = [f"twins: {str(ok).lower()}"]
    if witness is not None:
        text += [f"{k}: {v}" for k, v in asdict(witness).items()]
    _emit(args, {"twins": ok, "witness": witness}, text)
    return EXIT_OK


# ------------------------------------------------------------------ reduce

def cmd_reduce(args) -> int:
    kind = args.kind
    text = _read(args.input)
    if kind in ("ov2ie", "kcycle2ie"):
        if kind == "ov2ie":
            gadgets = kov_to_kie(parse_ov(text))
        else:
            gadgets = list(kcycle_to_2ie(parse_layered(text)))
        out = [expand_wildcards(d) if args.binary else d.to_nfa() for d in gadgets]
    else:
        autos = [x.nfa if isinstance(x, WeightedAutomaton) else x for x in parse_automata(text)]
        need = {"ie2unamb": 2, "3ie2ida": 3}.get(kind, 1)
        if kind != "binencode" and len(autos) != need:
            raise InputError(f"{kind} takes {need} automata, found {len(autos)}")
        try:
            if kind == "ie2unamb":
                out = [ie2_to_unambiguity(*autos)]
            elif kind == "unamb2eda":
                out = [unambiguity_to_eda(autos[0])]
            elif kind == "3ie2ida":
                out = [ie3_to_ida(*autos)]
            elif kind == "unamb2twins":
                out = [unambiguity_to_twins(autos[0])]
            else:
                out = [binary_encode(a) for a in autos]
        except ValueError as exc:
            raise InputError(str(exc)) from None
    Path(args.output).write_text(dump_automata(out))
    _emit(args, {"kind": kind, "automata": len(out), "output": args.output},
          [f"wrote {len(out)} automat{'on' if len(out) == 1 else 'a'} to {args.output}"])
    return EXIT_OK


# ----------------------------------------------------------------- solve-dp

def cmd_solve_dp(args) -> int:
    inst = parse_progressions(_read(args.path))
    _check_cap(args, inst.size, "instance")
    ok, col = disjoint_progressions(inst)
    text = ["disjoint" if ok else "not disjoint"]
    if col is not None:
        bi, bj = inst.entries[col.i][0], inst.entries[col.j][0]
        text.append(f"common value {col.value} = {col.a_i} (mod {bi}) = {col.a_j} (mod {bj})")
    _emit(args, {"disjoint": ok, "collision": col}, text)
    return EXIT_OK


# ------------------------------------------------------------------ verify

def cmd_verify(args) -> int:
    from .verify import SUITES, run_suite
    names = list(SUITES) if args.suite == "all" else [args.suite]
    failed = 0
    results = []
    for name in names:
        ok, detail = run_suite(name, args.seed, args.count, cap=args.cap)
        failed += not ok
        results.append({"suite": name, "pass": ok, "detail": detail})
    _emit(args, {"results": results},
          [f"{'PASS' if r['pass'] else 'FAIL'} {r['suite']}: {r['detail']}" for r in results])
    return EXIT_OK if not failed else 1


# ------------------------------------------------------------------- bench

def _sizes(text: str) -> list[int]:
    """'10..20' means 2^10 .. 2^20; otherwise a comma list of sizes."""
    if ".." in text:
        lo, hi = (int(x) for x in text.split(".."))
        return [2 ** e for e in range(lo, hi + 1)]
    return [int(x) for x in text.split(",") if x]


def cmd_bench(args) -> int:
    families = list(benchmod.FAMILIES) if args.family == "all" else [args.family]
    sizes = _sizes(args.sizes)
    if args.cap is not None:
        sizes = [n for n in sizes if n <= args.cap]
    records = []
    for fam in families:
        records += benchmod.run_bench(fam, sizes, repeats=args.repeats, seed=args.seed)
    if args.out and args.out != "-":
        with open(args.out, "w", newline="") as fh:
            benchmod.write_csv(records, fh)
    else:
        benchmod.write_csv(records, sys.stdout)
    for (algo, fam), ratios in benchmod.doubling_ratios(records).items():
        top = benchmod.top_ratio(ratios)
        limit = benchmod.RATIO_LIMITS.get(algo)
        flag = "" if limit is None or top <= limit else f"  (above {limit})"
        print(f"{algo} {fam}: median doubling ratio {top:.3f}{flag}", file=sys.stderr)
    return EXIT_OK


# -------------------------------------------------------------------- main

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ambiguity", description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    p.add_argument("--json", action="store_true", help="structured output")
    p.add_argument("--cap", type=int, default=None, help="largest instance size to accept")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("classify", help="ambiguity class with a witness")
    c.add_argument("path")
    c.add_argument("--unary-fast", action="store_true", help="use the unary algorithms")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("twins", help="twins property of a unary weighted automaton")
    c.add_argument("path")
    c.set_defaults(func=cmd_twins)

    c = sub.add_parser("reduce", help="generate a reduction instance")
    c.add_argument("kind", choices=REDUCTIONS)
    c.add_argument("input")
    c.add_argument("output")
    c.add_argument("--binary", action="store_true", help="ov2ie/kcycle2ie: expand to bits")
    c.set_defaults(func=cmd_reduce)

    c = sub.add_parser("solve-dp", help="disjointness of arithmetic progressions")
    c.add_argument("path")
    c.set_defaults(func=cmd_solve_dp)

    c = sub.add_parser("verify", help="randomized comparison against the oracles")
    c.add_argument("suite", nargs="?", default="all")
    c.add_argument("--count", type=int, default=200)
    c.set_defaults(func=cmd_verify)

    c = sub.add_parser("bench", help="timed runs, CSV on stdout or --out")
    c.add_argument("family", nargs="?", default="all")
    c.add_argument("--sizes", default="10..20")
    c.add_argument("--repeats", type=int, default=3)
    c.add_argument("--out", default="-")
    c.set_defaults(func=cmd_bench)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
