"""Line-based text formats for automata, progressions, OV instances and
layered graphs. Blank lines and anything after '#' are ignored."""

from __future__ import annotations

from typing import Iterable

from .core import Nfa, WeightedAutomaton
from .progressions import ProgressionsInstance
from .reductions import LayeredGraph, OvInstance


class ParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def _lines(text: str):
    for num, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].split()
        if body:
            yield num, body


def _ints(num: int, fields: list[str]) -> list[int]:
    try:
        return [int(x) for x in fields]
    except ValueError:
        raise ParseError(num, f"expected integers, got {' '.join(fields)!r}") from None


# ---------------------------------------------------------------- automata

def parse_automata(text: str) -> list[Nfa | WeightedAutomaton]:
    """One or more `nfa` blocks. A block is weighted iff every trans line
    carries a weight; duplicate transitions are merged."""
    blocks: list[tuple[int, list]] = []
    for num, fields in _lines(text):
        if fields[0] == "nfa":
            blocks.append((num, []))
        elif not blocks:
            raise ParseError(num, "expected an 'nfa' header first")
        blocks[-1][1].append((num, fields))
    if not blocks:
        raise ParseError(1, "no 'nfa' header found")
    return [_block(start, body) for start, body in blocks]


def _block(start: int, body) -> Nfa | WeightedAutomaton:
    _, header = body[0]
    if len(header) != 3:
        raise ParseError(start, "header is 'nfa <num_states> <alphabet_size>'")
    n, sigma = _ints(start, header[1:])
    initial: set[int] = set()
    final: set[int] = set()
    trans: dict[tuple[int, int, int], int | None] = {}
    for num, fields in body[1:]:
        key, args = fields[0], _ints(num, fields[1:])
        if key == "initial":
            initial.update(args)
        elif key == "final":
            final.update(args)
        elif key == "trans":
            if len(args) not in (3, 4):
                raise ParseError(num, "trans line is 'trans p a q [weight]'")
            p, a, q = args[:3]
            if not (0 <= p < n and 0 <= q < n and 0 <= a < sigma):
                raise ParseError(num, "state or symbol out of range")
            w = args[3] if len(args) == 4 else None
            if (p, a, q) in trans and trans[(p, a, q)] != w:
                raise ParseError(num, "repeated transition with a different weight")
            trans[(p, a, q)] = w
        else:
            raise ParseError(num, f"unknown record {key!r}")
    for q in initial | final:
        if not 0 <= q < n:
            raise ParseError(start, f"state {q} out of range")
    weights = list(trans.values())
    try:
        nfa = Nfa(n, sigma, frozenset(trans), frozenset(initial), frozenset(final))
    except ValueError as exc:
        raise ParseError(start, str(exc)) from None
    if weights and all(w is not None for w in weights):
        return WeightedAutomaton(nfa, dict(trans))
    if any(w is not None for w in weights):
        raise ParseError(start, "either every transition carries a weight or none does")
    return nfa


def parse_nfa(text: str) -> Nfa | WeightedAutomaton:
    autos = parse_automata(text)
    if len(autos) != 1:
        raise ParseError(1, f"expected one automaton, found {len(autos)}")
    return autos[0]


def dump_nfa(a: Nfa | WeightedAutomaton) -> str:
    weight = None
    if isinstance(a, WeightedAutomaton):
        a, weight = a.nfa, a.weight
    lines = [f"nfa {a.num_states} {a.alphabet_size}",
             "initial " + " ".join(map(str, sorted(a.initial))),
             "final " + " ".join(map(str, sorted(a.final)))]
    for t in sorted(a.transitions):
        extra = f" {weight[t]}" if weight is not None else ""
        lines.append("trans {} {} {}{}".format(*t, extra))
    return "\n".join(line.rstrip() for line in lines) + "\n"


def dump_automata(autos: Iterable[Nfa | WeightedAutomaton]) -> str:
    return "\n".join(dump_nfa(a) for a in autos)


# ------------------------------------------------------------ progressions

def parse_progressions(text: str) -> ProgressionsInstance:
    entries = []
    for num, fields in _lines(text):
        if fields[0] != "prog" or len(fields) < 3:
            raise ParseError(num, "expected 'prog <b> <a1> ...'")
        b, *bases = _ints(num, fields[1:])
        if len(set(bases)) != len(bases):
            raise ParseError(num, "repeated base")
        if entries and entries[-1][0] >= b:
            raise ParseError(num, "steps must be strictly increasing")
        if any(not 0 <= a < b for a in bases) or b < 1:
            raise ParseError(num, f"bases must lie in [0, {b})")
        entries.append((b, bases))
    if not entries:
        raise ParseError(1, "no progressions")
    return ProgressionsInstance.of(entries)


def dump_progressions(inst: ProgressionsInstance) -> str:
    return "".join(f"prog {b} {' '.join(map(str, bases))}\n" for b, bases in inst.entries)


# --------------------------------------------------------------------- OV

def parse_ov(text: str) -> OvInstance:
    rows = list(_lines(text))
    if not rows or rows[0][1][0] != "ov" or len(rows[0][1]) != 4:
        raise ParseError(rows[0][0] if rows else 1, "header is 'ov <k> <n> <d>'")
    k, n, d = _ints(rows[0][0], rows[0][1][1:])
    body = rows[1:]
    if len(body) != k * n:
        raise ParseError(rows[0][0], f"expected {k * n} vector lines, found {len(body)}")
    vecs = []
    for num, fields in body:
        bits = "".join(fields)
        if len(bits) != d or set(bits) - {"0", "1"}:
            raise ParseError(num, f"expected a {d}-bit string")
        vecs.append(tuple(int(c) for c in bits))
    return OvInstance(tuple(tuple(vecs[i * n:(i + 1) * n]) for i in range(k)))


def dump_ov(ov: OvInstance) -> str:
    lines = [f"ov {ov.k} {ov.n} {ov.d}"]
    lines += ["".join(map(str, v)) for s in ov.sets for v in s]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------- layered graphs

def parse_layered(text: str) -> LayeredGraph:
    rows = list(_lines(text))
    if not rows or rows[0][1][0] != "layers" or len(rows[0][1]) != 3:
        raise ParseError(rows[0][0] if rows else 1, "header is 'layers <k> <n>'")
    k, n = _ints(rows[0][0], rows[0][1][1:])
    edges = set()
    for num, fields in rows[1:]:
        if fields[0] != "edge" or len(fields) != 4:
            raise ParseError(num, "expected 'edge <layer> <i> <j>'")
        layer, i, j = _ints(num, fields[1:])
        if not (0 <= layer < k and 0 <= i < n and 0 <= j < n):
            raise ParseError(num, "edge out of range")
        edges.add((layer, i, j))
    return LayeredGraph(k, n, frozenset(edges))


def dump_layered(g: LayeredGraph) -> str:
    lines = [f"layers {g.k} {g.n}"] + [f"edge {a} {b} {c}" for a, b, c in sorted(g.edges)]
    return "\n".join(lines) + "\n"
