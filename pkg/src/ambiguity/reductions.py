"""Instance generators for the hardness reductions and the alphabet gadgets.

k-OV and k-Cycle instances become intersection problems over DFAs whose
transitions may carry wildcard labels. Those DFAs can be expanded to the
binary alphabet, and pairs or triples of DFAs feed the reductions to
Unambiguity, EDA, IDA and Twins.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .core import Nfa, WeightedAutomaton, normalize, trim

Intervals = tuple[tuple[int, int], ...]


# ------------------------------------------------------------------- inputs

@dataclass(frozen=True)
class OvInstance:
    """k sets of n bit-vectors of dimension d."""
    sets: tuple[tuple[tuple[int, ...], ...], ...]

    def __post_init__(self):
        sets = tuple(tuple(tuple(int(b) for b in vec) for vec in s) for s in self.sets)
        if not sets:
            raise ValueError("need at least one set")
        n = len(sets[0])
        d = len(sets[0][0]) if n else 0
        for s in sets:
            if len(s) != n:
                raise ValueError("all sets must have the same size")
            for vec in s:
                if len(vec) != d or any(b not in (0, 1) for b in vec):
                    raise ValueError("vectors must be 0/1 of equal dimension")
        object.__setattr__(self, "sets", sets)

    @property
    def k(self) -> int:
        return len(self.sets)

    @property
    def n(self) -> int:
        return len(self.sets[0])

    @property
    def d(self) -> int:
        return len(self.sets[0][0]) if self.n else 0


@dataclass(frozen=True)
class LayeredGraph:
    """k layers of n vertices; edge (layer, i, j) joins vertex i of `layer`
    to vertex j of layer + 1 (mod k)."""
    k: int
    n: int
    edges: frozenset[tuple[int, int, int]]

    def __post_init__(self):
        edges = frozenset(tuple(e) for e in self.edges)
        for layer, i, j in edges:
            if not (0 <= layer < self.k and 0 <= i < self.n and 0 <= j < self.n):
                raise ValueError(f"edge {(layer, i, j)} out of range")
        object.__setattr__(self, "edges", edges)


# ------------------------------------------------------------ gadget DFAs

@dataclass(frozen=True)
class Label:
    """A single symbol, every symbol in [lo, hi], or every symbol in
    [lo, hi] except `sym`."""
    kind: str
    lo: int
    hi: int
    sym: int = -1

    @staticmethod
    def symbol(c: int) -> Label:
        return Label("sym", c, c, c)

    @staticmethod
    def any(lo: int, hi: int) -> Label:
        return Label("any", lo, hi)

    @staticmethod
    def anybut(lo: int, hi: int, c: int) -> Label:
        return Label("anybut", lo, hi, c)

    def intervals(self) -> Intervals:
        if self.kind == "anybut":
            parts = [(self.lo, self.sym - 1), (self.sym + 1, self.hi)]
            return tuple((a, b) for a, b in parts if a <= b)
        return ((self.lo, self.hi),)

    def symbols(self) -> list[int]:
        return [c for a, b in self.intervals() for c in range(a, b + 1)]

    def __str__(self) -> str:
        if self.kind == "sym":
            return str(self.sym)
        if self.kind == "any":
            return f"[{self.lo}-{self.hi}]"
        return f"[{self.lo}-{self.hi}]\\{self.sym}"


@dataclass(frozen=True)
class GadgetDfa:
    """DFA whose transitions carry `Label`s. Deterministic under the label
    semantics: the labels leaving one state have disjoint symbol sets."""
    num_states: int
    alphabet_size: int
    transitions: tuple[tuple[int, Label, int], ...]
    initial: int
    final: frozenset[int]
    names: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        used: dict[int, set[int]] = {}
        for p, lab, q in self.transitions:
            if not (0 <= p < self.num_states and 0 <= q < self.num_states):
                raise ValueError("state out of range")
            syms = lab.symbols()
            if not syms or min(syms) < 0 or max(syms) >= self.alphabet_size:
                raise ValueError(f"label {lab} outside the alphabet")
            seen = used.setdefault(p, set())
            if seen.intersection(syms):
                raise ValueError(f"labels leaving state {p} overlap")
            seen.update(syms)

    def to_nfa(self) -> Nfa:
        """Plain DFA with one transition per symbol of every label."""
        trans = frozenset((p, c, q) for p, lab, q in self.transitions for c in lab.symbols())
        return Nfa(self.num_states, self.alphabet_size, trans,
                   frozenset({self.initial}), self.final)

    @property
    def size(self) -> int:
        return self.num_states + len(self.transitions)


class _Builder:
    """Collects named states and labelled transitions."""

    def __init__(self):
        self.ids: dict[str, int] = {}
        self.trans: list[tuple[int, Label, int]] = []

    def state(self, name: str) -> int:
        if name not in self.ids:
            self.ids[name] = len(self.ids)
        return self.ids[name]

    def add(self, p: str, label: Label, q: str):
        self.trans.append((self.state(p), label, self.state(q)))

    def build(self, alphabet_size: int, initial: str, final: Sequence[str]) -> GadgetDfa:
        init = self.state(initial)
        fin = frozenset(self.state(f) for f in final)
        names = tuple(sorted(self.ids, key=self.ids.get))
        return GadgetDfa(len(self.ids), alphabet_size, tuple(self.trans), init, fin, names)


# --------------------------------------------------------- binary encoding

def bits_needed(alphabet_size: int) -> int:
    """h with 2^h >= alphabet_size, at least 1; extra codes stay unused."""
    return max(1, (alphabet_size - 1).bit_length())


def encode_symbol(c: int, h: int) -> list[int]:
    return [(c >> (h - 1 - i)) & 1 for i in range(h)]


def encode_word(word: Sequence[int], h: int) -> list[int]:
    return [b for c in word for b in encode_symbol(c, h)]


def decode_word(bits: Sequence[int], h: int) -> list[int] | None:
    if len(bits) % h:
        return None
    out = []
    for i in range(0, len(bits), h):
        c = 0
        for b in bits[i:i + h]:
            c = 2 * c + b
        out.append(c)
    return out


class _Encoder:
    def __init__(self, d: GadgetDfa):
        self.d = d
        self.h = bits_needed(d.alphabet_size)
        self.names = list(d.names) if d.names else [str(q) for q in range(d.num_states)]
        self.count = d.num_states
        self.trans: set[tuple[int, int, int]] = set()

    def fresh(self, name: str) -> int:
        self.names.append(name)
        self.count += 1
        return self.count - 1

    def tree(self, x: int, out: list[tuple[int, int]]):
        """Prefix tree of the concrete labels leaving x: one state per
        proper prefix of a code, named x^i_prefix."""
        h = self.h
        node = {}
        for c, y in out:
            prev = x
            for i in range(1, h):
                prefix = c >> (h - i)
                key = (i, prefix)
                if key not in node:
                    node[key] = self.fresh(f"{self.names[x]}^{i}_{prefix}")
                bit = prefix & 1
                self.trans.add((prev, bit, node[key]))
                prev = node[key]
            self.trans.add((prev, c & 1, y))

    def residual(self, x: int, out: list[tuple[Intervals, int]]):
        """Decision structure for labels given as interval sets. A node is
        keyed by its depth and the codes still allowed below it for every
        target, so a wildcard becomes a chain of h - 1 states and an almost
        wildcard a chain plus a bypass."""
        h = self.h
        memo: dict[tuple, int] = {}

        def split(iv: Intervals, half: int) -> tuple[Intervals, Intervals]:
            low, high = [], []
            for a, b in iv:
                if a < half:
                    low.append((a, min(b, half - 1)))
                if b >= half:
                    high.append((max(a, half) - half, b - half))
            return tuple(low), tuple(high)

        def visit(node: int, depth: int, res: tuple[tuple[int, Intervals], ...]):
            half = 1 << (h - depth - 1)
            parts: list[list[tuple[int, Intervals]]] = [[], []]
            for y, iv in res:
                lo, hi = split(iv, half)
                if lo:
                    parts[0].append((y, lo))
                if hi:
                    parts[1].append((y, hi))
            for bit in (0, 1):
                if not parts[bit]:
                    continue
                if depth + 1 == h:
                    # one code left per target, and targets own disjoint codes
                    (y, _), = parts[bit]
                    self.trans.add((node, bit, y))
                    continue
                key = (depth + 1, tuple(parts[bit]))
                if key not in memo:
                    memo[key] = self.fresh(f"{self.names[x]}~{depth + 1}.{len(memo)}")
                    visit(memo[key], depth + 1, key[1])
                self.trans.add((node, bit, memo[key]))

        by_target: dict[int, list[tuple[int, int]]] = {}
        for iv, y in out:
            by_target.setdefault(y, []).extend(iv)
        res = tuple(sorted((y, tuple(sorted(iv))) for y, iv in by_target.items()))
        visit(x, 0, res)

    def result(self) -> Nfa:
        d = self.d
        return Nfa(self.count, 2, frozenset(self.trans), frozenset({d.initial}), d.final)


def _encode(d: GadgetDfa, allow_wildcards: bool) -> tuple[Nfa, list[str]]:
    enc = _Encoder(d)
    outgoing: dict[int, list[tuple[Label, int]]] = {}
    for p, lab, q in d.transitions:
        outgoing.setdefault(p, []).append((lab, q))
    for x in sorted(outgoing):
        labels = outgoing[x]
        if all(lab.kind == "sym" for lab, _ in labels):
            enc.tree(x, [(lab.sym, y) for lab, y in labels])
        elif not allow_wildcards:
            raise ValueError("binary_encode takes concrete labels only; use expand_wildcards")
        else:
            enc.residual(x, [(lab.intervals(), y) for lab, y in labels])
    return enc.result(), enc.names


def binary_encode(d: GadgetDfa | Nfa) -> Nfa:
    """Binary DFA reading every symbol as h bits, most significant first."""
    if isinstance(d, Nfa):
        d = gadget_from_dfa(d)
    return _encode(d, allow_wildcards=False)[0]


def expand_wildcards(d: GadgetDfa) -> Nfa:
    """Binary DFA for a gadget DFA with wildcard and almost-wildcard labels."""
    return _encode(d, allow_wildcards=True)[0]


def expand_wildcards_named(d: GadgetDfa) -> tuple[Nfa, list[str]]:
    return _encode(d, allow_wildcards=True)


def gadget_from_dfa(a: Nfa) -> GadgetDfa:
    if not a.is_deterministic() or len(a.initial) != 1:
        raise ValueError("expected a DFA with one initial state")
    trans = tuple((p, Label.symbol(c), q) for p, c, q in sorted(a.transitions))
    return GadgetDfa(a.num_states, a.alphabet_size, trans, next(iter(a.initial)), a.final)


# ------------------------------------------------------------------ k-OV

def kov_to_kie(ov: OvInstance) -> list[GadgetDfa]:
    """DFAs D_1..D_k over the symbols 1..max(n, k) accepting j_1..j_k r_1..r_d
    exactly when vector j_i of set i has a zero at every coordinate l with
    r_l = i. They intersect iff the instance has orthogonal vectors.

    Symbol 0 is never used; vector and set indices are 1-based in words.
    """
    k, n, d = ov.k, ov.n, ov.d
    sigma = max(n, k) + 1
    sigma1 = Label.any(1, n)
    sigma2 = Label.any(1, k)
    out = []
    for i in range(1, k + 1):
        b = _Builder()
        b.state(f"xI^{i},0")
        for ip in range(1, i):
            b.add(f"xI^{i},{ip - 1}", sigma1, f"xI^{i},{ip}")
        for j in range(1, n + 1):
            b.add(f"xI^{i},{i - 1}", Label.symbol(j), f"x{j}^{i},{i}")
            for ip in range(i + 1, k + 1):
                b.add(f"x{j}^{i},{ip - 1}", sigma1, f"x{j}^{i},{ip}")
            vec = ov.sets[i - 1][j - 1]
            prev = f"x{j}^{i},{k}"
            for ell in range(1, d + 1):
                label = sigma2 if vec[ell - 1] == 0 else Label.anybut(1, k, i)
                nxt = f"y{j}^{i},{ell}"
                b.add(prev, label, nxt)
                prev = nxt
        finals = [f"y{j}^{i},{d}" if d else f"x{j}^{i},{k}" for j in range(1, n + 1)]
        out.append(b.build(sigma, f"xI^{i},0", finals))
    return out


# --------------------------------------------------------------- k-Cycle

def kcycle_to_2ie(g: LayeredGraph) -> tuple[GadgetDfa, GadgetDfa]:
    """D_1 reads j_0 j_1 .. j_k along edges through all layers and back to
    layer 0; D_2 reads words whose first and last letters agree. Common
    words are k-cycles. Layer sizes need not be powers of two: the binary
    encoding leaves the extra codes unused."""
    k, n = g.k, g.n
    full = Label.any(0, n - 1)
    b1 = _Builder()
    b1.state("xI")
    for j in range(n):
        b1.add("xI", Label.symbol(j), f"x^0_{j}")
    for layer, i, j in sorted(g.edges):
        b1.add(f"x^{layer}_{i}", Label.symbol(j), f"x^{layer + 1}_{j}")
    d1 = b1.build(n, "xI", [f"x^{k}_{j}" for j in range(n)])
    b2 = _Builder()
    b2.state("yI")
    for j in range(n):
        b2.add("yI", Label.symbol(j), f"y^0_{j}")
        for i in range(k - 1):
            b2.add(f"y^{i}_{j}", full, f"y^{i + 1}_{j}")
        b2.add(f"y^{k - 1}_{j}", Label.symbol(j), f"y^{k}_{j}")
    d2 = b2.build(n, "yI", [f"y^{k}_{j}" for j in range(n)])
    return d1, d2


def cycle_word(cycle: Sequence[int]) -> list[int]:
    """Word j_0 .. j_{k-1} j_0 of a k-cycle given by its vertex indices."""
    return list(cycle) + [cycle[0]]


# ---------------------------------------------------- reductions from k-IE

def _require_dfa(a: Nfa, what: str):
    if not a.is_deterministic() or len(a.initial) != 1:
        raise ValueError(f"{what} must be a DFA with one initial state")


def _shift(a: Nfa, offset: int):
    return {(p + offset, c, q + offset) for p, c, q in a.transitions}


def ie2_to_unambiguity(d1: Nfa, d2: Nfa) -> Nfa:
    """Disjoint union: a word has two accepting runs iff both DFAs accept it."""
    _require_dfa(d1, "d1")
    _require_dfa(d2, "d2")
    off = d1.num_states
    trans = _shift(d1, 0) | _shift(d2, off)
    initial = set(d1.initial) | {q + off for q in d2.initial}
    final = set(d1.final) | {q + off for q in d2.final}
    return Nfa(off + d2.num_states, max(d1.alphabet_size, d2.alphabet_size),
               frozenset(trans), frozenset(initial), frozenset(final))


def unambiguity_to_eda(a: Nfa) -> Nfa:
    """Trim and normalize, then close every accepting run with a fresh
    symbol # from the final to the initial state."""
    b = normalize(trim(a)[0])
    (qi,), (qf,) = tuple(b.initial), tuple(b.final)
    hash_ = b.alphabet_size
    return Nfa(b.num_states, hash_ + 1, b.transitions | {(qf, hash_, qi)}, b.initial, b.final)


def ie3_to_ida(d1: Nfa, d2: Nfa, d3: Nfa) -> Nfa:
    """D_1 on a loop through a new state s, D_2 from s to a new state t and
    D_3 on a loop through t, all framed by $ ... #. The states returned
    are Q_1, s, Q_2, Q_3, t in that order."""
    for name, d in (("d1", d1), ("d2", d2), ("d3", d3)):
        _require_dfa(d, name)
    sigma = max(d1.alphabet_size, d2.alphabet_size, d3.alphabet_size)
    dollar, hash_ = sigma, sigma + 1
    o1 = 0
    s = d1.num_states
    o2 = s + 1
    o3 = o2 + d2.num_states
    t = o3 + d3.num_states
    (i1,), (i2,), (i3,) = tuple(d1.initial), tuple(d2.initial), tuple(d3.initial)
    trans = _shift(d1, o1) | _shift(d2, o2) | _shift(d3, o3)
    trans |= {(s, dollar, i1 + o1), (s, dollar, i2 + o2), (t, dollar, i3 + o3)}
    trans |= {(p + o1, hash_, s) for p in d1.final}
    trans |= {(p + o2, hash_, t) for p in d2.final}
    trans |= {(p + o3, hash_, t) for p in d3.final}
    return Nfa(t + 1, sigma + 2, frozenset(trans), frozenset({s}), frozenset({t}))


def unambiguity_to_twins(a: Nfa) -> WeightedAutomaton:
    """Three copies of the normalized automaton. Copy 2 to copy 3 carries
    weight l(p, a, q), the 1-based rank of q among the a-successors of p;
    every other transition weighs 0. Copy-1 states move to copy 2 on $, and
    # leads from the final state of copy 3 back to the initial state of
    copy 1, which is the only initial and final state. Copy c of state q is
    q + (c - 1) * n."""
    b = normalize(a)
    n = b.num_states
    (qi,), (qf,) = tuple(b.initial), tuple(b.final)
    dollar, hash_ = b.alphabet_size, b.alphabet_size + 1
    delta = b.delta
    weight: dict[tuple[int, int, int], int] = {}
    for p, c, q in b.transitions:
        weight[(p, c, q)] = 0
        weight[(p + 2 * n, c, q + 2 * n)] = 0
        weight[(p + n, c, q + 2 * n)] = delta[p][c].index(q) + 1
    for p in range(n):
        weight[(p, dollar, p + n)] = 0
    weight[(qf + 2 * n, hash_, qi)] = 0
    nfa = Nfa(3 * n, b.alphabet_size + 2, frozenset(weight), frozenset({qi}), frozenset({qi}))
    return WeightedAutomaton(nfa, weight)
