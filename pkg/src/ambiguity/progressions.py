"""Disjointness of arithmetic progressions via residues modulo step gcds."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Iterable, Sequence

import numpy as np


@dataclass(frozen=True)
class ProgressionsInstance:
    """Entries (b_i, A_i): progressions a + x*b_i for a in A_i, x >= 0."""
    entries: tuple[tuple[int, tuple[int, ...]], ...]

    def __post_init__(self):
        entries = tuple((int(b), tuple(sorted(set(int(a) for a in bases))))
                        for b, bases in self.entries)
        for idx, (b, bases) in enumerate(entries):
            if b < 1:
                raise ValueError(f"step {b} must be positive")
            if idx and entries[idx - 1][0] >= b:
                raise ValueError("steps must be strictly increasing")
            for a in bases:
                if not 0 <= a < b:
                    raise ValueError(f"base {a} outside [0, {b})")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, entries: Iterable[tuple[int, Iterable[int]]]) -> ProgressionsInstance:
        return cls(tuple((b, tuple(bs)) for b, bs in entries))

    @property
    def steps(self) -> list[int]:
        return [b for b, _ in self.entries]

    @property
    def size(self) -> int:
        return sum(b for b, _ in self.entries)


@dataclass(frozen=True)
class Collision:
    """A common element `value` of progression (i, a_i) and (j, a_j)."""
    value: int
    i: int
    a_i: int
    j: int
    a_j: int


def pair_disjoint(a: int, b: int, c: int, d: int) -> bool:
    """Are (a + x*b) and (c + x*d), x >= 0, disjoint?"""
    p = gcd(b, d)
    return a % p != c % p


def ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    """(g, u, v) with u*x + v*y = g = gcd(x, y)."""
    u0, v0, u1, v1 = 1, 0, 0, 1
    while y:
        q, r = divmod(x, y)
        x, y = y, r
        u0, u1 = u1, u0 - q * u1
        v0, v1 = v1, v0 - q * v1
    return x, u0, v0


def common_value(a: int, b: int, c: int, d: int) -> int | None:
    """Smallest v >= max(a, c) with v = a mod b and v = c mod d."""
    g, u, _ = ext_gcd(b, d)
    if (c - a) % g:
        return None
    lcm = b // g * d
    # a + b*k = c (mod d)  <=>  k = u*(c-a)/g (mod d/g)
    k = (u * ((c - a) // g)) % (d // g)
    v = a + b * k
    lo = max(a, c)
    if v < lo:
        v += -(-(lo - v) // lcm) * lcm
    return v


# ------------------------------------------------------------ divisor lattice

def factorize(n: int) -> dict[int, int]:
    """Prime factorization using a sieve of primes up to sqrt(n)."""
    if n < 1:
        raise ValueError("n must be positive")
    out: dict[int, int] = {}
    root = isqrt(n)
    if root >= 2:
        sieve = np.ones(root + 1, dtype=bool)
        sieve[:2] = False
        for i in range(2, isqrt(root) + 1):
            if sieve[i]:
                sieve[i * i::i] = False
        for p in np.flatnonzero(sieve):
            p = int(p)
            if p * p > n:
                break
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).items():
        divs = [d * p ** k for d in divs for k in range(e + 1)]
    return sorted(divs)


def sigma0(n: int) -> int:
    out = 1
    for e in factorize(n).values():
        out *= e + 1
    return out


def sigma1(n: int) -> int:
    out = 1
    for p, e in factorize(n).items():
        out *= (p ** (e + 1) - 1) // (p - 1)
    return out


def precompute_mod_sets(A: Iterable[int], N: int) -> dict[int, frozenset[int]]:
    """Map every divisor d of N to {a mod d : a in A}.

    Walks the divisor lattice top-down; each child d = e/p is reduced from
    the first parent e that reaches it, which is valid since d | e.
    """
    if N < 1:
        raise ValueError("N must be positive")
    top = frozenset(A)
    if any(not 0 <= a < N for a in top):
        raise ValueError("A must be a subset of [0, N)")
    primes = list(factorize(N))
    out = {N: top}
    frontier = [N]
    while frontier:
        nxt = []
        for e in frontier:
            parent = out[e]
            for p in primes:
                if e % p:
                    continue
                d = e // p
                if d not in out:
                    out[d] = frozenset(z % d for z in parent)
                    nxt.append(d)
        frontier = nxt
    return out


def disjoint_progressions(inst: ProgressionsInstance) -> tuple[bool, Collision | None]:
    """Decide pairwise disjointness; on failure return a common value."""
    entries = inst.entries
    mods = [precompute_mod_sets(bases, b) for b, bases in entries]
    for i in range(len(entries)):
        bi = entries[i][0]
        for j in range(i + 1, len(entries)):
            bj = entries[j][0]
            p = gcd(bi, bj)
            ri, rj = mods[i][p], mods[j][p]
            if ri.isdisjoint(rj):
                continue
            r = min(ri & rj)
            ai = next(a for a in entries[i][1] if a % p == r)
            aj = next(a for a in entries[j][1] if a % p == r)
            v = common_value(ai, bi, aj, bj)
            assert v is not None
            return False, Collision(v, i, ai, j, aj)
    return True, None


# ---------------------------------------------------------- instrumentation

def gcd_sum(A: Iterable[int]) -> int:
    """Sum of gcd(a, b) over ordered pairs of A (diagonal included)."""
    arr = np.fromiter(sorted(set(A)), dtype=np.int64)
    if arr.size == 0:
        raise ValueError("A must be nonempty")
    total = 0
    for start in range(0, arr.size, 1024):
        total += int(np.gcd.outer(arr[start:start + 1024], arr).sum())
    return total


def sigma1_total(steps: Sequence[int]) -> int:
    return sum(sigma1(b) for b in steps)
