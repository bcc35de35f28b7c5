"""Ambiguity of finite automata and the twins property of unary weighted
automata, with near-linear unary deciders, a quadratic/cubic baseline,
brute-force oracles and generators for hardness reduction instances."""

__version__ = "0.1.0"
