"""Reductions between 3-SAT, pair labellings (2LI), pair-linked clique graphs and
Hamiltonian cycles, with brute-force checkers for small instances."""
from __future__ import annotations

from .classc import ClassCGraph, Link, li_to_clawfree, lift_2li_solution
from .hamilton import HamResult, ham_reduction, hamiltonian
from .sat import Formula3CNF, Literal, brute_force_sat, parse_cnf, serialize_cnf
from .twoli import TLIInstance, TwoLabelling, TwoLIOutcome, build_2li, parse_2li, serialize_2li, solve_2li

__all__ = [
    "ClassCGraph", "Formula3CNF", "HamResult", "Link", "Literal", "TLIInstance", "TwoLIOutcome", "TwoLabelling",
    "brute_force_sat", "build_2li", "ham_reduction", "hamiltonian", "li_to_clawfree", "lift_2li_solution",
    "parse_2li", "parse_cnf", "serialize_2li", "serialize_cnf", "solve_2li",
]
