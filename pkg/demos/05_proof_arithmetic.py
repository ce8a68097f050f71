#!/usr/bin/env python3
"""Proof arithmetic: interval fact, base-bound witnesses, lifting chain.

These checks replay the bookkeeping behind the uniform rank/subrank
bounds in exact integer arithmetic: pick the tower index i, find the
smallest integer N in the two prescribed intervals, and confirm each
function-field condition against the claimed worst-case genus.
"""

from fractions import Fraction

from tensorcert import (
    check_ff_conditions,
    check_interval_fact,
    prop_q_witness,
    prop_r_witness,
    rational_profile,
    theorem_chain,
    tower_profile,
)

r = check_interval_fact(1, 5, Fraction(23, 10), Fraction(34, 10))
print("[1,5] and [2.3, 3.4] share the integer", r.witness)

w = prop_r_witness(3, 25, 2)
print("\nrank witness d=3, l=25, n=2:")
print(" ", w.bound_statement)
print("  i =", w.i, " N =", w.size, " conditions:", w.conditions)

w = prop_q_witness(3, 2, 16)
print("\nsubrank witness d=3, l=2, n=16:")
print(" ", w.bound_statement)
print("  i =", w.i, " N =", w.size, " conditions:", w.conditions)

# condition checking against claimed function-field profiles
print("\nrational profile, rank direction (d=3, n=2, N=3):")
print(" ", check_ff_conditions(rational_profile(2), "rank", 3, 2, 3).to_json())
print("tower profile (l=2, i=1), degree-3 place available:",
      tower_profile(2, 1).degree_place(3))

# the chain lifting square-field bounds to every field
for d in (2, 3, 6):
    report = theorem_chain(d, 2, n=d * d + 1)
    print(f"\nd={d}, q=2: r = {report.r}, C_d = {report.C_d:.4g}, "
          f"c_d = {report.c_d}, m = {report.m}, all checks: {report.all_hold}")
