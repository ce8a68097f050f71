#!/usr/bin/env python3
"""Analytic rank: exact slice counting against the character-sum oracle.

The bias of a multilinear form is the probability that fixing all legs
but one kills the remaining linear functional.  That count is an exact
integer; the classical definition through additive character sums is
kept as an independent floating-point oracle, and the two must agree to
1e-9 everywhere.
"""

import random
from fractions import Fraction

from tensorcert import (
    MultSpec,
    analytic_rank,
    bias,
    bias_via_characters,
    diagonal,
    extend,
    make_prime_field,
    matrix_rank,
    mult_tensor,
    random_tensor,
)

F2 = make_prime_field(2)
F4 = extend(F2, 2)

T = mult_tensor(MultSpec(F2, F4, 3))
b = bias(T)
print("bias(Mult_3(GF(4)/GF(2))) =", Fraction(b.count, b.q**b.exponent))
print("character-sum oracle      =", bias_via_characters(T))
print("analytic rank             =", analytic_rank(T).value)

# for matrices the analytic rank is the usual rank
rng = random.Random(0)
M = random_tensor(F2, (4, 4), rng)
print("\nrandom 4x4 over GF(2): AR =", analytic_rank(M).value,
      " gauss rank =", matrix_rank(F2, M.codes))

# and it is invariant under base change (same coefficients, bigger field)
K = extend(F2, 4)
print("after base change to GF(16): AR =", analytic_rank(M.base_change(K)).value)

# bias is multiplicative across direct sums, so AR is additive
S = random_tensor(F2, (2, 2, 2), rng)
print("\nAR(S)     =", analytic_rank(S).value)
print("AR(S + S) =", analytic_rank(S.direct_sum(S)).value)

# identity matrices give integer analytic rank exactly
print("\nAR(identity 5x5 over GF(3)) =",
      analytic_rank(diagonal(5, 2, make_prime_field(3))).value)
