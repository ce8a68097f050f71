#!/usr/bin/env python3
"""Rank and subrank certificates: construct, compose, cross-check.

Evaluation at rational points (plus the top-coefficient functional for
the point at infinity) gives a (d-1)(n-1)+1 term decomposition of the
multiplication tensor; interpolation in the other direction restricts
it to a diagonal.  Certificates compose through towers and are checked
against exhaustive-search oracles at tiny sizes.
"""

from tensorcert import (
    MultSpec,
    brute_force_rank,
    brute_force_subrank,
    chudnovsky_rank,
    chudnovsky_subrank,
    compose_rank,
    compose_subrank,
    count_places_rational,
    extend,
    flattening_rank,
    make_prime_field,
    mult_tensor,
    verify_decomposition,
)

F2 = make_prime_field(2)
F4 = extend(F2, 2)

# the classical 3-multiplication algorithm for GF(4), from points 0, 1, inf
deco = chudnovsky_rank(3, 2, F2)
print("Mult_3(GF(4)/GF(2)) decomposes into", deco.rank, "rank-one terms:")
for i, term in enumerate(deco.terms):
    print(f"  term {i}:", [v.tolist() for v in term])

T = mult_tensor(MultSpec(F2, F4, 3))
print("verifies exactly:", verify_decomposition(T, deco))
print("flattening lower bound:", flattening_rank(T.codes, F2))
print("brute-force rank (exhaustive):", brute_force_rank(T, 4))
print("brute-force subrank (exhaustive, r <= 2):", brute_force_subrank(T, 2))

# composition: 3 x 3 = 9 multiplications for GF(16) over GF(2)
outer = chudnovsky_rank(3, 2, F4)
inner = chudnovsky_rank(3, 2, F2)
comp = compose_rank(outer, inner)
print("\ncomposed decomposition of Mult_3(GF(16)/GF(2)):", comp.rank, "terms")

# subrank certificates: a diagonal <2> inside Mult_3(GF(64)/GF(2))
outer_s = chudnovsky_subrank(3, 3, F4, 2)
inner_s = chudnovsky_subrank(3, 2, F2, 1)
comp_s = compose_subrank(outer_s, inner_s)
print("composed subrank certificate: <%d> <= Mult_3 on dims %s"
      % (comp_s.diagonal_size, comp_s.source.dims))

# how many evaluation points are there to work with?
for q in (2, 3, 4):
    print(f"\nplaces of GF({q})(x):",
          {n: count_places_rational(q, n) for n in range(1, 5)})
