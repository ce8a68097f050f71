#!/usr/bin/env python3
"""Multiplication tensors and the degree-shift restriction.

Mult_d(K/F) is the d-linear form of (d-1)-ary multiplication in a fixed
basis; its last leg reads coordinates off the product.  When the degree
gap is wide enough (n-1 >= (d-1)(m-1)), products of low-degree basis
elements never wrap around the modulus, which makes the small field's
tensor a literal restriction of the big field's tensor.
"""

from tensorcert import (
    MultSpec,
    extend,
    make_prime_field,
    mult_tensor,
    qmon_maps,
    verify_qmon,
    verify_restriction,
)

F2 = make_prime_field(2)
F4 = extend(F2, 2)

T = mult_tensor(MultSpec(F2, F4, 3))
print("Mult_3(GF(4)/GF(2)), a 2x2x2 tensor over GF(2):")
print(T.codes)
print("entry [1,1,:] is the coordinate vector of a*a = a + 1")

# the maps f(a^i) = b^i and g(b^i) = a^i certify Mult_3(GF(4)) <= Mult_3(GF(8))
f, g = qmon_maps(2, 2, 3, 3)
print("\nf: GF(4) -> GF(8) as a matrix over GF(2):")
print(f.entries)
print("g: GF(8) -> GF(4):")
print(g.entries)

cert = verify_qmon(2, 2, 3, 3)
print("\nrestriction certificate verifies exactly:", verify_restriction(cert))

# the hypothesis is necessary: for (q, m, n, d) = (2, 2, 2, 3) products
# of two basis elements wrap around and the certificate is refused
try:
    verify_qmon(2, 2, 2, 3)
except Exception as exc:
    print("verify_qmon(2, 2, 2, 3):", type(exc).__name__, "-", exc)
