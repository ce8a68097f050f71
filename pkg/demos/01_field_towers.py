#!/usr/bin/env python3
"""Field towers: deterministic moduli, exact arithmetic, traces.

Every field here is either GF(p) or an extension of an existing field by
the lexicographically smallest monic irreducible modulus, so a field
built twice is the same field, down to its serialization bytes.
"""

import json

from tensorcert import (
    extend,
    field_from_json,
    generator,
    make_prime_field,
    relative_trace,
)

F2 = make_prime_field(2)
F4 = extend(F2, 2)
print("GF(4) =", F4.describe())

a = generator(F4)
print("generator a has coefficients", [c.code for c in a.coeffs])
print("a * a =", (a * a).coeffs, " (reduction by the modulus gives a + 1)")

# towers remember their base: GF(16) as a degree-2 extension of GF(4)
F16 = extend(F4, 2)
print("\nGF(16) =", F16.describe())
x = F16.element(11)
print("element 11 of GF(16) has GF(4)-coefficients", [c.code for c in x.coeffs])

# the inclusion GF(4) -> GF(16) is the identity on integer codes
for y in F4.elements():
    assert F16.embed_code(y) == y.code
print("inclusion GF(4) -> GF(16) is the identity on codes")

# traces land in the named subfield
print("\nTr_{GF(4)/GF(2)}(a) =", relative_trace(a, F2).code)
images = sorted({relative_trace(z, F4).code for z in F16.elements()})
print("Tr_{GF(16)/GF(4)} is onto GF(4):", images == [0, 1, 2, 3])

# serialization round-trips byte-identically
blob = json.dumps(F16.to_json(), sort_keys=True)
print("\nGF(16) serializes as", blob)
assert field_from_json(json.loads(blob)) == F16
print("round trip ok")
