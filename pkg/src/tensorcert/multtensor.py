"""Structure tensors of (d-1)-ary multiplication in extension fields.

For an extension top/base of degree n, the multiplication tensor has
dims (n, ..., n) over the base field.  The final leg carries coordinate
functionals, so entry T[i_1, ..., i_{d-1}, k] is the k-th coordinate of
the basis product b_{i_1} * ... * b_{i_{d-1}}: as a d-linear form,
T(x_1, ..., x_{d-1}, z) = <z, coords(x_1 ... x_{d-1})>.

The basis is the tower monomial basis generated by the deterministic
tower generators: for a one-step extension this is 1, a, ..., a^{n-1};
for a two-step tower of degrees m and n it is the mn products a^i b^j
indexed by i + m*j.  Under the integer element encoding, basis vector k
is simply the element with code q**k, and coordinates of an element are
the base-q digits of its code.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .certificates import RestrictionCertificate
from .errors import CertificateInvalid, HypothesisViolated, NotInTower, SizeGuard
from .fields import OP_GUARD, Field, extend, field_from_json, field_of_order
from .tensors import LinearMap, Tensor


@dataclass(frozen=True)
class MultSpec:
    """Which multiplication tensor: base field, top field, arity d."""

    base: Field
    top: Field
    arity: int

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be >= 2")
        if not self.top.contains_field(self.base):
            raise NotInTower(f"{self.base!r} is not in the tower of {self.top!r}")

    @property
    def extension_degree(self) -> int:
        return self.top.absolute_degree // self.base.absolute_degree

    def basis_codes(self) -> list[int]:
        """Codes of the tower monomial basis of top over base."""
        q = self.base.order
        return [q**k for k in range(self.extension_degree)]

    def coords(self, code: int) -> list[int]:
        """Base-field coordinates of a top element in the tower basis."""
        q = self.base.order
        out = []
        for _ in range(self.extension_degree):
            code, r = divmod(code, q)
            out.append(r)
        return out

    def element_from_coords(self, coords) -> int:
        q = self.base.order
        code = 0
        for c in reversed(list(coords)):
            code = code * q + int(c)
        return code

    def to_json(self) -> dict:
        return {
            "kind": "mult",
            "arity": self.arity,
            "base": self.base.to_json(),
            "top": self.top.to_json(),
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MultSpec":
        return cls(
            base=field_from_json(obj["base"]),
            top=field_from_json(obj["top"]),
            arity=int(obj["arity"]),
        )


def mult_tensor(spec: MultSpec) -> Tensor:
    """The dims (n, ..., n) structure tensor of spec, over spec.base."""
    n = spec.extension_degree
    d = spec.arity
    if n**d > OP_GUARD:
        raise SizeGuard(f"mult tensor with {n}**{d} entries exceeds the guard")
    top = spec.top
    basis = spec.basis_codes()
    codes = np.zeros((n,) * d, dtype=np.int64)
    for idx in itertools.product(range(n), repeat=d - 1):
        prod = basis[idx[0]]
        for i in idx[1:]:
            prod = top.mul_code(prod, basis[i])
        codes[idx] = spec.coords(prod)
    return Tensor(spec.base, (n,) * d, codes)


def qmon_maps(q: int, m: int, n: int, d: int) -> tuple[LinearMap, LinearMap]:
    """The degree-shift maps f: GF(q^m) -> GF(q^n), g: GF(q^n) -> GF(q^m)
    sending f(a^i) = b^i for i <= m-1 and g(b^i) = a^i for i <= n-1,
    as matrices over GF(q) in the power bases.  Requires the hypothesis
    n-1 >= (d-1)(m-1), so that (d-1)-fold products never wrap around."""
    if d < 2 or m < 1 or n < 1:
        raise HypothesisViolated("need d >= 2 and m, n >= 1")
    if n - 1 < (d - 1) * (m - 1):
        raise HypothesisViolated(
            f"n-1 = {n - 1} < (d-1)(m-1) = {(d - 1) * (m - 1)}"
        )
    base = field_of_order(q)
    small = extend(base, m)
    f = np.zeros((n, m), dtype=np.int64)
    one = base.one_code
    for i in range(m):
        f[i, i] = one
    g = np.zeros((m, n), dtype=np.int64)
    if m == 1:
        g[0, :] = one  # basis {1}: every power of 1 has coordinate vector (1)
    else:
        alpha = base.order  # code of the generator of small
        power = small.one_code
        for i in range(n):
            for k, digit in enumerate(small.digits(power)):
                g[k, i] = digit
            power = small.mul_code(power, alpha)
    return LinearMap(base, f), LinearMap(base, g)


def verify_qmon(q: int, m: int, n: int, d: int) -> RestrictionCertificate:
    """Certificate that Mult_d(GF(q^m)/GF(q)) is a restriction of
    Mult_d(GF(q^n)/GF(q)), verified by exact restriction equality
    (equivalently, exhaustively over all basis index tuples)."""
    if q ** (m * (d - 1)) > OP_GUARD:
        raise SizeGuard("qmon verification grid exceeds the guard")
    f, g = qmon_maps(q, m, n, d)
    base = field_of_order(q)
    spec_n = MultSpec(base, extend(base, n), d)
    spec_m = MultSpec(base, extend(base, m), d)
    source = mult_tensor(spec_n)
    target = mult_tensor(spec_m)
    maps = [f] * (d - 1) + [g.transpose()]
    cert = RestrictionCertificate(
        source, target, maps, source_spec=spec_n, target_spec=spec_m
    )
    if source.restrict(maps) != target:
        raise CertificateInvalid(
            f"qmon restriction failed for q={q}, m={m}, n={n}, d={d}"
        )  # pragma: no cover - guaranteed by the degree hypothesis
    return cert
