"""Exact arithmetic in towers of finite fields.

A field is either a prime field GF(p) or an extension of an already
constructed field by a monic irreducible modulus.  Extensions remember
their base, so GF(q) -> GF(q^n) is the plain constant-coefficient
inclusion and no compatibility system between unrelated representations
is needed.

Elements are stored as integer codes.  A prime-field element is its
residue; an element of an extension with base order s and coefficient
vector (c_0, ..., c_{m-1}) has code sum(code(c_i) * s**i).  Under this
encoding the inclusion of a subfield of the tower is the identity on
codes, and addition is carry-free base-p addition.
"""

from __future__ import annotations

import itertools
from typing import Iterator, Optional

import numpy as np

from . import polys
from .errors import (
    CompositeModulus,
    DivisionByZero,
    MixedFields,
    NotAnExtension,
    NotInTower,
    SizeGuard,
)

# Hard ceiling on exhaustive enumeration work, in field operations.
OP_GUARD = 10**8

# Largest field order for which dense numpy add/mul tables are built.
TABLE_LIMIT = 512

_PRIME_CACHE: dict[int, "Field"] = {}
_EXTENSION_CACHE: dict[tuple, "Field"] = {}


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


class Field:
    """A finite field, prime or a step in an extension tower.

    Do not call the constructor directly; use `make_prime_field` and
    `extend` so that moduli are validated and instances are cached.
    """

    __slots__ = (
        "base",
        "p",
        "degree",
        "order",
        "absolute_degree",
        "modulus",
        "_key",
        "_hash",
        "_add_table",
        "_mul_table",
        "_trace_table",
    )

    def __init__(self, base: Optional["Field"], p: int, modulus: Optional[tuple[int, ...]]):
        self.base = base
        if base is None:
            self.p = p
            self.degree = 1
            self.order = p
            self.absolute_degree = 1
            self.modulus = None
            self._key: tuple = ("p", p)
        else:
            assert modulus is not None and modulus[-1] == base.one_code
            self.p = base.p
            self.degree = len(modulus) - 1
            self.order = base.order ** self.degree
            self.absolute_degree = base.absolute_degree * self.degree
            self.modulus = tuple(modulus)
            self._key = (base._key, self.modulus)
        self._hash = hash(self._key)
        self._add_table: Optional[np.ndarray] = None
        self._mul_table: Optional[np.ndarray] = None
        self._trace_table: Optional[np.ndarray] = None

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and self._key == other._key

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"GF({self.order})"

    def describe(self) -> str:
        """Human-readable tower description with moduli."""
        if self.base is None:
            return f"GF({self.p})"
        return (
            f"{self.base.describe()} -> GF({self.order}) "
            f"via modulus {list(self.modulus)}"
        )

    # -- scalar arithmetic on codes ----------------------------------------

    @property
    def zero_code(self) -> int:
        return 0

    @property
    def one_code(self) -> int:
        return 1 if self.order > 1 else 0

    def add_code(self, a: int, b: int) -> int:
        p = self.p
        if p == 2:
            return a ^ b
        if self.base is None:
            return (a + b) % p
        out = 0
        scale = 1
        while a or b:
            out += ((a + b) % p) * scale
            a //= p
            b //= p
            scale *= p
        return out

    def neg_code(self, a: int) -> int:
        p = self.p
        if p == 2:
            return a
        if self.base is None:
            return (-a) % p
        out = 0
        scale = 1
        while a:
            out += ((p - a % p) % p) * scale
            a //= p
            scale *= p
        return out

    def sub_code(self, a: int, b: int) -> int:
        return self.add_code(a, self.neg_code(b))

    def mul_code(self, a: int, b: int) -> int:
        if self.base is None:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        if a == 1:
            return b
        if b == 1:
            return a
        base = self.base
        m = self.degree
        da = self.digits(a)
        db = self.digits(b)
        t = [0] * (2 * m - 1)
        for i, x in enumerate(da):
            if x == 0:
                continue
            for j, y in enumerate(db):
                if y == 0:
                    continue
                t[i + j] = base.add_code(t[i + j], base.mul_code(x, y))
        mod = self.modulus
        for k in range(2 * m - 2, m - 1, -1):
            c = t[k]
            if c == 0:
                continue
            t[k] = 0
            for i in range(m):
                mc = mod[i]
                if mc != 0:
                    t[k - m + i] = base.sub_code(t[k - m + i], base.mul_code(c, mc))
        return self.undigits(t[:m])

    def pow_code(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv_code(a)
            e = -e
        result = self.one_code
        while e > 0:
            if e & 1:
                result = self.mul_code(result, a)
            a = self.mul_code(a, a)
            e >>= 1
        return result

    def inv_code(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero(f"inverse of zero in {self!r}")
        if self.base is None:
            return pow(a, self.p - 2, self.p)
        return self.pow_code(a, self.order - 2)

    def digits(self, code: int) -> tuple[int, ...]:
        """Coefficient codes over the immediate base, low-to-high."""
        if self.base is None:
            return (code,)
        s = self.base.order
        out = []
        for _ in range(self.degree):
            code, r = divmod(code, s)
            out.append(r)
        return tuple(out)

    def undigits(self, digits) -> int:
        if self.base is None:
            return digits[0] % self.p
        s = self.base.order
        code = 0
        for d in reversed(digits):
            code = code * s + d
        return code

    # -- elements ----------------------------------------------------------

    def element(self, code: int) -> "FieldElement":
        if not 0 <= code < self.order:
            raise ValueError(f"code {code} out of range for {self!r}")
        return FieldElement(self, code)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, self.one_code)

    def elements(self) -> Iterator["FieldElement"]:
        if self.order > OP_GUARD:
            raise SizeGuard(f"refusing to enumerate {self.order} elements")
        for code in range(self.order):
            yield FieldElement(self, code)

    def random_element(self, rng) -> "FieldElement":
        return FieldElement(self, rng.randrange(self.order))

    # -- tower relations ----------------------------------------------------

    def tower(self) -> list["Field"]:
        """Fields from the prime field up to self."""
        out = []
        f: Optional[Field] = self
        while f is not None:
            out.append(f)
            f = f.base
        out.reverse()
        return out

    def contains_field(self, other: "Field") -> bool:
        f: Optional[Field] = self
        while f is not None:
            if f == other:
                return True
            f = f.base
        return False

    def embed_code(self, x: "FieldElement") -> int:
        """Code of x viewed in this field; x's owner must be in the tower."""
        if not self.contains_field(x.field):
            raise NotInTower(f"{x.field!r} is not in the tower of {self!r}")
        return x.code  # inclusion is the identity on codes

    # -- numpy tables --------------------------------------------------------

    def tables(self) -> Optional[tuple[np.ndarray, np.ndarray]]:
        """Dense (add, mul) tables, or None above TABLE_LIMIT."""
        if self.order > TABLE_LIMIT:
            return None
        if self._add_table is None:
            q = self.order
            add = np.empty((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            for a in range(q):
                for b in range(a, q):
                    s = self.add_code(a, b)
                    add[a, b] = s
                    add[b, a] = s
            for a in range(1, q):
                for b in range(a, q):
                    m = self.mul_code(a, b)
                    mul[a, b] = m
                    mul[b, a] = m
            self._add_table = add
            self._mul_table = mul
        return self._add_table, self._mul_table

    def trace_table(self) -> np.ndarray:
        """Absolute trace to GF(p) of every code, as residues mod p."""
        if self._trace_table is None:
            if self.order > OP_GUARD:
                raise SizeGuard("trace table too large")
            prime = self.tower()[0]
            self._trace_table = np.array(
                [relative_trace(self.element(c), prime).code for c in range(self.order)],
                dtype=np.int64,
            )
        return self._trace_table

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        tower = []
        for level in self.tower()[1:]:
            base = level.base
            tower.append([element_to_json(base.element(c)) for c in level.modulus])
        return {"p": self.p, "tower": tower}

    def __reduce__(self):
        return (field_from_json, (self.to_json(),))


class FieldElement:
    """An element of a `Field`, stored as its integer code."""

    __slots__ = ("field", "code")

    def __init__(self, field: Field, code: int):
        self.field = field
        self.code = code

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise MixedFields(f"{self.field!r} vs {other.field!r}")
            return other
        if isinstance(other, int):
            return FieldElement(self.field, other % self.field.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.add_code(self.code, other.code))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_code(self.code, other.code))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.sub_code(other.code, self.code))

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(self.field, self.field.mul_code(self.code, other.code))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return FieldElement(
            self.field, self.field.mul_code(self.code, self.field.inv_code(other.code))
        )

    def __neg__(self):
        return FieldElement(self.field, self.field.neg_code(self.code))

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow_code(self.code, e))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_code(self.code))

    def __eq__(self, other) -> bool:
        if isinstance(other, FieldElement):
            return self.field == other.field and self.code == other.code
        if isinstance(other, int):
            return self.code == other % self.field.order
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field._hash, self.code))

    def __bool__(self) -> bool:
        return self.code != 0

    def __repr__(self) -> str:
        return f"<{self.code} in {self.field!r}>"

    @property
    def coeffs(self) -> tuple["FieldElement", ...]:
        """Coefficient vector over the immediate base field."""
        f = self.field
        if f.base is None:
            return (self,)
        return tuple(FieldElement(f.base, d) for d in f.digits(self.code))


# -- construction -------------------------------------------------------------


def make_prime_field(p: int) -> Field:
    """GF(p) for a prime p <= 2**31."""
    if p > 2**31:
        raise SizeGuard(f"prime {p} exceeds the 2**31 guard")
    if not _is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    field = _PRIME_CACHE.get(p)
    if field is None:
        field = Field(None, p, None)
        _PRIME_CACHE[p] = field
    return field


def extend(base: Field, degree: int) -> Field:
    """Extension of degree `degree` with the lexicographically smallest
    monic irreducible modulus (coefficients low-to-high, base elements
    ordered by code).  Deterministic across runs."""
    if degree < 1:
        raise ValueError("extension degree must be >= 1")
    if degree == 1:
        return base
    if base.order**degree > 2**63:
        raise SizeGuard(f"order {base.order}**{degree} exceeds the 2**63 guard")
    key = (base._key, degree)
    field = _EXTENSION_CACHE.get(key)
    if field is None:
        modulus = _smallest_irreducible(base, degree)
        field = Field(base, base.p, modulus)
        _EXTENSION_CACHE[key] = field
    return field


def extend_with_modulus(base: Field, modulus) -> Field:
    """Extension by an explicit monic irreducible modulus (codes or elements,
    low-to-high, length degree+1).  Used when deserializing fields."""
    codes = []
    for c in modulus:
        if isinstance(c, FieldElement):
            if c.field != base:
                raise MixedFields("modulus coefficients must live in the base field")
            codes.append(c.code)
        else:
            codes.append(int(c))
    if len(codes) < 3 or codes[-1] != base.one_code:
        raise ValueError("modulus must be monic of degree >= 2")
    if not polys.is_irreducible(base, codes):
        raise CompositeModulus(f"modulus {codes} is reducible over {base!r}")
    degree = len(codes) - 1
    if base.order**degree > 2**63:
        raise SizeGuard("extension order exceeds the 2**63 guard")
    return Field(base, base.p, tuple(codes))


def _smallest_irreducible(base: Field, degree: int) -> tuple[int, ...]:
    one = base.one_code
    for tail in itertools.product(range(base.order), repeat=degree):
        if tail[0] == 0:
            continue  # constant term zero means root 0
        candidate = list(tail) + [one]
        if polys.is_irreducible(base, candidate):
            return tuple(candidate)
    raise RuntimeError(
        f"no irreducible of degree {degree} over {base!r}"
    )  # pragma: no cover - cannot happen over a finite field


def field_of_order(q: int) -> Field:
    """The canonical field with q elements: a direct extension of GF(p)."""
    if q < 2:
        raise CompositeModulus(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    e = 0
    n = q
    while n % p == 0 and n > 1:
        n //= p
        e += 1
    if n != 1:
        raise CompositeModulus(f"{q} is not a prime power")
    return extend(make_prime_field(p), e)


def generator(field: Field) -> FieldElement:
    """Residue class of the tower variable: an algebra generator over the
    immediate base whose powers 1, a, ..., a**(m-1) form a basis."""
    if field.base is None:
        raise NotAnExtension(f"{field!r} is a prime field")
    return FieldElement(field, field.base.order)


def relative_trace(x: FieldElement, down_to: Field) -> FieldElement:
    """Trace sum(x**(s**i), i < k) down to a field in x's tower."""
    owner = x.field
    if not owner.contains_field(down_to):
        raise NotInTower(f"{down_to!r} does not occur in the tower of {owner!r}")
    s = down_to.order
    k = owner.absolute_degree // down_to.absolute_degree
    acc = x.code
    t = x.code
    for _ in range(k - 1):
        t = owner.pow_code(t, s)
        acc = owner.add_code(acc, t)
    if acc >= s:  # pragma: no cover - Frobenius fixed point, cannot happen
        raise RuntimeError("trace landed outside the target field")
    return FieldElement(down_to, acc)


# -- serialization -------------------------------------------------------------


def element_to_json(x: FieldElement):
    """Nested little-endian coefficient lists; prime residues at the leaves."""
    f = x.field
    if f.base is None:
        return x.code
    return [element_to_json(c) for c in x.coeffs]


def element_from_json(field: Field, data) -> FieldElement:
    if field.base is None:
        if not isinstance(data, int) or not 0 <= data < field.p:
            raise ValueError(f"bad prime-field element {data!r}")
        return FieldElement(field, data)
    if not isinstance(data, list) or len(data) != field.degree:
        raise ValueError(f"bad element of {field!r}: {data!r}")
    digits = [element_from_json(field.base, d).code for d in data]
    return FieldElement(field, field.undigits(digits))


def field_from_json(obj: dict) -> Field:
    field = make_prime_field(obj["p"])
    for modulus in obj["tower"]:
        coeffs = [element_from_json(field, c) for c in modulus]
        candidate = extend(field, len(coeffs) - 1)
        if candidate.modulus == tuple(c.code for c in coeffs):
            field = candidate  # reuse the cached canonical instance
        else:
            field = extend_with_modulus(field, coeffs)
    return field
