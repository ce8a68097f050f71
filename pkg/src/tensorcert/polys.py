"""Polynomial arithmetic over a field, on lists of element codes.

Coefficient lists are low-to-high. These helpers back the irreducibility
test used for modulus selection and the evaluation/interpolation
constructions; they are internal and deliberately minimal.
"""

from __future__ import annotations


def ptrim(coeffs: list[int]) -> list[int]:
    """Drop trailing zero coefficients."""
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


def pdeg(coeffs: list[int]) -> int:
    """Degree of a trimmed coefficient list (-1 for the zero polynomial)."""
    return len(ptrim(coeffs)) - 1


def padd(field, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(field.add_code(x, y))
    return ptrim(out)


def psub(field, a: list[int], b: list[int]) -> list[int]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else 0
        y = b[i] if i < len(b) else 0
        out.append(field.sub_code(x, y))
    return ptrim(out)


def pscale(field, a: list[int], c: int) -> list[int]:
    if c == 0:
        return []
    return ptrim([field.mul_code(c, x) for x in a])


def pmul(field, a: list[int], b: list[int]) -> list[int]:
    a = ptrim(a)
    b = ptrim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y == 0:
                continue
            out[i + j] = field.add_code(out[i + j], field.mul_code(x, y))
    return ptrim(out)


def pmod(field, a: list[int], f: list[int]) -> list[int]:
    """Remainder of a modulo a monic polynomial f."""
    f = ptrim(f)
    if not f or f[-1] != field.one_code:
        raise ValueError("pmod requires a monic modulus")
    m = len(f) - 1
    r = list(ptrim(a))
    for k in range(len(r) - 1, m - 1, -1):
        c = r[k]
        if c == 0:
            continue
        r[k] = 0
        for i in range(m):
            if f[i] != 0:
                r[k - m + i] = field.sub_code(r[k - m + i], field.mul_code(c, f[i]))
    return ptrim(r[:m])


def ppow_mod(field, a: list[int], e: int, f: list[int]) -> list[int]:
    """a**e modulo monic f, by square and multiply."""
    result = [field.one_code]
    base = pmod(field, a, f)
    while e > 0:
        if e & 1:
            result = pmod(field, pmul(field, result, base), f)
        base = pmod(field, pmul(field, base, base), f)
        e >>= 1
    return result


def pgcd(field, a: list[int], b: list[int]) -> list[int]:
    """Monic gcd."""
    a = ptrim(a)
    b = ptrim(b)
    while b:
        a, b = b, _prem(field, a, b)
    if a:
        a = pscale(field, a, field.inv_code(a[-1]))
    return a


def _prem(field, a: list[int], b: list[int]) -> list[int]:
    """Remainder of a modulo b for arbitrary nonzero b."""
    inv_lead = field.inv_code(b[-1])
    monic = pscale(field, b, inv_lead)
    return pmod(field, a, monic)


def peval(field, coeffs: list[int], x: int) -> int:
    """Evaluate at a point by Horner's rule."""
    acc = 0
    for c in reversed(coeffs):
        acc = field.add_code(field.mul_code(acc, x), c)
    return acc


def is_irreducible(field, f: list[int]) -> bool:
    """Exact irreducibility test for a monic polynomial over `field`.

    A monic f of degree m >= 2 is irreducible iff it shares no factor with
    x**(s**j) - x for j = 1..m//2 (s the field order), since any reducible
    monic of degree m has an irreducible factor of degree at most m//2 and
    x**(s**j) - x is the product of all monic irreducibles of degree
    dividing j.
    """
    f = ptrim(f)
    m = len(f) - 1
    if m < 1 or f[-1] != field.one_code:
        raise ValueError("irreducibility test requires a monic polynomial")
    if m == 1:
        return True
    if f[0] == 0:  # divisible by x
        return False
    s = field.order
    x = [0, field.one_code]
    xq = x
    for _ in range(m // 2):
        xq = ppow_mod(field, xq, s, f)
        g = pgcd(field, f, psub(field, xq, x))
        if pdeg(g) != 0:
            return False
    return True
