"""Independent brute-force oracles shared by the test modules.

These deliberately avoid the library's vectorized paths: scalar field
arithmetic and trial division only, so they can stand as ground truth
for the derived expected values.
"""

import itertools


def slow_zero_slice_count(tensor, pivot):
    """Count assignments to the non-pivot legs whose slice functional is
    identically zero, by plain nested loops."""
    field = tensor.field
    q = field.order
    dims = tensor.dims
    others = [j for j in range(len(dims)) if j != pivot]
    pools = [itertools.product(range(q), repeat=dims[j]) for j in others]
    count = 0
    for assignment in itertools.product(*pools):
        coeffs = [0] * dims[pivot]
        for idx in itertools.product(*[range(n) for n in dims]):
            c = int(tensor.codes[idx])
            if c == 0:
                continue
            w = c
            for pos, j in enumerate(others):
                w = field.mul_code(w, assignment[pos][idx[j]])
            coeffs[idx[pivot]] = field.add_code(coeffs[idx[pivot]], w)
        if all(v == 0 for v in coeffs):
            count += 1
    return count


def monic_irreducible_counts(field, max_degree):
    """Count monic irreducibles per degree by trial division against the
    lower-degree irreducibles (no gcd machinery)."""
    q = field.order

    def poly_mod(a, b):
        a = list(a)
        db = len(b) - 1
        inv = field.inv_code(b[-1])
        while len(a) - 1 >= db and any(a):
            while a and a[-1] == 0:
                a.pop()
            if len(a) - 1 < db:
                break
            factor = field.mul_code(a[-1], inv)
            shift = len(a) - 1 - db
            for i, c in enumerate(b):
                a[shift + i] = field.sub_code(a[shift + i], field.mul_code(factor, c))
        while a and a[-1] == 0:
            a.pop()
        return a

    irreducible = {1: [[c, field.one_code] for c in range(q)]}
    for deg in range(2, max_degree + 1):
        found = []
        for tail in itertools.product(range(q), repeat=deg):
            poly = list(tail) + [field.one_code]
            divisible = False
            for small_deg in range(1, deg // 2 + 1):
                for p in irreducible.get(small_deg, []):
                    if not poly_mod(poly, p):
                        divisible = True
                        break
                if divisible:
                    break
            if not divisible:
                found.append(poly)
        irreducible[deg] = found
    return {deg: len(polys) for deg, polys in irreducible.items()}
