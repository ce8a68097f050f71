"""Size guards and the large-prime arithmetic paths."""

import random

import numpy as np
import pytest

from tensorcert import (
    LinearMap,
    SizeGuard,
    analytic_rank,
    brute_force_subrank,
    extend,
    make_prime_field,
    matrix_rank,
    mult_tensor,
    MultSpec,
    random_tensor,
)

BIG_PRIME = 2**31 - 1


def test_prime_size_guard():
    with pytest.raises(SizeGuard):
        make_prime_field(2**31 + 11)


def test_extension_size_guard():
    with pytest.raises(SizeGuard):
        extend(make_prime_field(2), 64)  # 2^64 > 2^63


def test_extension_degree_validated():
    with pytest.raises(ValueError):
        extend(make_prime_field(2), 0)


def test_big_prime_arithmetic():
    P = make_prime_field(BIG_PRIME)
    x = P.element(123456789)
    assert (x * x.inverse()).code == 1
    assert (x + (-x)).code == 0


def test_big_prime_matrix_paths():
    # the enumeration guard routes d = 2 to exact kernel counting, and
    # matrix products over the big prime use the exact object path
    P = make_prime_field(BIG_PRIME)
    rng = random.Random(0)
    T = random_tensor(P, (3, 3), rng)
    assert analytic_rank(T).value == float(matrix_rank(P, T.codes))
    maps = [
        LinearMap(P, np.array([[rng.randrange(P.order) for _ in range(2)] for _ in range(3)]))
        for _ in range(2)
    ]
    S = T.restrict(maps)
    assert S.dims == (2, 2)


def test_brute_force_subrank_guard():
    big = mult_tensor(MultSpec(make_prime_field(2), extend(make_prime_field(2), 4), 3))
    with pytest.raises(SizeGuard):
        brute_force_subrank(big, 4)


def test_elements_enumeration_guard():
    P = make_prime_field(BIG_PRIME)
    with pytest.raises(SizeGuard):
        next(P.elements())
