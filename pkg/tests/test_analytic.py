"""Exact bias, analytic rank and the character-sum oracle."""

import math
import random
from fractions import Fraction

import pytest

from tensorcert import (
    MultSpec,
    SizeGuard,
    Tensor,
    analytic_rank,
    bias,
    bias_via_characters,
    diagonal,
    extend,
    field_of_order,
    make_prime_field,
    matrix_rank,
    mult_tensor,
    random_tensor,
)

from oracles import slow_zero_slice_count

F2 = make_prime_field(2)
F3 = make_prime_field(3)
F4 = extend(F2, 2)


def test_bias_zero_tensor():
    Z = Tensor.zero(F3, (2, 2))
    b = bias(Z)
    assert b.count == 3**2 and b.fraction == 1
    assert analytic_rank(Z).value == 0.0


def test_bias_identity_matrix():
    for q in (2, 3, 4, 5):
        field = field_of_order(q)
        for n in (1, 2, 3):
            b = bias(diagonal(n, 2, field))
            assert b.count == 1 and b.exponent == n and b.q == q


def test_bias_mult_f4_is_7_16():
    T = mult_tensor(MultSpec(F2, F4, 3))
    oracle = slow_zero_slice_count(T, 2)
    assert oracle == 7
    b = bias(T)
    assert (b.count, b.exponent, b.q) == (7, 4, 2)
    assert b.fraction == Fraction(7, 16)


def test_bias_matches_slow_oracle_random():
    rng = random.Random(21)
    for field, dims in ((F2, (2, 2, 2)), (F3, (2, 2)), (F4, (2, 2, 2)), (F2, (3, 2, 2))):
        for _ in range(3):
            T = random_tensor(field, dims, rng)
            pivot = max(range(len(dims)), key=lambda j: dims[j])
            assert bias(T).count == slow_zero_slice_count(T, pivot)


def test_analytic_rank_values():
    T = mult_tensor(MultSpec(F2, F4, 3))
    ar = analytic_rank(T)
    assert abs(ar.value - (4 - math.log2(7))) < 1e-12
    for n in (1, 3, 5):
        assert analytic_rank(diagonal(n, 2, F3)).value == float(n)


def test_direct_sum_doubles_ar():
    rng = random.Random(22)
    for _ in range(5):
        T = random_tensor(F2, (2, 2, 2), rng)
        b = bias(T)
        bb = bias(T.direct_sum(T))
        assert bb.fraction == b.fraction**2
        assert abs(analytic_rank(T.direct_sum(T)).value - 2 * analytic_rank(T).value) < 1e-9


def test_bias_multiplicative_on_direct_sums():
    rng = random.Random(23)
    for field in (F2, F3):
        for _ in range(4):
            T = random_tensor(field, (2, 2), rng)
            S = random_tensor(field, (1, 2), rng)
            assert bias(T.direct_sum(S)).fraction == bias(T).fraction * bias(S).fraction


def test_character_oracle_examples():
    assert bias_via_characters(Tensor.zero(F2, (2, 2))) == 1.0
    assert abs(bias_via_characters(diagonal(2, 2, F2)) - 0.25) < 1e-12
    T = mult_tensor(MultSpec(F2, F4, 3))
    assert abs(bias_via_characters(T) - 0.4375) < 1e-12


def test_character_oracle_agrees_on_suite():
    rng = random.Random(24)
    cases = [
        random_tensor(F2, (2, 2, 2), rng),
        random_tensor(F3, (2, 2), rng),
        random_tensor(F4, (2, 2), rng),
        random_tensor(field_of_order(9), (2, 2), rng),
        random_tensor(F2, (3, 2, 2), rng),
        mult_tensor(MultSpec(F3, extend(F3, 2), 3)),
    ]
    for T in cases:
        assert abs(bias_via_characters(T) - bias(T).value) < 1e-9


def test_character_oracle_guard():
    big = Tensor.zero(field_of_order(16), (4, 4))
    with pytest.raises(SizeGuard):
        bias_via_characters(big)


def test_pivot_invariance():
    rng = random.Random(25)
    for field in (F2, F3):
        for dims in ((3, 3, 3), (2, 2), (2, 3, 2), (2, 2, 2, 2)):
            for _ in range(3):
                T = random_tensor(field, dims, rng)
                counts = {
                    (bias(T, pivot=j).count, bias(T, pivot=j).exponent)
                    for j in range(len(dims))
                    if dims[j] == max(dims)
                }
                assert len(counts) == 1
                # any pivot at all gives the same bias fraction
                fractions = {bias(T, pivot=j).fraction for j in range(len(dims))}
                assert len(fractions) == 1


def test_matrix_ar_equals_gauss_rank():
    rng = random.Random(26)
    for _ in range(60):
        q = rng.choice([2, 3, 4])
        field = field_of_order(q)
        n, m = rng.randrange(1, 6), rng.randrange(1, 6)
        T = random_tensor(field, (n, m), rng)
        assert analytic_rank(T).value == float(matrix_rank(field, T.codes))


def test_matrix_ar_stable_under_extension():
    rng = random.Random(27)
    K = extend(F2, 4)
    for _ in range(20):
        T = random_tensor(F2, (4, 4), rng)
        assert analytic_rank(T.base_change(K)).value == analytic_rank(T).value


def test_matrix_big_field_uses_kernel_count():
    # 5x5 over GF(256) is far beyond the enumeration guard but exact
    rng = random.Random(28)
    K = extend(F2, 8)
    T = random_tensor(F2, (5, 5), rng)
    TK = T.base_change(K)
    assert analytic_rank(TK).value == float(matrix_rank(F2, T.codes))


def test_restriction_monotonicity_sanity():
    import numpy as np

    from tensorcert import LinearMap

    rng = random.Random(29)
    for _ in range(10):
        T = random_tensor(F2, (2, 2, 2), rng)
        maps = [
            LinearMap(F2, np.array([[rng.randrange(2) for _ in range(2)] for _ in range(2)]))
            for _ in range(3)
        ]
        S = T.restrict(maps)
        assert analytic_rank(S).value <= analytic_rank(T).value + 1e-12


def test_degenerate_empty_leg():
    T = diagonal(0, 3, F2)
    b = bias(T)
    assert b.fraction == 1
    assert analytic_rank(T).value == 0.0


def test_enumeration_guard_d3():
    big = Tensor.zero(field_of_order(16), (4, 4, 4))
    with pytest.raises(SizeGuard):
        bias(big)
