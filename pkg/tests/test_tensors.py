"""Tensor operations: evaluation, slicing, restriction, base change."""

import itertools
import json
import random

import numpy as np
import pytest

from tensorcert import (
    DimensionMismatch,
    LinearMap,
    MultSpec,
    OrderMismatch,
    Tensor,
    diagonal,
    extend,
    generator,
    make_prime_field,
    mult_tensor,
    random_tensor,
)

F2 = make_prime_field(2)
F3 = make_prime_field(3)
F4 = extend(F2, 2)


def _random_map(field, rows, cols, rng):
    return LinearMap(
        field,
        np.array([[rng.randrange(field.order) for _ in range(cols)] for _ in range(rows)]),
    )


def test_evaluate_diagonal():
    T = diagonal(2, 3, F2)
    e1 = [1, 0]
    assert T.evaluate([e1, e1, e1]) == F2.one
    assert T.evaluate([[0, 0], e1, e1]) == F2.zero


def test_evaluate_mult_matches_field_multiplication():
    spec = MultSpec(F2, F4, 3)
    T = mult_tensor(spec)
    rng = random.Random(3)
    for _ in range(40):
        x1, x2 = rng.randrange(4), rng.randrange(4)
        prod = F4.mul_code(x1, x2)
        for j in range(2):
            ej = [1 if k == j else 0 for k in range(2)]
            got = T.evaluate([list(F4.digits(x1)), list(F4.digits(x2)), ej])
            assert got.code == F4.digits(prod)[j]


def test_evaluate_dimension_mismatch():
    T = diagonal(2, 2, F2)
    with pytest.raises(DimensionMismatch):
        T.evaluate([[1, 0, 0], [1, 0]])


def test_slice_form_identity():
    I = diagonal(2, 2, F2)
    assert [e.code for e in I.slice_form(0, [[1, 0]])] == [1, 0]
    Z = Tensor.zero(F2, (2, 2, 2))
    assert all(e.code == 0 for e in Z.slice_form(1, [[1, 1], [0, 1]]))


def test_slice_form_mult_alpha():
    # pivot 0, fixed y = z = coords(alpha): slice x -> <z, coords(x * alpha)>
    spec = MultSpec(F2, F4, 3)
    T = mult_tensor(spec)
    alpha = generator(F4)
    fixed = [list(F4.digits(alpha.code))] * 2
    got = [e.code for e in T.slice_form(0, fixed)]
    expected = []
    for i in range(2):
        x = F4.element(F4.undigits([1 if k == i else 0 for k in range(2)]))
        prod = (x * alpha).coeffs
        acc = F2.zero
        for zi, ci in zip(fixed[1], prod):
            acc = acc + F2.element(zi) * ci
        expected.append(acc.code)
    assert got == expected


def test_slice_form_consistent_with_evaluate():
    rng = random.Random(11)
    T = random_tensor(F3, (2, 3, 2), rng)
    fixed = [[rng.randrange(3) for _ in range(2)], [rng.randrange(3) for _ in range(2)]]
    coeffs = T.slice_form(1, fixed)
    for _ in range(10):
        x = [rng.randrange(3) for _ in range(3)]
        direct = T.evaluate([fixed[0], x, fixed[1]])
        via_slice = F3.zero
        for c, xi in zip(coeffs, x):
            via_slice = via_slice + c * F3.element(xi)
        assert direct == via_slice


def test_restrict_identity_and_zero():
    rng = random.Random(5)
    T = random_tensor(F4, (2, 2, 2), rng)
    ident = [LinearMap.identity(F4, 2)] * 3
    assert T.restrict(ident) == T
    zero_map = LinearMap.zeros(F4, 2, 2)
    assert T.restrict([zero_map, LinearMap.identity(F4, 2), LinearMap.identity(F4, 2)]).is_zero


def test_restrict_functoriality():
    rng = random.Random(6)
    for field in (F2, F3, F4):
        T = random_tensor(field, (2, 3, 2), rng)
        A = [_random_map(field, n, 2, rng) for n in (2, 3, 2)]
        B = [_random_map(field, 2, 2, rng) for _ in range(3)]
        assert T.restrict(A).restrict(B) == T.restrict([a.compose(b) for a, b in zip(A, B)])


def test_base_change_identity_and_naturality():
    rng = random.Random(8)
    T = random_tensor(F2, (2, 2), rng)
    assert T.base_change(F2) == T
    K = extend(F2, 4)
    TK = T.base_change(K)
    A = [_random_map(F2, 2, 2, rng) for _ in range(2)]
    AK = [LinearMap(K, a.entries) for a in A]
    assert T.restrict(A).base_change(K) == TK.restrict(AK)


def test_base_change_commutes_with_evaluate():
    rng = random.Random(9)
    T = random_tensor(F2, (2, 2, 2), rng)
    K = extend(F2, 2)
    TK = T.base_change(K)
    for _ in range(100):
        vecs = [[rng.randrange(2) for _ in range(2)] for _ in range(3)]
        small = T.evaluate(vecs)
        big = TK.evaluate(vecs)
        assert big.code == small.code  # constants embed code-identically


def test_diagonal_examples():
    D = diagonal(1, 3, F2)
    assert D.dims == (1, 1, 1) and D.codes[0, 0, 0] == 1
    D2 = diagonal(2, 2, F3)
    assert np.array_equal(D2.codes, np.eye(2, dtype=np.int64))
    empty = diagonal(0, 3, F2)
    assert empty.dims == (0, 0, 0)


def test_diagonal_evaluate_formula():
    rng = random.Random(10)
    D = diagonal(3, 3, F3)
    for _ in range(20):
        vecs = [[rng.randrange(3) for _ in range(3)] for _ in range(3)]
        expected = F3.zero
        for i in range(3):
            term = F3.one
            for v in vecs:
                term = term * F3.element(v[i])
            expected = expected + term
        assert D.evaluate(vecs) == expected


def test_direct_sum():
    one = diagonal(1, 3, F2)
    assert one.direct_sum(one) == diagonal(2, 3, F2)
    T = diagonal(2, 3, F2)
    assert T.direct_sum(diagonal(0, 3, F2)) == T
    with pytest.raises(OrderMismatch):
        diagonal(2, 2, F2).direct_sum(diagonal(2, 3, F2))


def test_multilinearity_exhaustive_small():
    for field in (F2, F3):
        q = field.order
        rng = random.Random(13)
        T = random_tensor(field, (2, 2), rng)
        for a in range(q):
            for b in range(q):
                for x in itertools.product(range(q), repeat=2):
                    for y in itertools.product(range(q), repeat=2):
                        for fixed in itertools.product(range(q), repeat=2):
                            ax_by = [
                                field.add_code(
                                    field.mul_code(a, x[i]), field.mul_code(b, y[i])
                                )
                                for i in range(2)
                            ]
                            lhs = T.evaluate([ax_by, list(fixed)])
                            rhs = field.element(a) * T.evaluate([list(x), list(fixed)]) + \
                                field.element(b) * T.evaluate([list(y), list(fixed)])
                            assert lhs == rhs


def test_tensor_json_roundtrip():
    rng = random.Random(14)
    for field, dims in ((F2, (2, 2, 2)), (F4, (2, 3)), (extend(F4, 2), (2, 2))):
        T = random_tensor(field, dims, rng)
        blob = json.dumps(T.to_json(), sort_keys=True)
        again = Tensor.from_json(json.loads(blob))
        assert again == T
        assert json.dumps(again.to_json(), sort_keys=True) == blob
