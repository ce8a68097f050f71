"""Field tower construction, arithmetic, traces, serialization."""

import itertools
import json
import random

import pytest

from tensorcert import (
    CompositeModulus,
    DivisionByZero,
    MixedFields,
    NotAnExtension,
    NotInTower,
    element_from_json,
    element_to_json,
    extend,
    extend_with_modulus,
    field_from_json,
    field_of_order,
    generator,
    make_prime_field,
    matrix_rank,
    relative_trace,
)

F2 = make_prime_field(2)
F3 = make_prime_field(3)
F4 = extend(F2, 2)
F9 = extend(F3, 2)


def test_prime_field_small():
    assert sorted(e.code for e in F2.elements()) == [0, 1]
    F7 = make_prime_field(7)
    assert (F7.element(3) + F7.element(5)).code == 1
    assert (F7.element(3) * F7.element(5)).code == 1


def test_composite_modulus_rejected():
    with pytest.raises(CompositeModulus):
        make_prime_field(4)
    with pytest.raises(CompositeModulus):
        make_prime_field(1)


def test_extend_f2_smallest_quadratic():
    # oracle: enumerate all 4 monic quadratics over GF(2); only y^2+y+1
    # has no root, hence is the unique irreducible one
    irreducible = []
    for c0, c1 in itertools.product(range(2), repeat=2):
        has_root = any((x * x + c1 * x + c0) % 2 == 0 for x in range(2))
        if not has_root:
            irreducible.append((c0, c1, 1))
    assert irreducible == [(1, 1, 1)]
    assert F4.modulus == (1, 1, 1)


def test_extend_degree_one_is_identity():
    assert extend(F4, 1) is F4
    assert extend(F2, 1) is F2


def test_extend_f4_lex_smallest():
    # oracle: first monic quadratic over GF(4) without a root, scanning
    # (c0, c1) by code lexicographically
    expected = None
    for c0, c1 in itertools.product(range(4), repeat=2):
        def f(x):
            return F4.add_code(F4.add_code(F4.mul_code(x, x), F4.mul_code(c1, x)), c0)
        if all(f(x) != 0 for x in range(4)):
            expected = (c0, c1, 1)
            break
    tower = extend(F4, 2)
    assert tower.modulus == expected
    assert tower.order == 16
    assert tower.base is F4


def test_arithmetic_f4():
    a = generator(F4)
    assert (a * a) == a + F4.one  # a^2 = a + 1


def test_mul_identity_random():
    rng = random.Random(42)
    F16 = extend(F2, 4)
    for _ in range(100):
        x = F16.random_element(rng)
        assert x * F16.one == x


def test_inverse_axiom_f9():
    for code in range(1, 9):
        x = F9.element(code)
        assert (x * x.inverse()) == F9.one
    with pytest.raises(DivisionByZero):
        F9.zero.inverse()


def test_mixed_fields_rejected():
    with pytest.raises(MixedFields):
        F4.one + F9.one


def test_generator_basis():
    a = generator(F4)
    assert a.coeffs == (F2.zero, F2.one)
    # GF(8): 1, a, a^2 linearly independent over GF(2)
    F8 = extend(F2, 3)
    b = generator(F8)
    rows = [list(F8.digits((b**i).code)) for i in range(3)]
    assert matrix_rank(F2, rows) == 3
    with pytest.raises(NotAnExtension):
        generator(F2)


def test_relative_trace_examples():
    a = generator(F4)
    # Tr(a) = a + a^2 = a + (a+1) = 1, by direct power sum
    direct = a + a**2
    assert direct == F4.one
    assert relative_trace(a, F2) == F2.one
    assert relative_trace(F4.zero, F2) == F2.zero


def test_relative_trace_linear_f4():
    for x in F4.elements():
        for y in F4.elements():
            lhs = relative_trace(x + y, F2)
            rhs = relative_trace(x, F2) + relative_trace(y, F2)
            assert lhs == rhs


def test_relative_trace_not_in_tower():
    with pytest.raises(NotInTower):
        relative_trace(F4.one, F3)


def test_trace_surjective_small_extensions():
    towers = [
        extend(F2, 2),
        extend(F2, 3),
        extend(F2, 4),
        extend(F2, 8),
        extend(F4, 2),
        extend(extend(F2, 3), 2),
        extend(F3, 2),
        extend(F3, 4),
        extend(F9, 2),
        extend(make_prime_field(5), 2),
        extend(make_prime_field(7), 2),
    ]
    for top in towers:
        assert top.order <= 256
        for down in top.tower()[:-1]:
            images = {relative_trace(x, down).code for x in top.elements()}
            assert images == set(range(down.order)), (top, down)


def test_multiplicative_group_spot_checks():
    rng = random.Random(7)
    for field in (F4, F9, extend(F2, 4), extend(F4, 2), extend(F2, 16)):
        assert field.order <= 2**16
        for _ in range(25):
            x, y, z = (field.random_element(rng) for _ in range(3))
            assert (x * y) * z == x * (y * z)
            if x.code and y.code:
                assert (x * y) / y == x


def test_frobenius_additive_exhaustive():
    small = [F4, extend(F2, 3), F9, extend(F2, 4), extend(F4, 2),
             extend(make_prime_field(5), 2), extend(F2, 6), extend(F3, 3)]
    for field in small:
        assert field.order <= 64
        p = field.p
        for x in field.elements():
            for y in field.elements():
                assert (x + y) ** p == x**p + y**p


def test_extend_deterministic_serialization():
    a = extend(extend(F2, 2), 2)
    b = extend_with_modulus(F4, [F4.element(c) for c in a.modulus])
    assert a == b
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)


def test_field_json_roundtrip():
    for field in (F2, F4, F9, extend(F4, 2), extend(F2, 5)):
        assert field_from_json(field.to_json()) == field


def test_element_json_examples():
    # prime residues at the leaves, nested little-endian lists above
    assert element_to_json(F2.one) == 1
    a = generator(F4)
    assert element_to_json(a) == [0, 1]
    tower = extend(F4, 2)
    x = tower.element(11)  # digits (3, 2) over GF(4)
    assert element_to_json(x) == [[1, 1], [0, 1]]
    assert element_from_json(tower, [[1, 1], [0, 1]]) == x


def test_field_of_order():
    assert field_of_order(7).order == 7
    assert field_of_order(8).order == 8
    assert field_of_order(9) == F9
    with pytest.raises(CompositeModulus):
        field_of_order(6)


def test_embedding_is_identity_on_codes():
    tower = extend(F4, 2)
    for x in F4.elements():
        assert tower.embed_code(x) == x.code
    assert tower.contains_field(F2)
    assert not tower.contains_field(F3)
