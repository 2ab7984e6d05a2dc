from __future__ import annotations

import itertools

import pytest
from hypothesis import given, settings, strategies as st

from gbent import DomainError, ExtField, UsageError
from gbent.field import is_irreducible, is_prime, parse_poly

F25 = ExtField(5, "2,4,1")
F27 = ExtField(3, "1,2,0,1", primitive=True)
elem27 = st.integers(0, 26).map(F27.from_index)


def test_small_field_arithmetic():
    z = F25.z
    assert z * z == z + 3
    assert z.trace() == 1
    assert F25(3).trace() == 1  # 2 * 3 mod 5


def test_construction_rejects_bad_input():
    with pytest.raises(UsageError):
        ExtField(3, "2,1,0,1")  # x^3 + x + 2 has the root 2
    with pytest.raises(UsageError):
        ExtField(4, "1,1,1")
    with pytest.raises(UsageError):
        ExtField(3, "1,2,0,2")
    with pytest.raises(UsageError):
        ExtField(3, [1] + [0] * 12 + [1])
    with pytest.raises(UsageError):
        ExtField(3, "1,0,1", primitive=True)  # z^2 = -1 has order 4


def test_primitivity_of_reference_polynomials():
    assert ExtField(3, "1,2,0,0,0,1", primitive=True).is_primitive
    assert ExtField(7, "3,6,1", primitive=True).element_order(ExtField(7, "3,6,1").z) == 48
    assert ExtField.prime_field(5).z.index == 2


def _mobius(n: int) -> int:
    out, m, d = 1, n, 2
    while d * d <= m:
        if m % d == 0:
            m //= d
            if m % d == 0:
                return 0
            out = -out
        d += 1
    return -out if m > 1 else out


@pytest.mark.parametrize("p,m", [(3, 2), (3, 3), (5, 2), (3, 4)])
def test_irreducible_count_matches_necklace_formula(p, m):
    count = sum(is_irreducible(tuple(c) + (1,), p) for c in itertools.product(range(p), repeat=m))
    expected = sum(_mobius(d) * p ** (m // d) for d in range(1, m + 1) if m % d == 0) // m
    assert count == expected


def test_helpers():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]
    assert parse_poly(" 2, 4 ,1") == (2, 4, 1)


@given(elem27, elem27, elem27)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == F27.zero()


@given(elem27)
def test_inverse_and_frobenius(a):
    if not a.is_zero():
        assert (a * a.inv()).is_one()
        assert a / a == F27.one()
    assert (a + a ** 3 + a ** 9) == F27(a.trace())


@given(elem27, elem27, st.integers(0, 2))
def test_trace_is_linear(a, b, c):
    assert (a * c + b).trace() == (c * a.trace() + b.trace()) % 3


@settings(max_examples=50)
@given(elem27, elem27)
def test_quadratic_character_is_multiplicative(a, b):
    if a.is_zero() or b.is_zero():
        return
    assert (a * b).quad_character() == a.quad_character() * b.quad_character()
    assert a.quad_character() == (1 if (a ** 13).is_one() else -1)


def test_quadratic_character_of_zero():
    with pytest.raises(DomainError):
        F27.zero().quad_character()
    assert F27.eta_table[0] == 0
    assert sorted(F27.eta_table[1:].tolist()).count(1) == 13


def test_tables_agree_with_elementwise_arithmetic():
    f = ExtField(5, "2,4,1")
    c = f.zpow(7)
    for x in f.elements():
        assert f.scale_map(c)[x.index] == (c * x).index
        assert f.power_map(3)[x.index] == (x ** 3).index
        assert f.trace_table[x.index] == x.trace()
    y = f.zpow(3)
    assert f.add_table[f.z.index, y.index] == (f.z + y).index
