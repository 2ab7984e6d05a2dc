from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbent import DomainSpec, UsageError
from gbent.domain import mod_inverse_matrix

from conftest import SMALL_CASES

SPECS = [DomainSpec.parse(p, d) for p, _, d in SMALL_CASES]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_text_round_trip(spec):
    assert DomainSpec.parse(spec.p, str(spec)) == spec


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_index_bijection(spec):
    seen = [spec.to_index(x) for x in spec.points()]
    assert seen == list(range(spec.size))
    assert spec.size == spec.p**spec.n


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_inner_product_matrix_matches_pointwise(spec):
    pts = list(spec.points())
    ip = spec.inner_product_matrix()
    rng = np.random.default_rng(1)
    for a, x in rng.integers(0, spec.size, (40, 2)):
        assert ip[a, x] == spec.inner_product(pts[a], pts[x])
    assert np.array_equal(ip, ip.T)


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_bilinear_and_nondegenerate(spec):
    ip = spec.inner_product_matrix()
    p = spec.p
    a, b, x = 1 % spec.size, spec.size - 1, spec.size // 2
    ab = spec.add_index(a, b)
    assert ip[ab, x] == (ip[a, x] + ip[b, x]) % p
    # only the zero vector pairs to zero with everything
    assert np.flatnonzero(~np.any(ip != 0, axis=1)).tolist() == [0]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_negation(spec):
    neg = spec.negate_index_map
    assert np.array_equal(neg[neg], np.arange(spec.size))
    assert np.all(spec.add_index(np.arange(spec.size), neg) == 0)
    x = spec.from_index(spec.size - 1)
    assert spec.to_index(spec.negate(x)) == neg[spec.size - 1]


@pytest.mark.parametrize("spec", SPECS, ids=str)
def test_functional_table_agrees(spec):
    a = spec.from_index(spec.size // 3)
    ip = spec.inner_product_matrix()
    assert np.array_equal(spec.functional_table(a), ip[spec.size // 3])


def test_product_and_parse_errors():
    a = DomainSpec.parse(3, "dot:1")
    b = DomainSpec.parse(3, "field:2:poly=2,2,1")
    assert str(a * b) == "dot:1,field:2:poly=2,2,1"
    for bad in ("dot:0", "cube:2", "field:2", "field:2:poly=1,1,1", "dot:x"):
        with pytest.raises(UsageError):
            DomainSpec.parse(3, bad)
    with pytest.raises(UsageError):
        a * DomainSpec.parse(5, "dot:1")


@settings(max_examples=30)
@given(st.integers(2, 5), st.sampled_from([3, 5, 7]), st.integers(0, 10**6))
def test_mod_inverse_matrix(n, p, seed):
    rng = np.random.default_rng(seed)
    m = rng.integers(0, p, (n, n))
    try:
        inv = mod_inverse_matrix(m, p)
    except ArithmeticError:
        return
    assert np.array_equal(m @ inv % p, np.eye(n, dtype=np.int64))
