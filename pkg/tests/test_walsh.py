from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbent import CycInt, DomainSpec, GFunction, InvalidSpectrum, inverse_walsh, walsh_full_fast, walsh_naive
from gbent.walsh import WalshSpectrum, walsh_naive_full

from conftest import SMALL_CASES, random_function


@pytest.mark.parametrize("p,k,domain", SMALL_CASES)
def test_fast_matches_naive(p, k, domain, rng):
    f = random_function(p, k, domain, rng)
    assert walsh_full_fast(f) == walsh_naive_full(f)


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(SMALL_CASES), st.integers(0, 10**6))
def test_parseval_and_inverse(case, seed):
    p, k, domain = case
    f = random_function(p, k, domain, np.random.default_rng(seed))
    w = walsh_full_fast(f)
    assert w.parseval_total() == CycInt.from_int(p, k, p ** (2 * f.n))
    assert inverse_walsh(w) == f


@pytest.mark.parametrize("p,k,domain", SMALL_CASES)
def test_linear_function_has_delta_spectrum(p, k, domain):
    spec = DomainSpec.parse(p, domain)
    b = spec.size // 2 + 1
    f = GFunction(p, k, spec, spec.inner_product_matrix()[b] * p ** (k - 1))
    w = walsh_full_fast(f)
    for a in range(spec.size):
        expected = p**spec.n if a == b else 0
        assert w[a] == CycInt.from_int(p, k, expected)


def test_inverse_rejects_perturbed_spectrum(rng):
    f = random_function(3, 2, "dot:2", rng)
    w = walsh_full_fast(f)
    table = np.array(w.table)
    table[0, 0, 0] += 1
    with pytest.raises(InvalidSpectrum):
        inverse_walsh(WalshSpectrum(w.p, w.k, w.spec, table))


def test_naive_accepts_points_and_indices(rng):
    f = random_function(5, 2, "field:2:poly=2,4,1", rng)
    pt = f.spec.from_index(7)
    assert walsh_naive(f, pt) == walsh_naive(f, 7)
    assert len(walsh_full_fast(f).dumps().splitlines()) == f.spec.size


def test_wide_values_fall_back_to_python_ints():
    # p^n * p large enough to force object arrays stays exact
    from gbent.walsh import working_dtype
    assert working_dtype(2**70) is object
    assert working_dtype(100) is np.int64
