from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gbent import (
    NON_WEAKLY_REGULAR, NOT_BENT, REGULAR, WEAKLY_REGULAR, BudgetExceeded, DomainSpec, ExtField, GFunction, UsageError,
    analyze, check_double_dual, check_even_dual, check_inverse_identity, check_sign_at_zero, embed_bent, is_self_dual,
    quadratic_bent, search_self_dual, second_derivative_witness,
)
from gbent.analysis import mu_label, xi_case
from gbent.presets import g3_function, z25_dual, z25_function

from conftest import random_function

F27 = ExtField(3, "1,2,0,1", primitive=True)
F25 = ExtField(5, "2,4,1", primitive=True)


def test_xi_and_mu_labels():
    assert xi_case(3, 3) == "xi=i" and xi_case(3, 2) == "xi=1" and xi_case(5, 3) == "xi=1"
    assert mu_label(-1, "xi=i") == "-i" and mu_label(1, "xi=1") == "+1"


def test_zero_function_is_not_bent():
    f = GFunction(3, 2, DomainSpec.parse(3, "dot:2"), np.zeros(9, dtype=int))
    cert = analyze(f)
    assert not cert.is_gbent and cert.regularity == NOT_BENT
    assert 0 in cert.failures
    with pytest.raises(UsageError):
        cert.dual()
    assert not is_self_dual(f, cert).holds


def test_z25_dual_and_certificate_json():
    f = z25_function()
    cert = analyze(f)
    assert cert.dual() == z25_dual()
    d = cert.to_dict()
    assert d["is_gbent"] and d["xi_case"] == "xi=1" and d["dual_table"] == z25_dual().values.tolist()
    assert cert.walsh_value(0) is not None


def test_g3_verdicts():
    f = g3_function()
    cert = analyze(f)
    assert cert.is_gbent and cert.regularity == NON_WEAKLY_REGULAR and cert.mu is None
    assert not is_self_dual(f, cert).holds
    assert check_even_dual(f).holds


def test_embedding_keeps_verdicts():
    f = g3_function()
    lifted = analyze(embed_bent(f, 2))
    base = analyze(f)
    assert lifted.is_gbent and lifted.regularity == base.regularity
    assert np.array_equal(lifted.dual_values, 3 * base.dual_values)


@settings(max_examples=15, deadline=None)
@given(st.integers(1, 26), st.sampled_from([F27, F25]))
def test_quadratic_certificates(e, field):
    if e >= field.order - 1:
        return
    q = quadratic_bent(field.zpow(e), field)
    cert = analyze(q.f)
    assert cert.is_gbent
    assert cert.regularity in (REGULAR, WEAKLY_REGULAR)
    assert cert.mu == q.mu
    assert cert.dual() == q.dual
    assert check_double_dual(q.f).holds
    assert check_inverse_identity(q.f).holds
    assert check_sign_at_zero(q.f).holds
    assert check_even_dual(q.f).holds


@settings(max_examples=10, deadline=None)
@given(st.integers(1, 25))
def test_nothing_self_dual_when_xi_is_i(e):
    # p = 3 mod 4 with n odd: no quadratic example can be self-dual
    q = quadratic_bent(F27.zpow(e), F27)
    assert not is_self_dual(q.f).holds


def test_checks_report_inapplicable():
    f = GFunction(3, 1, DomainSpec.parse(3, "dot:1"), [0, 1, 2])
    assert check_double_dual(f).status == "inapplicable"
    assert check_inverse_identity(f).status == "inapplicable"
    assert check_even_dual(f).status == "inapplicable"
    assert check_sign_at_zero(f).status == "inapplicable"


def test_self_dual_search_small():
    spec = DomainSpec.parse(3, "dot:1")
    assert search_self_dual(3, 1, spec).count == 0
    assert search_self_dual(3, 1, spec).examined == 27
    spec5 = DomainSpec.parse(5, "dot:1")
    found = search_self_dual(5, 1, spec5)
    assert any(w.values.tolist() == [0, 1, 4, 4, 1] for w in found.witnesses)  # x^2
    with pytest.raises(BudgetExceeded):
        search_self_dual(3, 2, DomainSpec.parse(3, "dot:2"), budget=1000)


def test_second_derivative_witness(rng):
    q = quadratic_bent(F27.z, F27)
    assert second_derivative_witness(q.f, limit=200) is None
    cube = GFunction(3, 1, q.f.spec, F27.trace_table[F27.power_map(22)])
    w = second_derivative_witness(cube, limit=2000)
    assert w is not None
    spec = cube.spec
    v = cube.values
    d = lambda x: (v[spec.add_index(spec.add_index(x, w.a), w.b)] - v[spec.add_index(x, w.a)]
                   - v[spec.add_index(x, w.b)] + v[x]) % 3
    assert d(w.x1) != d(w.x2)


def test_random_functions_are_rarely_bent(rng):
    for _ in range(5):
        f = random_function(3, 2, "dot:2", rng)
        cert = analyze(f)
        assert cert.is_gbent == (not cert.failures)


_INVERSE_MU = {"+1": "+1", "-1": "-1", "+i": "-i", "-i": "+i"}


@pytest.mark.parametrize("field", [F27, F25, ExtField(7, "3,6,1")], ids=str)
def test_weakly_regular_dual_has_inverse_mu(field):
    for e in (1, 2, 5):
        q = quadratic_bent(field.zpow(e), field)
        c1, c2 = analyze(q.f), analyze(q.dual)
        assert c2.regularity in (REGULAR, WEAKLY_REGULAR)
        assert c2.mu == _INVERSE_MU[c1.mu]


def test_certificate_rebuilds_even_spectrum():
    from gbent import walsh_full_fast
    q = quadratic_bent(F25.zpow(3), F25)
    cert = analyze(q.f)
    w = walsh_full_fast(q.f)
    assert all(cert.walsh_value(a) == w[a] for a in range(25))
    assert analyze(g3_function()).walsh_value(0) is None


def test_scaled_square_is_self_dual_mod_25():
    spec = DomainSpec.parse(5, "dot:1")
    f = GFunction(5, 2, spec, [5 * x * x for x in range(5)])
    assert is_self_dual(f).holds
    assert check_sign_at_zero(f).holds


def test_sign_relation_on_g3():
    r = check_sign_at_zero(g3_function())
    # g3 is even and its dual turns out bent, so the odd-case relation applies
    assert r.holds and r.data["expected"] == "opposite"
