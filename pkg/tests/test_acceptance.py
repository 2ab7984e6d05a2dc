"""One test per acceptance criterion; each prints a PASS/FAIL line with its runtime.

Run directly (python3 tests/test_acceptance.py) or under pytest, where the lines
are also collected in the terminal summary.
"""
from __future__ import annotations

import time

import numpy as np

from gbent import (
    NON_WEAKLY_REGULAR, CycInt, DomainSpec, ExtField, GFunction, analyze, build_selfdual, build_twisted,
    check_dual_components, check_components_bent, check_double_dual, check_inverse_identity, eta_pattern,
    inverse_walsh, is_self_dual, quadratic_bent, search_self_dual, second_derivative_witness, walsh_full_fast,
)
from gbent.constructions import quadratic_mu
from gbent.cyclotomic import recognize_bent_value
from gbent.presets import (
    bent_dual_params, g3_function, indirect_sum_instance, nonbent_dual_params, nonbent_dual_ternary_params,
    selfdual_f49_params, selfdual_z25_params, z25_dual, z25_function,
)
from gbent.walsh import walsh_naive, walsh_naive_full


class _Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.start


def _finish(record, number, checks: dict[str, bool], seconds: float, limit: float | None):
    failed = [name for name, ok in checks.items() if not ok]
    if limit is not None and seconds >= limit:
        failed.append(f"time {seconds:.2f}s >= {limit}s")
    text = "; ".join(failed) if failed else ", ".join(checks)
    record(number, not failed, text, seconds)
    assert not failed, text


def test_criterion_01_exact_dual_mod_25(record_criterion):
    with _Timer() as t:
        cert = analyze(z25_function())
        exact = cert.is_gbent and np.array_equal(cert.dual_values, z25_dual().values)
    _finish(record_criterion, 1, {"dual equals 5(x1^2+x2^2)+(x1+3x2) at 25 points": exact}, t.seconds, 1.0)


def test_criterion_02_twisted_with_nonbent_dual(record_criterion):
    with _Timer() as t:
        f = build_twisted(nonbent_dual_params())
        cert = analyze(f)
        dual_cert = analyze(cert.dual())
    _finish(record_criterion, 2, {
        "gbent": cert.is_gbent,
        "non-weakly regular": cert.regularity == NON_WEAKLY_REGULAR,
        "dual fails at >= 1 point": len(dual_cert.failures) >= 1,
        "625 points": f.spec.size == 625,
    }, t.seconds, 5.0)


def test_criterion_03_twisted_with_bent_dual(record_criterion):
    with _Timer() as t:
        params = bent_dual_params()
        f = build_twisted(params)
        cert = analyze(f)
        dual_cert = analyze(cert.dual())
        pattern = eta_pattern(params).matrix
        double = check_double_dual(f)
    _finish(record_criterion, 3, {
        "gbent": cert.is_gbent,
        "non-weakly regular": cert.regularity == NON_WEAKLY_REGULAR,
        "dual gbent": dual_cert.is_gbent,
        "eta pattern [+,+,+],[-,-,-],[-,-,-]": np.array_equal(pattern, [[1, 1, 1], [-1, -1, -1], [-1, -1, -1]]),
        "f**(x) = f(-x) at 2187 points": double.holds and f.spec.size == 2187,
    }, t.seconds, 30.0)


def test_criterion_04_selfdual_case3(record_criterion):
    with _Timer() as t:
        built = build_selfdual(3, selfdual_z25_params())
        ok = is_self_dual(built.F).holds
    _finish(record_criterion, 4, {"f* = f on F_5^3 (k=2)": ok and built.F.spec.size == 125}, t.seconds, 5.0)


def test_criterion_05_selfdual_case2_non_quadratic(record_criterion):
    with _Timer() as t:
        built = build_selfdual(2, selfdual_f49_params())
        cert = analyze(built.F)
        witness = second_derivative_witness(built.F, seed=5)
    _finish(record_criterion, 5, {
        "n = 6 over F_7": built.F.n == 6 and built.F.p == 7,
        "self-dual": is_self_dual(built.F, cert).holds,
        "second derivative non-constant": witness is not None,
    }, t.seconds, 120.0)


def test_criterion_06_dual_components(record_criterion):
    with _Timer() as t:
        f = build_twisted(nonbent_dual_ternary_params())
        comp = check_components_bent(f, budget=27)
        report = check_dual_components(f, budget=27)
        d = report.data
    _finish(record_criterion, 6, {
        "f* not gbent": not d["dual_gbent"],
        "f_0* bent": d["f0_dual_bent"],
        "27 selectors enumerated": d["selectors"] == 27,
        "some g* not bent": len(d["dual_components_not_bent"]) > 0,
        "every g bent": comp.data["non_bent_components"] == 0,
    }, t.seconds, 60.0)


def test_criterion_07_g3(record_criterion):
    with _Timer() as t:
        f = g3_function()
        cert = analyze(f)
    _finish(record_criterion, 7, {
        "bent": cert.is_gbent,
        "non-weakly regular": cert.regularity == NON_WEAKLY_REGULAR,
        "not self-dual": not is_self_dual(f, cert).holds,
    }, t.seconds, 1.0)


def test_criterion_08_no_selfdual_exhaustion(record_criterion):
    with _Timer() as t:
        spec = DomainSpec.parse(3, "dot:1")
        r1 = search_self_dual(3, 1, spec)
        r2 = search_self_dual(3, 2, spec)
    _finish(record_criterion, 8, {
        "0 of 27 (k=1)": r1.examined == 27 and r1.count == 0,
        "0 of 729 (k=2)": r2.examined == 729 and r2.count == 0,
    }, t.seconds, 10.0)


_ORACLE_DOMAINS = [
    (3, "dot:1"), (3, "dot:2"), (3, "field:2:poly=2,2,1"), (3, "field:3:poly=1,2,0,1"), (3, "dot:1,field:3:poly=1,2,0,1"),
    (3, "field:2:poly=2,2,1,field:2:poly=2,2,1"), (3, "dot:4"),
    (5, "dot:1"), (5, "field:2:poly=2,4,1"), (5, "dot:3"), (5, "dot:1,field:2:poly=2,4,1"), (5, "field:3:poly=3,3,0,1"),
]


def _oracle_functions(count=20, seed=9):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        p, domain = _ORACLE_DOMAINS[i % len(_ORACLE_DOMAINS)]
        k = 1 + i % 2
        spec = DomainSpec.parse(p, domain)
        out.append(GFunction(p, k, spec, rng.integers(0, p**k, spec.size)))
    return out


def test_criterion_09_fast_equals_naive(record_criterion):
    with _Timer() as t:
        fs = _oracle_functions()
        same = [walsh_full_fast(f) == walsh_naive_full(f) for f in fs]
        shapes = {(f.p, f.n, f.k) for f in fs}
        in_range = all((p == 3 and n <= 4 or p == 5 and n <= 3) and k <= 2 for p, n, k in shapes)
    _finish(record_criterion, 9, {
        f"{sum(same)}/20 spectra identical": all(same),
        "shapes within (3,<=4,<=2),(5,<=3,<=2)": in_range,
    }, t.seconds, None)


def _gbent_instances():
    yield z25_function()
    yield build_twisted(nonbent_dual_params())
    yield build_twisted(bent_dual_params())
    yield build_twisted(nonbent_dual_ternary_params())
    yield build_selfdual(3, selfdual_z25_params()).F
    yield build_selfdual(2, selfdual_f49_params()).F
    yield g3_function()
    yield indirect_sum_instance(True).F
    yield indirect_sum_instance(False).F


def _quadratic_closed_form_ok(field: ExtField, rng) -> bool:
    for e in rng.integers(0, field.order - 1, 10):
        alpha = field.zpow(int(e))
        q = quadratic_bent(alpha, field)
        eps, _ = quadratic_mu(field, alpha)
        for a in range(field.order):
            w = walsh_naive(q.f, a)
            if recognize_bent_value(w, field.m) != (eps, int(q.dual.values[a])):
                return False
            if field.m % 2 == 0 and w != CycInt.zeta(field.p, 1, int(q.dual.values[a]), eps * field.p ** (field.m // 2)):
                return False
    return True


def test_criterion_10_property_suite(record_criterion):
    with _Timer() as t:
        fs = _oracle_functions()
        parseval = all(walsh_full_fast(f).parseval_total() == CycInt.from_int(f.p, f.k, f.p ** (2 * f.n)) for f in fs)
        round_trip = all(inverse_walsh(walsh_full_fast(f)) == f for f in fs)
        gb = list(_gbent_instances())
        parseval_gb = all(walsh_full_fast(f).parseval_total() == CycInt.from_int(f.p, f.k, f.p ** (2 * f.n)) for f in gb)
        identity = all(check_inverse_identity(f).holds for f in gb)
        rng = np.random.default_rng(10)
        fields = [ExtField(3, "2,2,1"), ExtField(3, "1,2,0,1"), ExtField(5, "2,4,1"), ExtField(7, "3,6,1"),
                  ExtField(3, "2,0,0,1,1")]
        quad = all(_quadratic_closed_form_ok(fld, rng) for fld in fields)
    _finish(record_criterion, 10, {
        "Parseval on 20 random functions": parseval,
        "Parseval on 9 gbent instances": parseval_gb,
        "inverse round trip": round_trip,
        "inverse identity on every gbent instance": identity,
        "quadratic closed form vs naive (10 alpha x 5 fields)": quad,
    }, t.seconds, None)


if __name__ == "__main__":
    import sys

    def _print(number, ok, text, seconds):
        print(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} ({seconds:.2f}s) {text}")

    failures = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn(_print)
            except AssertionError:
                failures += 1
    sys.exit(1 if failures else 0)
