"""Named reference instances and their scripted end-to-end checks.

``verify(item)`` returns a list of Claim objects; an item passes when every
claim holds.  Items: "1".."6", "g3" and "no-selfdual".
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .analysis import (
    NON_WEAKLY_REGULAR, analyze, check_double_dual, is_self_dual, search_self_dual, second_derivative_witness,
)
from .constructions import (
    SymmetricParams, TwistedParams, build_indirect_sum, build_selfdual, build_twisted, eta_pattern, psap_blocks,
    twisted_dual_condition, twisted_dual_closed_form,
)
from .decomposition import check_components_bent, check_dual_components, extract_lambda
from .domain import Dot, DomainSpec, TraceField
from .errors import UsageError
from .field import ExtField
from .gfunction import GFunction

ITEMS = ("1", "2", "3", "4", "5", "6", "g3", "no-selfdual")


def _squares_trace(field: ExtField, c) -> np.ndarray:
    return field.trace_table[field.scale_map(c)[field.power_map(2)]]


# ---------------------------------------------------------------- parameter sets

def nonbent_dual_params() -> TwistedParams:
    fld = ExtField(5, "2,4,1")
    return TwistedParams(fld, 3, fld.z, fld.z, tuple(x**3 % 125 for x in range(5)))


def bent_dual_params() -> TwistedParams:
    fld = ExtField(3, "1,2,0,0,0,1", primitive=True)
    return TwistedParams(fld, 2, fld.zpow(10), fld.zpow(47), (0, 1, 2))


def nonbent_dual_ternary_params() -> TwistedParams:
    """f = 3 f_0 + f_1 with alpha and beta swapped relative to bent_dual_params."""
    fld = ExtField(3, "1,2,0,0,0,1", primitive=True)
    return TwistedParams(fld, 2, fld.zpow(47), fld.zpow(10), (0, 1, 2))


def selfdual_z25_params() -> SymmetricParams:
    fld = ExtField(5, "3,1", primitive=True)  # z = 2
    v = DomainSpec(5, [Dot(1)])
    x2 = np.arange(5) ** 2
    fs = tuple(GFunction(5, 2, v, (20 if i == 1 else 5) * x2) for i in range(5))
    return SymmetricParams(fld, fld(1), fld(2), fld(2), fs, tuple(2 * y * y % 25 for y in range(5)))


def selfdual_f49_params() -> SymmetricParams:
    fld = ExtField(7, "3,6,1", primitive=True)
    c = fld.zpow(12)
    v = DomainSpec(7, [TraceField(fld)])
    f0 = GFunction(7, 1, v, _squares_trace(fld, c * 4))
    fs = [f0] * 7
    for i in (1, 2, 3):
        fs[i] = fs[7 - i] = GFunction(7, 1, v, _squares_trace(fld, c * 3) + i)
    return SymmetricParams(fld, fld.z, c, c, tuple(fs), (0,) * 7)


def z25_function() -> GFunction:
    spec = DomainSpec(5, [Dot(2)])
    x1, x2 = spec.coords[:, 0], spec.coords[:, 1]
    return GFunction(5, 2, spec, 5 * ((x1**2 + x2**2) % 5) + (2 * x1 + x2) % 5)


def z25_dual() -> GFunction:
    spec = DomainSpec(5, [Dot(2)])
    x1, x2 = spec.coords[:, 0], spec.coords[:, 1]
    return GFunction(5, 2, spec, 5 * ((x1**2 + x2**2) % 5) + (x1 + 3 * x2) % 5)


def g3_function() -> GFunction:
    """Tr(x^22 + x^8) on F_27, built with x^3 + 2x + 1."""
    fld = ExtField(3, "1,2,0,1")
    t = fld.trace_table
    return GFunction(3, 1, DomainSpec(3, [TraceField(fld)]), t[fld.power_map(22)] + t[fld.power_map(8)])


def weakly_regular_twisted_params() -> TwistedParams:
    """alpha = beta = z^4 on F_27: every 1 + i alpha + j beta is a square."""
    fld = ExtField(3, "1,2,0,1", primitive=True)
    return TwistedParams(fld, 2, fld.zpow(4), fld.zpow(4), (0, 1, 2))


def small_twisted_params() -> TwistedParams:
    """alpha = beta = z on F_9, k = 2: an 81-point F whose dual is not gbent."""
    fld = ExtField(3, "2,2,1", primitive=True)
    return TwistedParams(fld, 2, fld.z, fld.z, (0, 1, 2))


def indirect_sum_instance(with_bad_dual: bool):
    """Indirect sum over PS_ap blocks on F_9 x F_9 (t = 1, three f_i on 81 points).

    With ``with_bad_dual`` f_0 is a twisted function whose dual is not gbent,
    otherwise every f_i is weakly regular.
    """
    params = small_twisted_params()
    fld = params.field
    spec = params.spec()
    tq = _squares_trace(fld, fld(1))[:, None, None]
    y1 = np.arange(3)[None, :, None]
    y2 = np.arange(3)[None, None, :]
    good = [GFunction(3, 2, spec, (3 * ((tq + y1 * y2 + s * y1) % 3) + s * y2).ravel()) for s in range(3)]
    fs = list(good)
    if with_bad_dual:
        fs[0] = build_twisted(params)
    gs = psap_blocks(fld, [fld(1), fld.z], list(range(fld.order)))
    return build_indirect_sum(fs, gs, (0, 1, 2))


# ---------------------------------------------------------------- scripted checks

@dataclass
class Claim:
    text: str
    ok: bool
    detail: str = ""


def _twisted_claims(params: TwistedParams, expect_dual_gbent: bool) -> list[Claim]:
    f = build_twisted(params)
    cert = analyze(f)
    out = [
        Claim("F is generalized bent", cert.is_gbent),
        Claim("F is non-weakly regular", cert.regularity == NON_WEAKLY_REGULAR, cert.regularity),
    ]
    if not cert.is_gbent:
        return out
    dual_cert = analyze(cert.dual())
    word = "is" if expect_dual_gbent else "is not"
    out.append(Claim(f"F* {word} generalized bent", dual_cert.is_gbent == expect_dual_gbent,
                     f"{len(dual_cert.failures)} failing points"))
    out.append(Claim("closed-form dual equals extracted dual",
                     bool(np.array_equal(twisted_dual_closed_form(params).values, cert.dual_values))))
    out.append(Claim("character-sum condition agrees with the dual verdict", twisted_dual_condition(params) == dual_cert.is_gbent))
    return out


def _verify_1() -> list[Claim]:
    return _twisted_claims(nonbent_dual_params(), expect_dual_gbent=False)


def _verify_2() -> list[Claim]:
    params = bent_dual_params()
    out = _twisted_claims(params, expect_dual_gbent=True)
    m = eta_pattern(params).matrix
    expected = np.array([[1] * 3, [-1] * 3, [-1] * 3])
    out.append(Claim("eta(1 + i alpha + j beta) pattern", bool(np.array_equal(m, expected)), str(m.tolist())))
    out.append(Claim("F**(x) = F(-x)", check_double_dual(build_twisted(params)).holds))
    return out


def _selfdual_claims(case: int, params: SymmetricParams, check_degree: bool) -> list[Claim]:
    built = build_selfdual(case, params)
    cert = analyze(built.F)
    out = [
        Claim("F is self-dual generalized bent", is_self_dual(built.F, cert).holds),
        Claim("closed-form dual equals extracted dual",
              cert.is_gbent and bool(np.array_equal(cert.dual_values, built.dual.values))),
    ]
    if check_degree:
        w = second_derivative_witness(built.F)
        out.append(Claim("F is not quadratic", w is not None, "" if w is None else
                         f"D_a D_b F non-constant for a={w.a}, b={w.b} at x={w.x1}, {w.x2}"))
    return out


def _verify_3() -> list[Claim]:
    return _selfdual_claims(3, selfdual_z25_params(), check_degree=False)


def _verify_4() -> list[Claim]:
    return _selfdual_claims(2, selfdual_f49_params(), check_degree=True)


def _verify_5() -> list[Claim]:
    f = build_twisted(nonbent_dual_ternary_params())
    cert = analyze(f)
    report = check_dual_components(f, budget=27)
    d = report.data
    return [
        Claim("f is generalized bent", cert.is_gbent),
        Claim("f* is not generalized bent", not d.get("dual_gbent", True)),
        Claim("f_0* is bent", bool(d.get("f0_dual_bent"))),
        Claim("some selector F gives a non-bent g*_(f,F)", bool(d.get("dual_components_not_bent")),
              f"{len(d.get('dual_components_not_bent', []))} of {d.get('selectors')} selectors"),
        Claim("every component g_(f,F) is bent", check_components_bent(f, budget=27).data.get("non_bent_components") == 0),
        Claim("dual-component equivalence holds", report.holds, report.detail),
    ]


def _verify_6() -> list[Claim]:
    f = z25_function()
    cert = analyze(f)
    lam = extract_lambda(f)
    f0 = f.decomposition.component(0)
    return [
        Claim("f is generalized bent", cert.is_gbent),
        Claim("f* = 5(x1^2 + x2^2) + (x1 + 3 x2)", cert.is_gbent and cert.dual() == z25_dual()),
        Claim("f is not self-dual", not is_self_dual(f, cert).holds),
        Claim("f_0 is self-dual bent", is_self_dual(f0).holds),
        Claim("lambda equals the low digit of f*", lam.matches_dual),
    ]


def _verify_g3() -> list[Claim]:
    f = g3_function()
    cert = analyze(f)
    return [
        Claim("g3 is bent", cert.is_gbent),
        Claim("g3 is non-weakly regular", cert.regularity == NON_WEAKLY_REGULAR, cert.regularity),
        Claim("g3 is not self-dual", not is_self_dual(f, cert).holds),
    ]


def _verify_no_selfdual() -> list[Claim]:
    out = []
    for k in (1, 2):
        spec = DomainSpec(3, [Dot(1)])
        res = search_self_dual(3, k, spec, budget=10**4)
        out.append(Claim(f"no self-dual gbent f: F_3 -> Z_{3 ** k}", res.count == 0,
                         f"{res.examined} functions examined"))
    return out


_VERIFIERS = {
    "1": _verify_1, "2": _verify_2, "3": _verify_3, "4": _verify_4,
    "5": _verify_5, "6": _verify_6, "g3": _verify_g3, "no-selfdual": _verify_no_selfdual,
}


def verify(item: str) -> list[Claim]:
    try:
        fn = _VERIFIERS[str(item)]
    except KeyError:
        raise UsageError(f"unknown item {item!r}; choose from {', '.join(ITEMS)}") from None
    return fn()


def timed_verify(item: str) -> tuple[list[Claim], float]:
    t0 = time.perf_counter()
    claims = verify(item)
    return claims, time.perf_counter() - t0
