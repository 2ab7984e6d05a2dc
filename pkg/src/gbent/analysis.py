"""Bentness certificates, duals, regularity and the structural checks.

A generalized bent f has W_f(a) = eps(a) * xi * p^{n/2} * zeta_{p^k}^{f*(a)}
with eps(a) = +-1 and xi = sqrt(-1) exactly when p = 3 mod 4 and n is odd.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .cyclotomic import CycInt
from .errors import BudgetExceeded, UsageError
from .gfunction import GFunction
from .walsh import backward_sum, gauss_multiply, one_hot, recognize_table, reduce_group_ring, walsh_group, working_dtype
from .domain import DomainSpec

REGULAR = "Regular"
WEAKLY_REGULAR = "WeaklyRegular"
NON_WEAKLY_REGULAR = "NonWeaklyRegular"
NOT_BENT = "NotBent"


def xi_case(p: int, n: int) -> str:
    return "xi=i" if (p % 4 == 3 and n % 2 == 1) else "xi=1"


def mu_label(eps: int, xi: str) -> str:
    sign = "+" if eps > 0 else "-"
    return f"{sign}1" if xi == "xi=1" else f"{sign}i"


@dataclass(frozen=True)
class BentCertificate:
    p: int
    k: int
    spec: DomainSpec
    is_gbent: bool
    xi_case: str
    epsilon: np.ndarray  # +-1, or 0 at failure points
    dual_values: np.ndarray  # f*(a), meaningful only where epsilon != 0
    regularity: str
    mu: str | None
    failures: tuple[int, ...]

    @property
    def n(self) -> int:
        return self.spec.n

    def dual(self) -> GFunction:
        if not self.is_gbent:
            raise UsageError(f"function is not generalized bent ({len(self.failures)} failing points)")
        return GFunction(self.p, self.k, self.spec, self.dual_values)

    def walsh_value(self, a: int) -> CycInt | None:
        """W_f(a) rebuilt from (eps, f*); None for odd n, where p^{n/2} is irrational."""
        n = self.n
        if self.epsilon[a] == 0 or n % 2:
            return None
        return CycInt.zeta(self.p, self.k, int(self.dual_values[a]), int(self.epsilon[a]) * self.p ** (n // 2))

    def to_dict(self) -> dict[str, Any]:
        return {
            "p": self.p,
            "k": self.k,
            "n": self.n,
            "spec": str(self.spec),
            "is_gbent": self.is_gbent,
            "xi_case": self.xi_case,
            "regularity": self.regularity,
            "mu": self.mu,
            "dual_table": self.dual_values.tolist() if self.is_gbent else None,
            "epsilon_table": self.epsilon.tolist(),
            "failures": list(self.failures),
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def certificate_from_group(group: np.ndarray, p: int, k: int, spec: DomainSpec) -> BentCertificate:
    n = spec.n
    ok, eps, dual = recognize_table(group, p, k, n)
    xi = xi_case(p, n)
    failures = tuple(int(i) for i in np.flatnonzero(~ok))
    is_gbent = not failures
    mu = None
    if not is_gbent:
        regularity = NOT_BENT
    elif np.all(eps == eps[0]):
        mu = mu_label(int(eps[0]), xi)
        regularity = REGULAR if mu == "+1" else WEAKLY_REGULAR
    else:
        regularity = NON_WEAKLY_REGULAR
    eps = np.ascontiguousarray(eps, dtype=np.int64)
    dual = np.ascontiguousarray(dual, dtype=np.int64)
    eps.flags.writeable = False
    dual.flags.writeable = False
    return BentCertificate(p, k, spec, is_gbent, xi, eps, dual, regularity, mu, failures)


def analyze(f: GFunction) -> BentCertificate:
    """Certificate from the fast transform and per-point shape recognition."""
    return certificate_from_group(walsh_group(f), f.p, f.k, f.spec)


def is_weakly_regular(cert: BentCertificate) -> bool:
    return cert.regularity in (REGULAR, WEAKLY_REGULAR)


def dual(f: GFunction) -> GFunction:
    return analyze(f).dual()


def is_bent(f: GFunction) -> bool:
    return analyze(f).is_gbent


@dataclass
class Report:
    """Outcome of a check: status is 'holds', 'violated' or 'inapplicable'."""

    name: str
    status: str
    detail: str = ""
    witnesses: list = field(default_factory=list)
    data: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.status == "holds"

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def to_dict(self) -> dict[str, Any]:
        return {"name": self.name, "status": self.status, "detail": self.detail,
                "witnesses": self.witnesses, **({"data": self.data} if self.data else {})}


def is_self_dual(f: GFunction, cert: BentCertificate | None = None) -> Report:
    cert = cert or analyze(f)
    if not cert.is_gbent:
        return Report("self-dual", "violated", f"not generalized bent ({len(cert.failures)} failing points)")
    diff = np.flatnonzero(cert.dual_values != f.values)
    if diff.size:
        return Report("self-dual", "violated", f"dual differs from f at {diff.size} points",
                      witnesses=[int(i) for i in diff[:10]])
    return Report("self-dual", "holds", "f* = f")


def check_double_dual(f: GFunction) -> Report:
    """f**(x) = f(-x), for gbent f whose dual is gbent."""
    cert = analyze(f)
    if not cert.is_gbent:
        return Report("f**(x)=f(-x)", "inapplicable", "f is not generalized bent")
    d = cert.dual()
    cert2 = analyze(d)
    if not cert2.is_gbent:
        return Report("f**(x)=f(-x)", "inapplicable", "dual is not generalized bent")
    dd = cert2.dual_values
    neg = f.spec.negate_index_map
    bad = np.flatnonzero(dd[neg] != f.values)
    if bad.size:
        return Report("f**(x)=f(-x)", "violated", f"{bad.size} points disagree",
                      witnesses=[int(i) for i in bad[:10]])
    return Report("f**(x)=f(-x)", "holds", f"checked at {f.spec.size} points")


def check_even_dual(f: GFunction) -> Report:
    """For even gbent f: eps(a) = eps(-a) and f*(a) = f*(-a)."""
    if not f.is_even():
        return Report("even dual", "inapplicable", "f(x) != f(-x) somewhere")
    cert = analyze(f)
    if not cert.is_gbent:
        return Report("even dual", "inapplicable", "f is not generalized bent")
    neg = f.spec.negate_index_map
    bad = np.flatnonzero((cert.epsilon != cert.epsilon[neg]) | (cert.dual_values != cert.dual_values[neg]))
    if bad.size:
        return Report("even dual", "violated", f"{bad.size} points break the symmetry",
                      witnesses=[int(i) for i in bad[:10]])
    return Report("even dual", "holds", "eps and f* are even")


def check_sign_at_zero(f: GFunction) -> Report:
    """Sign relation between eps_{f*}(0) and eps_f(0) for even f with gbent dual."""
    if not f.is_even():
        return Report("eps at 0", "inapplicable", "f(x) != f(-x) somewhere")
    cert = analyze(f)
    if not cert.is_gbent:
        return Report("eps at 0", "inapplicable", "f is not generalized bent")
    cert2 = analyze(cert.dual())
    if not cert2.is_gbent:
        return Report("eps at 0", "inapplicable", "dual is not generalized bent")
    e0, e1 = int(cert.epsilon[0]), int(cert2.epsilon[0])
    expect_equal = cert.xi_case == "xi=1"
    data = {"eps_f(0)": e0, "eps_dual(0)": e1, "expected": "equal" if expect_equal else "opposite"}
    if (e0 == e1) == expect_equal:
        return Report("eps at 0", "holds", f"eps_f(0)={e0}, eps_f*(0)={e1}", data=data)
    return Report("eps at 0", "violated", f"eps_f(0)={e0}, eps_f*(0)={e1}", data=data)


def check_inverse_identity(f: GFunction, cert: BentCertificate | None = None) -> Report:
    """xi * sum_a eps(a) zeta^{f*(a)} zeta_p^{<a,x>} = p^{n/2} zeta^{f(x)}, exactly.

    For odd n both sides are multiplied by the Gauss sum so everything stays
    in Z[zeta_{p^k}].
    """
    cert = cert or analyze(f)
    if not cert.is_gbent:
        return Report("inverse identity", "inapplicable", "f is not generalized bent")
    p, k, n, spec = f.p, f.k, f.spec.n, f.spec
    q = p**k
    weights = one_hot(cert.dual_values, q, working_dtype(spec.size * p * p)) * cert.epsilon[:, None]
    t = backward_sum(weights, spec, k)
    if n % 2:
        t = gauss_multiply(t, p, k)
        scale = p ** ((n + 1) // 2)
    else:
        scale = p ** (n // 2)
    lhs = reduce_group_ring(t, p, k)
    rhs = reduce_group_ring(one_hot(f.values, q, lhs.dtype) * scale, p, k)
    bad = np.flatnonzero(np.any((lhs != rhs).reshape(spec.size, -1), axis=1))
    if bad.size:
        return Report("inverse identity", "violated", f"{bad.size} points disagree",
                      witnesses=[int(i) for i in bad[:10]])
    return Report("inverse identity", "holds", f"exact at {spec.size} points")


@dataclass
class SearchResult:
    examined: int
    witnesses: list[GFunction]

    @property
    def count(self) -> int:
        return len(self.witnesses)


def search_self_dual(p: int, k: int, spec: DomainSpec, budget: int = 10**5) -> SearchResult:
    """All self-dual generalized bent functions on ``spec``, by full enumeration."""
    q = p**k
    total = q**spec.size
    if total > budget:
        raise BudgetExceeded(total, budget, "self-dual search")
    found = []
    for values in itertools.product(range(q), repeat=spec.size):
        f = GFunction(p, k, spec, values)
        cert = analyze(f)
        if cert.is_gbent and np.array_equal(cert.dual_values, f.values):
            found.append(f)
    return SearchResult(total, found)


@dataclass(frozen=True)
class SecondDerivativeWitness:
    """D_a D_b f takes different values at x1 and x2, so deg f > 2."""

    a: int
    b: int
    x1: int
    x2: int


def second_derivative_witness(f: GFunction, limit: int | None = None, seed: int = 0) -> SecondDerivativeWitness | None:
    """Search for (a, b) with D_a D_b f non-constant; None if none is found.

    Pairs are tried in a seeded random order, at most ``limit`` of them.
    """
    spec = f.spec
    size = spec.size
    q = f.modulus
    rng = np.random.default_rng(seed)
    limit = size * size if limit is None else limit
    x = np.arange(size)
    v = f.values
    for _ in range(limit):
        a, b = (int(t) for t in rng.integers(0, size, 2))
        xa, xb = spec.add_index(x, a), spec.add_index(x, b)
        d = (v[spec.add_index(xa, b)] - v[xa] - v[xb] + v) % q
        diff = np.flatnonzero(d != d[0])
        if diff.size:
            return SecondDerivativeWitness(a, b, 0, int(diff[0]))
    return None
