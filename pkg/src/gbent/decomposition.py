"""Component p-ary functions g_{f,F} = f_0 + F(f_1, ..., f_{k-1}) and the map lambda.

A selector F: F_p^{k-1} -> F_p is a table of length p^{k-1} indexed by the
digits (f_1, ..., f_{k-1}) read with f_1 most significant, which is exactly
the tail value f - f_0 p^{k-1}.  Selectors are enumerated lexicographically.
"""
from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .analysis import Report, analyze
from .cyclotomic import reduce_group_ring
from .errors import BudgetExceeded, UsageError
from .gfunction import GFunction
from .walsh import walsh_group


def pmap(fn: Callable, items: Iterable, threads: int = 1) -> list:
    if threads <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def selector_count(p: int, k: int) -> int:
    return p ** (p ** (k - 1))


def selectors(p: int, k: int) -> Iterable[tuple[int, ...]]:
    return itertools.product(range(p), repeat=p ** (k - 1))


def component_function(f: GFunction, selector: Sequence[int]) -> GFunction:
    if f.k < 2:
        raise UsageError("component functions need k >= 2")
    table = np.asarray(selector, dtype=np.int64)
    if table.shape != (f.p ** (f.k - 1),):
        raise UsageError(f"selector must be a table of {f.p ** (f.k - 1)} values on F_p^{f.k - 1}")
    d = f.decomposition
    return GFunction(f.p, 1, f.spec, d.components[0] + table[d.tail])


@dataclass(frozen=True)
class DualDecomposition:
    """lambda with f* = f_0* p^{k-1} + lambda, plus its base-p digits."""

    p: int
    k: int
    lam: np.ndarray
    digits: tuple[np.ndarray, ...]
    matches_dual: bool

    def selected(self, selector: Sequence[int]) -> np.ndarray:
        """F(lambda_1, ..., lambda_{k-1}) pointwise."""
        return np.asarray(selector, dtype=np.int64)[self.lam]


def level_sums(f: GFunction) -> np.ndarray:
    """Partial sums sum_{x: tail(x)=v} zeta_p^{f_0(x) - <a,x>} as Z[zeta_p] tables.

    Shape (p^n, p^{k-1}, p-1).  Plain character sums over an explicit
    inner-product matrix, no fast transform.
    """
    p, spec = f.p, f.spec
    levels = p ** (f.k - 1)
    d = f.decomposition
    size = spec.size
    ip = spec.inner_product_matrix()
    expo = (d.components[0][None, :] - ip) % p
    key = (np.arange(size)[:, None] * levels + d.tail[None, :]) * p + expo
    counts = np.bincount(key.ravel(), minlength=size * levels * p).reshape(size, levels, p)
    return reduce_group_ring(counts, p, 1).reshape(size, levels, p - 1)


def extract_lambda(f: GFunction) -> DualDecomposition:
    if f.k < 2:
        raise UsageError("lambda is defined for k >= 2")
    cert = analyze(f)
    if not cert.is_gbent:
        raise UsageError("extract_lambda needs a generalized bent function")
    p = f.p
    sums = level_sums(f)
    nonzero = np.any(sums != 0, axis=2)
    if not np.all(nonzero.sum(axis=1) == 1):
        bad = int(np.flatnonzero(nonzero.sum(axis=1) != 1)[0])
        raise UsageError(f"no unique nonzero level at index {bad}: f was not generalized bent")
    lam = np.argmax(nonzero, axis=1).astype(np.int64)
    w0 = reduce_group_ring(walsh_group(f.decomposition.component(0)), p, 1).reshape(f.spec.size, p - 1)
    carried = sums[np.arange(f.spec.size), lam]
    if not np.array_equal(carried, w0):
        raise UsageError("the nonzero level does not carry W_{f_0}: f was not generalized bent")
    digits = tuple((lam // p ** (f.k - 2 - i)) % p for i in range(f.k - 1))
    matches = bool(np.array_equal(lam, cert.dual_values % p ** (f.k - 1)))
    lam.flags.writeable = False
    return DualDecomposition(p, f.k, lam, digits, matches)


def _selector_table(p: int, k: int, budget: int) -> None:
    count = selector_count(p, k)
    if count > budget:
        raise BudgetExceeded(count, budget, "selector enumeration")


def check_components_bent(f: GFunction, budget: int = 10**4, threads: int = 1) -> Report:
    """f gbent  <=>  every component g_{f,F} is bent."""
    if f.k < 2:
        return Report("components bent", "inapplicable", "k = 1")
    _selector_table(f.p, f.k, budget)
    gbent = analyze(f).is_gbent
    sels = list(selectors(f.p, f.k))
    bent = pmap(lambda s: analyze(component_function(f, s)).is_gbent, sels, threads)
    failing = [list(s) for s, b in zip(sels, bent) if not b]
    data = {"f_gbent": gbent, "selectors": len(sels), "non_bent_components": len(failing)}
    status = "holds" if gbent == (not failing) else "violated"
    return Report("components bent", status,
                  f"f gbent={gbent}; {len(failing)} of {len(sels)} components not bent",
                  witnesses=failing[:20], data=data)


def check_dual_components(f: GFunction, budget: int = 10**4, threads: int = 1) -> Report:
    """Dual gbent <=> all g*_{f,F} bent; self-dual <=> all g_{f,F} self-dual."""
    if f.k < 2:
        return Report("dual components", "inapplicable", "k = 1")
    _selector_table(f.p, f.k, budget)
    cert = analyze(f)
    if not cert.is_gbent:
        return Report("dual components", "inapplicable", "f is not generalized bent")
    p = f.p
    lam = extract_lambda(f)
    f0 = f.decomposition.component(0)
    f0_cert = analyze(f0)
    f0_dual = f0_cert.dual_values
    dual_cert = analyze(cert.dual())
    self_dual = bool(np.array_equal(cert.dual_values, f.values))

    def one(sel):
        g = component_function(f, sel)
        gc = analyze(g)
        predicted = (f0_dual + lam.selected(sel)) % p
        gstar_bent = analyze(GFunction(p, 1, f.spec, predicted)).is_gbent
        return (
            gstar_bent,
            gc.is_gbent and bool(np.array_equal(gc.dual_values, g.values)),
            gc.is_gbent and bool(np.array_equal(gc.dual_values, predicted)),
        )

    sels = list(selectors(p, f.k))
    results = pmap(one, sels, threads)
    not_bent = [list(s) for s, r in zip(sels, results) if not r[0]]
    not_self_dual = [list(s) for s, r in zip(sels, results) if not r[1]]
    formula_bad = [list(s) for s, r in zip(sels, results) if not r[2]]
    part1 = dual_cert.is_gbent == (not not_bent)
    part2 = self_dual == (not not_self_dual)
    data = {
        "dual_gbent": dual_cert.is_gbent,
        "f0_dual_bent": analyze(GFunction(p, 1, f.spec, f0_dual)).is_gbent,
        "f0_self_dual": bool(np.array_equal(f0_dual, f0.values)),
        "self_dual": self_dual,
        "selectors": len(sels),
        "dual_components_not_bent": not_bent[:20],
        "components_not_self_dual": len(not_self_dual),
        "component_dual_formula_failures": formula_bad[:20],
        "lambda_matches_dual": lam.matches_dual,
    }
    ok = part1 and part2 and not formula_bad and lam.matches_dual
    return Report("dual components", "holds" if ok else "violated",
                  f"part1={'ok' if part1 else 'FAIL'} part2={'ok' if part2 else 'FAIL'}; "
                  f"{len(not_bent)} selectors give non-bent g*, {len(not_self_dual)} non-self-dual g",
                  witnesses=not_bent[:20], data=data)
