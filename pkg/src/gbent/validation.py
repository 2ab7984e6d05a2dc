"""Input checks shared by the estimator layer and the command line."""
from __future__ import annotations

from typing import Any

import numpy as np

from .domain import DomainSpec
from .errors import UsageError
from .gfunction import GFunction


def check_domain(domain: DomainSpec | str, p: int | None = None) -> DomainSpec:
    if isinstance(domain, DomainSpec):
        if p is not None and domain.p != p:
            raise UsageError(f"domain is over F_{domain.p}, expected F_{p}")
        return domain
    if p is None:
        raise UsageError("a domain string needs p")
    return DomainSpec.parse(p, str(domain))


def check_positive_int(name: str, value: Any) -> int:
    if isinstance(value, bool) or not isinstance(value, (int, np.integer)) or value < 1:
        raise UsageError(f"{name} must be a positive integer, got {value!r}")
    return int(value)


def check_gfunction(obj: Any, p: int | None = None, k: int | None = None,
                    domain: DomainSpec | str | None = None) -> GFunction:
    """Return ``obj`` as a GFunction, building one from a value table if needed."""
    if isinstance(obj, GFunction):
        if p is not None and obj.p != p:
            raise UsageError(f"function has p={obj.p}, expected {p}")
        if k is not None and obj.k != k:
            raise UsageError(f"function has k={obj.k}, expected {k}")
        return obj
    if p is None or k is None or domain is None:
        raise UsageError("a raw value table needs p, k and domain")
    spec = check_domain(domain, p)
    vals = np.asarray(obj)
    if vals.dtype.kind not in "iu":
        raise UsageError(f"value table must be integer, got dtype {vals.dtype}")
    if vals.ndim != 1 or vals.shape[0] != spec.size:
        raise UsageError(f"value table must have shape ({spec.size},), got {vals.shape}")
    if vals.min(initial=0) < 0 or vals.max(initial=0) >= p**k:
        raise UsageError(f"values must lie in [0, {p ** k})")
    return GFunction(p, check_positive_int("k", k), spec, vals)


def check_batch(X: Any, p: int, k: int, domain: DomainSpec | str) -> list[GFunction]:
    """A single GFunction, a list of them, or a 2-D array with one table per row."""
    if isinstance(X, GFunction):
        return [check_gfunction(X, p, k)]
    if isinstance(X, (list, tuple)) and X and all(isinstance(x, GFunction) for x in X):
        return [check_gfunction(x, p, k) for x in X]
    arr = np.asarray(X)
    if arr.ndim == 1:
        arr = arr[None, :]
    if arr.ndim != 2:
        raise UsageError(f"expected a 2-D array of value tables, got {arr.ndim} dimensions")
    spec = check_domain(domain, p)
    return [check_gfunction(row, p, k, spec) for row in arr]
