"""Exact Walsh transforms W_f(a) = sum_x zeta_{p^k}^{f(x)} zeta_p^{-<a,x>}.

Values are carried in the group ring Z[C_{p^k}]: a length-p^k integer vector
per point, entry e being the coefficient of zeta_{p^k}^e.  Multiplying by a
twiddle zeta_p^{-st} is then a cyclic shift of that vector by -st*p^{k-1},
so each radix-p butterfly is p^2 shifts and adds with no ring products.
Results are reduced to the integral basis only at the end.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cyclotomic import CycInt, legendre, reduce_group_ring
from .domain import DomainSpec, Point
from .errors import InvalidSpectrum, UsageError
from .gfunction import GFunction

_INT64_SAFE = 2**62


def working_dtype(bound: int):
    """int64 when every intermediate magnitude stays below 2^62, else Python ints."""
    return np.int64 if bound < _INT64_SAFE else object


def one_hot(values: np.ndarray, q: int, dtype=np.int64) -> np.ndarray:
    out = np.zeros((values.shape[0], q), dtype=dtype)
    out[np.arange(values.shape[0]), values] = 1
    return out


def _butterfly_stages(arr: np.ndarray, p: int, n: int, k: int) -> np.ndarray:
    """T[u] = sum_y arr[y] zeta_p^{-u.y} over F_p^n in dot coordinates."""
    q1 = p ** (k - 1)
    size = arr.shape[0]
    x = arr.reshape((p,) * n + (p, q1))
    for d in range(n):
        x = np.moveaxis(x, d, 0)
        y = np.empty_like(x)
        for t in range(p):
            acc = x[0].copy()
            for s in range(1, p):
                # zeta_p^{-st} shifts the zeta_p exponent (second-to-last axis)
                acc += np.roll(x[s], (-s * t) % p, axis=-2)
            y[t] = acc
        x = np.moveaxis(y, 0, d)
    return np.ascontiguousarray(x).reshape(size, p**k)


def forward_sum(weights: np.ndarray, spec: DomainSpec, k: int) -> np.ndarray:
    """sum_x w(x) zeta_p^{-<a,x>} for every a; weights are group-ring rows."""
    t = _butterfly_stages(weights, spec.p, spec.n, k)
    return t[spec.dual_index_map]


def backward_sum(weights: np.ndarray, spec: DomainSpec, k: int) -> np.ndarray:
    """sum_a w(a) zeta_p^{<a,x>} for every x; weights are group-ring rows."""
    arr = np.zeros_like(weights)
    arr[spec.dual_index_map] = weights
    t = _butterfly_stages(arr, spec.p, spec.n, k)
    return t[spec.negate_index_map]


def gauss_multiply(group: np.ndarray, p: int, k: int) -> np.ndarray:
    """Multiply every group-ring row by the quadratic Gauss sum."""
    q1 = p ** (k - 1)
    out = np.zeros_like(group)
    for i in range(1, p):
        out += legendre(i, p) * np.roll(group, i * q1, axis=-1)
    return out


def match_monomials(table: np.ndarray, p: int, k: int, magnitude: int):
    """Rowwise test of ``row == s * magnitude * zeta_{p^k}^c`` on basis tables.

    ``table`` has shape (N, p-1, p^{k-1}).  Returns (ok, s, c) arrays.
    """
    q1 = p ** (k - 1)
    n_rows = table.shape[0]
    flat = table.reshape(n_rows, -1)
    nonzero = flat != 0
    nz = nonzero.sum(axis=1)
    first = np.argmax(nonzero, axis=1)
    rows = np.arange(n_rows)
    val = flat[rows, first]
    big = np.array([abs(v) == magnitude for v in val], dtype=bool) if flat.dtype == object else np.abs(val) == magnitude
    pos = np.array([v > 0 for v in val], dtype=bool) if flat.dtype == object else val > 0

    ok_single = (nz == 1) & big
    col = first % q1
    column = table[rows, :, col]
    ok_column = (nz == p - 1) & big & np.all(column == val[:, None], axis=1)

    sign = np.where(pos, 1, -1).astype(np.int64)
    s = np.where(ok_single, sign, np.where(ok_column, -sign, 0))
    c = np.where(ok_single, first, np.where(ok_column, (p - 1) * q1 + col, 0)).astype(np.int64)
    return ok_single | ok_column, s, c


def recognize_table(group: np.ndarray, p: int, k: int, n: int):
    """Vectorised bent-shape recognition on group-ring rows.

    Returns (ok, eps, dual) with eps = 0 and dual = 0 where ok is False.
    """
    if n % 2 == 0:
        ok, s, c = match_monomials(reduce_group_ring(group, p, k), p, k, p ** (n // 2))
        eps = s
    else:
        prod = gauss_multiply(group, p, k)
        ok, s, c = match_monomials(reduce_group_ring(prod, p, k), p, k, p ** ((n + 1) // 2))
        eps = s if p % 4 == 1 else -s
    return ok, np.where(ok, eps, 0), np.where(ok, c, 0)


@dataclass(frozen=True)
class WalshSpectrum:
    """W_f at every point, as basis tables of shape (p^n, p-1, p^{k-1})."""

    p: int
    k: int
    spec: DomainSpec
    table: np.ndarray

    @classmethod
    def from_group(cls, group: np.ndarray, p: int, k: int, spec: DomainSpec) -> WalshSpectrum:
        t = reduce_group_ring(group, p, k)
        t = np.ascontiguousarray(t)
        t.flags.writeable = False
        return cls(p, k, spec, t)

    @classmethod
    def from_values(cls, values, spec: DomainSpec, k: int) -> WalshSpectrum:
        p = spec.p
        vals = list(values)
        if len(vals) != spec.size:
            raise UsageError(f"spectrum needs {spec.size} values")
        t = np.array([v.coeffs for v in vals], dtype=object).reshape(spec.size, p - 1, p ** (k - 1))
        bound = max((abs(c) for v in vals for c in v.coeffs), default=0)
        if bound * spec.size * p < _INT64_SAFE:
            t = t.astype(np.int64)
        t.flags.writeable = False
        return cls(p, k, spec, t)

    def __len__(self) -> int:
        return self.table.shape[0]

    def __getitem__(self, index: int) -> CycInt:
        return CycInt(self.p, self.k, self.table[index].ravel().tolist())

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, WalshSpectrum):
            return NotImplemented
        return (self.p, self.k, self.spec) == (other.p, other.k, other.spec) and np.array_equal(
            self.table, other.table
        )

    def group(self) -> np.ndarray:
        """Group-ring rows (basis tables padded with a zero zeta_p^{p-1} row)."""
        n_rows = self.table.shape[0]
        pad = np.zeros((n_rows, 1, self.p ** (self.k - 1)), dtype=self.table.dtype)
        return np.concatenate([self.table, pad], axis=1).reshape(n_rows, self.p**self.k)

    def parseval_total(self) -> CycInt:
        """sum_a |W(a)|^2 as an exact ring element."""
        g = self.group()
        q = self.p**self.k
        bound = int(np.abs(g).max(initial=0)) if g.dtype != object else max((abs(v) for v in g.ravel()), default=0)
        if bound * bound * g.shape[0] * q >= _INT64_SAFE:
            g = g.astype(object)
        gram = g.T @ g
        # (w * conj w)[d] = sum_e w[e] w[e - d]
        out = [0] * q
        for e in range(q):
            for e2 in range(q):
                out[(e - e2) % q] += int(gram[e, e2])
        return CycInt.from_group_ring(self.p, self.k, out)

    def dumps(self) -> str:
        lines = []
        for i in range(len(self)):
            lines.append(f"{i} " + " ".join(str(c) for c in self.table[i].ravel().tolist()))
        return "\n".join(lines) + "\n"


def walsh_naive(f: GFunction, a: Point | int) -> CycInt:
    """Direct character sum at one point, with <a,x> evaluated by field arithmetic."""
    spec = f.spec
    point = spec.from_index(int(a)) if isinstance(a, (int, np.integer)) else a
    ip = spec.functional_table(point)
    p, k = f.p, f.k
    exps = (f.values - ip * p ** (k - 1)) % p**k
    counts = np.bincount(exps, minlength=p**k)
    return CycInt.from_group_ring(p, k, counts.tolist())


def walsh_naive_full(f: GFunction) -> WalshSpectrum:
    return WalshSpectrum.from_values([walsh_naive(f, i) for i in range(f.spec.size)], f.spec, f.k)


def walsh_group(f: GFunction) -> np.ndarray:
    """Fast transform, returned as group-ring rows (nonnegative counts)."""
    q = f.p**f.k
    dtype = working_dtype(f.spec.size * f.p)
    return forward_sum(one_hot(f.values, q, dtype), f.spec, f.k)


def walsh_full_fast(f: GFunction) -> WalshSpectrum:
    return WalshSpectrum.from_group(walsh_group(f), f.p, f.k, f.spec)


def inverse_walsh(w: WalshSpectrum) -> GFunction:
    """Recover f from its spectrum via p^{-n} sum_a W(a) zeta_p^{<a,x>}."""
    p, k, spec = w.p, w.k, w.spec
    g = w.group()
    bound = int(np.abs(g).max(initial=0)) if g.dtype != object else max((abs(v) for v in g.ravel()), default=0)
    if bound * spec.size * p >= _INT64_SAFE:
        g = g.astype(object)
    s = backward_sum(g, spec, k)
    ok, sign, c = match_monomials(reduce_group_ring(s, p, k), p, k, p**spec.n)
    bad = np.flatnonzero(~ok | (sign != 1))
    if bad.size:
        raise InvalidSpectrum(
            f"not a valid spectrum: inverse sum is not p^n times a root of unity at {bad.size} "
            f"point(s), first index {int(bad[0])}"
        )
    return GFunction(p, k, spec, c)
