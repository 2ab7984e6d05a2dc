"""Exact arithmetic in Z[zeta_{p^k}].

An element is stored over the integral basis zeta_p^i * zeta_{p^k}^j with
0 <= i <= p-2 and 0 <= j <= p^{k-1}-1.  Since zeta_p = zeta_{p^k}^{p^{k-1}}
the basis monomial (i, j) is zeta_{p^k}^{i p^{k-1} + j}, so exponents of
zeta_{p^k} can be read straight off the table.

Products go through the group ring Z[C_{p^k}] (integer vectors indexed by
the exponent of zeta_{p^k}), where multiplication is cyclic convolution.
Reducing a group-ring vector to the basis only needs the vanishing sum
1 + zeta_p + ... + zeta_p^{p-1} = 0, i.e. the i = p-1 row is subtracted
from every other row.
"""
from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import UsageError


def legendre(i: int, p: int) -> int:
    i %= p
    if i == 0:
        return 0
    return 1 if pow(i, (p - 1) // 2, p) == 1 else -1


def reduce_group_ring(vec: np.ndarray, p: int, k: int) -> np.ndarray:
    """Map group-ring vectors (last axis of length p^k) to basis tables.

    Works on any leading batch shape; returns shape ``(..., p-1, p^{k-1})``.
    """
    q1 = p ** (k - 1)
    v = vec.reshape(vec.shape[:-1] + (p, q1))
    return v[..., : p - 1, :] - v[..., p - 1 : p, :]


class CycInt:
    """Immutable element of Z[zeta_{p^k}] in the integral basis."""

    __slots__ = ("p", "k", "coeffs")

    def __init__(self, p: int, k: int, coeffs: Iterable[int]):
        coeffs = tuple(int(c) for c in coeffs)
        if len(coeffs) != (p - 1) * p ** (k - 1):
            raise UsageError(f"CycInt over p={p}, k={k} needs {(p - 1) * p ** (k - 1)} coefficients")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycInt is immutable")

    # constructors

    @classmethod
    def zero(cls, p: int, k: int) -> CycInt:
        return cls(p, k, [0] * ((p - 1) * p ** (k - 1)))

    @classmethod
    def from_int(cls, p: int, k: int, n: int) -> CycInt:
        c = [0] * ((p - 1) * p ** (k - 1))
        c[0] = n
        return cls(p, k, c)

    @classmethod
    def one(cls, p: int, k: int) -> CycInt:
        return cls.from_int(p, k, 1)

    @classmethod
    def zeta(cls, p: int, k: int, e: int = 1, scale: int = 1) -> CycInt:
        """``scale * zeta_{p^k}^e``."""
        vec = [0] * p**k
        vec[e % p**k] = scale
        return cls.from_group_ring(p, k, vec)

    @classmethod
    def zeta_p(cls, p: int, k: int, e: int = 1) -> CycInt:
        return cls.zeta(p, k, (e % p) * p ** (k - 1))

    @classmethod
    def from_group_ring(cls, p: int, k: int, vec: Sequence[int]) -> CycInt:
        q1 = p ** (k - 1)
        if len(vec) != p**k:
            raise UsageError(f"group-ring vector must have length {p ** k}")
        last = [int(vec[(p - 1) * q1 + j]) for j in range(q1)]
        out = []
        for i in range(p - 1):
            for j in range(q1):
                out.append(int(vec[i * q1 + j]) - last[j])
        return cls(p, k, out)

    @classmethod
    def from_table(cls, p: int, k: int, table) -> CycInt:
        return cls(p, k, np.asarray(table, dtype=object).ravel().tolist())

    def to_group_ring(self) -> list[int]:
        # basis (i, j) sits at exponent i*p^{k-1} + j, so the table is a prefix
        return list(self.coeffs) + [0] * self.p ** (self.k - 1)

    def table(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=object).reshape(self.p - 1, self.p ** (self.k - 1))

    # ring operations

    def _same_ring(self, other: CycInt) -> None:
        if (self.p, self.k) != (other.p, other.k):
            raise UsageError(f"ring mismatch: Z[zeta_{self.p}^{self.k}] vs Z[zeta_{other.p}^{other.k}]")

    def _coerce(self, other) -> CycInt:
        if isinstance(other, CycInt):
            self._same_ring(other)
            return other
        if isinstance(other, (int, np.integer)):
            return CycInt.from_int(self.p, self.k, int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, self.k, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> CycInt:
        return CycInt(self.p, self.k, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycInt(self.p, self.k, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        q = self.p**self.k
        a = [(e, c) for e, c in enumerate(self.to_group_ring()) if c]
        b = [(e, c) for e, c in enumerate(other.to_group_ring()) if c]
        out = [0] * q
        for ea, ca in a:
            for eb, cb in b:
                out[(ea + eb) % q] += ca * cb
        return CycInt.from_group_ring(self.p, self.k, out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> CycInt:
        if e < 0:
            raise UsageError("negative powers are not supported")
        result = CycInt.one(self.p, self.k)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def times_zeta(self, e: int) -> CycInt:
        """Multiply by the monomial zeta_{p^k}^e (a re-indexing, no products)."""
        q = self.p**self.k
        vec = self.to_group_ring()
        out = [0] * q
        for i, c in enumerate(vec):
            if c:
                out[(i + e) % q] = c
        return CycInt.from_group_ring(self.p, self.k, out)

    def conj(self) -> CycInt:
        q = self.p**self.k
        vec = self.to_group_ring()
        out = [0] * q
        for e, c in enumerate(vec):
            if c:
                out[(-e) % q] += c
        return CycInt.from_group_ring(self.p, self.k, out)

    def mag_sq(self) -> CycInt:
        return self * self.conj()

    def rational_value(self) -> int | None:
        """The integer n if this element equals n, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, np.integer)):
            other = CycInt.from_int(self.p, self.k, int(other))
        if not isinstance(other, CycInt):
            return NotImplemented
        return (self.p, self.k, self.coeffs) == (other.p, other.k, other.coeffs)

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.coeffs))

    def __repr__(self) -> str:
        return f"CycInt(p={self.p}, k={self.k}, {self})"

    def __str__(self) -> str:
        q1 = self.p ** (self.k - 1)
        terms = []
        for idx, c in enumerate(self.coeffs):
            if c:
                i, j = divmod(idx, q1)
                terms.append(f"{c}·ζp^{i}·ζq^{j}")
        return " + ".join(terms) if terms else "0"


def gauss_sum(p: int, k: int = 1) -> CycInt:
    """sum_{i=1}^{p-1} eta(i) zeta_p^i, which equals xi*sqrt(p)."""
    q1 = p ** (k - 1)
    vec = [0] * p**k
    for i in range(1, p):
        vec[i * q1] = legendre(i, p)
    return CycInt.from_group_ring(p, k, vec)


def xi_squared(p: int, n: int) -> int:
    """xi^2 where xi = 1, or sqrt(-1) when p = 3 mod 4 and n is odd."""
    return -1 if (p % 4 == 3 and n % 2 == 1) else 1


def _match_monomial(w: CycInt, magnitude: int) -> tuple[int, int] | None:
    """Find (s, c) with w == s * magnitude * zeta_{p^k}^c."""
    p, k = w.p, w.k
    q1 = p ** (k - 1)
    nz = [(idx, c) for idx, c in enumerate(w.coeffs) if c]
    if len(nz) == 1:
        idx, c = nz[0]
        if abs(c) == magnitude:
            i, j = divmod(idx, q1)
            return (1 if c > 0 else -1), i * q1 + j
        return None
    if len(nz) == p - 1:
        # zeta_p^{p-1} zeta_{p^k}^j is the negated sum over the column j
        cols = {idx % q1 for idx, _ in nz}
        vals = {c for _, c in nz}
        if len(cols) == 1 and len(vals) == 1:
            v = vals.pop()
            if abs(v) == magnitude:
                return (-1 if v > 0 else 1), (p - 1) * q1 + cols.pop()
    return None


def recognize_bent_value(w: CycInt, n: int) -> tuple[int, int] | None:
    """Recognise ``w = eps * xi * p^{n/2} * zeta_{p^k}^c``.

    Returns ``(eps, c)`` or None when ``w`` does not have that shape.
    """
    p = w.p
    if n % 2 == 0:
        return _match_monomial(w, p ** (n // 2))
    found = _match_monomial(w * gauss_sum(p, w.k), p ** ((n + 1) // 2))
    if found is None:
        return None
    s, c = found
    return s * xi_squared(p, n), c
