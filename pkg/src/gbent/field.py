"""Arithmetic in F_p and F_{p^m} given by an explicit minimal polynomial.

Elements live in power-basis coordinates ``(c_0, ..., c_{m-1})`` meaning
``c_0 + c_1 z + ... + c_{m-1} z^{m-1}``.  Every element also has an integer
index, the coordinates read as base-p digits with ``c_0`` most significant;
this is the order used when a field is a block of a domain.
"""
from __future__ import annotations

from functools import cached_property
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, UsageError

MAX_DEGREE = 12


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def parse_poly(text: str) -> tuple[int, ...]:
    """Parse ``"2,4,1"`` (constant term first) into a coefficient tuple."""
    try:
        return tuple(int(t) for t in text.replace(" ", "").split(",") if t != "")
    except ValueError as exc:
        raise UsageError(f"bad polynomial {text!r}: {exc}") from None


# Polynomials over F_p as lists, constant term first, no trailing zeros.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: list[int], m: Sequence[int], p: int) -> list[int]:
    a = _trim([c % p for c in a])
    dm = len(m) - 1
    inv_lead = pow(m[-1], p - 2, p)
    while len(a) - 1 >= dm:
        shift = len(a) - 1 - dm
        c = a[-1] * inv_lead % p
        for i, mc in enumerate(m):
            a[shift + i] = (a[shift + i] - c * mc) % p
        _trim(a)
    return a


def _poly_mulmod(a: list[int], b: list[int], m: Sequence[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, m, p)


def _poly_powmod(a: list[int], e: int, m: Sequence[int], p: int) -> list[int]:
    result = [1]
    base = _poly_mod(list(a), m, p)
    while e:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Ben-Or test: no factor of degree d <= m/2 divides ``poly``."""
    m = len(poly) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    xp = list(x)
    for _ in range(m // 2):
        xp = _poly_powmod(xp, p, poly, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(list(poly), _trim(diff), p)) > 1:
            return False
    return True


class ExtField:
    """The field F_p[z]/(min_poly).

    Parameters
    ----------
    p : odd prime
    min_poly : m+1 coefficients, constant term first, monic
    primitive : if True, also verify that z generates the multiplicative group
    """

    def __init__(self, p: int, min_poly: Sequence[int] | str, primitive: bool = False):
        if isinstance(min_poly, str):
            min_poly = parse_poly(min_poly)
        if p % 2 == 0 or not is_prime(p):
            raise UsageError(f"p={p} is not an odd prime")
        poly = tuple(int(c) % p for c in min_poly)
        m = len(poly) - 1
        if m < 1:
            raise UsageError("minimal polynomial must have degree >= 1")
        if m > MAX_DEGREE:
            raise UsageError(f"degree {m} exceeds supported maximum {MAX_DEGREE}")
        if poly[-1] != 1:
            raise UsageError(f"minimal polynomial {poly} is not monic")
        if not is_irreducible(poly, p):
            raise UsageError(f"polynomial {poly} is reducible over F_{p}")
        self.p = p
        self.m = m
        self.min_poly = poly
        self.order = p**m
        self._primitive_checked = False
        if primitive:
            if not self.is_generator_primitive():
                raise UsageError(f"z is not primitive for polynomial {poly} over F_{p}")
            self._primitive_checked = True

    @classmethod
    def prime_field(cls, p: int, generator: int | None = None) -> ExtField:
        """F_p as a degree-1 field whose ``z`` is a primitive root."""
        if generator is None:
            generator = next(g for g in range(2, p) if _is_primitive_root(g, p))
        return cls(p, ((-generator) % p, 1), primitive=True)

    @property
    def is_primitive(self) -> bool:
        return self._primitive_checked

    def __repr__(self) -> str:
        return f"ExtField(p={self.p}, min_poly={','.join(map(str, self.min_poly))})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ExtField) and (self.p, self.min_poly) == (other.p, other.min_poly)

    def __hash__(self) -> int:
        return hash((self.p, self.min_poly))

    @property
    def poly_text(self) -> str:
        return ",".join(str(c) for c in self.min_poly)

    # construction of elements

    def __call__(self, value: int | Sequence[int] | FieldElem) -> FieldElem:
        if isinstance(value, FieldElem):
            self._check(value)
            return value
        if isinstance(value, (int, np.integer)):
            return FieldElem(self, (int(value) % self.p,) + (0,) * (self.m - 1))
        coords = tuple(int(c) % self.p for c in value)
        if len(coords) != self.m:
            raise UsageError(f"expected {self.m} coordinates, got {len(coords)}")
        return FieldElem(self, coords)

    def zero(self) -> FieldElem:
        return self(0)

    def one(self) -> FieldElem:
        return self(1)

    @cached_property
    def z(self) -> FieldElem:
        if self.m == 1:
            return self(-self.min_poly[0])
        return self([0, 1] + [0] * (self.m - 2))

    def zpow(self, e: int) -> FieldElem:
        return self.z ** e

    def from_index(self, index: int) -> FieldElem:
        if not 0 <= index < self.order:
            raise UsageError(f"index {index} out of range for field of order {self.order}")
        coords = []
        for _ in range(self.m):
            coords.append(index % self.p)
            index //= self.p
        return FieldElem(self, tuple(reversed(coords)))

    def elements(self) -> Iterator[FieldElem]:
        for i in range(self.order):
            yield self.from_index(i)

    def _check(self, x: FieldElem) -> None:
        if x.field is not self and x.field != self:
            raise UsageError("elements belong to different fields")

    # primitivity

    def element_order(self, x: FieldElem) -> int:
        if x.is_zero():
            raise DomainError("zero has no multiplicative order")
        n = self.order - 1
        for q in prime_factors(self.order - 1):
            while n % q == 0 and (x ** (n // q)).is_one():
                n //= q
        return n

    def is_generator_primitive(self) -> bool:
        return self.element_order(self.z) == self.order - 1

    # cached whole-field tables (the field is immutable, so these never go stale)

    @cached_property
    def trace_table(self) -> np.ndarray:
        return np.array([x.trace() for x in self.elements()], dtype=np.int64)

    @cached_property
    def eta_table(self) -> np.ndarray:
        """Quadratic character by index; entry 0 (the zero element) is 0."""
        t = np.zeros(self.order, dtype=np.int64)
        for i, x in enumerate(self.elements()):
            if i:
                t[i] = x.quad_character()
        return t

    def power_map(self, e: int) -> np.ndarray:
        """Index of x^e for every element index x (0^0 is taken as 1)."""
        return np.array([(x ** e).index for x in self.elements()], dtype=np.int64)

    def scale_map(self, c: FieldElem) -> np.ndarray:
        """Index of c*x for every element index x."""
        c = self(c)
        return np.array([(c * x).index for x in self.elements()], dtype=np.int64)

    @cached_property
    def add_table(self) -> np.ndarray:
        """``add_table[i, j]`` is the index of x_i + x_j (digit-wise addition mod p)."""
        q = self.order
        digits = np.array([x.coords for x in self.elements()], dtype=np.int64)
        s = (digits[:, None, :] + digits[None, :, :]) % self.p
        weights = self.p ** np.arange(self.m - 1, -1, -1, dtype=np.int64)
        return (s * weights).sum(axis=2).reshape(q, q)


def _is_primitive_root(g: int, p: int) -> bool:
    return all(pow(g, (p - 1) // q, p) != 1 for q in prime_factors(p - 1))


class FieldElem:
    """Immutable element of an :class:`ExtField`."""

    __slots__ = ("field", "coords")

    def __init__(self, field: ExtField, coords: tuple[int, ...]):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coords", coords)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    @property
    def index(self) -> int:
        i = 0
        for c in self.coords:
            i = i * self.field.p + c
        return i

    def is_zero(self) -> bool:
        return not any(self.coords)

    def is_one(self) -> bool:
        return self.coords[0] == 1 and not any(self.coords[1:])

    def _coerce(self, other) -> FieldElem:
        if isinstance(other, FieldElem):
            self.field._check(other)
            return other
        if isinstance(other, (int, np.integer)):
            return self.field(int(other))
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, np.integer)):
            other = self.field(int(other))
        if not isinstance(other, FieldElem):
            return NotImplemented
        return self.field == other.field and self.coords == other.coords

    def __hash__(self) -> int:
        return hash((self.field.p, self.field.min_poly, self.coords))

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.field.p
        return FieldElem(self.field, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self) -> FieldElem:
        p = self.field.p
        return FieldElem(self.field, tuple((-a) % p for a in self.coords))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.field
        prod = _poly_mulmod(list(self.coords), list(other.coords), f.min_poly, f.p)
        return FieldElem(f, tuple(prod + [0] * (f.m - len(prod))))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> FieldElem:
        f = self.field
        if e < 0:
            return self.inv() ** (-e)
        res = _poly_powmod(list(self.coords), e, f.min_poly, f.p)
        return FieldElem(f, tuple(res + [0] * (f.m - len(res))))

    def inv(self) -> FieldElem:
        if self.is_zero():
            raise DomainError("zero is not invertible")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def trace(self) -> int:
        """Absolute trace x + x^p + ... + x^{p^{m-1}}, as an integer in [0, p)."""
        f = self.field
        acc = self
        y = self
        for _ in range(f.m - 1):
            y = y ** f.p
            acc = acc + y
        if any(acc.coords[1:]):
            raise AssertionError("trace did not land in the prime field")
        return acc.coords[0]

    def quad_character(self) -> int:
        if self.is_zero():
            raise DomainError("quadratic character of 0 is undefined")
        r = self ** ((self.field.order - 1) // 2)
        return 1 if r.is_one() else -1

    def in_prime_field(self) -> bool:
        return not any(self.coords[1:])

    def __int__(self) -> int:
        if not self.in_prime_field():
            raise DomainError(f"{self!r} is not in the prime field")
        return self.coords[0]

    def __repr__(self) -> str:
        terms = []
        for u, c in enumerate(self.coords):
            if c:
                terms.append(str(c) if u == 0 else (f"{c}z" if u == 1 else f"{c}z^{u}"))
        return "+".join(terms) if terms else "0"


def trace(x: FieldElem) -> int:
    return x.trace()


def quad_character(x: FieldElem) -> int:
    return x.quad_character()
