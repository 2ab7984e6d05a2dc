"""Value tables of generalized p-ary functions V_n -> Z_{p^k}."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Sequence

import numpy as np

from .domain import DomainSpec, Point
from .errors import FormatError, UsageError


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a, dtype=np.int64)
    a.flags.writeable = False
    return a


class GFunction:
    """A function V_n -> Z_{p^k} stored as its table in enumeration order."""

    def __init__(self, p: int, k: int, spec: DomainSpec, values):
        if k < 1:
            raise UsageError("k must be >= 1")
        if spec.p != p:
            raise UsageError(f"domain is over F_{spec.p}, function over p={p}")
        vals = np.asarray(values)
        if vals.ndim != 1 or vals.shape[0] != spec.size:
            raise UsageError(f"value table must have {spec.size} entries, got shape {vals.shape}")
        self.p = p
        self.k = k
        self.spec = spec
        self.values = _frozen(np.mod(vals.astype(np.int64), p**k))

    @classmethod
    def from_callable(cls, p: int, k: int, spec: DomainSpec, fn: Callable[[Point], int]) -> GFunction:
        return cls(p, k, spec, [int(fn(x)) for x in spec.points()])

    @property
    def n(self) -> int:
        return self.spec.n

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def __len__(self) -> int:
        return self.spec.size

    def __call__(self, x: Point | int) -> int:
        i = x if isinstance(x, (int, np.integer)) else self.spec.to_index(x)
        return int(self.values[i])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GFunction):
            return NotImplemented
        return (self.p, self.k, self.spec) == (other.p, other.k, other.spec) and np.array_equal(
            self.values, other.values
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.spec, self.values.tobytes()))

    def __repr__(self) -> str:
        return f"GFunction(p={self.p}, k={self.k}, domain={self.spec})"

    def with_values(self, values) -> GFunction:
        return GFunction(self.p, self.k, self.spec, values)

    def reflect(self) -> GFunction:
        """x -> f(-x)."""
        return self.with_values(self.values[self.spec.negate_index_map])

    def is_even(self) -> bool:
        return bool(np.array_equal(self.values, self.values[self.spec.negate_index_map]))

    @cached_property
    def decomposition(self) -> Decomposition:
        return decompose(self)


@dataclass(frozen=True)
class Decomposition:
    """Base-p digits of f, most significant first: f = sum_i f_i p^{k-1-i}.

    ``tail`` is f - f_0 p^{k-1}, a table into Z_{p^{k-1}} (all zero when k = 1).
    """

    p: int
    k: int
    spec: DomainSpec
    components: tuple[np.ndarray, ...]
    tail: np.ndarray

    def component(self, i: int) -> GFunction:
        return GFunction(self.p, 1, self.spec, self.components[i])


def decompose(f: GFunction) -> Decomposition:
    comps = []
    v = f.values
    for i in range(f.k):
        comps.append(_frozen((v // f.p ** (f.k - 1 - i)) % f.p))
    tail = _frozen(v % f.p ** (f.k - 1))
    return Decomposition(f.p, f.k, f.spec, tuple(comps), tail)


def compose(components: Sequence, p: int, spec: DomainSpec) -> GFunction:
    """Inverse of :func:`decompose`; components are tables into F_p."""
    k = len(components)
    if k < 1:
        raise UsageError("need at least one component")
    total = np.zeros(spec.size, dtype=np.int64)
    for i, c in enumerate(components):
        c = np.asarray(c.values if isinstance(c, GFunction) else c, dtype=np.int64)
        if c.shape != (spec.size,):
            raise UsageError(f"component {i} has shape {c.shape}, expected ({spec.size},)")
        if c.min() < 0 or c.max() >= p:
            raise UsageError(f"component {i} has values outside [0, {p})")
        total += c * p ** (k - 1 - i)
    return GFunction(p, k, spec, total)


def embed_bent(f0: GFunction, k_target: int) -> GFunction:
    """p^{k_target-1} * f0 as a function into Z_{p^k_target}."""
    if f0.k != 1:
        raise UsageError("embed_bent expects a p-ary function (k = 1)")
    if k_target < 1:
        raise UsageError("k_target must be >= 1")
    return GFunction(f0.p, k_target, f0.spec, f0.values * f0.p ** (k_target - 1))


# Function-table files:
#   line 1: "p k"
#   line 2: domain string, e.g. "field:2:poly=2,4,1,dot:1,dot:1"
#   then p^n integers in enumeration order (any whitespace)
# Values are reduced residues; digit f_0 of Z_{p^k} values is the most significant.

def dumps(f: GFunction, per_line: int | None = None) -> str:
    per_line = per_line or f.p ** f.spec.blocks[-1].m
    rows = [f"{f.p} {f.k}", str(f.spec)]
    vals = f.values.tolist()
    for i in range(0, len(vals), per_line):
        rows.append(" ".join(str(v) for v in vals[i : i + per_line]))
    return "\n".join(rows) + "\n"


def loads(text: str) -> GFunction:
    lines = text.splitlines()
    if len(lines) < 2:
        raise FormatError("expected header line 'p k' and a domain line", line=len(lines) + 1)
    head = lines[0].split()
    if len(head) != 2:
        raise FormatError("header must be 'p k'", line=1)
    try:
        p, k = int(head[0]), int(head[1])
    except ValueError:
        raise FormatError("header must contain two integers", line=1) from None
    try:
        spec = DomainSpec.parse(p, lines[1].strip())
    except UsageError as exc:
        raise FormatError(str(exc), line=2) from None
    values: list[int] = []
    for lineno, line in enumerate(lines[2:], start=3):
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise FormatError(f"not an integer: {tok!r}", line=lineno) from None
            if not 0 <= v < p**k:
                raise FormatError(f"value {v} outside [0, {p ** k})", line=lineno)
            values.append(v)
        if len(values) > spec.size:
            raise FormatError(f"more than {spec.size} values", line=lineno)
    if len(values) != spec.size:
        raise FormatError(f"expected {spec.size} values, found {len(values)}", line=len(lines) + 1)
    return GFunction(p, k, spec, values)


def read_table(path: str | Path) -> GFunction:
    return loads(Path(path).read_text())


def write_table(f: GFunction, path: str | Path) -> None:
    Path(path).write_text(dumps(f))
