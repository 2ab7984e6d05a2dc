"""V_n as a product of dot-product blocks and trace-form field blocks.

Enumeration order: a point's flat coordinate vector (dot coordinates, and
power-basis digits for field elements) is read as a base-p number with the
first coordinate most significant.  So the last block varies fastest, and
``values.reshape((p,) * n)`` lays a table out along coordinates.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Union

import numpy as np

from .errors import UsageError
from .field import ExtField, FieldElem, parse_poly


@dataclass(frozen=True)
class Dot:
    m: int

    def __str__(self) -> str:
        return f"dot:{self.m}"


@dataclass(frozen=True)
class TraceField:
    field: ExtField

    @property
    def m(self) -> int:
        return self.field.m

    def __str__(self) -> str:
        return f"field:{self.field.m}:poly={self.field.poly_text}"


Block = Union[Dot, TraceField]
Point = tuple  # one entry per block: tuple[int, ...] for Dot, FieldElem for TraceField


def mod_inverse_matrix(a: np.ndarray, p: int) -> np.ndarray:
    """Inverse of a square integer matrix over F_p by Gauss-Jordan elimination."""
    n = a.shape[0]
    aug = np.concatenate([np.asarray(a, dtype=np.int64) % p, np.eye(n, dtype=np.int64)], axis=1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r, col] % p), None)
        if pivot is None:
            raise ArithmeticError("matrix is singular over F_p")
        aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] * pow(int(aug[col, col]), p - 2, p) % p
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, n:]


class DomainSpec:
    def __init__(self, p: int, blocks: Sequence[Block]):
        blocks = tuple(blocks)
        if not blocks:
            raise UsageError("a domain needs at least one block")
        for b in blocks:
            if isinstance(b, TraceField):
                if b.field.p != p:
                    raise UsageError(f"field block over F_{b.field.p} in a domain over F_{p}")
            elif not isinstance(b, Dot) or b.m < 1:
                raise UsageError(f"bad block {b!r}")
        self.p = p
        self.blocks = blocks
        self.n = sum(b.m for b in blocks)
        self.size = p**self.n

    # text form

    @classmethod
    def parse(cls, p: int, text: str) -> DomainSpec:
        """Parse e.g. ``"field:2:poly=2,4,1,dot:1,dot:1"``."""
        blocks: list[Block] = []
        tokens = [t.strip() for t in text.split(",") if t.strip()]
        i = 0
        while i < len(tokens):
            tok = tokens[i]
            if tok.startswith("dot:"):
                try:
                    blocks.append(Dot(int(tok[4:])))
                except ValueError:
                    raise UsageError(f"bad block {tok!r}") from None
                i += 1
            elif tok.startswith("field:"):
                parts = tok.split(":")
                if len(parts) != 3 or not parts[2].startswith("poly="):
                    raise UsageError(f"bad field block {tok!r}")
                m = int(parts[1])
                coeffs = [parts[2][5:]]
                i += 1
                while i < len(tokens) and not tokens[i].startswith(("dot:", "field:")):
                    coeffs.append(tokens[i])
                    i += 1
                poly = parse_poly(",".join(coeffs))
                if len(poly) != m + 1:
                    raise UsageError(f"field block of degree {m} needs {m + 1} coefficients, got {len(poly)}")
                blocks.append(TraceField(ExtField(p, poly)))
            else:
                raise UsageError(f"unknown block {tok!r}")
        return cls(p, blocks)

    def __str__(self) -> str:
        return ",".join(str(b) for b in self.blocks)

    def __repr__(self) -> str:
        return f"DomainSpec(p={self.p}, {self})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DomainSpec) and self.p == other.p and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash((self.p, self.blocks))

    def __mul__(self, other: DomainSpec) -> DomainSpec:
        if self.p != other.p:
            raise UsageError("cannot multiply domains over different primes")
        return DomainSpec(self.p, self.blocks + other.blocks)

    # points and indices

    def from_index(self, index: int) -> Point:
        if not 0 <= index < self.size:
            raise UsageError(f"index {index} out of range [0, {self.size})")
        parts = []
        for b in reversed(self.blocks):
            width = self.p**b.m
            index, local = divmod(index, width)
            if isinstance(b, Dot):
                digits = []
                for _ in range(b.m):
                    local, d = divmod(local, self.p)
                    digits.append(d)
                parts.append(tuple(reversed(digits)))
            else:
                parts.append(b.field.from_index(local))
        return tuple(reversed(parts))

    def to_index(self, point: Point) -> int:
        self._check_point(point)
        index = 0
        for b, comp in zip(self.blocks, point):
            if isinstance(b, Dot):
                for d in comp:
                    index = index * self.p + int(d) % self.p
            else:
                index = index * self.p**b.m + comp.index
        return index

    def points(self):
        for i in range(self.size):
            yield self.from_index(i)

    def _check_point(self, point: Point) -> None:
        if len(point) != len(self.blocks):
            raise UsageError(f"point has {len(point)} components, domain has {len(self.blocks)} blocks")
        for b, comp in zip(self.blocks, point):
            if isinstance(b, Dot):
                if isinstance(comp, FieldElem) or len(comp) != b.m:
                    raise UsageError(f"component {comp!r} does not fit block {b}")
            elif not isinstance(comp, FieldElem) or comp.field != b.field:
                raise UsageError(f"component {comp!r} does not fit block {b}")

    def zero(self) -> Point:
        return self.from_index(0)

    def inner_product(self, a: Point, x: Point) -> int:
        """Sum of per-block forms: dot products and Tr(a x)."""
        self._check_point(a)
        self._check_point(x)
        total = 0
        for b, ca, cx in zip(self.blocks, a, x):
            if isinstance(b, Dot):
                total += sum(int(u) * int(v) for u, v in zip(ca, cx))
            else:
                total += (ca * cx).trace()
        return total % self.p

    def negate(self, x: Point) -> Point:
        self._check_point(x)
        out = []
        for b, c in zip(self.blocks, x):
            out.append(tuple((-int(d)) % self.p for d in c) if isinstance(b, Dot) else -c)
        return tuple(out)

    def block_functional(self, a: Point) -> list[np.ndarray]:
        """For each block, the values <a_b, x_b> over all x_b in the block.

        Evaluated by direct field multiplication and trace; this is the
        reference route used by the naive Walsh transform.
        """
        self._check_point(a)
        out = []
        for b, ca in zip(self.blocks, a):
            if isinstance(b, Dot):
                digits = np.indices((self.p,) * b.m).reshape(b.m, -1).T
                out.append(digits @ np.asarray(ca, dtype=np.int64) % self.p)
            else:
                out.append(np.array([(ca * x).trace() for x in b.field.elements()], dtype=np.int64))
        return out

    def functional_table(self, a: Point) -> np.ndarray:
        """<a, x> for every x, in enumeration order."""
        acc = np.zeros(1, dtype=np.int64)
        for vals in self.block_functional(a):
            acc = (acc[:, None] + vals[None, :]).ravel() % self.p
        return acc

    # coordinate machinery used by the fast transform

    @cached_property
    def coords(self) -> np.ndarray:
        """Flat coordinates of every point, shape (p^n, n)."""
        c = np.indices((self.p,) * self.n, dtype=np.int64).reshape(self.n, -1).T
        c.flags.writeable = False
        return c

    def index_of_coords(self, coords: np.ndarray) -> np.ndarray:
        weights = self.p ** np.arange(self.n - 1, -1, -1, dtype=np.int64)
        return (np.asarray(coords, dtype=np.int64) % self.p) @ weights

    @cached_property
    def gram(self) -> np.ndarray:
        """Block-diagonal Gram matrix G with <a, x> = coords(a)^T G coords(x) mod p."""
        g = np.zeros((self.n, self.n), dtype=np.int64)
        off = 0
        for b in self.blocks:
            if isinstance(b, Dot):
                g[off : off + b.m, off : off + b.m] = np.eye(b.m, dtype=np.int64)
            else:
                f = b.field
                basis = [f.zpow(u) for u in range(f.m)]
                for u in range(f.m):
                    for v in range(f.m):
                        g[off + u, off + v] = (basis[u] * basis[v]).trace()
            off += b.m
        g.flags.writeable = False
        return g

    @cached_property
    def dual_basis(self) -> list[list[FieldElem] | None]:
        """Per field block, the trace-dual basis d_v with Tr(z^u d_v) = delta_uv."""
        out: list[list[FieldElem] | None] = []
        off = 0
        for b in self.blocks:
            if isinstance(b, Dot):
                out.append(None)
            else:
                f = b.field
                sub = self.gram[off : off + b.m, off : off + b.m]
                try:
                    ginv = mod_inverse_matrix(sub, self.p)
                except ArithmeticError:
                    raise AssertionError("trace form Gram matrix is singular") from None
                out.append([f([int(c) for c in ginv[v]]) for v in range(f.m)])
            off += b.m
        return out

    def dualize_coordinates(self) -> tuple[np.ndarray, np.ndarray]:
        """Linear maps (A, A*) so that <a, x> = (A* a) . (A x) in dot coordinates.

        A is the identity (power-basis digits are used as-is); A* is the Gram
        matrix, i.e. the coordinates of a in the trace-dual basis.
        """
        return np.eye(self.n, dtype=np.int64), np.array(self.gram)

    @cached_property
    def dual_index_map(self) -> np.ndarray:
        """For each index a, the index of the dot-coordinate vector A* coords(a)."""
        m = self.index_of_coords(self.coords @ self.gram.T % self.p)
        m.flags.writeable = False
        return m

    @cached_property
    def negate_index_map(self) -> np.ndarray:
        m = self.index_of_coords(-self.coords)
        m.flags.writeable = False
        return m

    def inner_product_matrix(self) -> np.ndarray:
        """<a, x> for all pairs via the Gram matrix; shape (p^n, p^n)."""
        c = self.coords
        return (c @ self.gram % self.p) @ c.T % self.p

    def add_index(self, i: np.ndarray | int, j: np.ndarray | int) -> np.ndarray:
        """Index of x_i + x_j (coordinate-wise addition)."""
        c = self.coords
        return self.index_of_coords(c[np.asarray(i)] + c[np.asarray(j)])
