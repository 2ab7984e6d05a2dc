"""Builders for the explicit and secondary gbent constructions.

Each builder validates its hypotheses first and raises ConstructionError
naming the first offending case.  Divisions (x^2/(4 gamma), beta/2,
-a^2/(4 alpha)) go through field inverses of values the hypotheses keep
nonzero.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .analysis import analyze, mu_label
from .cyclotomic import CycInt
from .domain import Dot, DomainSpec, TraceField
from .errors import ConstructionError, UsageError
from .field import ExtField, FieldElem
from .gfunction import GFunction


# ---------------------------------------------------------------- parsing helpers

def parse_element(field: ExtField, text: str) -> FieldElem:
    """``"z^10"``, ``"3"``, ``"-z^2"``, ``"coords:1,0,2"`` or ``"4*z^12"``."""
    text = text.strip().replace(" ", "")
    if text.startswith("coords:"):
        return field([int(c) for c in text[7:].split(",")])
    sign = 1
    if text.startswith("-"):
        sign, text = -1, text[1:]
    scale = 1
    if "*" in text:
        s, text = text.split("*", 1)
        scale = int(s)
    if text.startswith("z"):
        e = int(text[2:]) if text.startswith("z^") else 1
        return field.zpow(e) * (sign * scale)
    try:
        return field(sign * scale * int(text))
    except ValueError:
        raise UsageError(f"cannot parse field element {text!r}") from None


def parse_table(text: str, size: int, modulus: int) -> tuple[int, ...]:
    """A table on {0, ..., size-1}: explicit ``"0,1,8,27,64"`` or ``"pow:3,scale:1"``."""
    text = text.replace(" ", "")
    if text.startswith("pow:"):
        e, scale = 1, 1
        for part in text.split(","):
            key, _, val = part.partition(":")
            if key == "pow":
                e = int(val)
            elif key == "scale":
                scale = int(val)
            else:
                raise UsageError(f"unknown table shorthand field {key!r}")
        return tuple(scale * x**e % modulus for x in range(size))
    vals = tuple(int(v) % modulus for v in text.split(",") if v != "")
    if len(vals) != size:
        raise UsageError(f"table needs {size} values, got {len(vals)}")
    return vals


def _trace_of_scaled_squares(field: ExtField, c: FieldElem) -> np.ndarray:
    """Tr(c x^2) for every x index."""
    return field.trace_table[field.scale_map(c)[field.power_map(2)]]


def rank_mod_p(rows: np.ndarray, p: int) -> int:
    a = np.array(rows, dtype=np.int64) % p
    rank = 0
    n_rows, n_cols = a.shape
    for col in range(n_cols):
        piv = next((r for r in range(rank, n_rows) if a[r, col]), None)
        if piv is None:
            continue
        a[[rank, piv]] = a[[piv, rank]]
        a[rank] = a[rank] * pow(int(a[rank, col]), p - 2, p) % p
        for r in range(n_rows):
            if r != rank and a[r, col]:
                a[r] = (a[r] - a[r, col] * a[rank]) % p
        rank += 1
    return rank


# ---------------------------------------------------------------- quadratic and MM

@dataclass(frozen=True)
class QuadraticBent:
    f: GFunction
    dual: GFunction
    epsilon: int  # constant eps_f
    mu: str


def quadratic_mu(field: ExtField, alpha: FieldElem) -> tuple[int, str]:
    """(eps, mu) for Tr(alpha x^2), mu = (-1)^{m-1} e^m eta(alpha), e in {1, i}."""
    p, m = field.p, field.m
    s = (-1) ** (m - 1) * alpha.quad_character()
    if p % 4 == 1:
        return s, mu_label(s, "xi=1")
    # e = sqrt(-1): e^m = (-1)^{m//2} * (i if m odd else 1)
    s *= (-1) ** (m // 2)
    return s, mu_label(s, "xi=i" if m % 2 else "xi=1")


def quadratic_bent(alpha: FieldElem, field: ExtField | None = None) -> QuadraticBent:
    """Tr(alpha x^2) on F_{p^m} with its dual Tr(-x^2/(4 alpha))."""
    field = field or alpha.field
    alpha = field(alpha)
    if alpha.is_zero():
        raise UsageError("alpha must be nonzero")
    spec = DomainSpec(field.p, [TraceField(field)])
    f = GFunction(field.p, 1, spec, _trace_of_scaled_squares(field, alpha))
    c = -((alpha * 4).inv())
    d = GFunction(field.p, 1, spec, _trace_of_scaled_squares(field, c))
    eps, mu = quadratic_mu(field, alpha)
    return QuadraticBent(f, d, eps, mu)


def mm_gbent(g: Sequence[int], p: int, k: int) -> GFunction:
    """p^{k-1} z1 z2 + g(z2) on F_p x F_p."""
    g = np.asarray(g, dtype=np.int64)
    if g.shape != (p,):
        raise UsageError(f"g must have {p} values")
    z1, z2 = np.meshgrid(np.arange(p), np.arange(p), indexing="ij")
    spec = DomainSpec(p, [Dot(1), Dot(1)])
    return GFunction(p, k, spec, (p ** (k - 1) * z1 * z2 + g[z2]).ravel())


def mm_walsh_closed_form(g: Sequence[int], p: int, k: int, b1: int, b2: int) -> CycInt:
    """p * zeta_{p^k}^{-p^{k-1} b1 b2 + g(b1)}."""
    return CycInt.zeta(p, k, -(p ** (k - 1)) * b1 * b2 + int(g[b1 % p]), p)


# ---------------------------------------------------------------- explicit construction

@dataclass(frozen=True)
class TwistedParams:
    """Data for F = p^{k-1}(Tr(x^2) + (y1 + Tr(a x^2))(y2 + Tr(b x^2))) + g(y2 + Tr(b x^2))."""

    field: ExtField
    k: int
    alpha: FieldElem
    beta: FieldElem
    g: tuple[int, ...]

    @property
    def p(self) -> int:
        return self.field.p

    def gamma(self, i: int, j: int) -> FieldElem:
        return 1 + self.alpha * i + self.beta * j

    def validate(self) -> None:
        p = self.p
        if self.field.m < 2:
            raise ConstructionError("extension degree m must be >= 2")
        if self.k < 1:
            raise ConstructionError("k must be >= 1")
        if self.alpha.is_zero() or self.beta.is_zero():
            raise ConstructionError("alpha and beta must be nonzero")
        if len(self.g) != p:
            raise ConstructionError(f"g must be a table of {p} values")
        for i in range(p):
            for j in range(p):
                if self.gamma(i, j).is_zero():
                    raise ConstructionError(f"1 + i*alpha + j*beta = 0 at (i, j) = ({i}, {j})")

    def spec(self) -> DomainSpec:
        return DomainSpec(self.p, [TraceField(self.field), Dot(1), Dot(1)])


def build_twisted(params: TwistedParams) -> GFunction:
    """F = p^{k-1}(Tr(x^2) + (y1 + Tr(a x^2))(y2 + Tr(b x^2))) + g(y2 + Tr(b x^2))."""
    params.validate()
    fld, p, k = params.field, params.p, params.k
    t1 = fld.trace_table[fld.power_map(2)][:, None, None]
    ta = _trace_of_scaled_squares(fld, params.alpha)[:, None, None]
    tb = _trace_of_scaled_squares(fld, params.beta)[:, None, None]
    y1 = np.arange(p)[None, :, None]
    y2 = np.arange(p)[None, None, :]
    u = (y2 + tb) % p
    g = np.asarray(params.g, dtype=np.int64)
    vals = p ** (k - 1) * ((t1 + (y1 + ta) * u) % p) + g[u]
    return GFunction(p, k, params.spec(), vals.ravel())


def twisted_dual_closed_form(params: TwistedParams) -> GFunction:
    """F*(x, y1, y2) = p^{k-1}(Tr(-x^2/(4 gamma_y)) - y1 y2) + g(y1)."""
    params.validate()
    fld, p, k = params.field, params.p, params.k
    vals = np.zeros((fld.order, p, p), dtype=np.int64)
    for y1 in range(p):
        for y2 in range(p):
            c = -((params.gamma(y1, y2) * 4).inv())
            vals[:, y1, y2] = p ** (k - 1) * ((_trace_of_scaled_squares(fld, c) - y1 * y2) % p) + params.g[y1]
    return GFunction(p, k, params.spec(), vals.ravel())


@dataclass(frozen=True)
class EtaPattern:
    matrix: np.ndarray  # matrix[i, j] = eta(1 + i alpha + j beta)

    @property
    def all_ones(self) -> bool:
        return bool(np.all(self.matrix == 1))

    @property
    def rows_constant(self) -> bool:
        return bool(np.all(self.matrix == self.matrix[:, :1]))

    @property
    def row_constant_with_variation(self) -> bool:
        """eta(1 + i a + j b) = eta(1 + i a) for all i, j, not constant in i."""
        return self.rows_constant and len(set(self.matrix[:, 0].tolist())) > 1


def eta_pattern(params: TwistedParams) -> EtaPattern:
    params.validate()
    p = params.p
    m = np.array([[params.gamma(i, j).quad_character() for j in range(p)] for i in range(p)], dtype=np.int64)
    m.flags.writeable = False
    return EtaPattern(m)


def twisted_dual_condition_sums(params: TwistedParams) -> dict[tuple[int, int], CycInt]:
    """sum_{y1,y2} eta(gamma_y) zeta_{p^k}^{g(y1)} zeta_p^{-y1 y2 + b1 y1 + b2 y2} per (b1, b2)."""
    params.validate()
    p, k = params.p, params.k
    q, q1 = p**k, p ** (k - 1)
    eta = eta_pattern(params).matrix
    out = {}
    for b1 in range(p):
        for b2 in range(p):
            vec = [0] * q
            for y1 in range(p):
                for y2 in range(p):
                    e = params.g[y1] + q1 * (-y1 * y2 + b1 * y1 + b2 * y2)
                    vec[e % q] += int(eta[y1, y2])
            out[(b1, b2)] = CycInt.from_group_ring(p, k, vec)
    return out


def twisted_dual_condition(params: TwistedParams) -> bool:
    """True iff every sum above has |.|^2 = p^2 (the dual is then gbent)."""
    p = params.p
    return all(s.mag_sq() == p * p for s in twisted_dual_condition_sums(params).values())


# ---------------------------------------------------------------- indirect sum

@dataclass(frozen=True)
class FamilyInfo:
    """The common unit u = mu_{G_j} = xi * eps for a valid selector family."""

    epsilon: int
    xi_case: str

    @property
    def u(self) -> str:
        return mu_label(self.epsilon, self.xi_case)


def _combination(gs: Sequence[np.ndarray], j: Sequence[int], p: int) -> np.ndarray:
    acc = (1 - sum(j)) * gs[0]
    for js, gsv in zip(j, gs[1:]):
        acc = acc + js * gsv
    return acc % p


def validate_family(gs: Sequence[GFunction]) -> FamilyInfo:
    """Check that every G_j = (1 - sum j) g_0 + sum j_s g_s is bent, has the
    matching affine combination of duals, and the same constant mu."""
    if len(gs) < 2:
        raise ConstructionError("need g_0, ..., g_t with t >= 1")
    p, spec = gs[0].p, gs[0].spec
    for s, g in enumerate(gs):
        if g.k != 1 or g.spec != spec or g.p != p:
            raise ConstructionError(f"g_{s} is not a p-ary function on the common domain")
    t = len(gs) - 1
    certs = [analyze(g) for g in gs]
    for s, c in enumerate(certs):
        if not c.is_gbent:
            raise ConstructionError(f"g_{s} is not bent")
    tables = [g.values for g in gs]
    duals = [c.dual_values for c in certs]
    common: tuple[int, str] | None = None
    for j in itertools.product(range(p), repeat=t):
        cert = analyze(GFunction(p, 1, spec, _combination(tables, j, p)))
        if not cert.is_gbent:
            raise ConstructionError(f"G_j is not bent at j = {j}")
        if not np.array_equal(cert.dual_values, _combination(duals, j, p)):
            raise ConstructionError(f"G_j* is not the combination of the g_s* at j = {j}")
        if cert.mu is None:
            raise ConstructionError(f"mu_(G_j) is not constant at j = {j}")
        here = (int(cert.epsilon[0]), cert.xi_case)
        if common is None:
            common = here
        elif here != common:
            raise ConstructionError(f"mu_(G_j) = {cert.mu} at j = {j} differs from {mu_label(*common)}")
    return FamilyInfo(*common)


def psap_blocks(field: ExtField, alphas: Sequence[FieldElem], perm: Sequence[int]) -> list[GFunction]:
    """g_s(y1, y2) = Tr(alpha_s G(y1 y2^{p^m-2})) on F_{p^m} x F_{p^m}.

    ``perm`` is G as a table on element indices.
    """
    p, m, q = field.p, field.m, field.order
    t = len(alphas) - 1
    if t < 1:
        raise ConstructionError("need at least alpha_0 and alpha_1")
    if m < t + 1:
        raise ConstructionError(f"need m >= t+1, got m={m}, t={t}")
    alphas = [field(a) for a in alphas]
    if rank_mod_p(np.array([a.coords for a in alphas]), p) != t + 1:
        raise ConstructionError("alpha_0, ..., alpha_t are linearly dependent over F_p")
    perm = np.asarray(perm, dtype=np.int64)
    if perm.shape != (q,) or sorted(perm.tolist()) != list(range(q)):
        raise ConstructionError("G is not a permutation of the field")
    if perm[0] != 0:
        raise ConstructionError("G(0) != 0")
    inv = field.power_map(q - 2)
    ratio = np.array([[(field.from_index(y1) * field.from_index(int(inv[y2]))).index for y2 in range(q)]
                      for y1 in range(q)], dtype=np.int64)
    spec = DomainSpec(p, [TraceField(field), TraceField(field)])
    gs = [GFunction(p, 1, spec, field.trace_table[field.scale_map(a)[perm[ratio]]].ravel()) for a in alphas]
    diffs = {tuple(((gs[0].values - gs[s].values) % p)[y] for s in range(1, t + 1)) for y in range(spec.size)}
    if len(diffs) != p**t:
        raise AssertionError("selector image does not cover F_p^t")
    return gs


@dataclass(frozen=True)
class IndirectSum:
    F: GFunction
    dual: GFunction  # closed form from the duals of the f_i and g_s
    epsilon: np.ndarray  # closed-form eps_F
    family: FamilyInfo
    selector_image: frozenset  # {(g_0 - g_s)(y)}: the f_i actually used
    dual_gbent_predicted: bool


def _selector_index(gs: Sequence[np.ndarray], p: int) -> np.ndarray:
    idx = np.zeros_like(gs[0])
    for g in gs[1:]:
        idx = idx * p + (gs[0] - g) % p
    return idx


def build_indirect_sum(fs: Sequence[GFunction], gs: Sequence[GFunction], g: Sequence[int]) -> IndirectSum:
    """F(x, y) = f_{sel(y)}(x) + p^{k-1} g_0(y) + g(sel(y)), sel = (g_0 - g_1, ..., g_0 - g_t).

    ``fs`` is indexed by i in F_p^t in lexicographic order (i_1 most significant).
    """
    family = validate_family(gs)
    t = len(gs) - 1
    p = gs[0].p
    if len(fs) != p**t:
        raise ConstructionError(f"need {p ** t} functions f_i, got {len(fs)}")
    k, spec_r = fs[0].k, fs[0].spec
    for i, f in enumerate(fs):
        if f.k != k or f.spec != spec_r:
            raise ConstructionError(f"f_{i} has a different domain or k")
    g = np.asarray(g, dtype=np.int64) % p**k
    if g.shape != (p**t,):
        raise ConstructionError(f"g must have {p ** t} values")
    f_certs = [analyze(f) for f in fs]
    for i, c in enumerate(f_certs):
        if not c.is_gbent:
            raise ConstructionError(f"f_{i} is not generalized bent")
    g_certs = [analyze(x) for x in gs]

    sel = _selector_index([x.values for x in gs], p)
    sel_dual = _selector_index([c.dual_values for c in g_certs], p)
    ftab = np.stack([f.values for f in fs])
    q = p**k
    vals = (ftab[sel].T + p ** (k - 1) * gs[0].values[None, :] + g[sel][None, :]) % q
    spec = spec_r * gs[0].spec
    F = GFunction(p, k, spec, vals.ravel())

    image = frozenset(int(i) for i in np.unique(sel))
    both_i = f_certs[0].xi_case == "xi=i" and family.xi_case == "xi=i"
    predicted_bent = True
    dual_rows = np.zeros_like(ftab)
    eps_rows = np.zeros_like(ftab)
    for i, c in enumerate(f_certs):
        dual_rows[i] = c.dual_values
        eps_rows[i] = c.epsilon
        if i in image:
            predicted_bent &= analyze(c.dual()).is_gbent
    dual_vals = (dual_rows[sel_dual].T + p ** (k - 1) * g_certs[0].dual_values[None, :] + g[sel_dual][None, :]) % q
    eps = eps_rows[sel_dual].T * family.epsilon * (-1 if both_i else 1)
    return IndirectSum(F, GFunction(p, k, spec, dual_vals.ravel()), eps.ravel(), family, image, predicted_bent)


# ---------------------------------------------------------------- self-dual construction

@dataclass(frozen=True)
class SymmetricParams:
    """Data for F(x, y) = f_{h(L)}(x) + p^{k-1} Tr(beta/2 (y1^2 + y2^2)) + g(h(L)), L = a alpha y1 + a y2."""

    field: ExtField
    a: FieldElem
    alpha: FieldElem
    beta: FieldElem
    fs: tuple[GFunction, ...]  # f_i for i in F_p, on a common V_r
    g: tuple[int, ...]  # g: F_p -> Z_{p^k}

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def k(self) -> int:
        return self.fs[0].k

    def validate(self) -> None:
        fld, p, m = self.field, self.p, self.field.m
        q = fld.order
        if p % 4 == 3 and m % 2:
            raise ConstructionError("m must be even when p = 3 mod 4")
        if (q - 1) % 4:
            raise ConstructionError("4 does not divide p^m - 1")
        if not (fld.is_primitive or fld.is_generator_primitive()):
            raise ConstructionError("the field must be built with a primitive generator z")
        quarter = fld.zpow((q - 1) // 4)
        for name, v in (("alpha", self.alpha), ("beta", self.beta)):
            if v != quarter and v != -quarter:
                raise ConstructionError(f"{name} is not +-z^((p^m-1)/4)")
        if self.a.is_zero():
            raise ConstructionError("a must be nonzero")
        if len(self.fs) != p:
            raise ConstructionError(f"need f_i for all {p} values of i")
        for i, f in enumerate(self.fs):
            if f.p != p or f.k != self.k or f.spec != self.fs[0].spec:
                raise ConstructionError(f"f_{i} has a different domain or k")
        if len(self.g) != p:
            raise ConstructionError(f"g must be a table of {p} values")


@dataclass(frozen=True)
class SymmetricBuild:
    F: GFunction
    dual: GFunction  # closed form f*_{h(-beta L)} + p^{k-1} g_0 + g(h(-beta L))


def _symmetric_linear_form(params: SymmetricParams) -> tuple[np.ndarray, np.ndarray]:
    """Indices of L = a alpha y1 + a y2 and of -beta L, shape (q, q)."""
    fld = params.field
    s1 = fld.scale_map(params.a * params.alpha)
    s2 = fld.scale_map(params.a)
    lin = fld.add_table[s1[:, None], s2[None, :]]
    return lin, fld.scale_map(-params.beta)[lin]


def build_symmetric(params: SymmetricParams, h: Sequence[int]) -> SymmetricBuild:
    params.validate()
    fld, p, k = params.field, params.p, params.k
    q = fld.order
    h = np.asarray(h, dtype=np.int64) % p
    if h.shape != (q,):
        raise ConstructionError(f"h must be a table of {q} values")
    f_certs = [analyze(f) for f in params.fs]
    for i, c in enumerate(f_certs):
        if not c.is_gbent:
            raise ConstructionError(f"f_{i} is not generalized bent")
    half_beta = params.beta * pow(2, p - 2, p)
    sq = fld.trace_table[fld.scale_map(half_beta)[fld.power_map(2)]]
    g0 = (sq[:, None] + sq[None, :]) % p
    lin, neg = _symmetric_linear_form(params)
    g = np.asarray(params.g, dtype=np.int64) % p**k
    ftab = np.stack([f.values for f in params.fs])
    dtab = np.stack([c.dual_values for c in f_certs])
    base = p ** (k - 1) * g0
    vals = (ftab[h[lin]] + (base + g[h[lin]])[..., None]) % p**k
    dual = (dtab[h[neg]] + (base + g[h[neg]])[..., None]) % p**k
    # (y1, y2, x) -> (x, y1, y2)
    vals = np.moveaxis(vals, -1, 0)
    dual = np.moveaxis(dual, -1, 0)
    spec = params.fs[0].spec * DomainSpec(p, [TraceField(fld), TraceField(fld)])
    return SymmetricBuild(GFunction(p, k, spec, vals.ravel()), GFunction(p, k, spec, dual.ravel()))


def selfdual_h(case: int, field: ExtField) -> np.ndarray:
    if case == 1:
        return field.trace_table.copy()
    if case == 2:
        return field.trace_table[field.power_map(2)]
    if case == 3:
        return field.trace_table[field.power_map(4)]
    raise UsageError(f"unknown case {case}")


def build_selfdual(case: int, params: SymmetricParams) -> SymmetricBuild:
    """Self-dual gbent F from symmetric-sum data under the conditions of the given case."""
    params.validate()
    p, m = params.p, params.field.m
    fs, g = params.fs, params.g
    if case == 1:
        if p % 4 != 1:
            raise ConstructionError("case 1 needs p = 1 mod 4")
        if not params.beta.in_prime_field():
            raise ConstructionError("beta is not in the prime field")
        b = int(params.beta)
        for i in range(p):
            for j in range(p):
                for e in range(4):
                    if i == j * pow(b, e, p) % p:
                        if fs[i] != fs[j]:
                            raise ConstructionError(f"case 1 needs f_{i} = f_{j} (i = j beta^{e})")
                        if g[i] != g[j]:
                            raise ConstructionError(f"case 1 needs g({i}) = g({j}) (beta-orbit)")
    elif case in (2, 3):
        if not (p % 4 == 1 or m % 2 == 0):
            raise ConstructionError(f"case {case} needs p = 1 mod 4 or m even")
        if case == 2:
            for i in range(p):
                if fs[i] != fs[-i % p]:
                    raise ConstructionError(f"case 2 needs f_{i} = f_{-i % p}")
                if g[i] != g[-i % p]:
                    raise ConstructionError(f"case 2 needs g({i}) = g({-i % p})")
    else:
        raise UsageError(f"unknown case {case}")
    for i, f in enumerate(fs):
        cert = analyze(f)
        if not cert.is_gbent or not np.array_equal(cert.dual_values, f.values):
            raise ConstructionError(f"f_{i} is not self-dual generalized bent")
    return build_symmetric(params, selfdual_h(case, params.field))
