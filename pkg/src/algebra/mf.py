# src/algebra/mf.py
"""
Graded matrix factorizations of a central quadric over S_eps.

A factorization is stored as the period-2 pair (Phi0, Phi1) with shift vectors:
F0 = ⊕ S(-m0[s]), F1 = ⊕ S(-m1[s]), F2 = F0(-2).
Entry (s,t) of Phi0 has degree m1[t] - m0[s]; entry (s,t) of Phi1 has degree
m0[t] + 2 - m1[s]. Right-module maps act by left multiplication on columns.

Dependencies:
    - sympy (QQ_I coefficients, DomainMatrix rank for the cokernel oracle)
    - numpy (closed-form Hilbert series)
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from sympy.polys.domains import QQ_I
from sympy.polys.matrices import DomainMatrix

from src.algebra.hilbert import hilbert_A
from src.algebra.skewpoly import (
    LinearSubstitution,
    ONE,
    SignSystem,
    SkewPoly,
    adjoin_variable,
    embed,
    format_coeff,
    is_central,
    leading_square,
    mul,
    quotient_basis,
    reduce_mod_f,
    substitute,
    theta_sign,
)
from src.utils.errors import (
    ContextMismatch,
    MorphismViolation,
    NotCentral,
    NotReduced,
    ShapeMismatch,
)

LOGGER = logging.getLogger(__name__)

Matrix = Tuple[Tuple[SkewPoly, ...], ...]


# ===== Matrix helpers =====

def _freeze(rows: Sequence[Sequence[SkewPoly]]) -> Matrix:
    return tuple(tuple(row) for row in rows)


def _thaw(matrix: Matrix) -> List[List[SkewPoly]]:
    return [list(row) for row in matrix]


def zero_matrix(ctx: SignSystem, rows: int, cols: int) -> Matrix:
    zero = SkewPoly.zero(ctx)
    return tuple(tuple(zero for _ in range(cols)) for _ in range(rows))


def scalar_matrix(ctx: SignSystem, r: int, p: SkewPoly) -> Matrix:
    zero = SkewPoly.zero(ctx)
    return tuple(tuple(p if s == t else zero for t in range(r)) for s in range(r))


def identity_matrix(ctx: SignSystem, r: int) -> Matrix:
    return scalar_matrix(ctx, r, SkewPoly.one(ctx))


def mat_mul(ctx: SignSystem, a: Matrix, b: Matrix) -> Matrix:
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    if rows and len(a[0]) != inner:
        raise ShapeMismatch(f"cannot multiply {rows}x{len(a[0])} by {inner}x{cols}")
    out = []
    for s in range(rows):
        row = []
        for t in range(cols):
            acc = SkewPoly.zero(ctx)
            for k in range(inner):
                if a[s][k] and b[k][t]:
                    acc = acc + mul(a[s][k], b[k][t])
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def mat_map(matrix: Matrix, fn) -> Matrix:
    return tuple(tuple(fn(entry) for entry in row) for row in matrix)


def block_matrix(top_left: Matrix, top_right: Matrix, bottom_left: Matrix, bottom_right: Matrix) -> Matrix:
    top = [tuple(a) + tuple(b) for a, b in zip(top_left, top_right)]
    bottom = [tuple(a) + tuple(b) for a, b in zip(bottom_left, bottom_right)]
    return tuple(top + bottom)


# ===== Types =====

@dataclass(frozen=True)
class MatrixFactorization:
    ctx: SignSystem
    f: SkewPoly
    m0: Tuple[int, ...]
    m1: Tuple[int, ...]
    phi0: Matrix
    phi1: Matrix

    def __post_init__(self):
        r = len(self.m0)
        if len(self.m1) != r:
            raise ShapeMismatch(f"shift vectors differ in length ({r} vs {len(self.m1)})")
        for name, matrix in (("Phi0", self.phi0), ("Phi1", self.phi1)):
            if len(matrix) != r or any(len(row) != r for row in matrix):
                raise ShapeMismatch(f"{name} must be {r}x{r}")
            for row in matrix:
                for entry in row:
                    if entry.ctx != self.ctx:
                        raise ContextMismatch(f"{name} entry outside the sign system")
        if self.f.ctx != self.ctx:
            raise ContextMismatch("f lives outside the sign system")

    @property
    def r(self) -> int:
        return len(self.m0)

    @classmethod
    def build(cls, ctx: SignSystem, f: SkewPoly, m0, m1, phi0, phi1) -> "MatrixFactorization":
        return cls(ctx, f, tuple(int(m) for m in m0), tuple(int(m) for m in m1), _freeze(phi0), _freeze(phi1))

    @classmethod
    def empty(cls, ctx: SignSystem, f: SkewPoly) -> "MatrixFactorization":
        return cls(ctx, f, (), (), (), ())

    def degree_of(self, which: int, s: int, t: int) -> int:
        if which == 0:
            return self.m1[t] - self.m0[s]
        return self.m0[t] + 2 - self.m1[s]


@dataclass(frozen=True)
class MFMorphism:
    """mu0: F0 -> G0 and mu1: F1 -> G1 (target rows, source columns)."""
    source: MatrixFactorization
    target: MatrixFactorization
    mu0: Matrix
    mu1: Matrix

    def __post_init__(self):
        expected = (self.target.r, self.source.r)
        for name, matrix in (("mu0", self.mu0), ("mu1", self.mu1)):
            if len(matrix) != expected[0] or any(len(row) != expected[1] for row in matrix):
                raise ShapeMismatch(f"{name} must be {expected[0]}x{expected[1]}")
        if self.source.ctx != self.target.ctx or self.source.f != self.target.f:
            raise ContextMismatch("morphism between factorizations of different quadrics")


@dataclass
class VerificationReport:
    homogeneity: List[str] = field(default_factory=list)
    residuals: List[Tuple[str, int, int, SkewPoly]] = field(default_factory=list)
    f_issues: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.homogeneity or self.residuals or self.f_issues)

    def lines(self) -> List[str]:
        out = list(self.f_issues) + list(self.homogeneity)
        for product, s, t, residual in self.residuals:
            out.append(f"{product} - fE at ({s + 1},{t + 1}): {residual}")
        return out

    def to_dict(self) -> dict:
        return {
            "valid": self.ok,
            "f_issues": self.f_issues,
            "homogeneity": self.homogeneity,
            "residuals": [
                {
                    "product": product,
                    "row": s + 1,
                    "col": t + 1,
                    "residual": str(residual),
                    "terms": [{"coeff": format_coeff(c), "exps": list(e)} for e, c in residual.sorted_terms()],
                }
                for product, s, t, residual in self.residuals
            ],
        }


@dataclass(frozen=True)
class Reduction:
    """Result of splitting off trivial summands."""
    mf: MatrixFactorization
    split_count: int
    free_shifts: Tuple[int, ...] = ()


# ===== Verification =====

def verify(mf: MatrixFactorization) -> VerificationReport:
    """Homogeneity of every entry plus Phi0 Phi1 = Phi1 Phi0 = f E."""
    report = VerificationReport()
    if not mf.f.is_homogeneous(2) or not mf.f:
        report.f_issues.append("f is not a nonzero quadric")
    elif not is_central(mf.f):
        report.f_issues.append("f is not central")

    for which, matrix in ((0, mf.phi0), (1, mf.phi1)):
        for s, row in enumerate(matrix):
            for t, entry in enumerate(row):
                d = mf.degree_of(which, s, t)
                if entry and (d < 0 or not entry.is_homogeneous(d)):
                    report.homogeneity.append(
                        f"Phi{which}[{s + 1},{t + 1}] = {entry} is not homogeneous of degree {d}"
                    )

    target = scalar_matrix(mf.ctx, mf.r, mf.f)
    for label, product in (
        ("Phi0*Phi1", mat_mul(mf.ctx, mf.phi0, mf.phi1)),
        ("Phi1*Phi0", mat_mul(mf.ctx, mf.phi1, mf.phi0)),
    ):
        for s in range(mf.r):
            for t in range(mf.r):
                residual = product[s][t] - target[s][t]
                if residual:
                    report.residuals.append((label, s, t, residual))
    return report


def verify_morphism(mu: MFMorphism) -> List[str]:
    """Degree compatibility and mu0 Phi0 = Psi0 mu1, mu1 Phi1 = Psi1 mu0."""
    src, tgt = mu.source, mu.target
    issues = []
    for name, matrix, a, b in (("mu0", mu.mu0, src.m0, tgt.m0), ("mu1", mu.mu1, src.m1, tgt.m1)):
        for s, row in enumerate(matrix):
            for t, entry in enumerate(row):
                d = a[t] - b[s]
                if entry and (d < 0 or not entry.is_homogeneous(d)):
                    issues.append(f"{name}[{s + 1},{t + 1}] = {entry} is not homogeneous of degree {d}")
    ctx = src.ctx
    for label, left, right in (
        ("mu0*Phi0 = Psi0*mu1", mat_mul(ctx, mu.mu0, src.phi0), mat_mul(ctx, tgt.phi0, mu.mu1)),
        ("mu1*Phi1 = Psi1*mu0", mat_mul(ctx, mu.mu1, src.phi1), mat_mul(ctx, tgt.phi1, mu.mu0)),
    ):
        for s, row in enumerate(left):
            for t, entry in enumerate(row):
                residual = entry - right[s][t]
                if residual:
                    issues.append(f"{label} fails at ({s + 1},{t + 1}): {residual}")
    return issues


# ===== Constructions =====

def trivial(ctx: SignSystem, f: SkewPoly, shifts: Sequence[int], variant: str = "phi_F") -> MatrixFactorization:
    """
    Trivial factorizations: phi_F = (E, fE) with m1 = m0, and F_phi = (fE, E) with m1 = m0 + 2.
    """
    r = len(shifts)
    m0 = tuple(int(m) for m in shifts)
    if variant == "phi_F":
        return MatrixFactorization(ctx, f, m0, m0, identity_matrix(ctx, r), scalar_matrix(ctx, r, f))
    if variant == "F_phi":
        m1 = tuple(m + 2 for m in m0)
        return MatrixFactorization(ctx, f, m0, m1, scalar_matrix(ctx, r, f), identity_matrix(ctx, r))
    raise ValueError(f"unknown trivial variant {variant!r}")


def direct_sum(a: MatrixFactorization, b: MatrixFactorization) -> MatrixFactorization:
    if a.ctx != b.ctx or a.f != b.f:
        raise ContextMismatch("direct sum of factorizations of different quadrics")
    ctx = a.ctx
    return MatrixFactorization(
        ctx,
        a.f,
        a.m0 + b.m0,
        a.m1 + b.m1,
        block_matrix(a.phi0, zero_matrix(ctx, a.r, b.r), zero_matrix(ctx, b.r, a.r), b.phi0),
        block_matrix(a.phi1, zero_matrix(ctx, a.r, b.r), zero_matrix(ctx, b.r, a.r), b.phi1),
    )


def shift(mf: MatrixFactorization, k: int) -> MatrixFactorization:
    """Add k to every shift; the matrices are unchanged."""
    return MatrixFactorization(
        mf.ctx, mf.f,
        tuple(m + k for m in mf.m0), tuple(m + k for m in mf.m1),
        mf.phi0, mf.phi1,
    )


def substitute_mf(mf: MatrixFactorization, sub: LinearSubstitution) -> MatrixFactorization:
    """Apply an algebra map entrywise (and to f)."""
    if sub.source != mf.ctx:
        raise ContextMismatch("substitution source differs from the factorization's sign system")
    sub.check()

    def apply(p: SkewPoly) -> SkewPoly:
        return substitute(p, sub)

    return MatrixFactorization(
        sub.target, apply(mf.f), mf.m0, mf.m1, mat_map(mf.phi0, apply), mat_map(mf.phi1, apply)
    )


def is_reduced(mf: MatrixFactorization) -> bool:
    """Every entry lies in S_{>=1}."""
    for matrix in (mf.phi0, mf.phi1):
        for row in matrix:
            for entry in row:
                value = entry.scalar_value()
                if value is not None and value:
                    return False
    return True


def _find_scalar(matrix: List[List[SkewPoly]]) -> Optional[Tuple[int, int]]:
    """Leftmost, then uppermost, nonzero scalar entry."""
    rows = len(matrix)
    cols = len(matrix[0]) if matrix else 0
    for t in range(cols):
        for s in range(rows):
            value = matrix[s][t].scalar_value()
            if value is not None and value:
                return s, t
    return None


def _split_unit(first: List[List[SkewPoly]], second: List[List[SkewPoly]], s: int, t: int):
    """
    Clear row s and column t of ``first`` around the unit first[s][t].

    Row operations act as P*first with second*P^-1, column operations as
    first*Q with Q^-1*second; both keep first*second = second*first = fE.
    Returns the two matrices with row s / column t of ``first`` and
    row t / column s of ``second`` deleted.
    """
    c = first[s][t].scalar_value()
    c_inv = ONE / c
    size = len(first)

    for s2 in range(size):
        a = first[s2][t]
        if s2 == s or not a:
            continue
        factor = a.scale(c_inv)
        for k in range(size):
            if first[s][k]:
                first[s2][k] = first[s2][k] - mul(factor, first[s][k])
        for k in range(size):
            if second[k][s2]:
                second[k][s] = second[k][s] + mul(second[k][s2], factor)

    for t2 in range(size):
        b = first[s][t2]
        if t2 == t or not b:
            continue
        factor = b.scale(c_inv)
        for k in range(size):
            if first[k][t]:
                first[k][t2] = first[k][t2] - mul(first[k][t], factor)
        for k in range(size):
            if second[t2][k]:
                second[t][k] = second[t][k] + mul(factor, second[t2][k])

    new_first = [[first[i][j] for j in range(size) if j != t] for i in range(size) if i != s]
    new_second = [[second[i][j] for j in range(size) if j != s] for i in range(size) if i != t]
    return new_first, new_second


def reduce(mf: MatrixFactorization) -> Reduction:
    """
    Split off trivial rank-1 summands until every entry has positive degree.

    A unit in Phi0 splits a phi_F summand (zero cokernel); a unit in Phi1 splits
    an F_phi summand, whose cokernel is the free module A(-m0) recorded in
    ``free_shifts``.
    """
    phi0, phi1 = _thaw(mf.phi0), _thaw(mf.phi1)
    m0, m1 = list(mf.m0), list(mf.m1)
    splits = 0
    free_shifts: List[int] = []
    while True:
        hit = _find_scalar(phi0)
        if hit is not None:
            s, t = hit
            phi0, phi1 = _split_unit(phi0, phi1, s, t)
            del m0[s]
            del m1[t]
            splits += 1
            LOGGER.debug("split phi_F summand at Phi0[%d,%d]", s + 1, t + 1)
            continue
        hit = _find_scalar(phi1)
        if hit is not None:
            s, t = hit
            phi1, phi0 = _split_unit(phi1, phi0, s, t)
            free_shifts.append(m0[t])
            del m1[s]
            del m0[t]
            splits += 1
            LOGGER.debug("split F_phi summand at Phi1[%d,%d]", s + 1, t + 1)
            continue
        break
    reduced = MatrixFactorization.build(mf.ctx, mf.f, m0, m1, phi0, phi1)
    return Reduction(reduced, splits, tuple(free_shifts))


# ===== Morphisms and cones =====

def identity_morphism(mf: MatrixFactorization) -> MFMorphism:
    eye = identity_matrix(mf.ctx, mf.r)
    return MFMorphism(mf, mf, eye, eye)


def zero_morphism(source: MatrixFactorization, target: MatrixFactorization) -> MFMorphism:
    zero = zero_matrix(source.ctx, target.r, source.r)
    return MFMorphism(source, target, zero, zero)


def scalar_morphism(mf: MatrixFactorization, p: SkewPoly) -> MFMorphism:
    """Multiplication by a central homogeneous p, landing in mf shifted by -deg p."""
    if not p.is_homogeneous() or not is_central(p):
        raise NotCentral(f"{p} is not a central homogeneous element")
    k = p.degree() or 0
    matrix = scalar_matrix(mf.ctx, mf.r, p)
    return MFMorphism(mf, shift(mf, -k), matrix, matrix)


def compose(second: MFMorphism, first: MFMorphism) -> MFMorphism:
    """second after first."""
    if first.target != second.source:
        raise ContextMismatch("morphisms do not compose")
    ctx = first.source.ctx
    return MFMorphism(
        first.source,
        second.target,
        mat_mul(ctx, second.mu0, first.mu0),
        mat_mul(ctx, second.mu1, first.mu1),
    )


def cone(mu: MFMorphism) -> MatrixFactorization:
    """
    Mapping cone of mu: phi -> psi.

    e0 = [[Psi1, mu1], [0, Phi0]], e1 = [[Psi0, -mu0], [0, Phi1]]
    with m0 = b1 ++ a0 and m1 = (b0 + 2) ++ a1.
    """
    issues = verify_morphism(mu)
    if issues:
        raise MorphismViolation(issues[0])
    phi, psi = mu.source, mu.target
    ctx = phi.ctx
    lower_left = zero_matrix(ctx, phi.r, psi.r)
    e0 = block_matrix(psi.phi1, mu.mu1, lower_left, phi.phi0)
    e1 = block_matrix(psi.phi0, mat_map(mu.mu0, lambda p: -p), lower_left, phi.phi1)
    m0 = psi.m1 + phi.m0
    m1 = tuple(b + 2 for b in psi.m0) + phi.m1
    return MatrixFactorization(ctx, phi.f, m0, m1, e0, e1)


# ===== Knörrer doubling =====

def knorrer_context(ctx: SignSystem, u_signs: Sequence[int]) -> SignSystem:
    """Adjoin u then v with identical sign rows and u*v = v*u."""
    names = list(ctx.variable_names())
    with_u = adjoin_variable(SignSystem.from_matrix(ctx.eps, names), u_signs, name="u")
    return adjoin_variable(with_u, list(u_signs) + [1], name="v")


def _sigma(big: SignSystem, u_signs: Sequence[int]) -> LinearSubstitution:
    return theta_sign(big, [i + 1 for i, s in enumerate(u_signs) if s == -1])


def knorrer_extend(mf: MatrixFactorization, u_signs: Sequence[int]) -> MatrixFactorization:
    """
    Factorization of f + uv over S[u; sigma][v; sigma] with sigma = diag(u_signs).

    Phi0' = [[sigma(Phi0), uE], [vE, -Phi1]], Phi1' = [[sigma(Phi1), uE], [vE, -Phi0]],
    m0' = m0 ++ (m1 - 1), m1' = m1 ++ (m0 + 1).
    """
    if len(u_signs) != mf.ctx.n:
        raise ShapeMismatch(f"expected {mf.ctx.n} signs, got {len(u_signs)}")
    big = knorrer_context(mf.ctx, u_signs)
    sigma = _sigma(big, u_signs)
    f_big = embed(mf.f, big)
    if substitute(f_big, sigma) != f_big:
        raise NotCentral("sigma does not fix f")

    def lift(p: SkewPoly) -> SkewPoly:
        return embed(p, big)

    def twist(p: SkewPoly) -> SkewPoly:
        return substitute(embed(p, big), sigma)

    r = mf.r
    u = SkewPoly.var(big, big.n - 1)
    v = SkewPoly.var(big, big.n)
    u_eye, v_eye = scalar_matrix(big, r, u), scalar_matrix(big, r, v)
    phi0 = block_matrix(mat_map(mf.phi0, twist), u_eye, v_eye, mat_map(mf.phi1, lambda p: -lift(p)))
    phi1 = block_matrix(mat_map(mf.phi1, twist), u_eye, v_eye, mat_map(mf.phi0, lambda p: -lift(p)))
    m0 = mf.m0 + tuple(m - 1 for m in mf.m1)
    m1 = mf.m1 + tuple(m + 1 for m in mf.m0)
    return MatrixFactorization(big, f_big + mul(u, v), m0, m1, phi0, phi1)


def knorrer_extend_morphism(mu: MFMorphism, u_signs: Sequence[int]) -> MFMorphism:
    """The doubling on morphisms: diag(sigma(mu0), mu1) and diag(sigma(mu1), mu0)."""
    source = knorrer_extend(mu.source, u_signs)
    target = knorrer_extend(mu.target, u_signs)
    big = source.ctx
    sigma = _sigma(big, u_signs)

    def lift(p: SkewPoly) -> SkewPoly:
        return embed(p, big)

    def twist(p: SkewPoly) -> SkewPoly:
        return substitute(embed(p, big), sigma)

    rs, rt = mu.source.r, mu.target.r
    upper_right = zero_matrix(big, rt, rs)
    mu0 = block_matrix(mat_map(mu.mu0, twist), upper_right, upper_right, mat_map(mu.mu1, lift))
    mu1 = block_matrix(mat_map(mu.mu1, twist), upper_right, upper_right, mat_map(mu.mu0, lift))
    return MFMorphism(source, target, mu0, mu1)


# ===== Cokernels =====

def _dim_A(n: int, d: int, series: np.ndarray) -> int:
    if d < 0:
        return 0
    if d >= len(series):
        series = hilbert_A(n, d)
    return int(series[d])


def coker_hilbert(mf: MatrixFactorization, D: int) -> List[int]:
    """
    dim (Coker Phi0)_d for d = 0..D from H_A * (P0 - P1) / (1 - t^2),
    P_i = sum of t^(m_i[s]).
    """
    if not is_reduced(mf):
        raise NotReduced("coker_hilbert needs a reduced factorization")
    n = mf.ctx.n
    series = hilbert_A(n, max(D, 0))
    lowest = min(mf.m0 + mf.m1, default=0)
    coefficients = []
    for d in range(D + 1):
        total = 0
        for k in range((d - lowest) // 2 + 1 if d >= lowest else 0):
            deg = d - 2 * k
            total += sum(_dim_A(n, deg - m, series) for m in mf.m0)
            total -= sum(_dim_A(n, deg - m, series) for m in mf.m1)
        coefficients.append(total)
    return coefficients


def free_module_dims(n: int, shifts: Sequence[int], D: int) -> List[int]:
    """dim of ⊕ A(-m) in degrees 0..D."""
    series = hilbert_A(n, max(D, 0))
    return [sum(_dim_A(n, d - m, series) for m in shifts) for d in range(D + 1)]


def coker_dims_oracle(mf: MatrixFactorization, D: int) -> List[int]:
    """
    dim (Coker Phi0 over A)_d by explicit linear algebra over the normal
    monomial bases of A = S/(f), for d = 0..D.
    """
    ctx = mf.ctx
    lead = leading_square(mf.f)
    dims = []
    for d in range(D + 1):
        row_index: Dict[Tuple[int, Tuple[int, ...]], int] = {}
        for s, m in enumerate(mf.m0):
            for mono in quotient_basis(ctx, d - m, lead):
                row_index[(s, mono)] = len(row_index)
        columns = []
        for t, m in enumerate(mf.m1):
            for mono in quotient_basis(ctx, d - m, lead):
                basis_elem = SkewPoly(ctx, {mono: 1})
                column: Dict[int, object] = {}
                for s in range(mf.r):
                    entry = mf.phi0[s][t]
                    if not entry:
                        continue
                    image = reduce_mod_f(mul(entry, basis_elem), mf.f)
                    for exps, c in image.terms.items():
                        column[row_index[(s, exps)]] = c
                columns.append(column)
        n_rows = len(row_index)
        if n_rows == 0:
            dims.append(0)
            continue
        sparse: Dict[int, Dict[int, object]] = {}
        for j, column in enumerate(columns):
            for i, c in column.items():
                sparse.setdefault(i, {})[j] = c
        rank = 0
        if columns and sparse:
            rank = DomainMatrix(sparse, (n_rows, len(columns)), QQ_I).rank()
        dims.append(n_rows - rank)
    return dims
