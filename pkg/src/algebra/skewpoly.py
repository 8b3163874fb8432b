# src/algebra/skewpoly.py
"""
Exact arithmetic in (±1)-skew polynomial algebras

S_eps = k<x1..xn> / (xi*xj - eps_ij * xj*xi) over the Gaussian rationals.
Coefficients are elements of sympy's QQ_I domain; never compare them to an
int with ``==`` (use ``not c`` for zero tests).
"""
from __future__ import annotations

import itertools
import logging
import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import sympy
from sympy.polys.domains import QQ, QQ_I

from src.utils.errors import (
    ContextMismatch,
    IndexOutOfRange,
    MalformedInput,
    RelationViolation,
    ShapeMismatch,
)

LOGGER = logging.getLogger(__name__)

Monomial = Tuple[int, ...]

ZERO = QQ_I.zero
ONE = QQ_I.one
SQRT_MINUS_ONE = QQ_I(0, 1)


def coeff(value) -> "QQ_I.dtype":
    """Convert an int, a QQ element or a Gaussian rational into QQ_I."""
    if isinstance(value, str):
        return parse_coeff(value)
    if QQ_I.of_type(value):
        return value
    if isinstance(value, sympy.Basic):
        return QQ_I.from_sympy(value)
    return QQ_I(value)


# ===== Coefficient text form =====

_RATIONAL = r"\d+(?:/\d+)?"
_PURE_IMAG = re.compile(rf"^(?P<im>[+-]?(?:{_RATIONAL}\*?)?)i$")
_GENERAL = re.compile(rf"^(?P<re>[+-]?{_RATIONAL})(?:(?P<im>[+-](?:{_RATIONAL}\*?)?)i)?$")


def _parse_rational(text: str):
    text = text.rstrip("*")
    if text in ("", "+"):
        return QQ.one
    if text == "-":
        return -QQ.one
    return QQ.from_sympy(sympy.Rational(text))


def parse_coeff(text: str):
    """
    Parse "a/b+c/d*i" style coefficients.

    Grammar: optional sign, rational, optional "±rational*i"; "i" alone is 1*i.
    """
    compact = str(text).replace(" ", "")
    match = _PURE_IMAG.match(compact)
    if match:
        return QQ_I(QQ.zero, _parse_rational(match.group("im")))
    match = _GENERAL.match(compact)
    if not match:
        raise MalformedInput(f"Invalid coefficient: {text!r}")
    real = _parse_rational(match.group("re"))
    imag = _parse_rational(match.group("im")) if match.group("im") is not None else QQ.zero
    return QQ_I(real, imag)


def _rational_str(q) -> str:
    return str(QQ.to_sympy(q))


def format_coeff(c) -> str:
    c = coeff(c)
    re_part, im_part = c.x, c.y
    if not im_part:
        return _rational_str(re_part)
    if im_part == 1:
        imag = "i"
    elif im_part == -1:
        imag = "-i"
    else:
        imag = f"{_rational_str(im_part)}*i"
    if not re_part:
        return imag
    sign = "" if imag.startswith("-") else "+"
    return f"{_rational_str(re_part)}{sign}{imag}"


# ===== Sign systems =====

@dataclass(frozen=True)
class SignSystem:
    """Symmetric ±1 matrix eps with unit diagonal; vertex i is variable x_{i+1}."""
    n: int
    eps: Tuple[Tuple[int, ...], ...]
    names: Optional[Tuple[str, ...]] = field(default=None, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ShapeMismatch(f"SignSystem needs n >= 1, got {self.n}")
        if len(self.eps) != self.n or any(len(row) != self.n for row in self.eps):
            raise ShapeMismatch(f"eps must be {self.n}x{self.n}")
        for i in range(self.n):
            if self.eps[i][i] != 1:
                raise MalformedInput("eps diagonal is fixed to +1")
            for j in range(i + 1, self.n):
                if self.eps[i][j] not in (1, -1):
                    raise MalformedInput(f"eps[{i + 1}][{j + 1}] must be +1 or -1")
                if self.eps[i][j] != self.eps[j][i]:
                    raise MalformedInput(f"eps is not symmetric at ({i + 1},{j + 1})")
        if self.names is not None and len(self.names) != self.n:
            raise ShapeMismatch("one name per variable is required")

    @classmethod
    def from_matrix(cls, rows: Sequence[Sequence[int]], names: Optional[Sequence[str]] = None) -> "SignSystem":
        """Build from a square matrix; the diagonal is ignored and set to +1."""
        n = len(rows)
        eps = tuple(
            tuple(1 if i == j else int(rows[i][j]) for j in range(n))
            for i in range(n)
        )
        return cls(n, eps, tuple(names) if names is not None else None)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]], names: Optional[Sequence[str]] = None) -> "SignSystem":
        """eps_ij = +1 exactly on the (1-based) edges."""
        rows = [[-1] * n for _ in range(n)]
        for i, j in edges:
            if not (1 <= i <= n and 1 <= j <= n) or i == j:
                raise IndexOutOfRange(f"edge ({i},{j}) invalid for n={n}")
            rows[i - 1][j - 1] = rows[j - 1][i - 1] = 1
        return cls.from_matrix(rows, names)

    @classmethod
    def constant(cls, n: int, value: int, names: Optional[Sequence[str]] = None) -> "SignSystem":
        return cls.from_matrix([[value] * n for _ in range(n)], names)

    def sign(self, i: int, j: int) -> int:
        """eps for 1-based indices."""
        self.check_index(i)
        self.check_index(j)
        return self.eps[i - 1][j - 1]

    def check_index(self, i: int) -> None:
        if not 1 <= i <= self.n:
            raise IndexOutOfRange(f"variable index {i} outside 1..{self.n}")

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (i + 1, j + 1)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.eps[i][j] == 1
        ]

    def variable_names(self) -> Tuple[str, ...]:
        if self.names is not None:
            return self.names
        return tuple(f"x{i + 1}" for i in range(self.n))

    def restrict(self, m: int) -> "SignSystem":
        """Sub-system on the first m variables."""
        names = self.names[:m] if self.names is not None else None
        return SignSystem(m, tuple(row[:m] for row in self.eps[:m]), names)

    @cached_property
    def lower_negatives(self) -> Tuple[Tuple[int, ...], ...]:
        # for each i, the j < i with eps_ij = -1
        return tuple(
            tuple(j for j in range(i) if self.eps[i][j] == -1)
            for i in range(self.n)
        )


def adjoin_variable(ctx: SignSystem, signs: Sequence[int], name: Optional[str] = None) -> SignSystem:
    """
    Ore extension S[u; sigma] with sigma = diag(signs): u*x_i = signs[i] * x_i*u.

    Args:
        ctx: base sign system
        signs: one ±1 per existing variable
        name: display name of the new variable

    Returns:
        The (n+1)-variable sign system
    """
    if len(signs) != ctx.n:
        raise ShapeMismatch(f"expected {ctx.n} signs, got {len(signs)}")
    if any(s not in (1, -1) for s in signs):
        raise MalformedInput("signs must be +1 or -1")
    rows = [list(row) + [int(signs[i])] for i, row in enumerate(ctx.eps)]
    rows.append([int(s) for s in signs] + [1])
    names = None
    if ctx.names is not None or name is not None:
        names = list(ctx.variable_names()) + [name or f"x{ctx.n + 1}"]
    return SignSystem.from_matrix(rows, names)


# ===== Monomials =====

def monomial_sign(ctx: SignSystem, a: Monomial, b: Monomial) -> int:
    """x^a * x^b = sign * x^(a+b); one eps_ij per swap of x_j (from b) past x_i (from a), i > j."""
    parity = 0
    lower = ctx.lower_negatives
    for i, ai in enumerate(a):
        if ai & 1:
            for j in lower[i]:
                parity ^= b[j] & 1
    return -1 if parity else 1


def normalize_word(ctx: SignSystem, word: Sequence[int]) -> Tuple[int, Monomial]:
    """
    Sort a word of 1-based variable indices into normal form x1^e1...xn^en.

    Stable adjacent swaps; each swap of x_i past x_j contributes eps_ij.
    """
    letters = list(word)
    for i in letters:
        ctx.check_index(i)
    sign = 1
    for end in range(len(letters) - 1, 0, -1):
        for pos in range(end):
            left, right = letters[pos], letters[pos + 1]
            if left > right:
                letters[pos], letters[pos + 1] = right, left
                sign *= ctx.eps[left - 1][right - 1]
    exps = [0] * ctx.n
    for i in letters:
        exps[i - 1] += 1
    return sign, tuple(exps)


def unit_monomial(n: int, i: int, power: int = 1) -> Monomial:
    exps = [0] * n
    exps[i] = power
    return tuple(exps)


@lru_cache(maxsize=None)
def monomials(n: int, d: int) -> Tuple[Monomial, ...]:
    """All degree-d exponent vectors in n variables, deterministic order."""
    result = []
    for combo in itertools.combinations_with_replacement(range(n), d):
        exps = [0] * n
        for i in combo:
            exps[i] += 1
        result.append(tuple(exps))
    return tuple(result)


# ===== Polynomials =====

class SkewPoly:
    """Element of S_eps as a map Monomial -> nonzero Gaussian rational."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: SignSystem, terms: Optional[Mapping[Monomial, object]] = None):
        self.ctx = ctx
        clean: Dict[Monomial, object] = {}
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != ctx.n or any(e < 0 for e in exps):
                raise ShapeMismatch(f"exponent vector {exps} does not fit n={ctx.n}")
            c = coeff(c)
            if c:
                clean[exps] = c
        self.terms = clean

    # ----- constructors -----
    @classmethod
    def zero(cls, ctx: SignSystem) -> "SkewPoly":
        return cls(ctx)

    @classmethod
    def constant(cls, ctx: SignSystem, c=1) -> "SkewPoly":
        return cls(ctx, {(0,) * ctx.n: c})

    @classmethod
    def one(cls, ctx: SignSystem) -> "SkewPoly":
        return cls.constant(ctx, 1)

    @classmethod
    def var(cls, ctx: SignSystem, i: int, c=1) -> "SkewPoly":
        """c * x_i for a 1-based index."""
        ctx.check_index(i)
        return cls(ctx, {unit_monomial(ctx.n, i - 1): c})

    @classmethod
    def linear(cls, ctx: SignSystem, coefficients: Sequence) -> "SkewPoly":
        if len(coefficients) != ctx.n:
            raise ShapeMismatch(f"expected {ctx.n} coefficients")
        return cls(ctx, {unit_monomial(ctx.n, i): c for i, c in enumerate(coefficients)})

    @classmethod
    def from_word(cls, ctx: SignSystem, word: Sequence[int], c=1) -> "SkewPoly":
        sign, exps = normalize_word(ctx, word)
        return cls(ctx, {exps: coeff(c) * sign})

    # ----- queries -----
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def degrees(self) -> set:
        return {sum(e) for e in self.terms}

    def is_homogeneous(self, d: Optional[int] = None) -> bool:
        """Zero is homogeneous of every degree."""
        degs = self.degrees()
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def degree(self) -> Optional[int]:
        degs = self.degrees()
        return max(degs) if degs else None

    def scalar_value(self):
        """Coefficient of 1 if the element is a constant, else None."""
        if not self.terms:
            return ZERO
        if set(self.terms) == {(0,) * self.ctx.n}:
            return self.terms[(0,) * self.ctx.n]
        return None

    def is_scalar(self) -> bool:
        return self.scalar_value() is not None

    def sorted_terms(self) -> List[Tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda item: (sum(item[0]), tuple(-e for e in item[0])))

    # ----- arithmetic -----
    def _check_ctx(self, other: "SkewPoly") -> None:
        if other.ctx != self.ctx:
            raise ContextMismatch("operands live in different sign systems")

    def __add__(self, other):
        if not isinstance(other, SkewPoly):
            other = SkewPoly.constant(self.ctx, other)
        self._check_ctx(other)
        terms = dict(self.terms)
        for exps, c in other.terms.items():
            terms[exps] = terms.get(exps, ZERO) + c
        return SkewPoly(self.ctx, terms)

    __radd__ = __add__

    def __neg__(self):
        return SkewPoly(self.ctx, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, SkewPoly):
            other = SkewPoly.constant(self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "SkewPoly":
        c = coeff(c)
        if not c:
            return SkewPoly(self.ctx)
        return SkewPoly(self.ctx, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, SkewPoly):
            return mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        # scalars are central
        return self.scale(other)

    def __pow__(self, k: int):
        result = SkewPoly.one(self.ctx)
        for _ in range(k):
            result = mul(result, self)
        return result

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self.ctx == other.ctx and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, frozenset(self.terms.items())))

    def __repr__(self):
        return f"SkewPoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.ctx.variable_names()
        parts = []
        for exps, c in self.sorted_terms():
            mono = "*".join(
                name if e == 1 else f"{name}^{e}"
                for name, e in zip(names, exps)
                if e
            )
            text = format_coeff(c)
            if not mono:
                parts.append(text)
            elif text == "1":
                parts.append(mono)
            elif text == "-1":
                parts.append(f"-{mono}")
            elif c.x and c.y:
                parts.append(f"({text})*{mono}")
            else:
                parts.append(f"{text}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def mul(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    """Product in S_eps; each monomial product is put in normal form with its sign."""
    p._check_ctx(q)
    ctx = p.ctx
    acc: Dict[Monomial, object] = {}
    for a, ca in p.terms.items():
        for b, cb in q.terms.items():
            exps = tuple(x + y for x, y in zip(a, b))
            c = ca * cb
            if monomial_sign(ctx, a, b) < 0:
                c = -c
            acc[exps] = acc.get(exps, ZERO) + c
    return SkewPoly(ctx, acc)


def commutator(p: SkewPoly, q: SkewPoly) -> SkewPoly:
    return mul(p, q) - mul(q, p)


def is_central(p: SkewPoly) -> bool:
    """x_i p = p x_i for every generator x_i."""
    for i in range(1, p.ctx.n + 1):
        x = SkewPoly.var(p.ctx, i)
        if commutator(x, p):
            return False
    return True


def f_eps(ctx: SignSystem) -> SkewPoly:
    """The quadric x1^2 + ... + xn^2."""
    return SkewPoly(ctx, {unit_monomial(ctx.n, i, 2): 1 for i in range(ctx.n)})


def embed(p: SkewPoly, ctx: SignSystem) -> SkewPoly:
    """View p inside a sign system that extends p.ctx by trailing variables."""
    if ctx.n < p.ctx.n or ctx.restrict(p.ctx.n) != p.ctx:
        raise ContextMismatch("target sign system does not extend the source")
    pad = (0,) * (ctx.n - p.ctx.n)
    return SkewPoly(ctx, {e + pad: c for e, c in p.terms.items()})


# ===== Substitutions =====

@dataclass(frozen=True)
class LinearSubstitution:
    """Algebra map x_i -> images[i]; images are linear forms over ``target``."""
    source: SignSystem
    target: SignSystem
    images: Tuple[SkewPoly, ...]

    def __post_init__(self):
        if len(self.images) != self.source.n:
            raise ShapeMismatch(f"expected {self.source.n} images, got {len(self.images)}")
        for img in self.images:
            if img.ctx != self.target:
                raise ContextMismatch("image lives outside the target sign system")
            if not img.is_homogeneous(1):
                raise MalformedInput(f"image {img} is not a linear form")

    @classmethod
    def from_matrix(cls, source: SignSystem, rows: Sequence[Sequence], target: Optional[SignSystem] = None) -> "LinearSubstitution":
        """rows[i] holds the coefficients of images[i]."""
        target = target or source
        images = tuple(SkewPoly.linear(target, row) for row in rows)
        return cls(source, target, images)

    @classmethod
    def identity(cls, ctx: SignSystem) -> "LinearSubstitution":
        return cls(ctx, ctx, tuple(SkewPoly.var(ctx, i) for i in range(1, ctx.n + 1)))

    def relation_defects(self) -> List[Tuple[int, int, SkewPoly]]:
        """(i, j, image of x_i x_j - eps_ij x_j x_i) for every failing pair i < j."""
        defects = []
        for i in range(self.source.n):
            for j in range(i + 1, self.source.n):
                a, b = self.images[i], self.images[j]
                residual = mul(a, b) - mul(b, a).scale(self.source.eps[i][j])
                if residual:
                    defects.append((i + 1, j + 1, residual))
        return defects

    @cached_property
    def respects_relations(self) -> bool:
        return not self.relation_defects()

    def check(self) -> None:
        defects = self.relation_defects()
        if defects:
            i, j, residual = defects[0]
            raise RelationViolation(
                f"substitution breaks the relation of (x{i}, x{j}): residual {residual}"
            )

    def compose(self, other: "LinearSubstitution") -> "LinearSubstitution":
        """self after other."""
        if other.target != self.source:
            raise ContextMismatch("substitutions do not compose")
        return LinearSubstitution(other.source, self.target, tuple(substitute(img, self) for img in other.images))


def substitute(p: SkewPoly, sub: LinearSubstitution) -> SkewPoly:
    """Image of p under the algebra map defined by ``sub``."""
    if p.ctx != sub.source:
        raise ContextMismatch("polynomial does not live in the substitution source")
    if not sub.respects_relations:
        sub.check()
    powers: Dict[Tuple[int, int], SkewPoly] = {}

    def power(i: int, e: int) -> SkewPoly:
        key = (i, e)
        if key not in powers:
            powers[key] = sub.images[i] ** e
        return powers[key]

    result = SkewPoly.zero(sub.target)
    for exps, c in p.terms.items():
        term = SkewPoly.constant(sub.target, c)
        for i, e in enumerate(exps):
            if e:
                term = mul(term, power(i, e))
        result = result + term
    return result


def theta_sign(ctx: SignSystem, indices: Iterable[int]) -> LinearSubstitution:
    """x_i -> -x_i for i in ``indices`` (1-based), identity elsewhere."""
    flip = set(indices)
    for i in flip:
        ctx.check_index(i)
    rows = [[0] * ctx.n for _ in range(ctx.n)]
    for i in range(ctx.n):
        rows[i][i] = -1 if (i + 1) in flip else 1
    return LinearSubstitution.from_matrix(ctx, rows)


def knorrer_rotation(ctx: SignSystem, u: int, v: int) -> LinearSubstitution:
    """u -> u + i*v, v -> u - i*v; turns f + uv into f + u^2 + v^2 when u, v commute."""
    ctx.check_index(u)
    ctx.check_index(v)
    if u == v:
        raise MalformedInput("u and v must be distinct variables")
    rows = [[0] * ctx.n for _ in range(ctx.n)]
    for i in range(ctx.n):
        rows[i][i] = 1
    rows[u - 1][v - 1] = SQRT_MINUS_ONE
    rows[v - 1][u - 1] = 1
    rows[v - 1][v - 1] = -SQRT_MINUS_ONE
    sub = LinearSubstitution.from_matrix(ctx, rows)
    sub.check()
    return sub


# ===== Quotient A = S / (f) =====

def leading_square(f: SkewPoly) -> int:
    """First variable (1-based) whose square has a nonzero coefficient in f."""
    for i in range(f.ctx.n):
        if f.terms.get(unit_monomial(f.ctx.n, i, 2)):
            return i + 1
    raise MalformedInput(f"{f} has no square term; S/(f) has no monomial normal form here")


def quotient_basis(ctx: SignSystem, d: int, lead: int = 1) -> Tuple[Monomial, ...]:
    """Normal monomials of A_d: exponent of x_lead at most 1 (leading term x_lead^2 of f)."""
    ctx.check_index(lead)
    if d < 0:
        return ()
    return tuple(m for m in monomials(ctx.n, d) if m[lead - 1] <= 1)


def reduce_mod_f(p: SkewPoly, f: Optional[SkewPoly] = None) -> SkewPoly:
    """
    Normal form of p in S/(f); f defaults to x1^2 + ... + xn^2.

    f must be a central quadric. With x_k the variable picked by
    ``leading_square`` and c its square's coefficient, x_k^2 is central, so
    x^a = x_k^2 * x^(a-2e_k) with sign +1, and x_k^2 is replaced by
    x_k^2 - f/c until every exponent of x_k is <= 1.
    """
    ctx = p.ctx
    f = f_eps(ctx) if f is None else f
    p._check_ctx(f)
    if not f.is_homogeneous(2):
        raise MalformedInput(f"reduction needs a quadric, got {f}")
    k = leading_square(f) - 1
    square = unit_monomial(ctx.n, k, 2)
    tail = (f - SkewPoly(ctx, {square: f.terms[square]})).scale(-(ONE / f.terms[square]))
    pending = dict(p.terms)
    done: Dict[Monomial, object] = {}
    while pending:
        exps, c = pending.popitem()
        if exps[k] < 2:
            done[exps] = done.get(exps, ZERO) + c
            continue
        base = list(exps)
        base[k] -= 2
        for key, t in mul(tail, SkewPoly(ctx, {tuple(base): c})).terms.items():
            pending[key] = pending.get(key, ZERO) + t
    return SkewPoly(ctx, done)
