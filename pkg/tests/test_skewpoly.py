import itertools

import numpy as np
import pytest
from sympy.polys.domains import QQ, QQ_I

from src.algebra.skewpoly import (
    SQRT_MINUS_ONE,
    LinearSubstitution,
    SignSystem,
    SkewPoly,
    adjoin_variable,
    embed,
    f_eps,
    format_coeff,
    is_central,
    knorrer_rotation,
    leading_square,
    monomials,
    mul,
    normalize_word,
    parse_coeff,
    quotient_basis,
    reduce_mod_f,
    substitute,
    theta_sign,
)
from src.graphs.quadgraph import QuadGraph
from src.utils.errors import ContextMismatch, IndexOutOfRange, MalformedInput, RelationViolation


def test_anticommuting_product(anticommuting3):
    x, y = SkewPoly.var(anticommuting3, 1), SkewPoly.var(anticommuting3, 2)
    assert mul(y, x) == -mul(x, y)
    assert mul(x, x) == SkewPoly(anticommuting3, {(2, 0, 0): 1})


def test_commuting_product():
    ctx = SignSystem.constant(2, 1)
    x, y = SkewPoly.var(ctx, 1), SkewPoly.var(ctx, 2)
    assert mul(y, x) == mul(x, y)


def test_normalize_word_sign(anticommuting3):
    assert normalize_word(anticommuting3, [2, 1]) == (-1, (1, 1, 0))
    assert normalize_word(anticommuting3, [3, 2, 1]) == (-1, (1, 1, 1))
    assert normalize_word(anticommuting3, [1, 1, 2]) == (1, (2, 1, 0))


def test_from_word_matches_products(anticommuting3):
    x = [SkewPoly.var(anticommuting3, i) for i in (1, 2, 3)]
    word = [3, 1, 2, 3]
    product = x[2] * x[0] * x[1] * x[2]
    assert SkewPoly.from_word(anticommuting3, word) == product


def test_associativity_on_mixed_signs():
    ctx = QuadGraph.from_edges(4, [(1, 2), (2, 4)]).to_sign_system()
    a = SkewPoly.linear(ctx, [1, 2, 0, -1])
    b = SkewPoly.linear(ctx, [0, 1, SQRT_MINUS_ONE, 3])
    c = SkewPoly.var(ctx, 3) * SkewPoly.var(ctx, 1)
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


def test_f_is_central_for_every_sign_system():
    for mask in range(1 << 6):
        ctx = QuadGraph(4, mask).to_sign_system()
        assert is_central(f_eps(ctx))


def test_generators_are_not_central_in_anticommuting_ring(anticommuting3):
    x = SkewPoly.var(anticommuting3, 1)
    assert not is_central(x)
    assert is_central(x * x)


def test_monomial_counts():
    assert [len(monomials(3, d)) for d in range(5)] == [1, 3, 6, 10, 15]


def test_var_out_of_range(anticommuting3):
    with pytest.raises(IndexOutOfRange):
        SkewPoly.var(anticommuting3, 4)


def test_sign_system_validation():
    with pytest.raises(MalformedInput):
        SignSystem.from_matrix([[1, 1], [-1, 1]])
    with pytest.raises(MalformedInput):
        SignSystem.from_matrix([[1, 2], [2, 1]])


def test_mixing_contexts_is_rejected(anticommuting3):
    other = SignSystem.constant(3, 1)
    with pytest.raises(ContextMismatch):
        SkewPoly.var(anticommuting3, 1) + SkewPoly.var(other, 1)


@pytest.mark.parametrize("text, expected", [
    ("3", QQ_I(3, 0)),
    ("-1/2", QQ_I(QQ(-1, 2), 0)),
    ("i", QQ_I(0, 1)),
    ("-i", QQ_I(0, -1)),
    ("1/2-3*i", QQ_I(QQ(1, 2), QQ(-3))),
    ("2+i", QQ_I(2, 1)),
])
def test_parse_coeff(text, expected):
    assert parse_coeff(text) == expected


def test_format_coeff():
    assert format_coeff(SQRT_MINUS_ONE) == "i"
    assert format_coeff(QQ_I(QQ(1, 2), QQ(-3))) == "1/2-3*i"
    assert format_coeff(QQ_I(-2, 0)) == "-2"


def test_parse_coeff_rejects_garbage():
    with pytest.raises(MalformedInput):
        parse_coeff("x")


def test_adjoin_variable_signs(anticommuting3):
    big = adjoin_variable(anticommuting3, [1, -1, 1], name="u")
    assert big.n == 4
    assert big.sign(4, 1) == 1 and big.sign(4, 2) == -1
    assert big.variable_names()[-1] == "u"


def test_embed_requires_extension(anticommuting3):
    big = adjoin_variable(anticommuting3, [1, 1, 1])
    x = SkewPoly.var(anticommuting3, 2)
    assert embed(x, big) == SkewPoly.var(big, 2)
    with pytest.raises(ContextMismatch):
        embed(x, SignSystem.constant(4, 1))


def test_theta_sign_is_an_automorphism():
    ctx = QuadGraph.from_edges(3, [(1, 2)]).to_sign_system()
    theta = theta_sign(ctx, [2])
    assert theta.respects_relations
    assert substitute(f_eps(ctx), theta) == f_eps(ctx)
    assert substitute(SkewPoly.var(ctx, 2), theta) == -SkewPoly.var(ctx, 2)


def test_knorrer_rotation_turns_uv_into_squares():
    ctx = SignSystem.constant(2, 1, names=("u", "v"))
    u, v = SkewPoly.var(ctx, 1), SkewPoly.var(ctx, 2)
    rotation = knorrer_rotation(ctx, 1, 2)
    assert substitute(u * v, rotation) == u * u + v * v


def test_relation_violation_reported(anticommuting3):
    # x1 -> x1 + x2 together with x2 -> x2 breaks x1 x2 = -x2 x1
    sub = LinearSubstitution.from_matrix(anticommuting3, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    assert not sub.respects_relations
    with pytest.raises(RelationViolation):
        sub.check()


def test_substitution_compose_identity(anticommuting3):
    theta = theta_sign(anticommuting3, [1, 3])
    identity = LinearSubstitution.identity(anticommuting3)
    assert theta.compose(identity).images == theta.images
    double = theta.compose(theta)
    assert double.images == identity.images


def test_quotient_basis_dimensions(anticommuting3):
    assert [len(quotient_basis(anticommuting3, d)) for d in range(5)] == [1, 3, 5, 7, 9]


def test_reduce_mod_f_kills_f():
    for mask in range(1 << 3):
        ctx = QuadGraph(3, mask).to_sign_system()
        f = f_eps(ctx)
        assert reduce_mod_f(f).is_zero()
        for i in range(1, 4):
            x = SkewPoly.var(ctx, i)
            assert reduce_mod_f(mul(f, x)).is_zero()
            assert reduce_mod_f(mul(x, f)).is_zero()


def test_reduce_mod_f_normal_form(anticommuting3):
    x1 = SkewPoly.var(anticommuting3, 1)
    x2 = SkewPoly.var(anticommuting3, 2)
    x3 = SkewPoly.var(anticommuting3, 3)
    assert reduce_mod_f(x1 * x1) == -(x2 * x2) - x3 * x3
    for exps in reduce_mod_f(x1 * x1 * x1 * x2).terms:
        assert exps[0] <= 1


def test_homogeneity_and_degree(anticommuting3):
    p = SkewPoly.linear(anticommuting3, [1, 0, 2])
    assert p.is_homogeneous(1)
    assert not (p + 1).is_homogeneous()
    assert SkewPoly.zero(anticommuting3).is_homogeneous(7)
    assert (p * p).degree() == 2


def test_all_sign_patterns_multiply_consistently():
    for eps_row in itertools.product((1, -1), repeat=3):
        ctx = QuadGraph.from_edges(3, [e for e, s in zip([(1, 2), (1, 3), (2, 3)], eps_row) if s == 1]).to_sign_system()
        for i, j in itertools.permutations((1, 2, 3), 2):
            xi, xj = SkewPoly.var(ctx, i), SkewPoly.var(ctx, j)
            assert mul(xi, xj) == mul(xj, xi).scale(ctx.sign(i, j))


# ===== quotients by other quadrics =====

def test_reduce_mod_doubled_quadric():
    ctx = adjoin_variable(adjoin_variable(SignSystem.constant(3, 1), [1, 1, 1]), [1, 1, 1, 1])
    x = [SkewPoly.var(ctx, i) for i in range(1, 6)]
    f = x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[4]
    assert reduce_mod_f(f, f).is_zero()
    for xi in x:
        assert reduce_mod_f(mul(f, xi), f).is_zero()
    assert not reduce_mod_f(f).is_zero()
    assert reduce_mod_f(x[0] * x[0], f) == -(x[1] * x[1]) - x[2] * x[2] - x[3] * x[4]


def test_leading_square_picks_first_square():
    ctx = SignSystem.constant(3, -1)
    x1, x2, x3 = (SkewPoly.var(ctx, i) for i in (1, 2, 3))
    f = x2 * x2 + x1 * x3 + x3 * x3
    assert leading_square(f) == 2
    assert all(m[1] <= 1 for m in quotient_basis(ctx, 4, lead=2))
    for exps in reduce_mod_f(x2 * x2 * x2 * x1, f).terms:
        assert exps[1] <= 1
    with pytest.raises(MalformedInput):
        leading_square(x1 * x3)


# ===== randomised algebraic properties =====

def _random_sign_system(rng, n):
    return QuadGraph(n, int(rng.integers(0, 1 << (n * (n - 1) // 2)))).to_sign_system()


def _random_poly(rng, ctx, max_degree=2, terms=4):
    data = {}
    for _ in range(terms):
        pool = monomials(ctx.n, int(rng.integers(0, max_degree + 1)))
        data[pool[int(rng.integers(len(pool)))]] = int(rng.integers(-3, 4))
    return SkewPoly(ctx, data)


def test_ring_axioms_on_random_triples(seed):
    rng = np.random.default_rng(seed)
    for _ in range(1000):
        ctx = _random_sign_system(rng, int(rng.integers(1, 5)))
        a, b, c = (_random_poly(rng, ctx) for _ in range(3))
        assert mul(mul(a, b), c) == mul(a, mul(b, c))
        assert mul(a, b + c) == mul(a, b) + mul(a, c)
        assert mul(a + b, c) == mul(a, c) + mul(b, c)


def _inversion_sign(ctx, word):
    sign = 1
    for p, q in itertools.combinations(range(len(word)), 2):
        if word[p] > word[q]:
            sign *= ctx.sign(word[p], word[q])
    return sign


def test_normalize_word_matches_inversion_count(seed):
    rng = np.random.default_rng(seed)
    for _ in range(300):
        ctx = _random_sign_system(rng, int(rng.integers(1, 6)))
        word = [int(i) for i in rng.integers(1, ctx.n + 1, size=int(rng.integers(0, 7)))]
        sign, exps = normalize_word(ctx, word)
        assert sign == _inversion_sign(ctx, word)
        assert sum(exps) == len(word)
        product = SkewPoly.one(ctx)
        for i in word:
            product = mul(product, SkewPoly.var(ctx, i))
        assert product == SkewPoly(ctx, {exps: sign})


def test_theta_twice_is_identity(seed):
    rng = np.random.default_rng(seed)
    for _ in range(100):
        ctx = _random_sign_system(rng, int(rng.integers(1, 5)))
        flip = [i for i in range(1, ctx.n + 1) if rng.random() < 0.5]
        theta = theta_sign(ctx, flip)
        p = _random_poly(rng, ctx, max_degree=3)
        assert substitute(substitute(p, theta), theta) == p


def _degree_two_defect(sub, i, j):
    """Image of x_i x_j - eps_ij x_j x_i, expanded word by word."""
    target = sub.target
    a, b = sub.images[i - 1], sub.images[j - 1]
    acc = {}
    for first, second, scale in ((a, b, 1), (b, a, -sub.source.sign(i, j))):
        for (ea, ca), (eb, cb) in itertools.product(first.terms.items(), second.terms.items()):
            k, l = ea.index(1) + 1, eb.index(1) + 1
            sign, exps = normalize_word(target, [k, l])
            acc[exps] = acc.get(exps, 0) + ca * cb * sign * scale
    return SkewPoly(target, acc)


def test_relation_check_matches_word_expansion(seed):
    rng = np.random.default_rng(seed)
    seen = set()
    for _ in range(200):
        ctx = _random_sign_system(rng, int(rng.integers(2, 5)))
        if rng.random() < 0.3:
            rows = np.diag(rng.choice([1, -1], size=ctx.n))
        else:
            rows = rng.integers(-1, 2, size=(ctx.n, ctx.n))
            if not rows.any(axis=1).all():
                continue
        sub = LinearSubstitution.from_matrix(ctx, [[int(v) for v in row] for row in rows])
        expected = all(
            _degree_two_defect(sub, i, j).is_zero()
            for i, j in itertools.combinations(range(1, ctx.n + 1), 2)
        )
        assert sub.respects_relations == expected
        seen.add(expected)
    assert seen == {True, False}
