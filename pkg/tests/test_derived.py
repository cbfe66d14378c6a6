from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from derivops.catalog import get_entry, novikov_defects, rc_model_2
from derivops.derived import (ArityError, DerivedOperation, apply, bivector_bracket,
                              leibniz_expand_product_rule, opposite, orders, rankin_cohen,
                              rankin_cohen_weight_formula)
from derivops.diffops import Derivation, DiffOperator, derive
from derivops.identities import Sampler
from derivops.parsing import parse_polynomial as P
from derivops.poly import AlgebraContext, Polynomial, weight_of

from conftest import polynomials

KX = AlgebraContext.of("x")
D = Derivation.partial("d", KX, "x")
NOVIKOV = get_entry("novikov").operation
POISSON = get_entry("poisson").operation


def test_apply_examples(novikov, poisson1):
    ctx = poisson1.ctx
    assert apply(poisson1, [ctx.var("x1"), ctx.var("x2")]) == ctx.one()
    assert apply(novikov, [P("x", KX), P("x^2", KX)]) == P("2*x^2", KX)
    assert apply(novikov, [P("x^2", KX), P("x", KX)]) == P("x^2", KX)


def test_apply_arity_mismatch(novikov):
    with pytest.raises(ArityError):
        apply(novikov, [KX.var("x")])


def test_opposite_examples(novikov, poisson1):
    assert opposite(novikov)(P("x", KX), P("x^2", KX)) == P("x^2", KX)
    assert opposite(opposite(novikov)) == novikov
    ctx = poisson1.ctx
    assert opposite(poisson1)(ctx.var("x1"), ctx.var("x2")) == -ctx.one()


def test_opposite_needs_binary():
    ternary = DerivedOperation.from_words("t", KX, {"d": D}, [(1, [("d",), (), ()])])
    with pytest.raises(ArityError):
        opposite(ternary)


def test_orders_examples(novikov):
    o = orders(novikov)
    assert o.per_slot_order == (0, 1) and o.total_order == 1
    o = orders(get_entry("twoder_skew").operation)
    assert o.per_slot_order == (1, 1) and o.total_order == 2
    ctx, W, Dr = rc_model_2()
    for n in range(5):
        assert orders(rankin_cohen(n, W, Dr)).total_order == 2 * n


def test_orders_invariant():
    for name in ["novikov", "dzh_order3", "rc:2", "jacobi", "dzh_star2:3"]:
        o = orders(get_entry(name).operation)
        assert o.total_order <= sum(o.per_slot_order)


def test_summands_merge_and_drop():
    op = DerivedOperation.from_words("m", KX, {"d": D},
                                     [(1, [(), ("d",)]), (2, [(), ("d",)]), (1, [("d",), ()]),
                                      (-1, [("d",), ()])])
    assert len(op.summands) == 1 and op.summands[0].coeff == 3


def test_rankin_cohen_n0_is_product(rc2):
    ctx, W, Dr = rc2
    a, b = P("y^2 + z", ctx), P("y*z", ctx)
    assert rankin_cohen(0, W, Dr)(a, b) == a * b


def test_rankin_cohen_n1_example(rc2):
    ctx, W, Dr = rc2
    y, z = ctx.gens()
    # hand expansion: W(y) D(z) - D(y) W(z) = 2y * yz - z * 4z
    assert rankin_cohen(1, W, Dr)(y, z) == P("2*y^2*z - 4*z^2", ctx)
    op = rankin_cohen(1, W, Dr)
    expected = DerivedOperation.from_words("rc1", ctx, {"W": W, "D": Dr},
                                           [(1, [("W",), ("D",)]), (-1, [("D",), ("W",)])])
    assert op == expected


def _homog_pairs(n_trials, seed=0):
    ctx, _, _ = rc_model_2()
    s = Sampler(master_seed=seed, max_degree=3, homogeneous=True, trials=n_trials)
    return [s.draw(ctx, 3, t) for t in range(n_trials)]


def test_rankin_cohen_n1_weight_form(rc2):
    ctx, W, Dr = rc2
    for a, b, _ in _homog_pairs(30):
        k, l = weight_of(a), weight_of(b)
        if not (isinstance(k, int) and isinstance(l, int)):
            continue
        assert rankin_cohen(1, W, Dr)(a, b) == (a * derive(Dr, b)).scale(k) - (derive(Dr, a) * b).scale(l)


@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_rankin_cohen_symmetry_and_weight_formula(rc2, n):
    ctx, W, Dr = rc2
    op = rankin_cohen(n, W, Dr)
    for a, b, _ in _homog_pairs(40, seed=n):
        assert op(a, b) == op(b, a).scale((-1) ** n)
        assert op(a, b) == rankin_cohen_weight_formula(n, Dr, a, b)


def test_weight_formula_by_hand(rc2):
    # n=2, a = y (k=2), b = z (l=4):
    # sum_r (-1)^r C(3, 2-r) C(5, r) D^r(y) D^(2-r)(z)
    ctx, W, Dr = rc2
    y, z = ctx.gens()
    Dy, DDy = derive(Dr, y), derive(Dr, derive(Dr, y))
    Dz, DDz = derive(Dr, z), derive(Dr, derive(Dr, z))
    expected = (y * DDz).scale(comb(3, 2)) - (Dy * Dz).scale(comb(3, 1) * comb(5, 1)) \
        + (DDy * z).scale(comb(5, 2))
    assert rankin_cohen(2, W, Dr)(y, z) == expected


def test_bivector_examples():
    ctx = AlgebraContext.of("x1", "x2")
    x1, x2 = ctx.gens()
    op = bivector_bracket([[0, 1], [0, 0]], ctx)
    assert op(x1, x2) == ctx.one()
    op = bivector_bracket({(0, 1): x1}, ctx)
    assert op(x1, x2) == x1
    ctx4 = AlgebraContext.of("a", "b", "c", "d")
    assert bivector_bracket({}, ctx4).is_zero()
    assert bivector_bracket([[0] * 4 for _ in range(4)], ctx4).is_zero()


def test_bivector_symplectic_is_poisson():
    ctx = POISSON.ctx  # x1, x2 for n = 1
    op = bivector_bracket({(0, 1): 1}, ctx)
    s = Sampler(trials=20)
    for t in range(20):
        a, b = s.draw(ctx, 2, t)
        assert op(a, b) == POISSON(a, b)


def test_bivector_general_formula():
    ctx = AlgebraContext.of("x1", "x2", "x3")
    x1, x2, x3 = ctx.gens()
    omega = {(0, 1): x3, (0, 2): x1 * x2, (1, 2): P("1 - x1", ctx)}
    op = bivector_bracket(omega, ctx)
    assert len(op.derivations) == 2 * (3 - 1)
    parts = {v: Derivation.partial(v, ctx, v) for v in ctx.names}
    s = Sampler(trials=10, max_degree=2)
    for t in range(10):
        f, g = s.draw(ctx, 2, t)
        expected = ctx.zero()
        for (i, j), w in omega.items():
            vi, vj = ctx.names[i], ctx.names[j]
            expected += w * (parts[vi](f) * parts[vj](g) - parts[vi](g) * parts[vj](f))
        assert op(f, g) == expected


def test_bivector_dimension_mismatch():
    ctx = AlgebraContext.of("x1", "x2")
    with pytest.raises(ValueError):
        bivector_bracket([[0, 1, 0]], ctx)
    with pytest.raises(ValueError):
        bivector_bracket({(1, 0): 1}, ctx)


def _star2_direct(m, a, b):
    def dm(p):
        for _ in range(m):
            p = derive(D, p)
        return p
    return -a * dm(b) + dm(a) * b + dm(a * b)


@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_leibniz_expand_matches_direct(m):
    op = leibniz_expand_product_rule(D, m)
    s = Sampler(trials=20, max_degree=5)
    for t in range(20):
        a, b = s.draw(KX, 2, t)
        assert op(a, b) == _star2_direct(m, a, b)
    assert orders(op).total_order == m


def test_leibniz_expand_examples():
    x, one = KX.var("x"), KX.one()
    assert leibniz_expand_product_rule(D, 1)(x, x) == P("2*x", KX)
    assert leibniz_expand_product_rule(D, 2)(x, one).is_zero()
    for m in (1, 2, 3):
        assert leibniz_expand_product_rule(D, m)(one, one).is_zero()
    # m = 1 collapses to the single summand 2 d(a) b
    op = leibniz_expand_product_rule(D, 1)
    assert [(s.coeff, s.factors) for s in op.summands] == \
        [(2, (DiffOperator.word("d"), DiffOperator.identity()))]
    with pytest.raises(ValueError):
        leibniz_expand_product_rule(D, 0)


XY = AlgebraContext.of("x", "y")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["novikov", "dzh_order3", "twoder_skew", "poisson", "dzh_star2:2"]),
       st.data(), st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 1))
def test_multilinearity(name, data, alpha, beta, slot):
    op = get_entry(name).operation
    ctx = op.ctx
    p, q, other = (data.draw(polynomials(ctx, max_exp=3, max_terms=4)) for _ in range(3))
    mix = p.scale(alpha) + q.scale(beta)

    def at(v):
        args = [other, other]
        args[slot] = v
        return op(*args)

    assert at(mix) == at(p).scale(alpha) + at(q).scale(beta)


def test_novikov_axioms():
    s = Sampler(trials=50, max_degree=4)
    for t in range(50):
        left, right = novikov_defects(NOVIKOV, *s.draw(KX, 3, t))
        assert left.is_zero() and right.is_zero()


def test_mayer_leibniz_and_jacobi_bracket_jacobi():
    from derivops.identities import jacobiator, leibnizator
    mayer, jac = get_entry("mayer").operation, get_entry("jacobi").operation
    s = Sampler(trials=30)
    for t in range(30):
        a, b, c = s.draw(mayer.ctx, 3, t)
        assert leibnizator(mayer, a, b, c).is_zero()
        assert leibnizator(opposite(mayer), a, b, c).is_zero()
        assert jacobiator(jac, a, b, c).is_zero()
