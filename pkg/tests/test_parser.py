import random

import pytest

from orelab.parser import (BandLit, BinOp, Call, Int, Neg, ParseError, Pow, SeqLit, SeriesLit, Sym,
                           UnboundSymbolError, build_context, eval_expression, parse_expression,
                           to_source)


def weyl():
    return build_context("Poly(Z,y)", delta="ddy")


def test_weyl_commutator_evaluates_to_one():
    ctx = weyl()
    assert eval_expression("x*y - y*x", ctx) == ctx.ring.one


def test_example_113_relation():
    ctx = build_context("Free(u,v,x|xu=0,xv=0)")
    assert eval_expression("x*u", ctx).is_zero()
    assert not eval_expression("u*x", ctx).is_zero()


def test_square_matches_ore_mul():
    ctx = build_context("Poly(Z,y)", sigma="const_term", delta="coeff_shift")
    x, one = ctx.symbols["x"], ctx.ring.one
    assert eval_expression("(x + 1)^2", ctx) == (x + one) * (x + one)
    ctx = weyl()
    x, y = ctx.symbols["x"], ctx.symbols["y"]
    assert eval_expression("(x + y)^2", ctx) == (x + y) * (x + y)


def test_example_116_via_expressions():
    ctx = build_context("Poly(Z,y)", sigma="const_term", delta="coeff_shift")
    assert eval_expression("x*y", ctx) == ctx.ring.one
    assert eval_expression("y*x", ctx) != ctx.ring.one
    assert eval_expression("sigma(3*y^2 + 2)", ctx) == eval_expression("2", ctx).coeff(0)
    assert eval_expression("delta(3*y^2 + 2)", ctx) == eval_expression("3*y", ctx).coeff(0)


def test_left_associative_and_no_reordering():
    assert parse_expression("a - b - c") == BinOp("-", BinOp("-", Sym("a"), Sym("b")), Sym("c"))
    assert parse_expression("a*b*c") == BinOp("*", BinOp("*", Sym("a"), Sym("b")), Sym("c"))
    assert parse_expression("y*x") != parse_expression("x*y")


def test_juxtaposition_is_not_multiplication():
    assert parse_expression("yx") == Sym("yx")
    with pytest.raises(ParseError) as exc:
        parse_expression("y x")
    assert exc.value.position == 2


def test_errors_carry_positions():
    for text, pos in [("x*", 2), ("(x", 2), ("x + $", 4), ("x^y", 2), ("[1, 2]", 6)]:
        with pytest.raises(ParseError) as exc:
            parse_expression(text)
        assert exc.value.position == pos, text


def test_unbound_symbol():
    with pytest.raises(UnboundSymbolError):
        parse_expression("x*z", weyl())
    with pytest.raises(UnboundSymbolError):
        parse_expression("frob(x)", weyl())


def test_literals():
    ctx = build_context("P(Z/2)", sigma="shift")
    v = eval_expression("[1, prefix [1] then const 0] @ 4", ctx)
    assert v.precision == 4
    t = eval_expression("theta(band{1: prefix [] then const 1})", ctx)
    assert t == t.ring.series([0, ctx.coefficient_ring.constant(1)])
    laurent = build_context("Laurent(Z/2,prec=6)", sigma="laurent_square")
    L = laurent.coefficient_ring
    assert eval_expression("sigma(inv(t) + t)", laurent) == L.monomial(-2) + L.monomial(2)


# --- roundtrip ---------------------------------------------------------------------------


def random_ast(rng: random.Random, depth: int = 0):
    leaf = depth > 3 or rng.random() < 0.3
    if leaf:
        return Int(rng.randint(0, 20)) if rng.random() < 0.5 else Sym(rng.choice(["x", "y", "u", "v", "yx"]))
    k = rng.randrange(9)
    sub = lambda: random_ast(rng, depth + 1)  # noqa: E731
    if k <= 2:
        return BinOp(rng.choice("+-*"), sub(), sub())
    if k == 3:
        return Neg(sub())
    if k == 4:
        return Pow(sub(), rng.randint(0, 5))
    if k == 5:
        return Call(rng.choice(["sigma", "delta", "theta", "transpose"]),
                    tuple(sub() for _ in range(rng.randint(1, 2))))
    if k == 6:
        return SeriesLit(tuple(sub() for _ in range(rng.randint(1, 3))), rng.randint(1, 9))
    if k == 7:
        const = rng.random() < 0.5
        period = (sub(),) if const else tuple(sub() for _ in range(rng.randint(1, 2)))
        return SeqLit(tuple(sub() for _ in range(rng.randint(0, 2))), period, const)
    return BandLit(tuple((j, sub()) for j in sorted(rng.sample(range(5), rng.randint(1, 3)))))


def test_roundtrip_500_generated():
    rng = random.Random(0)
    for _ in range(500):
        node = random_ast(rng)
        text = to_source(node)
        again = parse_expression(text)
        assert again == node, text
        assert to_source(again) == text


@pytest.mark.parametrize("text", ["x*y - y*x", "-x^2", "(-x)^2", "a - -b", "a - (b - c)",
                                  "prefix [1, 2] then const 3*x", "(prefix [] then const 1)^2",
                                  "band{0: prefix [] then period [0, 1]}", "[1, y] @ 3 * [x] @ 3"])
def test_roundtrip_examples(text):
    node = parse_expression(text)
    assert parse_expression(to_source(node)) == node
