import random
from fractions import Fraction

import pytest

from ncworlds.ncpoly import G, NcPoly
from ncworlds.parser import (Comm, ImagUnit, Num, Param, ParseError, Prod, Sum,
                             Symm, evaluate, parse, print_expr, world)
from ncworlds.scalar import Scalar


def test_commutator_in_flat_world():
    poly = evaluate(parse("[Q^1, P_1]"), world("flat"))
    assert poly == NcPoly.one()
    assert poly.to_text() == "1"


def test_symmetrizer_surface_form():
    poly = evaluate(parse("{X Y}"))
    assert poly.to_text() == "(1/2) X.Y + (1/2) Y.X"


def test_syntax_error_position_and_expectations():
    with pytest.raises(ParseError) as err:
        parse("(")
    assert err.value.line == 1 and err.value.col == 2
    assert err.value.expected
    with pytest.raises(ParseError):
        parse("[A, ")
    with pytest.raises(ParseError):
        parse("A + ")
    with pytest.raises(ParseError):
        parse("2.5")


def test_upper_and_lower_indices_agree():
    assert parse("Q^1") == parse("Q_1") == G("Q", 1)
    assert parse("Theta_12") == G("Theta", 1, 2)
    assert parse("H''") == G("H", primes=2)
    assert parse("g_11,2") == G("g", 1, 1, derivs=(2,))
    assert parse("theta_,1") == G("theta", derivs=(1,))


def test_parameters_and_imaginary_unit():
    assert parse("i") == ImagUnit()
    assert parse("hbar") == Param("hbar", 1)
    assert parse("hbar^-2") == Param("hbar", -2)
    assert evaluate(parse("i i")) == NcPoly.from_scalar(Scalar.rational(-1))
    assert evaluate(parse("hbar hbar^-1")) == NcPoly.one()


def test_deriv_comma_does_not_eat_argument_comma():
    e = parse("[Q_1, 2 A]")
    assert isinstance(e, Comm)
    assert e.a == G("Q", 1)


def test_dot_product_separator():
    assert parse("H.Q_1") == parse("H Q_1")
    text = "(-2) H.Theta.H + Theta.H.H + H.H.Theta"
    poly = evaluate(parse(text))
    t, h = NcPoly.gen("Theta"), NcPoly.gen("H")
    assert poly == t * h * h + h * h * t - (h * t * h).scaled(2)


def test_reduce_output_reparses():
    from ncworlds.ncpoly import commutator
    t, h = NcPoly.gen("Theta"), NcPoly.gen("H")
    p = commutator(commutator(t, h), h)
    assert evaluate(parse(p.to_text())) == p
    q = evaluate(parse("[Q^1, P_1 P_1]"), world("flat"))
    assert evaluate(parse(q.to_text())) == q


def test_evaluation_worlds():
    assert evaluate(parse("P_1 Q^1"), world("flat")) == evaluate(
        parse("Q^1 P_1 - 1"))
    assert evaluate(parse("B A"), world("abc")) == evaluate(parse("A B"))
    free = evaluate(parse("P_1 Q^1"), world("free"))
    assert free == NcPoly.from_word((G("P", 1), G("Q", 1)))
    with pytest.raises(ValueError):
        world("curved")


def test_nested_expression():
    e = parse("{(A + B) C} - 1/2 [A, C] - 1/2 [B, C] - C A - C B")
    poly = evaluate(e)
    assert poly.is_zero()


# -- round-trip property --------------------------------------------------------

NAMES = ["A", "B", "H", "Theta", "psi", "Q", "P", "g"]
PARAMS = ["hbar", "m", "dt", "tau"]


def random_expr(rng, depth):
    if depth == 0:
        kind = rng.randrange(4)
        if kind == 0:
            return Num(Fraction(rng.randint(0, 9), rng.randint(1, 9)))
        if kind == 1:
            return ImagUnit()
        if kind == 2:
            exp = rng.choice([-2, -1, 1, 2, 3])
            return Param(rng.choice(PARAMS), exp)
        indices = tuple(rng.randint(1, 3) for _ in range(rng.randrange(3)))
        derivs = tuple(sorted(rng.randint(1, 3) for _ in range(rng.randrange(2))))
        return G(rng.choice(NAMES), *indices, derivs=derivs,
                 primes=rng.randrange(3))
    kind = rng.randrange(4)
    if kind == 0:
        return Prod(tuple(random_expr(rng, depth - 1)
                          for _ in range(rng.randint(2, 3))))
    if kind == 1:
        parts = tuple((rng.choice([1, -1]), random_expr(rng, depth - 1))
                      for _ in range(rng.randint(2, 3)))
        return Sum(parts)
    if kind == 2:
        return Comm(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    return Symm(tuple(random_expr(rng, depth - 1)
                      for _ in range(rng.randint(1, 3))))


def test_roundtrip_500_random_asts():
    rng = random.Random(2024)
    for _ in range(500):
        e = random_expr(rng, rng.randint(1, 6))
        text = print_expr(e)
        back = parse(text)
        assert back == e, f"{text!r} reparsed as {print_expr(back)!r}"


def test_print_then_parse_normalizes():
    for src in ["( A )", "A  +  B", "[ A , B ]", "Q^1 P_1", "A.B"]:
        e = parse(src)
        assert parse(print_expr(e)) == e
