import random
from collections import Counter
from fractions import Fraction

from ncworlds.ncpoly import G, NcPoly, commutator, derivation, scale
from ncworlds.scalar import Scalar

A, B, C = NcPoly.gen("A"), NcPoly.gen("B"), NcPoly.gen("C")
POOL = (G("A"), G("B"), G("C"), G("N", 1))


def random_poly(rng, max_degree=3, max_terms=4):
    out = NcPoly.zero()
    for _ in range(rng.randint(1, max_terms)):
        w = tuple(rng.choice(POOL) for _ in range(rng.randint(0, max_degree)))
        c = rng.randint(-3, 3)
        if c:
            out = out + NcPoly.from_word(w, c)
    return out


def test_additive_inverse_and_identity():
    assert (A + A.scaled(-1)).is_zero()
    assert scale(1, A) == A
    assert A * NcPoly.one() == A
    assert NcPoly.one() * A == A


def test_coefficient_merge_oracle():
    # oracle: tally words with plain dict arithmetic
    ab, ba = (G("A"), G("B")), (G("B"), G("A"))
    tally = Counter()
    for w, c in [(ab, 1), (ba, 1), (ab, 1), (ba, -1)]:
        tally[w] += c
    got = (A * B + B * A) + (A * B - B * A)
    assert dict(got.terms()) == {
        w: Scalar.rational(c) for w, c in tally.items() if c
    }
    assert got == (A * B).scaled(2)


def test_noncommutative_expansion():
    lhs = (A + B) * (A - B)
    assert lhs == A * A - A * B + B * A - B * B
    assert lhs != A * A - B * B


def test_associativity_of_concrete_products():
    theta, h = NcPoly.gen("Theta"), NcPoly.gen("H")
    assert (theta * h) * h == theta * (h * h)


def test_self_commutator_vanishes():
    assert commutator(A, A).is_zero()
    p = A * B - C.scaled(3)
    assert commutator(p, p).is_zero()


def test_nested_commutator_display():
    theta, h = NcPoly.gen("Theta"), NcPoly.gen("H")
    got = commutator(commutator(theta, h), h)
    want = theta * h * h + h * h * theta - (h * theta * h).scaled(2)
    assert got == want


def test_jacobi_identity_random():
    rng = random.Random(5)
    for _ in range(25):
        a, b, c = (random_poly(rng, 2, 3) for _ in range(3))
        total = (commutator(commutator(a, b), c)
                 + commutator(commutator(c, a), b)
                 + commutator(commutator(b, c), a))
        assert total.is_zero()


def test_derivation_is_leibniz():
    rng = random.Random(9)
    for _ in range(25):
        n, f, g = (random_poly(rng, 3, 3) for _ in range(3))
        nabla = derivation(n)
        assert (nabla(f * g) - nabla(f) * g - f * nabla(g)).is_zero()
        assert nabla(NcPoly.one()).is_zero()


def test_derivation_of_generator_is_commutator():
    j = NcPoly.gen("J")
    f = A * B + C
    assert derivation(j)(f) == f * j - j * f


def test_ring_axioms_random():
    rng = random.Random(23)
    for _ in range(40):
        a, b, c = (random_poly(rng, 4, 5) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert (a + b) * c == a * c + b * c


def test_scalar_coefficients_flow_through():
    i = Scalar.imag_unit()
    p = A.scaled(i) * B.scaled(i)
    assert p == (A * B).scaled(-1)
    assert (A.scaled(Fraction(1, 2)) + A.scaled(Fraction(1, 2))) == A


def test_zero_polynomial_is_empty():
    z = NcPoly.zero()
    assert z.is_zero() and not z
    assert z + A == A
    assert (z * A).is_zero()
    assert z.to_text() == "0"
    assert z.degree() == 0


def test_canonical_text_form():
    theta, h = NcPoly.gen("Theta"), NcPoly.gen("H")
    p = commutator(commutator(theta, h), h)
    assert p.to_text() == "H.H.Theta + (-2) H.Theta.H + Theta.H.H"
    assert NcPoly.one().to_text() == "1"
    assert (NcPoly.one().scaled(-1)).to_text() == "(-1)"
    q = NcPoly.gen("Q", 1)
    assert (q * q - NcPoly.one().scaled(2)).to_text() == "(-2) + Q_1.Q_1"


def test_generator_identity_and_order():
    assert G("Q", 1) == G("Q", 1)
    assert G("Q", 1) != G("Q", 2)
    assert G("H") < G("H", primes=1)
    assert G("P", 1) < G("P", 2) < G("Q", 1)
    assert G("g", 1, 1) < G("g", 1, 1, derivs=(2,))
    assert G("g", derivs=(2, 1)) == G("g", derivs=(1, 2))


def test_generator_text():
    assert G("Q", 1).text() == "Q_1"
    assert G("Theta", 1, 2).text() == "Theta_12"
    assert G("H", primes=2).text() == "H''"
    assert G("theta", derivs=(1,)).text() == "theta_,1"
    assert G("g", 1, 1, derivs=(2,)).text() == "g_11,2"
