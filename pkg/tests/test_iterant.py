import random
from fractions import Fraction
from itertools import permutations

import pytest

from ncworlds.iterant import (IterantElement, Matrix, boost_parameter,
                              epsilon_iterant, eta, imaginary_iterant,
                              lorentz_boost, matrix_decompose, quaternion_basis,
                              quaternion_table, sigma_iterant)
from ncworlds.scalar import Scalar

ONE = IterantElement.scalar(2, 1)
MINUS_ONE = -ONE


def test_square_root_of_minus_one_both_views():
    assert imaginary_iterant() ** 2 == MINUS_ONE
    other = IterantElement.diagonal([1, -1]) * eta()
    assert other ** 2 == MINUS_ONE


def test_componentwise_product():
    a, b, c, d = (Scalar.param(n) for n in "abcd")
    ab = IterantElement.diagonal([a, b])
    cd = IterantElement.diagonal([c, d])
    assert ab * cd == IterantElement.diagonal([a * c, b * d])


def test_shift_relations():
    assert eta() * eta() == ONE
    assert sigma_iterant() * sigma_iterant() == ONE
    eps = epsilon_iterant()
    assert eps.bar() == -eps
    a, b = Scalar.param("a"), Scalar.param("b")
    ab = IterantElement.diagonal([a, b])
    assert eta() * ab == ab.bar() * eta()
    assert ab * eta() * ab * eta() == IterantElement.diagonal([a * b, a * b])


def test_matrix_correspondence():
    a, b, c, d = (Scalar.param(n) for n in "abcd")
    el = IterantElement.pair([a, d], [b, c])
    assert el.to_matrix() == Matrix([[a, b], [c, d]])
    assert imaginary_iterant().to_matrix() == Matrix([[0, -1], [1, 0]])
    assert ONE.to_matrix() == Matrix.identity(2)


def test_matrix_map_is_multiplicative():
    rng = random.Random(2)
    for n in (2, 3):
        perms = list(permutations(range(n)))
        for _ in range(20):
            def rand():
                count = rng.randint(1, min(3, len(perms)))
                return IterantElement(n, {
                    p: tuple(Scalar.rational(rng.randint(-4, 4)) for _ in range(n))
                    for p in rng.sample(perms, k=count)
                })
            x, y = rand(), rand()
            assert (x * y).to_matrix() == x.to_matrix() * y.to_matrix()
            assert (x + y).to_matrix() == x.to_matrix() + y.to_matrix()


def test_decompose_symbolic_3x3():
    names = ["a", "b", "c", "d", "e", "f", "g", "h", "k"]
    v = {n: Scalar.param(n) for n in names}
    m = Matrix([[v["a"], v["b"], v["c"]],
                [v["d"], v["e"], v["f"]],
                [v["g"], v["h"], v["k"]]])
    dec = matrix_decompose(m)
    half = Scalar.rational(1, 2)
    # the six displayed diagonal x permutation summands, scaled by 1/2!
    expected = IterantElement(3, {
        (0, 1, 2): (v["a"] * half, v["e"] * half, v["k"] * half),
        (1, 2, 0): (v["b"] * half, v["f"] * half, v["g"] * half),
        (2, 0, 1): (v["c"] * half, v["d"] * half, v["h"] * half),
        (2, 1, 0): (v["c"] * half, v["e"] * half, v["g"] * half),
        (1, 0, 2): (v["b"] * half, v["d"] * half, v["k"] * half),
        (0, 2, 1): (v["a"] * half, v["f"] * half, v["h"] * half),
    })
    assert dec == expected
    assert dec.to_matrix() == m


def test_decompose_identity_2x2():
    ident = Matrix.identity(2)
    assert matrix_decompose(ident).to_matrix() == ident


def test_decompose_roundtrip_random():
    rng = random.Random(77)
    for n in (2, 3, 4):
        for _ in range(50):
            m = Matrix([[Fraction(rng.randint(-9, 9), rng.randint(1, 9))
                         for _ in range(n)] for _ in range(n)])
            assert matrix_decompose(m).to_matrix() == m


def test_quaternion_relations():
    basis = quaternion_basis()
    i, j, k = basis["i"], basis["j"], basis["k"]
    assert i * i == MINUS_ONE
    assert j * j == MINUS_ONE
    assert k * k == MINUS_ONE
    assert i * j * k == MINUS_ONE
    # orientation determined by 2x2 matrix multiplication as the oracle
    jk = j.to_matrix() * k.to_matrix()
    assert jk == i.to_matrix()
    assert (j * k) == i


def test_quaternion_table_report():
    table = quaternion_table()
    assert table.ok
    assert table.jk_orientation == "j.k = i"
    assert len(table.products) == 16
    entries = {(a, b): prod for a, b, prod in table.products}
    assert entries[("i", "j")] == "k"
    assert entries[("j", "i")] == "-k"
    assert entries[("1", "i")] == "i"


def test_conjugation_is_determinant():
    a, b, c, d = (Scalar.param(n) for n in "abcd")
    el = IterantElement.pair([a, d], [b, c])
    prod = el * el.conjugate()
    det = a * d - b * c
    assert prod == IterantElement.diagonal([det, det])


def test_order_mismatch_rejected():
    with pytest.raises(ValueError):
        IterantElement.scalar(2, 1) * IterantElement.scalar(3, 1)
    with pytest.raises(ValueError):
        IterantElement.scalar(2, 1) + IterantElement.scalar(3, 1)


def test_malformed_construction_rejected():
    with pytest.raises(ValueError):
        IterantElement(0)
    with pytest.raises(ValueError):
        IterantElement(2, {(0, 0): (Scalar.one(), Scalar.one())})
    with pytest.raises(ValueError):
        IterantElement(2, {(0, 1): (Scalar.one(),)})


def test_lorentz_invariance_random():
    rng = random.Random(13)
    for _ in range(40):
        k = Fraction(rng.randint(1, 12), rng.randint(1, 12))
        t = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        x = Fraction(rng.randint(-9, 9), rng.randint(1, 9))
        t2, x2 = lorentz_boost(k, t, x)
        assert (t2 - x2) * (t2 + x2) == (t - x) * (t + x)


def test_lorentz_identity_and_velocity_form():
    assert lorentz_boost(1, Fraction(4), Fraction(-2)) == (Fraction(4), Fraction(-2))
    # v = 3/5: gamma = 5/4 exactly, oracle t' = (t - x v) gamma, x' = (x - v t) gamma
    v, gamma = Fraction(3, 5), Fraction(5, 4)
    k = boost_parameter(v)
    assert k == (1 + v) * gamma == 2
    for t, x in [(Fraction(1), Fraction(0)), (Fraction(2), Fraction(1))]:
        want = ((t - x * v) * gamma, (x - v * t) * gamma)
        assert lorentz_boost(k, t, x) == want
    assert lorentz_boost(k, 1, 0) == (Fraction(5, 4), Fraction(-3, 4))


def test_lorentz_errors():
    with pytest.raises(ValueError):
        lorentz_boost(0, 1, 1)
    with pytest.raises(ValueError):
        boost_parameter(Fraction(1, 2))  # gamma irrational
    with pytest.raises(ValueError):
        boost_parameter(Fraction(7, 5))  # faster than light
