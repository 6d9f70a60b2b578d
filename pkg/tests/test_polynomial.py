import math
import random

import pytest

from padic_trunk import Polynomial, X, parse, poly_to_str, val_p


EX1 = parse("(X^2+3)*(X^2+3*X+9)")


def test_evaluate_mod():
    assert parse("X^2+11").evaluate(2, 15) == 0
    assert Polynomial().evaluate(7) == 0
    assert EX1.evaluate(3, 81) == 0


def test_evaluate_plain():
    P = 3 * X**3 - 2 * X + 7
    assert P.evaluate(-4) == 3 * (-64) + 8 + 7
    assert P.evaluate(0) == 7


def test_canonical_form():
    assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial([0, 0, 0]).is_zero
    assert Polynomial() == Polynomial([0])
    assert hash(Polynomial([1, 2])) == hash(Polynomial((1, 2, 0)))


def test_zero_polynomial_has_no_degree_or_content():
    zero = Polynomial()
    with pytest.raises(ValueError, match="no degree"):
        zero.degree
    with pytest.raises(ValueError, match="infinite content"):
        zero.p_content(3)
    with pytest.raises(ValueError):
        zero.shift_scale(0, 3)


def test_shift_scale_examples():
    # P(3X) picks up the full content 27
    assert EX1.shift_scale(0, 3) == 27 * ((3 * X**2 + 1) * (X**2 + X + 1))
    assert X.shift_scale(0, 5) == 5 * X
    P1 = (3 * X**2 + 1) * (X**2 + X + 1)
    expected = 3 * ((27 * X**2 + 18 * X + 4) * (3 * X**2 + 3 * X + 1))
    assert P1.shift_scale(1, 3) == expected


def test_p_content_examples():
    assert (27 * X**2 + 9).p_content(3) == (2, 3 * X**2 + 1)
    assert (X**2 + 11).p_content(5) == (0, X**2 + 11)
    t, q = EX1.shift_scale(0, 3).p_content(3)
    assert t == 3
    assert q == (3 * X**2 + 1) * (X**2 + X + 1)


def test_reduce_mod_examples():
    assert EX1.reduce_mod(3) == X**4
    for p in (2, 3, 7):
        assert (X**2 + p * X).reduce_mod(p) == X**2
    assert (5 * X**3 + 5 * X**2 + X).reduce_mod(5) == X


def test_val_p():
    assert val_p(27, 3) == 3
    assert val_p(0, 7) == math.inf
    for p in (2, 3, 11):
        for i in range(6):
            assert val_p(p**i, p) == i
    assert val_p(-18, 3) == 2
    with pytest.raises(ValueError):
        val_p(4, 1)


def test_shift_scale_agrees_with_evaluation():
    rng = random.Random(11)
    for _ in range(200):
        P = Polynomial([rng.randint(-30, 30) for _ in range(rng.randint(1, 7))])
        if P.is_zero:
            continue
        r = rng.randint(-10, 10)
        p = rng.choice([2, 3, 5, 7])
        shifted = P.shift_scale(r, p)
        assert shifted.degree == P.degree
        for x in (-3, 0, 1, 9):
            assert shifted.evaluate(x) == P.evaluate(r + p * x)


def test_p_content_composition_identity():
    rng = random.Random(12)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        P = Polynomial([rng.randint(-50, 50) * p**rng.randint(0, 2)
                        for _ in range(rng.randint(1, 6))])
        if P.is_zero:
            continue
        t, q = P.p_content(p)
        assert p**t * q == P
        assert not q.reduce_mod(p).is_zero
        assert q.reduce_mod(p).degree <= q.degree


def test_reduce_mod_degree_drop_iff_p_divides_leading():
    P = 6 * X**3 + X + 1
    assert P.reduce_mod(3).degree < P.degree
    assert P.reduce_mod(5).degree == P.degree


def test_derivative():
    assert (X**3 + 2 * X).derivative() == 3 * X**2 + 2
    assert Polynomial([5]).derivative().is_zero


def test_poly_to_str():
    assert poly_to_str(X) == "X"
    assert poly_to_str(Polynomial()) == "0"
    assert poly_to_str(Polynomial([244, -2, 1])) == "X^2 - 2*X + 244"
    assert poly_to_str(-X**2) == "-X^2"
    assert poly_to_str(Polynomial([-5])) == "-5"
    assert poly_to_str(EX1) == "X^4 + 3*X^3 + 12*X^2 + 9*X + 27"
