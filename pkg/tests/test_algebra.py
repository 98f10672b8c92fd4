import random
from fractions import Fraction as F

import pytest

from sylvdet.algebra import (
    Polynomial,
    format_rational,
    interpolate,
    parse_rational,
    poly_eval,
    poly_from_roots,
    q_pochhammer,
    shifted_factorial,
)
from sylvdet.errors import DuplicateNode


def test_poly_from_roots_empty_is_one():
    assert poly_from_roots([]) == Polynomial([1])


def test_poly_from_roots_expanded_by_hand():
    # (t+2) t (t-2) = t^3 - 4t
    assert poly_from_roots([-2, 0, 2]) == Polynomial([0, -4, 0, 1])


def test_poly_from_roots_perfect_square():
    assert poly_from_roots([1, 1]) == Polynomial([1, -2, 1])


def test_poly_eval_at_constructed_root():
    assert poly_eval(poly_from_roots([-2, 0, 2]), 2) == 0


def test_poly_eval_zero_polynomial():
    assert poly_eval(Polynomial(), F(17, 3)) == 0


def test_poly_eval_fraction():
    assert poly_eval(Polynomial([0, 1, 1]), F(1, 2)) == F(3, 4)


def test_root_property_sweep():
    rng = random.Random(3)
    for _ in range(25):
        roots = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(rng.randint(1, 6))]
        p = poly_from_roots(roots)
        assert p.is_monic() and p.degree == len(roots)
        for r in roots:
            assert p(r) == 0


def test_interpolate_constant():
    assert interpolate([(0, 1), (1, 1)]) == Polynomial([1])


def test_interpolate_square():
    # 3x3 Vandermonde solved by hand: through (0,0), (1,1), (2,4) -> t^2
    assert interpolate([(0, 0), (1, 1), (2, 4)]) == Polynomial([0, 0, 1])


def test_interpolate_duplicate_abscissa():
    with pytest.raises(DuplicateNode):
        interpolate([(0, 1), (0, 2)])


def test_interpolation_round_trip():
    rng = random.Random(11)
    for _ in range(20):
        degree = rng.randint(0, 7)
        coeffs = [F(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(degree)]
        coeffs.append(F(rng.randint(1, 9)))  # nonzero leading coefficient
        p = Polynomial(coeffs)
        nodes = []
        while len(nodes) < degree + 1:
            x = F(rng.randint(-30, 30), rng.randint(1, 5))
            if x not in nodes:
                nodes.append(x)
        assert interpolate([(x, p(x)) for x in nodes]) == p


def test_shifted_factorial_values():
    assert shifted_factorial(F(7, 3), 0) == 1
    assert shifted_factorial(1, 3) == 6
    assert shifted_factorial(-2, 4) == 0  # factor (-2+2) vanishes


def test_shifted_factorial_recurrence():
    rng = random.Random(5)
    for _ in range(20):
        c = F(rng.randint(-9, 9), rng.randint(1, 9))
        for k in range(1, 8):
            assert shifted_factorial(c, k) == shifted_factorial(c, k - 1) * (c + k - 1)


def test_q_pochhammer_values():
    assert q_pochhammer(F(2, 5), F(1, 3), 0) == 1
    a = F(3, 7)
    assert q_pochhammer(a, F(1, 2), 1) == 1 - a
    assert q_pochhammer(2, 3, 2) == 5  # (1-2)(1-6)


def test_q_pochhammer_recurrence():
    rng = random.Random(9)
    for _ in range(20):
        a = F(rng.randint(-9, 9), rng.randint(1, 9))
        q = F(rng.randint(-9, 9), rng.randint(1, 9))
        for k in range(1, 7):
            assert q_pochhammer(a, q, k) == q_pochhammer(a, q, k - 1) * (1 - a * q ** (k - 1))


def test_negative_counts_rejected():
    with pytest.raises(ValueError):
        shifted_factorial(1, -1)
    with pytest.raises(ValueError):
        q_pochhammer(1, 2, -1)


def test_polynomial_normalization_and_degree():
    assert Polynomial([1, 2, 0, 0]).coeffs == (1, 2)
    assert Polynomial([0, 0]).is_zero()
    assert Polynomial().degree == -1
    assert Polynomial([5]).degree == 0


def test_polynomial_arithmetic():
    p = Polynomial([1, 1])  # 1 + t
    q = Polynomial([-1, 1])  # -1 + t
    assert p * q == Polynomial([-1, 0, 1])
    assert p + q == Polynomial([0, 2])
    assert p - p == Polynomial()
    assert 3 * p == Polynomial([3, 3])


def test_compose_affine():
    p = Polynomial([0, 0, 1])  # t^2
    # p(2(t+3)) = 4(t+3)^2 = 4t^2 + 24t + 36
    assert p.compose_affine(2, 3) == Polynomial([36, 24, 4])


def test_polynomial_str():
    assert str(Polynomial([0, -4, 0, 1])) == "t^3 - 4*t"
    assert str(Polynomial()) == "0"
    assert str(Polynomial([F(1, 2)])) == "1/2"


def test_rational_serialization():
    assert format_rational(F(3, 1)) == "3"
    assert format_rational(F(-4, 7)) == "-4/7"
    assert parse_rational("3/1") == 3
    assert format_rational(parse_rational("3/1")) == "3"
    with pytest.raises(ValueError):
        parse_rational("not-a-number")
    with pytest.raises(ValueError):
        parse_rational("1/0")
