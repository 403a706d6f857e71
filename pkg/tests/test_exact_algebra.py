"""Scalar and polynomial arithmetic: exactness is everything here."""

import random
from fractions import Fraction

import mpmath
import pytest

from ramex.exact_algebra import (
    NonzeroRemainder,
    QuadNum,
    RadicandMismatch,
    TriPoly,
    UniPoly,
    poly_div_exact,
    poly_shift_by_sqrt,
    poly_substitute_square,
    quad_sign,
    rational_from_str,
    rational_to_str,
)


def test_quad_sign_opposite_sign_examples():
    assert quad_sign(QuadNum(3, -2, 2)) == 1  # 9 > 8
    assert quad_sign(QuadNum(1, -1, 1)) == 0  # sqrt(1) = 1
    assert quad_sign(QuadNum(-2, 1, 3)) == -1  # sqrt(3) < 2


def test_quad_sign_easy_cases():
    assert quad_sign(QuadNum(1, 2, 5)) == 1
    assert quad_sign(QuadNum(-1, -2, 5)) == -1
    assert quad_sign(QuadNum(0, 0, 7)) == 0
    assert quad_sign(QuadNum(Fraction(3, 2), 0, 7)) == 1
    assert quad_sign(QuadNum(0, -1, 7)) == -1
    assert quad_sign(QuadNum(-5, 3, 0)) == -1  # sqrt(0) contributes nothing
    assert quad_sign(Fraction(-2, 3)) == -1
    assert quad_sign(0) == 0


def test_quad_sign_against_high_precision_float():
    """1000 random quadratic numbers; mpmath at 50 digits as a sanity
    witness (the exact path is authoritative, so near-zero values where
    the witness cannot resolve the sign are skipped)."""
    rng = random.Random(20240831)
    mpmath.mp.dps = 50
    checked = 0
    for _ in range(1000):
        a = Fraction(rng.randint(-60, 60), rng.randint(1, 20))
        b = Fraction(rng.randint(-60, 60), rng.randint(1, 20))
        m = rng.randint(0, 40)
        v = QuadNum(a, b, m)
        witness = mpmath.mpf(a.numerator) / a.denominator + (
            mpmath.mpf(b.numerator) / b.denominator
        ) * mpmath.sqrt(m)
        if abs(witness) < mpmath.mpf("1e-30"):
            assert quad_sign(v) == 0
            continue
        assert quad_sign(v) == (1 if witness > 0 else -1)
        checked += 1
    assert checked > 900


def test_quadnum_ring_arithmetic():
    one_plus = QuadNum(1, 1, 2)
    one_minus = QuadNum(1, -1, 2)
    assert one_plus * one_minus == -1
    assert one_plus + one_minus == 2
    assert (one_plus - one_minus) == QuadNum(0, 2, 2)
    # division round-trips
    x = QuadNum(Fraction(3, 4), Fraction(-2, 5), 3)
    y = QuadNum(Fraction(1, 2), Fraction(7, 3), 3)
    assert (x / y) * y == x
    # dividing by a perfect-square radicand value that the conjugate trick
    # cannot handle: 2 + sqrt(4) == 4
    z = QuadNum(2, 1, 4)
    assert z == 4
    assert QuadNum(1, 0, 4) / z == Fraction(1, 4)


def test_quadnum_radicand_rules():
    with pytest.raises(RadicandMismatch):
        QuadNum(1, 1, 2) * QuadNum(1, 1, 3)
    # pure rationals combine with anything
    assert QuadNum(2, 0, 5) + QuadNum(1, 1, 3) == QuadNum(3, 1, 3)
    assert QuadNum(0, 2, 9) == 6  # perfect square folds


def test_quadnum_negative_radicand_rejected():
    with pytest.raises(ValueError):
        QuadNum(1, 1, -1)


def test_poly_shift_by_sqrt_examples():
    sh = poly_shift_by_sqrt(UniPoly((Fraction(-2), 0, Fraction(1))), 2)
    assert sh.coeffs == (QuadNum(0, 0, 2), QuadNum(0, 2, 2), QuadNum(1, 0, 2))

    sh = poly_shift_by_sqrt(UniPoly((0, Fraction(1))), 4)
    assert sh.coeffs[0] == 2  # sign logic must treat sqrt(4) as 2
    assert quad_sign(sh.coeffs[0]) == 1

    sh = poly_shift_by_sqrt(UniPoly((0, 0, 0, Fraction(1))), 3)
    assert sh.coeffs == (
        QuadNum(0, 3, 3),
        QuadNum(9, 0, 3),
        QuadNum(0, 3, 3),
        QuadNum(1, 0, 3),
    )


def test_poly_shift_evaluation_property():
    """p(x + sqrt(q)) evaluated at r - sqrt(q) recovers p(r)."""
    rng = random.Random(7)
    for _ in range(40):
        deg = rng.randint(1, 6)
        coeffs = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(deg))
        p = UniPoly(coeffs + (Fraction(1),))
        q = rng.randint(1, 12)
        r = Fraction(rng.randint(-8, 8), rng.randint(1, 4))
        shifted = poly_shift_by_sqrt(p, q)
        assert shifted.evaluate(QuadNum(r, -1, q)) == p.evaluate(r)


def test_poly_shift_rejects_bad_input():
    with pytest.raises(ValueError):
        poly_shift_by_sqrt(UniPoly(), 2)
    with pytest.raises(ValueError):
        poly_shift_by_sqrt(UniPoly((1,)), 0)


def test_poly_substitute_square_examples():
    assert poly_substitute_square(UniPoly((-4, 1))) == UniPoly((-4, 0, 1))
    assert poly_substitute_square(UniPoly((1, -2, 1))) == UniPoly((1, 0, -2, 0, 1))
    assert poly_substitute_square(UniPoly((8, -6, 1))) == UniPoly((8, 0, -6, 0, 1))
    assert poly_substitute_square(UniPoly()) == UniPoly()


def test_poly_substitute_square_round_trip():
    rng = random.Random(11)
    for _ in range(30):
        coeffs = tuple(Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 7)))
        p = UniPoly(coeffs)
        doubled = poly_substitute_square(p)
        assert all(doubled.coeff(i) == 0 for i in range(1, doubled.degree + 1, 2))
        assert UniPoly(doubled.coeffs[0::2]) == p


def test_poly_div_exact_examples():
    assert poly_div_exact(UniPoly((27, 0, -12, 0, 1)), UniPoly((-9, 0, 1))) == UniPoly((-3, 0, 1))
    assert poly_div_exact(UniPoly((-4, 0, 1)), UniPoly((-4, 0, 1))) == UniPoly((1,))
    with pytest.raises(NonzeroRemainder):
        poly_div_exact(UniPoly((-1, 0, 1)), UniPoly((-4, 0, 1)))


def test_poly_div_exact_random_products():
    rng = random.Random(13)
    for _ in range(40):
        qdeg, ddeg = rng.randint(0, 4), rng.randint(1, 4)
        quot = UniPoly(
            tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(qdeg))
            + (Fraction(rng.randint(1, 5)),)
        )
        divisor = UniPoly(
            tuple(Fraction(rng.randint(-6, 6)) for _ in range(ddeg)) + (Fraction(1),)
        )
        assert poly_div_exact(quot * divisor, divisor) == quot


def test_poly_div_requires_monic_divisor():
    with pytest.raises(ValueError):
        poly_div_exact(UniPoly((1, 1)), UniPoly((1, 2)))


def test_unipoly_ring_basics():
    p = UniPoly((-1, 0, 1))  # x^2 - 1
    assert p.evaluate(3) == 8
    assert p.evaluate(Fraction(1, 2)) == Fraction(-3, 4)
    assert (p + UniPoly((1, 0, -1))).is_zero
    assert p * UniPoly() == UniPoly()
    assert UniPoly((0, 0, 0)).is_zero  # trailing zeros trim to the zero poly
    assert p.is_monic and p.degree == 2
    assert 2 * p == UniPoly((-2, 0, 2))


def test_tripoly_partial_evaluation():
    # lam + t_r * t_c  ->  at (2, 3): lam + 6
    tri = TriPoly((((0, 0), (0, 1)), ((1, 0), (0, 0))))
    assert tri.eval_t(2, 3) == UniPoly((6, 1))
    assert tri.coefficient(0, 1, 1) == 1
    assert tri.coefficient(5, 5, 5) == 0


def test_tripoly_add_mul():
    lam = TriPoly((((0,),), ((1,),)))
    trc = TriPoly((((0, 0), (0, 1)),))  # t_r * t_c
    s = lam + trc
    assert s.coefficient(1, 0, 0) == 1 and s.coefficient(0, 1, 1) == 1
    prod = lam * trc
    assert prod.coefficient(1, 1, 1) == 1
    assert prod.lam_degree == 1 and prod.t_degrees == (1, 1)


def test_rational_canonical_and_serialization():
    assert Fraction(2, 4) == Fraction(1, 2)
    assert (Fraction(2, 4).numerator, Fraction(2, 4).denominator) == (1, 2)
    assert (Fraction(3, -6).numerator, Fraction(3, -6).denominator) == (-1, 2)
    assert rational_to_str(Fraction(3, 2)) == "3/2"
    assert rational_to_str(Fraction(-7)) == "-7"
    assert rational_to_str(5) == "5"
    assert rational_from_str("22/7") == Fraction(22, 7)
    assert rational_from_str("-3") == Fraction(-3)
