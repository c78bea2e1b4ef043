"""Exact ring arithmetic, base change, division and the textual format."""

import random
from fractions import Fraction

import pytest

from scx import rings as R

import helpers


def test_laurent_square_expansion():
    t = R.var(R.ZT, "T")
    p = t ** 2 - t ** -2
    assert str(p * p) == "T^4 - 2 + T^-4"


def test_f4_field_relation():
    x = R.var(R.F4, "x")
    assert x * x == x + R.one(R.F4)
    assert (x * x * x).is_one()


def test_u_exponent_addition():
    U = R.universal(3)
    assert R.var(U, "U", Fraction(1, 3)) * R.var(U, "U", Fraction(2, 3)) \
        == R.var(U, "U")


def test_u_denominator_enforced():
    U = R.universal(3)
    with pytest.raises(R.RingError):
        R.var(U, "U", Fraction(1, 2))


def test_ring_mismatch_raises():
    with pytest.raises(R.RingMismatchError):
        R.var(R.ZT, "T") + R.var(R.QT, "T")


def test_base_change_t_to_x_in_f4():
    t = R.var(R.ZT, "T")
    img = R.base_change(t ** 2 - t ** -2, {"T": R.var(R.F4, "x")}, R.F4)
    assert img == R.one(R.F4)


def test_base_change_kills_weight_at_t_one():
    U3 = R.universal(3)
    p = R.parse(U3, "U^{1/3}*T^2 - U^{1/3}*T^-2")
    img = R.base_change(p, {"U": R.one(R.Z), "T": R.one(R.Z)}, R.Z)
    assert img.is_zero()


def test_base_change_x_to_p_expands_to_four_terms():
    rx = R.poly_x(R.F2T)
    x = R.var(rx, "x")
    from scx.equivariant import bn_p_element
    target = R.S_BN
    img = R.base_change(x, {"T": R.var(target, "T1"),
                            "x": bn_p_element(target)}, target)
    assert img == bn_p_element(target)
    assert len(img.sorted_terms()) == 4


def test_base_change_missing_variable():
    U3 = R.universal(3)
    p = R.var(U3, "U", Fraction(1, 3))
    with pytest.raises(R.RingError):
        R.base_change(p, {"T": R.one(R.Z)}, R.Z)


def test_base_change_fractional_power_needs_clean_image():
    U3 = R.universal(3)
    p = R.var(U3, "U", Fraction(1, 3))
    t = R.var(R.ZT, "T")
    with pytest.raises(R.RingError):
        R.base_change(p, {"T": t, "U": t}, R.ZT)
    # U -> 1 and U -> a cube both work
    assert R.base_change(p, {"T": t, "U": R.one(R.ZT)}, R.ZT).is_one()
    assert R.base_change(p, {"T": t, "U": t ** 3}, R.ZT) == t


def test_divide_square_factorization():
    t = R.var(R.QT, "T")
    p = t ** 2 - t ** -2
    assert R.divide(p * p, p) == p


def test_monomials_are_units():
    t = R.var(R.ZT, "T")
    assert (R.from_int(R.ZT, -1) * t ** 3).is_unit()
    assert not (t + R.one(R.ZT)).is_unit()
    assert not R.from_int(R.ZT, 2).is_unit()


def test_divide_by_unit_and_failure():
    t = R.var(R.F2T, "T")
    one = R.one(R.F2T)
    # T is a unit of the Laurent ring, so T+1 is divisible by it
    assert R.divide(t + one, t) == one + t ** -1
    # dividing by the non-unit T+1 fails where it should
    assert R.divide(t, t + one) is None
    assert R.divide(t ** 2 + one, t + one) == t + one


def test_divide_by_zero():
    with pytest.raises(ZeroDivisionError):
        R.divide(R.one(R.ZT), R.zero(R.ZT))


def test_ring_axioms_randomized():
    rng = random.Random(101)
    for ring in (R.ZT, R.F2T, R.QT, R.universal(2), R.S_BN):
        for _ in range(40):
            a = helpers.random_poly(rng, ring, allow_zero=True)
            b = helpers.random_poly(rng, ring, allow_zero=True)
            c = helpers.random_poly(rng, ring, allow_zero=True)
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * R.one(ring) == a
            assert a + R.zero(ring) == a
            assert a - a == R.zero(ring)


def test_base_change_is_ring_hom_randomized():
    rng = random.Random(202)
    t_img = R.var(R.F4, "x")
    for _ in range(60):
        a = helpers.random_poly(rng, R.ZT, allow_zero=True)
        b = helpers.random_poly(rng, R.ZT, allow_zero=True)
        f = lambda p: R.base_change(p, {"T": t_img}, R.F4)
        assert f(a * b) == f(a) * f(b)
        assert f(a + b) == f(a) + f(b)


def test_normalization_idempotent():
    rng = random.Random(303)
    for ring in (R.ZT, R.F2T, R.QT):
        for _ in range(40):
            p = helpers.random_poly(rng, ring)
            # rebuilding from the term dictionary is the identity
            assert R.LaurentPoly(ring, p.terms_dict()) == p
            n = R.normalize_associate(p)
            assert R.normalize_associate(n) == n


def test_parse_print_round_trip():
    U3 = R.universal(3)
    s = "U^{1/3}*T^2 - U^{1/3}*T^-2"
    assert R.parse(U3, s).to_str() == s
    for ring, text in [
        (R.ZT, "T^4 - 2 + T^-4"),
        (R.ZT, "-3*T + 1"),
        (R.QT, "1/2*T - 1/3"),
        (R.F2T, "T^2 + T^-2"),
        (R.S_BN, "T1*T2*T3 + T1^-1*T2^-1*T3"),
        (R.F4, "x+1"),
        (R.F4T, "(x+1)*T + x"),
    ]:
        assert R.parse(ring, text).to_str() == text


def test_parse_rejects_garbage():
    for bad in ("T^", "2*", "U^{1/3", "(T", "T T", ""):
        with pytest.raises(R.ParseError):
            R.parse(R.universal(3), bad)


def test_poly_x_refused_over_f4():
    with pytest.raises(R.RingError):
        R.poly_x(R.F4T)


def test_gcd_euclidean():
    t = R.var(R.QT, "T")
    one = R.one(R.QT)
    g = R.gcd((t ** 2 - t ** -2) * (t + one), (t ** 2 - t ** -2) * (t - one))
    assert R.divide(g, R.normalize_associate(t ** 2 - t ** -2)) is not None \
        or g == R.normalize_associate(t ** 2 - t ** -2)


def test_ring_descriptor_round_trip():
    import json
    for ring in (R.Z, R.Q, R.F2, R.F4, R.ZT, R.QT, R.F2T, R.F4T, R.S_BN,
                 R.R_SHARP, R.universal(5), R.poly_x(R.F2T)):
        doc = json.loads(json.dumps(R.ring_to_dict(ring)))
        assert R.ring_from_dict(doc) == ring
