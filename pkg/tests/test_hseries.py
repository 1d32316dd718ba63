import math

import numpy as np
import pytest

from qstar.hseries import (
    HSeries,
    IndexOutOfRange,
    NonPositiveLeadingTerm,
    NonUnitSeries,
    gauss_binomial,
    q_factorial,
    q_integer,
    q_power,
    spin,
    triangle,
    weights,
)


def taylor_exp(a, order):
    # independent oracle: Taylor coefficients of exp(a*h)
    return np.array([a**k / math.factorial(k) for k in range(order + 1)])


def cauchy(a, b):
    # brute-force truncated product, independent of HSeries.__mul__
    n = min(len(a), len(b))
    out = np.zeros(n)
    for k in range(n):
        for i in range(k + 1):
            out[k] += a[i] * b[k - i]
    return out


def test_add_one_plus_hbar():
    s = HSeries.one(4) + HSeries.hbar(4)
    np.testing.assert_allclose(s.coeffs, [1, 1, 0, 0, 0])


def test_mul_binomial_identity():
    a = HSeries([1, 1, 0])
    b = HSeries([1, -1, 0])
    np.testing.assert_allclose((a * b).coeffs, [1, 0, -1])


def test_mul_exp_pair_cancels():
    order = 6
    e_plus = HSeries(taylor_exp(1.0, order))
    e_minus = HSeries(taylor_exp(-1.0, order))
    expected = cauchy(e_plus.coeffs, e_minus.coeffs)
    got = e_plus * e_minus
    np.testing.assert_allclose(got.coeffs, expected, atol=1e-15)
    np.testing.assert_allclose(got.coeffs, [1, 0, 0, 0, 0, 0, 0], atol=1e-12)


def test_min_order_truncation():
    a = HSeries([1, 2, 3, 4])
    b = HSeries([1, 1])
    assert (a + b).order == 1
    assert (a * b).order == 1
    np.testing.assert_allclose((a * b).coeffs, [1, 3])


def test_scale_and_neg():
    a = HSeries([2, -4, 6])
    np.testing.assert_allclose((0.5 * a).coeffs, [1, -2, 3])
    np.testing.assert_allclose((-a).coeffs, [-2, 4, -6])
    np.testing.assert_allclose((a - 2).coeffs, [0, -4, 6])
    np.testing.assert_allclose((2 - a).coeffs, [0, 4, -6])


def test_ring_axioms_random():
    rng = np.random.default_rng(20260808)
    for _ in range(25):
        a = HSeries(rng.uniform(-2, 2, size=9))
        b = HSeries(rng.uniform(-2, 2, size=9))
        c = HSeries(rng.uniform(-2, 2, size=9))
        assert ((a * b) * c).max_abs_diff(a * (b * c)) < 1e-12
        assert (a * (b + c)).max_abs_diff(a * b + a * c) < 1e-12
        assert (a + (b + c)).max_abs_diff((a + b) + c) < 1e-12
        assert (a * b).max_abs_diff(b * a) < 1e-12


def test_invert_identity_and_geometric():
    assert HSeries.one(3).invert().approx_eq(HSeries.one(3))
    inv = (HSeries.one(3) + HSeries.hbar(3)).invert()
    np.testing.assert_allclose(inv.coeffs, [1, -1, 1, -1], atol=1e-14)


def test_invert_exp():
    got = q_power(1, 6).invert()
    np.testing.assert_allclose(got.coeffs, taylor_exp(-1.0, 6), atol=1e-13)


def test_invert_is_two_sided():
    rng = np.random.default_rng(7)
    for _ in range(10):
        c = rng.uniform(-1, 1, size=7)
        c[0] = rng.uniform(0.5, 2.0)
        a = HSeries(c)
        assert (a * a.invert()).max_abs_diff(HSeries.one(6)) < 1e-12
        assert (a.invert() * a).max_abs_diff(HSeries.one(6)) < 1e-12


def test_invert_requires_unit():
    with pytest.raises(NonUnitSeries):
        HSeries.hbar(4).invert()
    with pytest.raises(NonUnitSeries):
        HSeries([1e-13, 1.0]).invert()


def test_sqrt_constants():
    assert HSeries.one(4).sqrt().approx_eq(HSeries.one(4))
    np.testing.assert_allclose(HSeries.constant(4.0, 3).sqrt().coeffs, [2, 0, 0, 0])


def test_sqrt_squares_back():
    s = q_integer(2, 8)
    r = s.sqrt()
    assert (r * r).max_abs_diff(s) < 1e-12


def test_sqrt_requires_positive():
    with pytest.raises(NonPositiveLeadingTerm):
        HSeries([-1.0, 0.0]).sqrt()
    with pytest.raises(NonPositiveLeadingTerm):
        HSeries.hbar(3).sqrt()


def test_q_power_values():
    assert q_power(0, 5).approx_eq(HSeries.one(5))
    np.testing.assert_allclose(q_power(1, 6).coeffs, taylor_exp(1.0, 6))
    pair = q_power(-2, 8) * q_power(2, 8)
    assert pair.max_abs_diff(HSeries.one(8)) < 1e-12
    np.testing.assert_allclose(q_power(spin("3/2"), 4).coeffs, taylor_exp(1.5, 4))


def test_q_integer_small():
    assert q_integer(0, 5).approx_eq(HSeries.zero(5))
    assert q_integer(1, 5).approx_eq(HSeries.one(5))
    # [2] = q + q^-1 = 2 cosh(hbar)
    two_cosh = taylor_exp(1.0, 6) + taylor_exp(-1.0, 6)
    np.testing.assert_allclose(q_integer(2, 6).coeffs, two_cosh, atol=1e-14)
    np.testing.assert_allclose(q_integer(2, 6).coeffs, [2, 0, 1, 0, 1 / 12, 0, 1 / 360], atol=1e-14)


@pytest.mark.parametrize("n", range(9))
def test_q_integer_classical_limit_and_parity(n):
    s = q_integer(n, 8)
    assert abs(s.const - n) < 1e-12
    # invariance under q <-> 1/q means the series is even in hbar
    np.testing.assert_allclose(s.coeffs[1::2], 0.0, atol=1e-12)


@pytest.mark.parametrize("n", range(9))
def test_q_factorial_classical_limit(n):
    assert abs(q_factorial(n, 6).const - math.factorial(n)) < 1e-12


def test_q_factorial_small():
    assert q_factorial(0, 4).approx_eq(HSeries.one(4))
    assert q_factorial(1, 4).approx_eq(HSeries.one(4))
    assert abs(q_factorial(3, 6).const - 6.0) < 1e-12


def test_gauss_binomial_edges():
    for n in range(5):
        assert gauss_binomial(n, 0, -2, 6).approx_eq(HSeries.one(6))
        assert gauss_binomial(n, n, -2, 6).max_abs_diff(HSeries.one(6)) < 1e-12


def test_gauss_binomial_2_1():
    # direct oracle: (1-Q^2)/(1-Q) = 1 + Q at Q = exp(-2 hbar)
    expected = HSeries(taylor_exp(-2.0, 6)) + 1.0
    got = gauss_binomial(2, 1, -2, 6)
    assert got.max_abs_diff(expected) < 1e-13
    np.testing.assert_allclose(got.coeffs[:3], [2, -2, 2], atol=1e-13)


@pytest.mark.parametrize("n,k", [(4, 2), (6, 3), (5, 1), (8, 4), (7, 2)])
def test_gauss_binomial_classical_limit(n, k):
    for base in (-2, 2):
        assert abs(gauss_binomial(n, k, base, 6).const - math.comb(n, k)) < 1e-11


@pytest.mark.parametrize("n", range(1, 7))
def test_gauss_binomial_symmetry(n):
    for k in range(n + 1):
        a = gauss_binomial(n, k, -2, 6)
        b = gauss_binomial(n, n - k, -2, 6)
        assert a.max_abs_diff(b) < 1e-12


def test_gauss_binomial_errors():
    with pytest.raises(IndexOutOfRange):
        gauss_binomial(2, 3, -2)
    with pytest.raises(IndexOutOfRange):
        gauss_binomial(2, -1, -2)
    with pytest.raises(ValueError):
        gauss_binomial(2, 1, 0)


def test_json_round_trip():
    s = q_integer(3, 5)
    d = s.to_json()
    assert d["order"] == 5 and len(d["coeffs"]) == 6
    assert HSeries.from_json(d).approx_eq(s)
    with pytest.raises(ValueError):
        HSeries.from_json({"order": 3, "coeffs": [1.0]})


def test_truncated_and_eval():
    s = q_power(1, 6)
    t = s.truncated(2)
    assert t.order == 2
    with pytest.raises(ValueError):
        t.truncated(5)
    assert abs(s.eval(0.0) - 1.0) < 1e-15
    assert abs(s.eval(0.1) - math.exp(0.1)) < 1e-8


def test_halfint_and_spin():
    assert spin(2).twice == 4
    assert spin(0.5).twice == 1
    assert spin("3/2").twice == 3
    assert spin("-1/2").twice == -1
    assert spin("2").twice == 4
    assert spin(spin(1)) == spin(1)
    with pytest.raises(ValueError):
        spin(0.3)
    with pytest.raises(ValueError):
        spin("3/4")
    j = spin("3/2")
    assert (j + spin(0.5)).twice == 4
    assert (j - 1).twice == 1
    assert (-j).twice == -3
    assert abs(-j) == j
    assert spin(1) < spin("3/2")
    assert str(j) == "3/2" and str(spin(2)) == "2"
    assert j.value == 1.5 and not j.is_integer()


def test_weights_and_triangle():
    assert [m.twice for m in weights(spin(1))] == [-2, 0, 2]
    assert [j.twice for j in triangle(spin(0.5), spin(0.5))] == [2, 0]
    assert [j.twice for j in triangle(spin(1), spin("3/2"))] == [5, 3, 1]
