#!/usr/bin/env python3
# Truncated series in hbar and the q-number toolkit.
#
# Every scalar in qstar is a real power series in hbar truncated at a fixed
# order; q itself is the series exp(hbar).  This script walks through the
# basic arithmetic and the q-analog functions derived from it.

import numpy as np

from qstar import HSeries, gauss_binomial, q_factorial, q_integer, q_power

order = 6

# q = exp(hbar): coefficients are 1/k!
q = q_power(1, order)
print("q = exp(hbar):", q)

# q and q^-1 cancel up to the truncation order
print("q * q^-1    :", q * q_power(-1, order))

# series inversion and square roots work order by order
s = HSeries([1.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0])  # 1 + hbar
print("1/(1+hbar)  :", s.invert())
print("sqrt(4)     :", HSeries.constant(4.0, 3).sqrt())

# the symmetric q-integer [n] = (q^n - q^-n)/(q - q^-1) is even in hbar and
# has classical limit n
for n in range(4):
    print(f"[{n}]_q =", q_integer(n, order))

# [2] = q + 1/q = 2 cosh(hbar); compare against the Taylor series directly
two_cosh = np.array([2, 0, 1, 0, 1 / 12, 0, 1 / 360])
print("[2] - 2cosh(h):", np.max(np.abs(q_integer(2, order).coeffs - two_cosh)))

# q-factorials multiply q-integers; constant term is n!
print("[4]! =", q_factorial(4, order))

# Gauss binomials at Q = q^-2 normalize the plane's T-basis.
# The constant term is the classical binomial coefficient.
print("[4 choose 2]_{q^-2} =", gauss_binomial(4, 2, -2, order))
print("classical limit     =", gauss_binomial(4, 2, -2, order).const)
