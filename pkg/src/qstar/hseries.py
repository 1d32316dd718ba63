"""Truncated power series in the deformation parameter, and q-numbers.

Every scalar in this package is a real formal power series in hbar,
truncated inclusively at a fixed order.  The parameter q is the series
exp(hbar); symmetric q-integers, q-factorials and Gauss binomial
coefficients are all ordinary truncated series derived from it.

Arithmetic between series of different orders truncates the result to the
smaller order: no coefficient is ever fabricated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

DEFAULT_ORDER = 6

__all__ = [
    "DEFAULT_ORDER",
    "HSeries",
    "HalfInt",
    "spin",
    "weights",
    "triangle",
    "q_power",
    "q_integer",
    "q_factorial",
    "gauss_binomial",
    "NonUnitSeries",
    "NonPositiveLeadingTerm",
    "IndexOutOfRange",
]


class NonUnitSeries(ValueError):
    """Inversion of a series whose constant term vanishes."""


class NonPositiveLeadingTerm(ValueError):
    """Square root of a series whose constant term is not positive."""


class IndexOutOfRange(ValueError):
    """Gauss binomial index outside 0 <= k <= n."""


@dataclass(frozen=True, order=True)
class HalfInt:
    """Exact half-integer, stored as twice its value."""

    twice: int

    @property
    def value(self) -> float:
        return self.twice / 2

    def is_integer(self) -> bool:
        return self.twice % 2 == 0

    def __add__(self, other) -> "HalfInt":
        return HalfInt(self.twice + spin(other).twice)

    def __radd__(self, other) -> "HalfInt":
        return self.__add__(other)

    def __sub__(self, other) -> "HalfInt":
        return HalfInt(self.twice - spin(other).twice)

    def __rsub__(self, other) -> "HalfInt":
        return HalfInt(spin(other).twice - self.twice)

    def __neg__(self) -> "HalfInt":
        return HalfInt(-self.twice)

    def __abs__(self) -> "HalfInt":
        return HalfInt(abs(self.twice))

    def __str__(self) -> str:
        if self.twice % 2 == 0:
            return str(self.twice // 2)
        return f"{self.twice}/2"


def spin(x) -> HalfInt:
    """Coerce an int, float, ``"n/2"`` string or HalfInt to a HalfInt."""
    if isinstance(x, HalfInt):
        return x
    if isinstance(x, int):
        return HalfInt(2 * x)
    if isinstance(x, float):
        t = 2 * x
        if t != int(t):
            raise ValueError(f"{x} is not a half-integer")
        return HalfInt(int(t))
    if isinstance(x, str):
        s = x.strip()
        if "/" in s:
            num, _, den = s.partition("/")
            if den.strip() != "2":
                raise ValueError(f"cannot parse spin {x!r}")
            return HalfInt(int(num))
        return HalfInt(2 * int(s))
    raise TypeError(f"cannot interpret {x!r} as a half-integer")


def weights(j: HalfInt) -> list[HalfInt]:
    """Magnetic labels m = -j .. j in ascending order."""
    j = spin(j)
    return [HalfInt(t) for t in range(-j.twice, j.twice + 1, 2)]


def triangle(j1: HalfInt, j2: HalfInt) -> list[HalfInt]:
    """Admissible coupled spins, descending from j1+j2 to |j1-j2|."""
    j1, j2 = spin(j1), spin(j2)
    top, bot = j1.twice + j2.twice, abs(j1.twice - j2.twice)
    return [HalfInt(t) for t in range(top, bot - 1, -2)]


class HSeries:
    """Real power series in hbar, truncated at a fixed order (inclusive)."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        c = np.array(coeffs, dtype=float)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coeffs must be a non-empty 1-d sequence")
        c.setflags(write=False)
        self._c = c

    @classmethod
    def constant(cls, value: float, order: int = DEFAULT_ORDER) -> "HSeries":
        c = np.zeros(order + 1)
        c[0] = value
        return cls(c)

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls(np.zeros(order + 1))

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        return cls.constant(1.0, order)

    @classmethod
    def hbar(cls, order: int = DEFAULT_ORDER) -> "HSeries":
        c = np.zeros(order + 1)
        if order >= 1:
            c[1] = 1.0
        return cls(c)

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    @property
    def const(self) -> float:
        return float(self._c[0])

    def _coerce(self, other):
        if isinstance(other, HSeries):
            return other
        if isinstance(other, (int, float)):
            return HSeries.constant(float(other), self.order)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self._c.size, o._c.size)
        return HSeries(self._c[:n] + o._c[:n])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = min(self._c.size, o._c.size)
        return HSeries(self._c[:n] - o._c[:n])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o.__sub__(self)

    def __neg__(self):
        return HSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return HSeries(self._c * float(other))
        if isinstance(other, HSeries):
            n = min(self._c.size, other._c.size)
            return HSeries(np.convolve(self._c[:n], other._c[:n])[:n])
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("powers must be non-negative integers")
        out = HSeries.one(self.order)
        for _ in range(n):
            out = out * self
        return out

    def invert(self) -> "HSeries":
        """Multiplicative inverse; requires a non-vanishing constant term."""
        c = self._c
        if abs(c[0]) <= 1e-12:
            raise NonUnitSeries("constant term vanishes; series is not invertible")
        out = np.zeros_like(c)
        out[0] = 1.0 / c[0]
        for k in range(1, c.size):
            out[k] = -(c[1 : k + 1] @ out[k - 1 :: -1]) / c[0]
        return HSeries(out)

    def sqrt(self) -> "HSeries":
        """Square root with positive branch at hbar^0."""
        c = self._c
        if c[0] <= 0.0:
            raise NonPositiveLeadingTerm("constant term must be positive")
        out = np.zeros_like(c)
        out[0] = math.sqrt(c[0])
        for k in range(1, c.size):
            acc = c[k] - out[1:k] @ out[k - 1 : 0 : -1]
            out[k] = acc / (2.0 * out[0])
        return HSeries(out)

    def truncated(self, order: int) -> "HSeries":
        if order > self.order:
            raise ValueError("cannot extend a truncated series")
        return HSeries(self._c[: order + 1])

    def max_abs_diff(self, other: "HSeries") -> float:
        o = self._coerce(other)
        n = min(self._c.size, o._c.size)
        return float(np.max(np.abs(self._c[:n] - o._c[:n])))

    def approx_eq(self, other, tol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= tol

    def is_zero(self, tol: float = 0.0) -> bool:
        return bool(np.all(np.abs(self._c) <= tol))

    def eval(self, h: float) -> float:
        """Plain polynomial evaluation of the truncated series at hbar = h."""
        return float(np.polynomial.polynomial.polyval(h, self._c))

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [float(v) for v in self._c]}

    @classmethod
    def from_json(cls, d: dict) -> "HSeries":
        coeffs = d["coeffs"]
        if len(coeffs) != d["order"] + 1:
            raise ValueError("coeffs length does not match order")
        return cls(coeffs)

    def __repr__(self):
        return f"HSeries({np.array2string(self._c, separator=', ')})"

    def __str__(self):
        parts = []
        for k, v in enumerate(self._c):
            if v == 0.0 and not (k == 0 and len(parts) == 0 and np.all(self._c == 0)):
                continue
            if k == 0:
                parts.append(f"{v:g}")
            elif k == 1:
                parts.append(f"{v:g}*h")
            else:
                parts.append(f"{v:g}*h^{k}")
        return " + ".join(parts) if parts else "0"


@lru_cache(maxsize=None)
def _exp_series(x: float, order: int) -> HSeries:
    c = np.array([x**k / math.factorial(k) for k in range(order + 1)])
    return HSeries(c)


def q_power(a, order: int = DEFAULT_ORDER) -> HSeries:
    """q^a = exp(a*hbar) as a truncated series; a may be half-integral."""
    if isinstance(a, HalfInt):
        x = a.value
    else:
        x = float(a)
    return _exp_series(x, order)


@lru_cache(maxsize=None)
def _q_integer_cached(n: int, order: int) -> HSeries:
    # symmetric q-integer: [n] = q^(n-1) + q^(n-3) + ... + q^(1-n)
    c = np.zeros(order + 1)
    for i in range(n):
        c += _exp_series(float(n - 1 - 2 * i), order).coeffs
    return HSeries(c)


def q_integer(n: int, order: int = DEFAULT_ORDER) -> HSeries:
    """Symmetric q-integer [n] = (q^n - q^-n)/(q - q^-1), n >= 0."""
    if n < 0:
        raise ValueError("q_integer is defined for n >= 0")
    return _q_integer_cached(n, order)


@lru_cache(maxsize=None)
def _q_factorial_cached(n: int, order: int) -> HSeries:
    if n == 0:
        return HSeries.one(order)
    return _q_factorial_cached(n - 1, order) * _q_integer_cached(n, order)


def q_factorial(n: int, order: int = DEFAULT_ORDER) -> HSeries:
    """[n]! = [1][2]...[n], with [0]! = 1."""
    if n < 0:
        raise ValueError("q_factorial is defined for n >= 0")
    return _q_factorial_cached(n, order)


@lru_cache(maxsize=None)
def _expm1_over_h(a: float, order: int) -> HSeries:
    # (exp(a*hbar) - 1)/hbar, exact at every truncation order
    c = np.array([a ** (k + 1) / math.factorial(k + 1) for k in range(order + 1)])
    return HSeries(c)


@lru_cache(maxsize=None)
def _gauss_binomial_cached(n: int, k: int, base_exp: int, order: int) -> HSeries:
    out = HSeries.one(order)
    for i in range(1, k + 1):
        num = _expm1_over_h(float(base_exp * (n - i + 1)), order)
        den = _expm1_over_h(float(base_exp * i), order)
        out = out * num * den.invert()
    return out


def gauss_binomial(n: int, k: int, base_exp: int = -2, order: int = DEFAULT_ORDER) -> HSeries:
    """Gauss binomial [n choose k] at parameter Q = q^base_exp.

    Computed from the product formula prod_{i=1..k} (1-Q^(n-i+1))/(1-Q^i);
    the constant term is the classical binomial C(n, k).
    """
    if n < 0 or k < 0 or k > n:
        raise IndexOutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    if base_exp == 0:
        raise ValueError("base_exp must be a nonzero integer")
    if k > n - k:
        k = n - k  # Gauss binomials are symmetric in k <-> n-k
    return _gauss_binomial_cached(n, k, base_exp, order)
