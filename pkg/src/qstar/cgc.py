"""Classical and q-deformed Clebsch-Gordan coefficients.

The classical coefficients come from the van der Waerden single-sum
formula in the Condon-Shortley convention.  The q-deformed ones are
built constructively from the conventions pinned in `reps`:

  * the highest-weight vector of the coupled spin-j module inside
    V_{j1} (x) V_{j2} is the normalized kernel of the coproduct of E,
    with the coefficient at maximal m1 positive (Condon-Shortley);
    its coefficients telescope to a closed product form;

  * lower weights follow from the q-binomial expansion of powers of the
    coproduct of F, whose two summands q-commute with parameter q^2.

Because the balanced coproduct matrix of F is the transpose of that of
E, the resulting coupled bases are orthonormal, and the coefficient
matrix is orthogonal order by order in hbar.  The classical limit of
every q-coefficient is the classical coefficient.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hseries import (
    DEFAULT_ORDER,
    HalfInt,
    HSeries,
    gauss_binomial,
    q_factorial,
    q_integer,
    q_power,
    spin,
    triangle,
    weights,
)
from .reps import TensorOp


class InvalidQuery(ValueError):
    """Structurally malformed spin labels (negative spins, non-integral gaps)."""


@dataclass(frozen=True)
class CGQuery:
    """Index set (j1, j2, j; m1, m2, m) of one coupling coefficient."""

    j1: HalfInt
    j2: HalfInt
    j: HalfInt
    m1: HalfInt
    m2: HalfInt
    m: HalfInt

    @classmethod
    def of(cls, j1, j2, j, m1, m2, m) -> "CGQuery":
        return cls(spin(j1), spin(j2), spin(j), spin(m1), spin(m2), spin(m))


def _validate(qr: CGQuery) -> bool:
    """Raise InvalidQuery if malformed; return False if a selection rule kills it."""
    for jj, mm in ((qr.j1, qr.m1), (qr.j2, qr.m2), (qr.j, qr.m)):
        if jj.twice < 0:
            raise InvalidQuery(f"negative spin {jj}")
        if (jj.twice - mm.twice) % 2 != 0:
            raise InvalidQuery(f"m = {mm} is not a weight of spin {jj}")
    if (qr.j1.twice + qr.j2.twice - qr.j.twice) % 2 != 0:
        raise InvalidQuery("j1 + j2 - j is not an integer")
    if abs(qr.m1.twice) > qr.j1.twice or abs(qr.m2.twice) > qr.j2.twice:
        return False
    if abs(qr.m.twice) > qr.j.twice:
        return False
    if qr.m1.twice + qr.m2.twice != qr.m.twice:
        return False
    if not (abs(qr.j1.twice - qr.j2.twice) <= qr.j.twice <= qr.j1.twice + qr.j2.twice):
        return False
    return True


# ---------------------------------------------------------------------------
# classical coefficients (van der Waerden sum, Condon-Shortley)
# ---------------------------------------------------------------------------

def cg(qr: CGQuery) -> float:
    """Classical Clebsch-Gordan coefficient <j1 m1 j2 m2 | j m>."""
    if not _validate(qr):
        return 0.0
    tj1, tj2, tj = qr.j1.twice, qr.j2.twice, qr.j.twice
    tm1, tm2, tm = qr.m1.twice, qr.m2.twice, qr.m.twice

    fact = math.factorial
    pre = (tj + 1) * fact((tj1 + tj2 - tj) // 2) * fact((tj1 - tj2 + tj) // 2) \
        * fact((-tj1 + tj2 + tj) // 2) / fact((tj1 + tj2 + tj) // 2 + 1)
    pre *= fact((tj1 + tm1) // 2) * fact((tj1 - tm1) // 2) \
        * fact((tj2 + tm2) // 2) * fact((tj2 - tm2) // 2) \
        * fact((tj + tm) // 2) * fact((tj - tm) // 2)

    a = (tj1 + tj2 - tj) // 2
    b = (tj1 - tm1) // 2
    c = (tj2 + tm2) // 2
    d = (tj - tj2 + tm1) // 2  # may be negative; shifts the z range
    e = (tj - tj1 - tm2) // 2
    zmin = max(0, -d, -e)
    zmax = min(a, b, c)
    total = 0.0
    for z in range(zmin, zmax + 1):
        total += (-1.0) ** z / (
            fact(z) * fact(a - z) * fact(b - z) * fact(c - z) * fact(d + z) * fact(e + z)
        )
    return math.sqrt(pre) * total


# ---------------------------------------------------------------------------
# q-deformed coefficients
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _hw_coeffs(tj1: int, tj2: int, tj: int, order: int):
    """Normalized highest-weight coefficients c_{mu1} of the coupled spin-j
    module, keyed by twice mu1, Condon-Shortley positive at mu1 = j1."""
    mu_top = min(tj1, tj + tj2)  # equals tj1 whenever the triangle rule holds
    mu_bot = max(-tj1, tj - tj2)
    coeffs = {mu_top: HSeries.one(order)}
    qfac = q_power(-(tj + 2) / 2.0, order)  # q^{-(j+1)}
    tnu = mu_top
    while tnu > mu_bot:
        ratio = (
            q_integer((tj2 - tj + tnu) // 2, order)
            * q_integer((tj2 + tj - tnu) // 2 + 1, order)
            * (
                q_integer((tj1 - tnu) // 2 + 1, order)
                * q_integer((tj1 + tnu) // 2, order)
            ).invert()
        ).sqrt()
        coeffs[tnu - 2] = -(coeffs[tnu] * qfac * ratio)
        tnu -= 2
    norm2 = HSeries.zero(order)
    for s in coeffs.values():
        norm2 = norm2 + s * s
    inv_norm = norm2.sqrt().invert()
    return {k: v * inv_norm for k, v in coeffs.items()}


def _prod_q_integers(args, order: int) -> HSeries:
    out = HSeries.one(order)
    for n in args:
        out = out * q_integer(n, order)
    return out


@lru_cache(maxsize=None)
def _qcg_cached(tj1, tj2, tj, tm1, tm2, order) -> HSeries:
    hw = _hw_coeffs(tj1, tj2, tj, order)
    n = (tj - tm1 - tm2) // 2  # number of lowering steps from the top
    # prefactor sqrt([j+m]! / ([2j]! [j-m]!))
    tm = tm1 + tm2
    pre = (
        q_factorial((tj + tm) // 2, order)
        * (q_factorial(tj, order) * q_factorial((tj - tm) // 2, order)).invert()
    )
    total = HSeries.zero(order)
    for k in range(n + 1):
        tmu1 = tm1 + 2 * k
        tmu2 = tm2 + 2 * (n - k)
        if tmu1 not in hw or abs(tmu2) > tj2:
            continue
        # leg factorial ratios of the lowering matrix elements
        leg1 = [(tj1 + tm1) // 2 + i for i in range(1, k + 1)]
        leg1 += [(tj1 - tm1) // 2 - i for i in range(k)]
        leg2 = [(tj2 + tm2) // 2 + i for i in range(1, n - k + 1)]
        leg2 += [(tj2 - tm2) // 2 - i for i in range(n - k)]
        legs = _prod_q_integers(leg1 + leg2, order).sqrt()
        # K-power bookkeeping of the split coproduct word
        expo = (k * tm2 - (n - k) * (tm1 + 2 * k)) / 2.0
        term = gauss_binomial(n, k, 2, order) * hw[tmu1] * q_power(expo, order) * legs
        total = total + term
    return pre.sqrt() * total


def qcg(qr: CGQuery, order: int = DEFAULT_ORDER) -> HSeries:
    """q-deformed Clebsch-Gordan coefficient as a truncated series.

    The constant term is the classical coefficient; zero-by-selection-rule
    queries return an exact zero series.
    """
    if not _validate(qr):
        return HSeries.zero(order)
    return _qcg_cached(qr.j1.twice, qr.j2.twice, qr.j.twice, qr.m1.twice, qr.m2.twice, order)


# ---------------------------------------------------------------------------
# change of basis matrices
# ---------------------------------------------------------------------------

def coupled_labels(j1, j2) -> list:
    """Column labels (j, m): j descending from j1+j2, m ascending within j."""
    j1, j2 = spin(j1), spin(j2)
    return [(j, m) for j in triangle(j1, j2) for m in weights(j)]


@lru_cache(maxsize=None)
def _cg_matrix_cached(tj1: int, tj2: int, deformed: bool, order: int) -> TensorOp:
    j1, j2 = HalfInt(tj1), HalfInt(tj2)
    rows = [(m1, m2) for m1 in weights(j1) for m2 in weights(j2)]
    cols = coupled_labels(j1, j2)
    dim = len(rows)
    data = np.zeros((order + 1, dim, dim))
    for ci, (j, m) in enumerate(cols):
        for ri, (m1, m2) in enumerate(rows):
            if m1.twice + m2.twice != m.twice:
                continue
            qr = CGQuery(j1, j2, j, m1, m2, m)
            if deformed:
                data[:, ri, ci] = qcg(qr, order).coeffs
            else:
                data[0, ri, ci] = cg(qr)
    return TensorOp((j1, j2), data)


def cg_matrix(j1, j2, deformed: bool = True, order: int = DEFAULT_ORDER) -> TensorOp:
    """Orthogonal change of basis from the product basis (rows, row-major
    (m1, m2)) to the coupled basis (columns, j descending then m ascending).

    The deformed variant intertwines the deformed coproduct, the undeformed
    variant the classical one: conjugation block-diagonalizes coproduct
    matrices into single-irrep blocks.
    """
    return _cg_matrix_cached(spin(j1).twice, spin(j2).twice, bool(deformed), order)
