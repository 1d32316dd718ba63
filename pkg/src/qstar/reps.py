"""Weight representations of deformed and undeformed su(2).

Matrices are stored as numpy arrays of shape (order+1, dim, dim): slice k
holds the coefficient of hbar^k.  The weight basis is v_m with m ascending
from -j to j, so K is diagonal with ascending exponents, E is strictly
raising and F strictly lowering.

Conventions (pinned jointly with the coupling coefficients in `cgc` and
the product checks in `qplane`):

    E v_m = sqrt([j-m][j+m+1]) v_{m+1}
    F v_m = sqrt([j+m][j-m+1]) v_{m-1}
    K v_m = q^{2m} v_m

and the balanced coproducts

    D(E) = E (x) K^{1/2} + K^{-1/2} (x) E
    D(F) = F (x) K^{1/2} + K^{-1/2} (x) F
    D(K) = K (x) K

The half-powers of K exist at the level of weight matrices (diag q^{m});
they make the transpose of D(E) equal to D(F), which is what guarantees
an orthonormal coupled basis.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .hseries import DEFAULT_ORDER, HalfInt, HSeries, q_integer, q_power, spin, weights

DEFORMED_TAGS = ("E", "F", "K", "Kinv")
UNDEFORMED_TAGS = ("e", "f", "h")
_HALF_TAGS = ("Khalf", "Kinvhalf")  # internal, for coproduct expansion


class MixedFamily(ValueError):
    """Deformed flag paired with an undeformed generator tag, or vice versa."""


# ---------------------------------------------------------------------------
# raw series-matrix kernels
# ---------------------------------------------------------------------------

def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    k_out = min(a.shape[0], b.shape[0])
    out = np.zeros((k_out, a.shape[1], b.shape[2]))
    for k in range(k_out):
        for i in range(k + 1):
            out[k] += a[i] @ b[k - i]
    return out


def mat_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    k_out = min(a.shape[0], b.shape[0])
    n = a.shape[1] * b.shape[1]
    out = np.zeros((k_out, n, n))
    for k in range(k_out):
        for i in range(k + 1):
            out[k] += np.kron(a[i], b[k - i])
    return out


def mat_scale(a: np.ndarray, s: HSeries) -> np.ndarray:
    k_out = min(a.shape[0], s.order + 1)
    out = np.zeros((k_out,) + a.shape[1:])
    for k in range(k_out):
        for i in range(k + 1):
            out[k] += s.coeffs[i] * a[k - i]
    return out


def mat_eye(n: int, order: int) -> np.ndarray:
    out = np.zeros((order + 1, n, n))
    out[0] = np.eye(n)
    return out


def mat_inv(a: np.ndarray) -> np.ndarray:
    """Order-by-order inverse; requires an invertible constant slice."""
    inv0 = np.linalg.inv(a[0])
    out = np.zeros_like(a)
    out[0] = inv0
    for k in range(1, a.shape[0]):
        acc = np.zeros_like(a[0])
        for i in range(1, k + 1):
            acc += a[i] @ out[k - i]
        out[k] = -inv0 @ acc
    return out


def mat_apply(a: np.ndarray, vec: np.ndarray) -> np.ndarray:
    """Apply a series matrix to a series column vector (order+1, n)."""
    k_out = min(a.shape[0], vec.shape[0])
    out = np.zeros((k_out, a.shape[1]))
    for k in range(k_out):
        for i in range(k + 1):
            out[k] += a[i] @ vec[k - i]
    return out


# ---------------------------------------------------------------------------
# operator wrappers
# ---------------------------------------------------------------------------

class _SeriesOperator:
    """Shared arithmetic for square matrices over truncated series."""

    data: np.ndarray

    def _wrap(self, data: np.ndarray):
        raise NotImplementedError

    @property
    def order(self) -> int:
        return self.data.shape[0] - 1

    @property
    def dim(self) -> int:
        return self.data.shape[1]

    def __matmul__(self, other):
        return self._wrap(mat_mul(self.data, other.data))

    def __add__(self, other):
        n = min(self.data.shape[0], other.data.shape[0])
        return self._wrap(self.data[:n] + other.data[:n])

    def __sub__(self, other):
        n = min(self.data.shape[0], other.data.shape[0])
        return self._wrap(self.data[:n] - other.data[:n])

    def scale(self, s):
        if isinstance(s, HSeries):
            return self._wrap(mat_scale(self.data, s))
        return self._wrap(self.data * float(s))

    def inverse(self):
        return self._wrap(mat_inv(self.data))

    def transpose(self):
        return self._wrap(self.data.transpose(0, 2, 1))

    def identity_like(self):
        return self._wrap(mat_eye(self.dim, self.order))

    def constant_term(self) -> np.ndarray:
        return self.data[0].copy()

    def max_norm(self) -> float:
        return float(np.max(np.abs(self.data)))

    def max_diff(self, other) -> float:
        n = min(self.data.shape[0], other.data.shape[0])
        return float(np.max(np.abs(self.data[:n] - other.data[:n])))

    def entry(self, row: int, col: int) -> HSeries:
        return HSeries(self.data[:, row, col])

    def to_json(self) -> list:
        return [
            [HSeries(self.data[:, r, c]).to_json() for c in range(self.dim)]
            for r in range(self.dim)
        ]


@dataclass(eq=False)
class RepMatrix(_SeriesOperator):
    """Square series matrix acting on the weight basis of one irrep."""

    spin: HalfInt
    data: np.ndarray

    def __post_init__(self):
        self.data.setflags(write=False)

    def _wrap(self, data):
        return RepMatrix(self.spin, data)


@dataclass(eq=False)
class TensorOp(_SeriesOperator):
    """Square series matrix on a tensor product of irreps, row-major factor order."""

    factor_spins: tuple
    data: np.ndarray

    def __post_init__(self):
        self.data.setflags(write=False)

    def _wrap(self, data):
        return TensorOp(self.factor_spins, data)


def tensor_product(a, b) -> TensorOp:
    fa = a.factor_spins if isinstance(a, TensorOp) else (a.spin,)
    fb = b.factor_spins if isinstance(b, TensorOp) else (b.spin,)
    return TensorOp(fa + fb, mat_kron(a.data, b.data))


def rep_identity(j, order: int = DEFAULT_ORDER) -> RepMatrix:
    j = spin(j)
    return RepMatrix(j, mat_eye(j.twice + 1, order))


def tensor_identity(spins, order: int = DEFAULT_ORDER) -> TensorOp:
    spins = tuple(spin(s) for s in spins)
    dim = 1
    for s in spins:
        dim *= s.twice + 1
    return TensorOp(spins, mat_eye(dim, order))


# ---------------------------------------------------------------------------
# irreducible representations
# ---------------------------------------------------------------------------

def _check_family(g: str, deformed: bool):
    if deformed and g not in DEFORMED_TAGS + _HALF_TAGS:
        raise MixedFamily(f"generator {g!r} is not in the deformed family")
    if not deformed and g not in UNDEFORMED_TAGS:
        raise MixedFamily(f"generator {g!r} is not in the undeformed family")


def _irrep_data(j: HalfInt, g: str, deformed: bool, order: int) -> np.ndarray:
    dim = j.twice + 1
    out = np.zeros((order + 1, dim, dim))
    ms = weights(j)

    def put(row, col, series):
        out[:, row, col] = series.coeffs

    for idx, m in enumerate(ms):
        jm = (j.twice - m.twice) // 2  # j - m
        jp = (j.twice + m.twice) // 2  # j + m
        if g == "E" and idx + 1 < dim:
            put(idx + 1, idx, (q_integer(jm, order) * q_integer(jp + 1, order)).sqrt())
        elif g == "F" and idx - 1 >= 0:
            put(idx - 1, idx, (q_integer(jp, order) * q_integer(jm + 1, order)).sqrt())
        elif g == "K":
            put(idx, idx, q_power(m + m, order))
        elif g == "Kinv":
            put(idx, idx, q_power(-(m + m), order))
        elif g == "Khalf":
            put(idx, idx, q_power(m, order))
        elif g == "Kinvhalf":
            put(idx, idx, q_power(-m, order))
        elif g == "e" and idx + 1 < dim:
            put(idx + 1, idx, HSeries.constant(np.sqrt(jm * (jp + 1)), order))
        elif g == "f" and idx - 1 >= 0:
            put(idx - 1, idx, HSeries.constant(np.sqrt(jp * (jm + 1)), order))
        elif g == "h":
            put(idx, idx, HSeries.constant(float(m.twice), order))
    return out


def irrep_generator(j, g: str, deformed: bool = True, order: int = DEFAULT_ORDER) -> RepMatrix:
    """Matrix of a single generator on the spin-j weight basis."""
    j = spin(j)
    if g in _HALF_TAGS:
        raise MixedFamily(f"{g!r} is internal; use K/Kinv")
    _check_family(g, deformed)
    return RepMatrix(j, _irrep_data(j, g, deformed, order))


def _internal_generator(j, g: str, order: int) -> RepMatrix:
    # same as irrep_generator but also admits the half K powers
    j = spin(j)
    deformed = g not in UNDEFORMED_TAGS
    return RepMatrix(j, _irrep_data(j, g, deformed, order))


def _signed_q_integer(t: int, order: int) -> HSeries:
    # [n] for n of either sign; [-n] = -[n]
    if t >= 0:
        return q_integer(t, order)
    return -q_integer(-t, order)


def verify_irrep_relations(j, order: int = DEFAULT_ORDER) -> float:
    """Max residual of the deformed su(2) relations on the spin-j irrep."""
    j = spin(j)
    E = irrep_generator(j, "E", True, order)
    F = irrep_generator(j, "F", True, order)
    K = irrep_generator(j, "K", True, order)
    Kinv = irrep_generator(j, "Kinv", True, order)

    # (K - K^-1)/(q - q^-1) acts diagonally as the signed q-integer [2m]
    dim = j.twice + 1
    cartan = np.zeros((order + 1, dim, dim))
    for idx, m in enumerate(weights(j)):
        cartan[:, idx, idx] = _signed_q_integer(m.twice, order).coeffs

    r1 = np.max(np.abs((E @ F - F @ E).data - cartan))
    q2 = q_power(2, order)
    r2 = (K @ E @ Kinv).max_diff(E.scale(q2))
    r3 = (K @ F @ Kinv).max_diff(F.scale(q_power(-2, order)))
    return max(float(r1), r2, r3)


# ---------------------------------------------------------------------------
# coproducts on tensor products
# ---------------------------------------------------------------------------

def coproduct_terms(g: str, deformed: bool) -> list:
    """Summands (tag1, tag2) of the coproduct of g, in rep-level form."""
    if deformed:
        table = {
            "E": [("E", "Khalf"), ("Kinvhalf", "E")],
            "F": [("F", "Khalf"), ("Kinvhalf", "F")],
            "K": [("K", "K")],
            "Kinv": [("Kinv", "Kinv")],
        }
    else:
        table = {g: [(g, "1"), ("1", g)] for g in UNDEFORMED_TAGS}
    if g not in table:
        raise MixedFamily(f"no coproduct for generator {g!r} (deformed={deformed})")
    return table[g]


def _leg(j: HalfInt, tag: str, order: int) -> np.ndarray:
    if tag == "1":
        return mat_eye(j.twice + 1, order)
    return _internal_generator(j, tag, order).data


def coproduct_rep(j1, j2, g: str, deformed: bool = True, order: int = DEFAULT_ORDER) -> TensorOp:
    """Matrix of the coproduct of g on V_{j1} (x) V_{j2}."""
    j1, j2 = spin(j1), spin(j2)
    _check_family(g, deformed)
    if g in _HALF_TAGS:
        raise MixedFamily(f"{g!r} is internal; use K/Kinv")
    dim = (j1.twice + 1) * (j2.twice + 1)
    out = np.zeros((order + 1, dim, dim))
    for t1, t2 in coproduct_terms(g, deformed):
        out += mat_kron(_leg(j1, t1, order), _leg(j2, t2, order))
    return TensorOp((j1, j2), out)
