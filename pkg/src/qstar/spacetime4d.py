"""Quantum Euclidean 4-space and quantum Minkowski space as star products.

Functions on 4-space are tensor products of two plane factors.  The
Euclidean star product twists legs (1,3) and (2,4) of a pair of such
functions by the plane twist; the Minkowski star product additionally
braids the inner legs (2,3) with the R-matrix:

    F_euclid    = F_13 F_24
    F_minkowski = R^-1_23 F_13 F_24

The R-matrix here is the truncated product form

    R = q^{(H (x) H)/2} sum_n c_n(q)  E^n K^{n/2} (x) F^n K^{-n/2},
    c_n = q^{n(3n-1)/2} (q - q^{-1})^n / [n]!

whose coefficients are forced by intertwining the balanced coproduct with
its opposite; the series terminates because E and F are nilpotent on
finite-dimensional modules.  Quasi-triangularity is pinned by tests, not
taken on faith.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .hseries import DEFAULT_ORDER, HalfInt, HSeries, q_integer, q_power, spin, weights
from .qplane import PlaneElement, _cg_stretched
from .reps import (
    TensorOp,
    coproduct_rep,
    mat_apply,
    mat_eye,
    mat_kron,
    mat_mul,
    mat_scale,
    _internal_generator,
)
from .twist import EtaFunction, twist_rep

VARIANTS = ("euclidean", "minkowski")


@dataclass(eq=False)
class RMatrixRep:
    """R-matrix of the deformed su(2) on one pair of irreps."""

    j1: HalfInt
    j2: HalfInt
    matrix: TensorOp
    inverse: TensorOp


@lru_cache(maxsize=None)
def _r_matrix_cached(tj1: int, tj2: int, order: int) -> RMatrixRep:
    j1, j2 = HalfInt(tj1), HalfInt(tj2)
    d1, d2 = tj1 + 1, tj2 + 1
    dim = d1 * d2

    # diagonal prefactor q^{(H (x) H)/2}: q^{2 m1 m2} on |m1, m2>
    pref = np.zeros((order + 1, dim, dim))
    for i1, m1 in enumerate(weights(j1)):
        for i2, m2 in enumerate(weights(j2)):
            idx = i1 * d2 + i2
            pref[:, idx, idx] = q_power(m1.twice * m2.twice / 2.0, order).coeffs

    qdiff = q_power(1, order) - q_power(-1, order)
    E = _internal_generator(j1, "E", order).data
    F = _internal_generator(j2, "F", order).data
    khalf = _internal_generator(j1, "Khalf", order).data
    kinvhalf = _internal_generator(j2, "Kinvhalf", order).data

    total = mat_eye(dim, order)
    e_pow = mat_eye(d1, order)
    f_pow = mat_eye(d2, order)
    k_pow = mat_eye(d1, order)
    ki_pow = mat_eye(d2, order)
    coeff = HSeries.one(order)
    for n in range(1, min(tj1, tj2) + 1):
        e_pow = mat_mul(e_pow, E)
        f_pow = mat_mul(f_pow, F)
        k_pow = mat_mul(k_pow, khalf)
        ki_pow = mat_mul(ki_pow, kinvhalf)
        coeff = coeff * q_power(3 * n - 2, order) * qdiff * q_integer(n, order).invert()
        term = mat_kron(mat_mul(e_pow, k_pow), mat_mul(f_pow, ki_pow))
        total = total + mat_scale(term, coeff)

    data = mat_mul(pref, total)
    mat = TensorOp((j1, j2), data)
    return RMatrixRep(j1, j2, mat, mat.inverse())


def r_matrix_rep(j1, j2, order: int = DEFAULT_ORDER) -> RMatrixRep:
    """R-matrix representation on V_{j1} (x) V_{j2} with its inverse."""
    return _r_matrix_cached(spin(j1).twice, spin(j2).twice, order)


def r_intertwining_residual(j1, j2, g: str, order: int = DEFAULT_ORDER) -> float:
    """Residual of R D(g) = D_op(g) R for the deformed coproduct of g."""
    r = r_matrix_rep(j1, j2, order)
    cop = coproduct_rep(j1, j2, g, True, order)
    flip = coproduct_rep(spin(j2), spin(j1), g, True, order)
    # opposite coproduct: conjugate the swapped-pair coproduct by the flip map
    d1, d2 = spin(j1).twice + 1, spin(j2).twice + 1
    perm = np.zeros((d1 * d2, d1 * d2))
    for i1 in range(d1):
        for i2 in range(d2):
            perm[i1 * d2 + i2, i2 * d1 + i1] = 1.0
    op_data = np.einsum("ab,kbc,cd->kad", perm, flip.data, perm.T)
    lhs = mat_mul(r.matrix.data, cop.data)
    rhs = mat_mul(op_data, r.matrix.data)
    return float(np.max(np.abs(lhs - rhs)))


def _embed_pair(block: np.ndarray, dims: tuple, p: int, q: int) -> np.ndarray:
    """Embed a two-leg operator on legs (p, q) of a multi-leg product."""
    n_legs = len(dims)
    others = [i for i in range(n_legs) if i not in (p, q)]
    n_other = int(np.prod([dims[i] for i in others], initial=1))
    total = int(np.prod(dims))
    korder = block.shape[0]
    # position map: natural index -> index in the (p, q, others...) ordering
    shaped = np.arange(total).reshape([dims[p], dims[q]] + [dims[i] for i in others])
    axes_src = [p, q] + others
    inv = np.argsort(axes_src)
    posmap = shaped.transpose(inv).reshape(-1)
    out = np.zeros((korder, total, total))
    eye = np.eye(n_other)
    for k in range(korder):
        big = np.kron(block[k], eye)
        out[k] = big[np.ix_(posmap, posmap)]
    return out


def yang_baxter_residual(j1, j2, j3, order: int = DEFAULT_ORDER) -> float:
    """Residual of R12 R13 R23 = R23 R13 R12 on the triple product."""
    j1, j2, j3 = spin(j1), spin(j2), spin(j3)
    dims = (j1.twice + 1, j2.twice + 1, j3.twice + 1)
    r12 = _embed_pair(r_matrix_rep(j1, j2, order).matrix.data, dims, 0, 1)
    r13 = _embed_pair(r_matrix_rep(j1, j3, order).matrix.data, dims, 0, 2)
    r23 = _embed_pair(r_matrix_rep(j2, j3, order).matrix.data, dims, 1, 2)
    lhs = mat_mul(mat_mul(r12, r13), r23)
    rhs = mat_mul(mat_mul(r23, r13), r12)
    return float(np.max(np.abs(lhs - rhs)))


# ---------------------------------------------------------------------------
# elements of 4-space
# ---------------------------------------------------------------------------

class FourElement:
    """Finite combination of pair labels T^j_m (x) T^j'_m' with series coefficients."""

    __slots__ = ("terms", "order")

    def __init__(self, terms: dict, order: int):
        self.order = order
        clean = {}
        for key, s in terms.items():
            if s.order != order:
                s = s.truncated(order)
            if not s.is_zero():
                clean[key] = s
        self.terms = clean

    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "FourElement":
        return cls({}, order)

    @classmethod
    def basis(cls, left, right, order: int = DEFAULT_ORDER) -> "FourElement":
        (j, m), (jp, mp) = left, right
        key = ((spin(j), spin(m)), (spin(jp), spin(mp)))
        return cls({key: HSeries.one(order)}, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "FourElement":
        return cls.basis((0, 0), (0, 0), order)

    @classmethod
    def coordinate(cls, name: str, order: int = DEFAULT_ORDER) -> "FourElement":
        table = {
            "x1": ((0.5, -0.5), (0, 0)),
            "y1": ((0.5, 0.5), (0, 0)),
            "x2": ((0, 0), (0.5, -0.5)),
            "y2": ((0, 0), (0.5, 0.5)),
        }
        if name not in table:
            raise ValueError(f"unknown 4-space coordinate {name!r}")
        return cls.basis(*table[name], order=order)

    @classmethod
    def from_planes(cls, left: PlaneElement, right: PlaneElement) -> "FourElement":
        order = min(left.order, right.order)
        terms = {}
        for kl, cl in left.terms.items():
            for kr, cr in right.terms.items():
                terms[(kl, kr)] = cl * cr
        return cls(terms, order)

    def __add__(self, other: "FourElement") -> "FourElement":
        order = min(self.order, other.order)
        out = {}
        for key in set(self.terms) | set(other.terms):
            s = HSeries.zero(order)
            if key in self.terms:
                s = s + self.terms[key]
            if key in other.terms:
                s = s + other.terms[key]
            out[key] = s
        return FourElement(out, order)

    def __sub__(self, other: "FourElement") -> "FourElement":
        return self + other.scale(-1.0)

    def scale(self, s) -> "FourElement":
        if isinstance(s, HSeries):
            order = min(self.order, s.order)
            return FourElement({k: v.truncated(order) * s.truncated(order) for k, v in self.terms.items()}, order)
        return FourElement({k: v * float(s) for k, v in self.terms.items()}, self.order)

    def coefficient(self, left, right) -> HSeries:
        (j, m), (jp, mp) = left, right
        key = ((spin(j), spin(m)), (spin(jp), spin(mp)))
        return self.terms.get(key, HSeries.zero(self.order))

    def max_abs_diff(self, other: "FourElement") -> float:
        diff = self - other
        if not diff.terms:
            return 0.0
        return max(float(np.max(np.abs(s.coeffs))) for s in diff.terms.values())

    def approx_eq(self, other: "FourElement", tol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= tol

    def is_zero(self) -> bool:
        return not self.terms

    def to_json(self) -> dict:
        def sort_key(kv):
            ((j, m), (jp, mp)) = kv[0]
            return (j.twice, m.twice, jp.twice, mp.twice)

        return {
            "terms": [
                {
                    "j2": j.twice,
                    "m2": m.twice,
                    "jp2": jp.twice,
                    "mp2": mp.twice,
                    "coeff": c.to_json(),
                }
                for ((j, m), (jp, mp)), c in sorted(self.terms.items(), key=sort_key)
            ]
        }

    def __repr__(self):
        if not self.terms:
            return "FourElement(0)"
        bits = [
            f"({c}) T[{j},{m}]*T[{jp},{mp}]"
            for ((j, m), (jp, mp)), c in self.terms.items()
        ]
        return "FourElement(" + " + ".join(bits) + ")"


def classical_product4(a: FourElement, b: FourElement) -> FourElement:
    """Factor-wise commutative product on X (x) X."""
    order = min(a.order, b.order)
    acc = {}
    for ((j1, m1), (j2, m2)), ca in a.terms.items():
        for ((j3, m3), (j4, m4)), cb in b.terms.items():
            coeff = _cg_stretched(j1.twice, j3.twice, m1.twice, m3.twice) * _cg_stretched(
                j2.twice, j4.twice, m2.twice, m4.twice
            )
            if coeff == 0.0:
                continue
            key = ((j1 + j3, m1 + m3), (j2 + j4, m2 + m4))
            acc[key] = acc.get(key, HSeries.zero(order)) + (ca * cb) * coeff
    return FourElement(acc, order)


# ---------------------------------------------------------------------------
# composite twists and the 4-space star products
# ---------------------------------------------------------------------------

def _dims(spins) -> tuple:
    return tuple(s.twice + 1 for s in spins)


def composite_twist(variant: str, spins, eta: EtaFunction | None = None, order: int = DEFAULT_ORDER) -> TensorOp:
    """Forward composite twist on V_{j1} (x) ... (x) V_{j4}.

    euclidean: F_13 F_24; minkowski: R^-1_23 F_13 F_24.
    """
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    spins = tuple(spin(s) for s in spins)
    dims = _dims(spins)
    f13 = _embed_pair(twist_rep(spins[0], spins[2], eta, order).forward.data, dims, 0, 2)
    f24 = _embed_pair(twist_rep(spins[1], spins[3], eta, order).forward.data, dims, 1, 3)
    data = mat_mul(f13, f24)
    if variant == "minkowski":
        rinv = _embed_pair(r_matrix_rep(spins[1], spins[2], order).inverse.data, dims, 1, 2)
        data = mat_mul(rinv, data)
    return TensorOp(spins, data)


def _composite_inverse(variant: str, spins, eta, order: int) -> np.ndarray:
    dims = _dims(spins)
    f13 = _embed_pair(twist_rep(spins[0], spins[2], eta, order).inverse.data, dims, 0, 2)
    f24 = _embed_pair(twist_rep(spins[1], spins[3], eta, order).inverse.data, dims, 1, 3)
    data = mat_mul(f13, f24)
    if variant == "minkowski":
        r23 = _embed_pair(r_matrix_rep(spins[1], spins[2], order).matrix.data, dims, 1, 2)
        data = mat_mul(data, r23)
    return data


def star4(a: FourElement, b: FourElement, variant: str = "euclidean", eta: EtaFunction | None = None) -> FourElement:
    """Star product on 4-space functions for the chosen composite twist."""
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    order = min(a.order, b.order)
    eta = eta or EtaFunction.one()

    grades_a = {}
    for ((j1, m1), (j2, m2)), c in a.terms.items():
        grades_a.setdefault((j1, j2), {})[(m1, m2)] = c
    grades_b = {}
    for ((j3, m3), (j4, m4)), c in b.terms.items():
        grades_b.setdefault((j3, j4), {})[(m3, m4)] = c

    acc = {}
    for (j1, j2), terms_a in grades_a.items():
        for (j3, j4), terms_b in grades_b.items():
            spins = (j1, j2, j3, j4)
            dims = _dims(spins)
            op = _composite_inverse(variant, spins, eta, order)
            vec = np.zeros((order + 1, int(np.prod(dims))))
            wts = [weights(s) for s in spins]
            for i1, m1 in enumerate(wts[0]):
                for i2, m2 in enumerate(wts[1]):
                    ca = terms_a.get((m1, m2))
                    if ca is None:
                        continue
                    for i3, m3 in enumerate(wts[2]):
                        for i4, m4 in enumerate(wts[3]):
                            cb = terms_b.get((m3, m4))
                            if cb is None:
                                continue
                            idx = ((i1 * dims[1] + i2) * dims[2] + i3) * dims[3] + i4
                            vec[:, idx] = (ca * cb).coeffs
            w = mat_apply(op, vec)
            for i1, m1 in enumerate(wts[0]):
                for i2, m2 in enumerate(wts[1]):
                    for i3, m3 in enumerate(wts[2]):
                        for i4, m4 in enumerate(wts[3]):
                            idx = ((i1 * dims[1] + i2) * dims[2] + i3) * dims[3] + i4
                            col = HSeries(w[:, idx])
                            if col.is_zero():
                                continue
                            coeff = _cg_stretched(j1.twice, j3.twice, m1.twice, m3.twice) * _cg_stretched(
                                j2.twice, j4.twice, m2.twice, m4.twice
                            )
                            if coeff == 0.0:
                                continue
                            key = ((j1 + j3, m1 + m3), (j2 + j4, m2 + m4))
                            acc[key] = acc.get(key, HSeries.zero(order)) + col * coeff
    return FourElement(acc, order)


def verify_associativity4(a: FourElement, b: FourElement, c: FourElement, variant: str = "euclidean", eta: EtaFunction | None = None) -> float:
    """Max-norm of the star4 associator."""
    left = star4(star4(a, b, variant, eta), c, variant, eta)
    right = star4(a, star4(b, c, variant, eta), variant, eta)
    return left.max_abs_diff(right)


def _act4(g: str, copy: str, a: FourElement) -> FourElement:
    """One su(2) copy acting weight-wise on the chosen plane factor."""
    order = a.order
    acc = {}
    for ((j1, m1), (j2, m2)), c in a.terms.items():
        j = j1 if copy == "left" else j2
        m = m1 if copy == "left" else m2
        rho = _internal_generator(j, g, order)
        col = [mm.twice for mm in weights(j)].index(m.twice)
        for row, mp in enumerate(weights(j)):
            entry = HSeries(rho.data[:, row, col])
            if entry.is_zero():
                continue
            key = ((j1, mp), (j2, m2)) if copy == "left" else ((j1, m1), (j2, mp))
            acc[key] = acc.get(key, HSeries.zero(order)) + c * entry
    return FourElement(acc, order)


def verify_covariance4(g: str, leg_copy: str, a: FourElement, b: FourElement, eta: EtaFunction | None = None) -> float:
    """Covariance of the euclidean star product under one su(2) copy.

    The left copy acts on legs (1,3), the right copy on legs (2,4); the
    coproduct of g routes across the star product exactly as on the plane.
    """
    if leg_copy not in ("left", "right"):
        raise ValueError("leg_copy must be 'left' or 'right'")
    from .reps import coproduct_terms

    lhs = _act4(g, leg_copy, star4(a, b, "euclidean", eta))
    order = min(a.order, b.order)
    rhs = FourElement.zero(order)
    for t1, t2 in coproduct_terms(g, deformed=True):
        left = a if t1 == "1" else _act4(t1, leg_copy, a)
        right = b if t2 == "1" else _act4(t2, leg_copy, b)
        rhs = rhs + star4(left, right, "euclidean", eta)
    return lhs.max_abs_diff(rhs)
