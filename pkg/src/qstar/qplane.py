"""The quantum plane as a covariant star product on the commutative plane.

Plane elements are coefficient vectors over abstract weight labels (j, m).
The label (j, m) names the basis vector of the unique spin-j module inside
the degree-2j polynomials; written out in generators it reads

    T^j_m = sqrt([2j choose j+m]_{q^-2}) x^{j-m} y^{j+m}      (deformed plane)
    T^j_m = sqrt(C(2j, j+m))             x^{j-m} y^{j+m}      (commutative plane)

with the Gauss binomial at q^-2 on the deformed side and its classical
limit on the commutative side.  Identifying the two bases label-wise is
what lets a single product matrix be compared across both algebras.

The deformed product multiplies two basis vectors into the stretched
coupled basis vector with the q-CG coefficient attached; the classical
product does the same with the classical coefficient.  The star product
applies the inverse twist to the coefficient tensor of a pair and then
multiplies classically.  With eta = 1 the star product reproduces the
deformed product matrix exactly, which is what realizes xy = q yx on the
commutative algebra.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .cgc import CGQuery, cg, qcg
from .hseries import DEFAULT_ORDER, HalfInt, HSeries, gauss_binomial, spin, weights
from .reps import _internal_generator, coproduct_terms, mat_apply
from .twist import EtaFunction, twist_rep


def _t_norm(tj: int, b: int, order: int, deformed: bool) -> HSeries:
    # T-basis normalization: Gauss binomial at q^-2, or its classical limit
    if deformed:
        return gauss_binomial(tj, b, -2, order).sqrt()
    return HSeries.constant(math.sqrt(math.comb(tj, b)), order)


class InvalidWeight(ValueError):
    """T-basis label with |m| > j or non-integral j - m."""


class OrderExceeded(ValueError):
    """Bidifferential slice index beyond the truncation order."""


@dataclass(frozen=True)
class Monomial:
    """Normal-ordered monomial coeff * x^a y^b."""

    a: int
    b: int
    coeff: HSeries


class PlaneElement:
    """Finite T-basis combination with truncated-series coefficients."""

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

    # -- constructors -------------------------------------------------------
    @classmethod
    def zero(cls, order: int = DEFAULT_ORDER) -> "PlaneElement":
        return cls({}, order)

    @classmethod
    def basis(cls, j, m, order: int = DEFAULT_ORDER) -> "PlaneElement":
        j, m = spin(j), spin(m)
        if abs(m.twice) > j.twice or (j.twice - m.twice) % 2 != 0:
            raise InvalidWeight(f"no weight m={m} in spin {j}")
        return cls({(j, m): HSeries.one(order)}, order)

    @classmethod
    def one(cls, order: int = DEFAULT_ORDER) -> "PlaneElement":
        return cls.basis(0, 0, order)

    @classmethod
    def x(cls, order: int = DEFAULT_ORDER) -> "PlaneElement":
        return cls.basis(0.5, -0.5, order)

    @classmethod
    def y(cls, order: int = DEFAULT_ORDER) -> "PlaneElement":
        return cls.basis(0.5, 0.5, order)

    @classmethod
    def monomial(cls, a: int, b: int, order: int = DEFAULT_ORDER, deformed: bool = False) -> "PlaneElement":
        """The monomial x^a y^b expressed in weight labels.

        The default reads x^a y^b as a commutative polynomial (classical
        normalization); deformed=True reads it as a normal-ordered word in
        the quantum plane.
        """
        if a < 0 or b < 0:
            raise InvalidWeight("monomial powers must be non-negative")
        j = HalfInt(a + b)
        m = HalfInt(b - a)
        norm = _t_norm(a + b, b, order, deformed).invert()
        return cls({(j, m): norm}, order)

    # -- linear structure ---------------------------------------------------
    def __add__(self, other: "PlaneElement") -> "PlaneElement":
        order = min(self.order, other.order)
        out = {}
        for key in set(self.terms) | set(other.terms):
            s = HSeries.zero(order)
            if key in self.terms:
                s = s + self.terms[key]
            if key in other.terms:
                s = s + other.terms[key]
            out[key] = s
        return PlaneElement(out, order)

    def __sub__(self, other: "PlaneElement") -> "PlaneElement":
        return self + other.scale(-1.0)

    def scale(self, s) -> "PlaneElement":
        if isinstance(s, HSeries):
            order = min(self.order, s.order)
            return PlaneElement({k: v.truncated(order) * s.truncated(order) for k, v in self.terms.items()}, order)
        return PlaneElement({k: v * float(s) for k, v in self.terms.items()}, self.order)

    def coefficient(self, j, m) -> HSeries:
        return self.terms.get((spin(j), spin(m)), HSeries.zero(self.order))

    def grades(self) -> list:
        return sorted({j for (j, _m) in self.terms}, key=lambda h: h.twice)

    def max_abs_diff(self, other: "PlaneElement") -> float:
        diff = self - other
        if not diff.terms:
            return 0.0
        return max(float(np.max(np.abs(s.coeffs))) for s in diff.terms.values())

    def approx_eq(self, other: "PlaneElement", tol: float = 1e-12) -> bool:
        return self.max_abs_diff(other) <= tol

    def is_zero(self) -> bool:
        return not self.terms

    # -- conversions --------------------------------------------------------
    def as_monomials(self, deformed: bool = False) -> list:
        """Rewrite in (normal-ordered) monomials x^(j-m) y^(j+m)."""
        out = []
        for (j, m), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0].twice, kv[0][1].twice)):
            a = (j.twice - m.twice) // 2
            b = (j.twice + m.twice) // 2
            out.append(Monomial(a, b, c * _t_norm(j.twice, b, self.order, deformed)))
        return out

    def to_json(self) -> dict:
        items = sorted(self.terms.items(), key=lambda kv: (kv[0][0].twice, kv[0][1].twice))
        return {
            "terms": [
                {"j2": j.twice, "m2": m.twice, "coeff": c.to_json()} for (j, m), c in items
            ]
        }

    @classmethod
    def from_json(cls, d: dict, order: int = DEFAULT_ORDER) -> "PlaneElement":
        terms = {}
        for t in d["terms"]:
            terms[(HalfInt(t["j2"]), HalfInt(t["m2"]))] = HSeries.from_json(t["coeff"])
        if terms:
            order = min(s.order for s in terms.values())
        return cls(terms, order)

    def __repr__(self):
        if not self.terms:
            return "PlaneElement(0)"
        bits = [f"({c}) T[{j},{m}]" for (j, m), c in sorted(self.terms.items(), key=lambda kv: (kv[0][0].twice, kv[0][1].twice))]
        return "PlaneElement(" + " + ".join(bits) + ")"


# ---------------------------------------------------------------------------
# normal ordering and the T-basis
# ---------------------------------------------------------------------------

def plane_normal_form(word, deformed: bool = True, order: int = DEFAULT_ORDER) -> Monomial:
    """Reorder a word in the letters x, y to x^a y^b.

    Each swap moving a y leftwards past an x costs q^-1 (from xy = q yx);
    the undeformed plane swaps for free.
    """
    letters = list(word)
    a = sum(1 for c in letters if c == "x")
    b = sum(1 for c in letters if c == "y")
    if a + b != len(letters):
        raise ValueError("word must consist of the letters 'x' and 'y'")
    inversions = 0
    seen_y = 0
    for c in letters:
        if c == "y":
            seen_y += 1
        else:
            inversions += seen_y
    if deformed:
        from .hseries import q_power

        coeff = q_power(-inversions, order)
    else:
        coeff = HSeries.one(order)
    return Monomial(a, b, coeff)


def t_basis(j, m, order: int = DEFAULT_ORDER) -> Monomial:
    """T^j_m as a normal-ordered monomial."""
    j, m = spin(j), spin(m)
    if abs(m.twice) > j.twice or (j.twice - m.twice) % 2 != 0:
        raise InvalidWeight(f"no weight m={m} in spin {j}")
    a = (j.twice - m.twice) // 2
    b = (j.twice + m.twice) // 2
    return Monomial(a, b, gauss_binomial(j.twice, b, -2, order).sqrt())


# ---------------------------------------------------------------------------
# multiplication maps
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _cg_stretched(tj1, tj2, tm1, tm2) -> float:
    q = CGQuery(HalfInt(tj1), HalfInt(tj2), HalfInt(tj1 + tj2), HalfInt(tm1), HalfInt(tm2), HalfInt(tm1 + tm2))
    return cg(q)


def _qcg_stretched(tj1, tj2, tm1, tm2, order) -> HSeries:
    q = CGQuery(HalfInt(tj1), HalfInt(tj2), HalfInt(tj1 + tj2), HalfInt(tm1), HalfInt(tm2), HalfInt(tm1 + tm2))
    return qcg(q, order)


def mu_deformed(a: PlaneElement, b: PlaneElement) -> PlaneElement:
    """Quantum-plane product in the T-basis: stretched q-CG times T^{j1+j2}."""
    order = min(a.order, b.order)
    out = PlaneElement.zero(order)
    acc = {}
    for (j1, m1), c1 in a.terms.items():
        for (j2, m2), c2 in b.terms.items():
            key = (j1 + j2, m1 + m2)
            term = c1 * c2 * _qcg_stretched(j1.twice, j2.twice, m1.twice, m2.twice, order)
            acc[key] = acc.get(key, HSeries.zero(order)) + term
    return PlaneElement(acc, order)


def mu_classical(a: PlaneElement, b: PlaneElement) -> PlaneElement:
    """Commutative plane product in the T-basis (classical stretched CG)."""
    order = min(a.order, b.order)
    acc = {}
    for (j1, m1), c1 in a.terms.items():
        for (j2, m2), c2 in b.terms.items():
            key = (j1 + j2, m1 + m2)
            coeff = _cg_stretched(j1.twice, j2.twice, m1.twice, m2.twice)
            term = (c1 * c2) * coeff
            acc[key] = acc.get(key, HSeries.zero(order)) + term
    return PlaneElement(acc, order)


def mu_normal_order(a: PlaneElement, b: PlaneElement, deformed: bool = True) -> PlaneElement:
    """Independent route: multiply as monomials, reorder, re-express in T.

    This is the oracle that pins all conventions at once: it only uses the
    commutation relation and the basis normalization, never the coupling
    coefficients.
    """
    order = min(a.order, b.order)
    from .hseries import q_power

    acc = {}
    for m_a in a.as_monomials(deformed):
        for m_b in b.as_monomials(deformed):
            # y^{b1} x^{a2} -> q^{-a2 b1} x^{a2} y^{b1}
            swaps = m_a.b * m_b.a
            coeff = m_a.coeff.truncated(order) * m_b.coeff.truncated(order)
            if deformed and swaps:
                coeff = coeff * q_power(-swaps, order)
            A, B = m_a.a + m_b.a, m_a.b + m_b.b
            key = (HalfInt(A + B), HalfInt(B - A))
            acc[key] = acc.get(key, HSeries.zero(order)) + coeff * _t_norm(A + B, B, order, deformed).invert()
    return PlaneElement(acc, order)


# ---------------------------------------------------------------------------
# module action and the star product
# ---------------------------------------------------------------------------

def act(g: str, a: PlaneElement, deformed: bool = True) -> PlaneElement:
    """Weight-wise generator action: g . T^j_m = sum_m' rho^j(g)_{m'm} T^j_{m'}."""
    order = a.order
    acc = {}
    for (j, m), c in a.terms.items():
        rho = _internal_generator(j, g, order)
        col = [mm.twice for mm in weights(j)].index(m.twice)
        for row, mp in enumerate(weights(j)):
            entry = HSeries(rho.data[:, row, col])
            if entry.is_zero():
                continue
            key = (j, mp)
            acc[key] = acc.get(key, HSeries.zero(order)) + c * entry
    return PlaneElement(acc, order)


def star(a: PlaneElement, b: PlaneElement, eta: EtaFunction | None = None) -> PlaneElement:
    """Twist star product: classical multiplication after the inverse twist."""
    order = min(a.order, b.order)
    eta = eta or EtaFunction.one()

    by_grade_a = {}
    for (j, m), c in a.terms.items():
        by_grade_a.setdefault(j, {})[m] = c
    by_grade_b = {}
    for (j, m), c in b.terms.items():
        by_grade_b.setdefault(j, {})[m] = c

    acc = {}
    for j1, terms_a in by_grade_a.items():
        for j2, terms_b in by_grade_b.items():
            tw = twist_rep(j1, j2, eta, order)
            d2 = j2.twice + 1
            vec = np.zeros((order + 1, tw.inverse.dim))
            for i1, m1 in enumerate(weights(j1)):
                c1 = terms_a.get(m1)
                if c1 is None:
                    continue
                for i2, m2 in enumerate(weights(j2)):
                    c2 = terms_b.get(m2)
                    if c2 is None:
                        continue
                    vec[:, i1 * d2 + i2] = (c1 * c2).coeffs
            w = mat_apply(tw.inverse.data, vec)
            for i1, m1 in enumerate(weights(j1)):
                for i2, m2 in enumerate(weights(j2)):
                    col = HSeries(w[:, i1 * d2 + i2])
                    if col.is_zero():
                        continue
                    coeff = _cg_stretched(j1.twice, j2.twice, m1.twice, m2.twice)
                    if coeff == 0.0:
                        continue
                    key = (j1 + j2, m1 + m2)
                    acc[key] = acc.get(key, HSeries.zero(order)) + col * coeff
    return PlaneElement(acc, order)


def bidiff(k: int, a: PlaneElement, b: PlaneElement, eta: EtaFunction | None = None) -> PlaneElement:
    """Order-k bidifferential slice B_k(a, b) of the star product.

    Coefficients of the result are constants (order-0 series); summing
    hbar^k B_k over k reconstructs the star product by construction.
    """
    order = min(a.order, b.order)
    if k > order:
        raise OrderExceeded(f"slice {k} exceeds truncation order {order}")
    full = star(a, b, eta)
    out = {}
    for key, c in full.terms.items():
        out[key] = HSeries([c.coeffs[k]])
    return PlaneElement(out, 0)


# ---------------------------------------------------------------------------
# verification residuals
# ---------------------------------------------------------------------------

def verify_covariance(g: str, a: PlaneElement, b: PlaneElement, eta: EtaFunction | None = None) -> float:
    """Residual of g . (a * b) = sum (g_(1) . a) * (g_(2) . b) for the
    deformed coproduct of g."""
    lhs = act(g, star(a, b, eta), deformed=True)
    order = min(a.order, b.order)
    rhs = PlaneElement.zero(order)
    for t1, t2 in coproduct_terms(g, deformed=True):
        left = a if t1 == "1" else act(t1, a, deformed=True)
        right = b if t2 == "1" else act(t2, b, deformed=True)
        rhs = rhs + star(left, right, eta)
    return lhs.max_abs_diff(rhs)


def verify_associativity(a: PlaneElement, b: PlaneElement, c: PlaneElement, eta: EtaFunction | None = None) -> float:
    """Max-norm of the associator (a * b) * c - a * (b * c)."""
    left = star(star(a, b, eta), c, eta)
    right = star(a, star(b, c, eta), eta)
    return left.max_abs_diff(right)
