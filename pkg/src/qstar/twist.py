"""Twist representations, the intertwining check, and the coassociator.

On V_{j1} (x) V_{j2} the twist family is

    F = sum_j eta(j1,j2,j) . (deformed coupled column)(classical coupled column)^T

so F maps the classical coupled basis onto the deformed one, rescaled by
eta per coupled spin.  The closed-form inverse swaps the roles of the two
coefficient families and uses 1/eta; it is cross-checked against direct
series inversion on every construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .cgc import cg_matrix, coupled_labels
from .hseries import DEFAULT_ORDER, HalfInt, HSeries, spin, triangle
from .reps import (
    TensorOp,
    coproduct_rep,
    irrep_generator,
    mat_eye,
    mat_kron,
    mat_mul,
)


class EtaUndefined(ValueError):
    """eta was queried on a triple it does not define."""


class NonInvertibleEta(ValueError):
    """eta value with (numerically) vanishing constant term."""


class EtaFunction:
    """Coupled-spin weight function eta(j1, j2, j) -> HSeries.

    The default is the constant function 1, the twist the paper's
    associativity argument singles out.  `cache_key` tags hashable
    variants so twist matrices can be memoized.
    """

    def __init__(self, fn=None, cache_key=None):
        self._fn = fn
        self.cache_key = cache_key

    @classmethod
    def one(cls) -> "EtaFunction":
        return cls(fn=None, cache_key="one")

    @classmethod
    def perturbed(cls, j1, j2, j, coeffs) -> "EtaFunction":
        """eta = 1 everywhere except the given triple, where it is the series
        with the given low-order coefficients (padded with zeros)."""
        key = (spin(j1).twice, spin(j2).twice, spin(j).twice, tuple(float(c) for c in coeffs))

        def fn(a, b, c, order):
            if (a.twice, b.twice, c.twice) == key[:3]:
                pad = list(coeffs) + [0.0] * (order + 1 - len(coeffs))
                return HSeries(pad[: order + 1])
            return HSeries.one(order)

        return cls(fn=fn, cache_key=("perturbed", key))

    def __call__(self, j1, j2, j, order: int) -> HSeries:
        j1, j2, j = spin(j1), spin(j2), spin(j)
        if self._fn is None:
            return HSeries.one(order)
        value = self._fn(j1, j2, j, order)
        if value is None:
            raise EtaUndefined(f"eta undefined on ({j1}, {j2}, {j})")
        if abs(value.const) <= 1e-12:
            raise NonInvertibleEta(f"eta({j1}, {j2}, {j}) has vanishing constant term")
        return value


@dataclass(eq=False)
class TwistRep:
    """Forward and inverse twist matrices on one pair of irreps."""

    j1: HalfInt
    j2: HalfInt
    forward: TensorOp
    inverse: TensorOp
    eta: EtaFunction


_TWIST_CACHE: dict = {}


def _scale_columns(data: np.ndarray, labels, factors) -> np.ndarray:
    """Convolve each (j,m) column with the series factor attached to its j."""
    out = np.zeros_like(data)
    for ci, (j, _m) in enumerate(labels):
        s = factors[j].coeffs
        for k in range(data.shape[0]):
            for i in range(k + 1):
                out[k, :, ci] += s[i] * data[k - i, :, ci]
    return out


def twist_rep(j1, j2, eta: EtaFunction | None = None, order: int = DEFAULT_ORDER) -> TwistRep:
    """Twist representation on V_{j1} (x) V_{j2} for the given eta."""
    j1, j2 = spin(j1), spin(j2)
    eta = eta or EtaFunction.one()
    cache_key = None
    if eta.cache_key is not None:
        cache_key = (j1.twice, j2.twice, order, eta.cache_key)
        hit = _TWIST_CACHE.get(cache_key)
        if hit is not None:
            return hit

    labels = coupled_labels(j1, j2)
    eta_vals = {j: eta(j1, j2, j, order) for j in triangle(j1, j2)}
    eta_invs = {j: v.invert() for j, v in eta_vals.items()}

    uq = cg_matrix(j1, j2, deformed=True, order=order).data
    uc = cg_matrix(j1, j2, deformed=False, order=order).data

    forward = mat_mul(_scale_columns(uq, labels, eta_vals), uc.transpose(0, 2, 1))
    inverse = mat_mul(_scale_columns(uc, labels, eta_invs), uq.transpose(0, 2, 1))

    fwd = TensorOp((j1, j2), forward)
    inv = TensorOp((j1, j2), inverse)
    # guard against convention drift; loose enough for rounding at larger spins
    resid = (fwd @ inv).max_diff(fwd.identity_like())
    if resid > 1e-8:
        raise NonInvertibleEta(f"closed-form inverse fails at residual {resid:.2e}")
    if fwd.inverse().max_diff(inv) > 1e-8:
        raise ArithmeticError("closed-form inverse disagrees with series inversion")

    tw = TwistRep(j1, j2, fwd, inv, eta)
    if cache_key is not None:
        _TWIST_CACHE[cache_key] = tw
    return tw


_PARTNERS = {"E": "e", "F": "f", "K": "h", "Kinv": "h"}


def _embedded_classical(j1: HalfInt, j2: HalfInt, g: str, order: int) -> TensorOp:
    """Classical coproduct of the enveloping-algebra image of g.

    The image acts on each classical irrep block by the deformed irrep
    matrix, so the matrix is the classical coupled conjugation of the
    block-diagonal deformed generators.  For K this reduces to the series
    exp(hbar (h(x)1 + 1(x)h)).
    """
    uc = cg_matrix(j1, j2, deformed=False, order=order)
    dims = [(j, j.twice + 1) for j in triangle(j1, j2)]
    total = sum(d for _, d in dims)
    blocks = np.zeros((order + 1, total, total))
    off = 0
    for j, d in dims:
        blocks[:, off : off + d, off : off + d] = irrep_generator(j, g, True, order).data
        off += d
    return uc @ TensorOp((j1, j2), blocks) @ uc.transpose()


def verify_intertwiner(tw: TwistRep, g: str) -> float:
    """Residual of D_h(g) F = F D(g~) on the pair carried by the twist,
    where g~ is the undeformed-algebra image of g (E<->e, F<->f, K<->exp of h)."""
    if g not in _PARTNERS:
        raise ValueError(f"no undeformed partner declared for {g!r}")
    order = tw.forward.order
    lhs = coproduct_rep(tw.j1, tw.j2, g, True, order) @ tw.forward
    rhs = tw.forward @ _embedded_classical(tw.j1, tw.j2, g, order)
    return lhs.max_diff(rhs)


# ---------------------------------------------------------------------------
# coassociator
# ---------------------------------------------------------------------------

def _scatter_blocks(rows_by_block, blocks, total_dim, order) -> np.ndarray:
    out = np.zeros((order + 1, total_dim, total_dim))
    for rows, block in zip(rows_by_block, blocks):
        out[:, np.ix_(rows, rows)[0], np.ix_(rows, rows)[1]] = block
    return out


def _coproduct_on_legs(pair_ops_by_j, j_left, j_right, j3_or_j0, order, inner: bool):
    """Assemble (D (x) id)(X) or (id (x) D)(X) from per-coupled-spin blocks.

    `pair_ops_by_j` maps the coupled spin j to the matrix of X on
    V_j (x) V_other (outer) or V_other (x) V_j (inner).
    """
    jl, jr = j_left, j_right
    uc = cg_matrix(jl, jr, deformed=False, order=order).data
    spectator = j3_or_j0.twice + 1
    coupled_dim = (jl.twice + 1) * (jr.twice + 1)
    total = coupled_dim * spectator

    rows_by_block, blocks = [], []
    off = 0
    for j in triangle(jl, jr):
        d = j.twice + 1
        if inner:
            rows = [i0 * coupled_dim + off + a for i0 in range(spectator) for a in range(d)]
        else:
            rows = [(off + a) * spectator + i3 for a in range(d) for i3 in range(spectator)]
        rows_by_block.append(rows)
        blocks.append(pair_ops_by_j[j].data)
        off += d

    big = _scatter_blocks(rows_by_block, blocks, total, order)
    if inner:
        w = mat_kron(mat_eye(spectator, order), uc)
    else:
        w = mat_kron(uc, mat_eye(spectator, order))
    return mat_mul(mat_mul(w, big), w.transpose(0, 2, 1))


def coassociator_rep(j1, j2, j3, eta: EtaFunction | None = None, order: int = DEFAULT_ORDER) -> TensorOp:
    """Matrix of the coassociator Phi on V_{j1} (x) V_{j2} (x) V_{j3}:

        Phi = (D (x) id)(F^-1) (F^-1 (x) 1) (1 (x) F) (id (x) D)(F)

    with coproduct legs evaluated by coupling the pair with the classical
    coefficients, applying the two-leg twist blockwise, and conjugating back.
    """
    j1, j2, j3 = spin(j1), spin(j2), spin(j3)
    eta = eta or EtaFunction.one()
    d1, d3 = j1.twice + 1, j3.twice + 1

    a1 = _coproduct_on_legs(
        {j: twist_rep(j, j3, eta, order).inverse for j in triangle(j1, j2)},
        j1, j2, j3, order, inner=False,
    )
    a2 = mat_kron(twist_rep(j1, j2, eta, order).inverse.data, mat_eye(d3, order))
    a3 = mat_kron(mat_eye(d1, order), twist_rep(j2, j3, eta, order).forward.data)
    a4 = _coproduct_on_legs(
        {j: twist_rep(j1, j, eta, order).forward for j in triangle(j2, j3)},
        j2, j3, j1, order, inner=True,
    )
    data = mat_mul(mat_mul(a1, a2), mat_mul(a3, a4))
    return TensorOp((j1, j2, j3), data)
