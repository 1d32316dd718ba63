import numpy as np
import pytest

from qstar.hseries import HSeries, spin
from qstar.qplane import PlaneElement, mu_classical, star
from qstar.spacetime4d import (
    FourElement,
    classical_product4,
    composite_twist,
    r_intertwining_residual,
    r_matrix_rep,
    star4,
    verify_associativity4,
    verify_covariance4,
    yang_baxter_residual,
    _embed_pair,
)

ORDER = 6


# -- R-matrix -----------------------------------------------------------------

def test_r_trivial_leg_identity():
    r = r_matrix_rep(0, 1, ORDER)
    assert r.matrix.max_diff(r.matrix.identity_like()) < 1e-14
    r = r_matrix_rep(0.5, 0, ORDER)
    assert r.matrix.max_diff(r.matrix.identity_like()) < 1e-14


def test_r_constant_term_identity():
    r = r_matrix_rep(0.5, 0.5, ORDER)
    np.testing.assert_allclose(r.matrix.constant_term(), np.eye(4), atol=1e-13)
    np.testing.assert_allclose(r.inverse.constant_term(), np.eye(4), atol=1e-13)


def test_r_inverse_consistent():
    r = r_matrix_rep(1, 0.5, ORDER)
    assert (r.matrix @ r.inverse).max_diff(r.matrix.identity_like()) < 1e-12


def test_r_spin_half_closed_form():
    # R|-+> = q^{-1/2}(|-+> + (q-q^{-1})|+->), R|--> = q^{1/2}|-->, etc.
    from qstar.hseries import q_power

    r = r_matrix_rep(0.5, 0.5, ORDER).matrix
    qh = q_power(0.5, ORDER)
    qmh = q_power(-0.5, ORDER)
    assert r.entry(0, 0).max_abs_diff(qh) < 1e-13
    assert r.entry(3, 3).max_abs_diff(qh) < 1e-13
    assert r.entry(1, 1).max_abs_diff(qmh) < 1e-13
    assert r.entry(2, 2).max_abs_diff(qmh) < 1e-13
    braid = qmh * (q_power(1, ORDER) - q_power(-1, ORDER))
    assert r.entry(2, 1).max_abs_diff(braid) < 1e-13
    assert r.entry(1, 2).is_zero()


@pytest.mark.parametrize("j1,j2", [(0.5, 0.5), (0.5, 1), (1, 0.5), (1, 1)])
@pytest.mark.parametrize("g", ["E", "F", "K"])
def test_r_intertwining(j1, j2, g):
    assert r_intertwining_residual(j1, j2, g, ORDER) < 1e-9


@pytest.mark.parametrize("spins", [(0.5, 0.5, 0.5), (0.5, 1, 0.5), (1, 0.5, 1), (1, 1, 1)])
def test_yang_baxter(spins):
    assert yang_baxter_residual(*spins, order=ORDER) < 1e-9


def _blockdiag_r_on_coupled(j1, j2, j3, order, inner):
    # (D (x) id)(R) resp. (id (x) D)(R) via the deformed coupled conjugation
    from qstar.cgc import cg_matrix
    from qstar.hseries import triangle
    from qstar.reps import mat_kron, mat_mul, mat_eye
    import numpy as np

    jl, jr = (j2, j3) if inner else (j1, j2)
    spectator = (j1 if inner else j3).twice + 1
    uq = cg_matrix(jl, jr, deformed=True, order=order).data
    coupled = (jl.twice + 1) * (jr.twice + 1)
    total = coupled * spectator
    big = np.zeros((order + 1, total, total))
    off = 0
    for j in triangle(jl, jr):
        d = j.twice + 1
        blk = (
            r_matrix_rep(j1, j, order).matrix.data
            if inner
            else r_matrix_rep(j, j3, order).matrix.data
        )
        if inner:
            rows = [i0 * coupled + off + a for i0 in range(spectator) for a in range(d)]
        else:
            rows = [(off + a) * spectator + i3 for a in range(d) for i3 in range(spectator)]
        big[:, np.ix_(rows, rows)[0], np.ix_(rows, rows)[1]] = blk
        off += d
    w = mat_kron(mat_eye(spectator, order), uq) if inner else mat_kron(uq, mat_eye(spectator, order))
    return mat_mul(mat_mul(w, big), w.transpose(0, 2, 1))


def test_hexagon_identities():
    # (D (x) id)(R) = R13 R23 and (id (x) D)(R) = R13 R12 pin the
    # quasi-triangular orientation of the R-matrix convention
    from qstar.reps import mat_mul
    import numpy as np

    j = spin(0.5)
    dims = (2, 2, 2)
    r12 = _embed_pair(r_matrix_rep(j, j, ORDER).matrix.data, dims, 0, 1)
    r13 = _embed_pair(r_matrix_rep(j, j, ORDER).matrix.data, dims, 0, 2)
    r23 = _embed_pair(r_matrix_rep(j, j, ORDER).matrix.data, dims, 1, 2)

    lhs = _blockdiag_r_on_coupled(j, j, j, ORDER, inner=False)
    assert np.max(np.abs(lhs - mat_mul(r13, r23))) < 1e-9

    lhs = _blockdiag_r_on_coupled(j, j, j, ORDER, inner=True)
    assert np.max(np.abs(lhs - mat_mul(r13, r12))) < 1e-9


def test_embed_pair_adjacent_matches_kron():
    # embedding on adjacent legs with trivial spectators must reduce to kron
    r = r_matrix_rep(0.5, 0.5, 2).matrix.data
    dims = (2, 2, 3, 1)
    emb = _embed_pair(r, dims, 0, 1)
    direct = np.zeros_like(emb)
    for k in range(3):
        direct[k] = np.kron(r[k], np.eye(3))
    np.testing.assert_allclose(emb, direct, atol=1e-14)


# -- composite twists -----------------------------------------------------------

def test_composite_twist_all_trivial():
    op = composite_twist("euclidean", (0, 0, 0, 0), order=4)
    assert op.dim == 1
    assert abs(op.entry(0, 0).const - 1.0) < 1e-14


def test_composite_twist_constant_identity():
    for variant in ("euclidean", "minkowski"):
        op = composite_twist(variant, (0.5, 0.5, 0.5, 0.5), order=4)
        np.testing.assert_allclose(op.constant_term(), np.eye(16), atol=1e-12)


def test_composite_twist_13_24_commute():
    from qstar.reps import mat_mul
    from qstar.twist import twist_rep

    spins = (0.5, 1, 0.5, 1)
    dims = tuple(spin(s).twice + 1 for s in spins)
    f13 = _embed_pair(twist_rep(0.5, 0.5, order=4).forward.data, dims, 0, 2)
    f24 = _embed_pair(twist_rep(1, 1, order=4).forward.data, dims, 1, 3)
    ab = mat_mul(f13, f24)
    ba = mat_mul(f24, f13)
    np.testing.assert_allclose(ab, ba, atol=1e-13)


def test_composite_twist_minkowski_trivial_outer_legs():
    # spins (0, 1/2, 1/2, 0): both plane twists are trivial, only R^-1_23 acts
    op = composite_twist("minkowski", (0, 0.5, 0.5, 0), order=ORDER)
    rinv = r_matrix_rep(0.5, 0.5, ORDER).inverse
    assert np.max(np.abs(op.data - rinv.data)) < 1e-13


def test_composite_twist_euclidean_from_two_leg_twists():
    # oracle: independent leg-permutation computation of F13 F24
    from qstar.twist import twist_rep

    spins = (0.5, 0.5, 0.5, 0.5)
    op = composite_twist("euclidean", spins, order=4)
    f = twist_rep(0.5, 0.5, order=4).forward.data
    korder = f.shape[0]
    direct = np.zeros((korder, 16, 16))
    for k in range(korder):
        for i in range(k + 1):
            a = f[i].reshape(2, 2, 2, 2)
            b = f[k - i].reshape(2, 2, 2, 2)
            # legs (1,3) from a, legs (2,4) from b: out[m1 m2 m3 m4, n1 n2 n3 n4]
            direct[k] += np.einsum("acxz,bdwy->abcdxwzy", a, b).reshape(16, 16)
    np.testing.assert_allclose(op.data, direct, atol=1e-13)


# -- star4 -----------------------------------------------------------------------

def coords(order=ORDER):
    return {n: FourElement.coordinate(n, order) for n in ("x1", "y1", "x2", "y2")}


def test_star4_unit():
    one = FourElement.one(ORDER)
    b = coords()["x1"]
    for variant in ("euclidean", "minkowski"):
        assert star4(one, b, variant).approx_eq(b, 1e-12)
        assert star4(b, one, variant).approx_eq(b, 1e-12)


def test_star4_euclidean_factorizes():
    # star4(a (x) a', b (x) b') = star(a,b) (x) star(a',b') on decomposables
    planes = [
        PlaneElement.x(ORDER),
        PlaneElement.y(ORDER),
        mu_classical(PlaneElement.x(ORDER), PlaneElement.y(ORDER)),
        PlaneElement.basis(1, -1, ORDER),
    ]
    for a1 in planes[:2]:
        for a2 in planes:
            for b1 in planes:
                for b2 in planes[:2]:
                    lhs = star4(FourElement.from_planes(a1, a2), FourElement.from_planes(b1, b2), "euclidean")
                    rhs = FourElement.from_planes(star(a1, b1), star(a2, b2))
                    assert lhs.max_abs_diff(rhs) < 1e-9


def test_star4_euclidean_spec_case():
    c = coords()
    lhs = star4(c["x1"], c["y1"], "euclidean")
    rhs = FourElement.from_planes(star(PlaneElement.x(ORDER), PlaneElement.y(ORDER)), PlaneElement.one(ORDER))
    assert lhs.max_abs_diff(rhs) < 1e-10


def test_star4_minkowski_braids_inner_legs():
    # (1 (x) x) *_mink (x (x) 1) places the R-legs on (1/2, 1/2): braided at h^1
    c = coords()
    braided = star4(c["x2"], c["x1"], "minkowski")
    cl = classical_product4(c["x2"], c["x1"])
    diff = braided - cl
    assert not diff.is_zero()
    lead = max(abs(s.coeffs[1]) for s in diff.terms.values())
    assert lead > 0.1
    # while the (x (x) 1) * (1 (x) x) placement has only trivial R-legs
    assert star4(c["x1"], c["x2"], "minkowski").max_abs_diff(classical_product4(c["x1"], c["x2"])) < 1e-12


def test_star4_classical_limits_commutative():
    c = coords(4)
    for variant in ("euclidean", "minkowski"):
        for a in c.values():
            for b in c.values():
                ab = star4(a, b, variant)
                ba = star4(b, a, variant)
                for key in set(ab.terms) | set(ba.terms):
                    ca = ab.terms.get(key, HSeries.zero(4)).const
                    cb = ba.terms.get(key, HSeries.zero(4)).const
                    assert abs(ca - cb) < 1e-12


def test_star4_bilinear():
    c = coords()
    a = c["x1"] + c["y2"].scale(3.0)
    b = c["x2"]
    lhs = star4(a, b, "minkowski")
    rhs = star4(c["x1"], b, "minkowski") + star4(c["y2"], b, "minkowski").scale(3.0)
    assert lhs.max_abs_diff(rhs) < 1e-12


# -- associativity and covariance -------------------------------------------------

def test_associativity4_unit():
    one = FourElement.one(ORDER)
    c = coords()
    assert verify_associativity4(one, c["x1"], c["x2"], "minkowski") < 1e-12


def test_associativity4_euclidean_degree_one():
    c = coords(4)
    vals = list(c.values())
    for a in vals:
        for b in vals:
            for d in vals:
                assert verify_associativity4(a, b, d, "euclidean") < 1e-9


def test_associativity4_minkowski_degree_one():
    c = coords(4)
    vals = list(c.values())
    worst = 0.0
    for a in vals:
        for b in vals:
            for d in vals:
                worst = max(worst, verify_associativity4(a, b, d, "minkowski"))
    assert worst < 1e-9


def test_associativity4_minkowski_degree_two():
    c = coords(4)
    xx = star4(c["x1"], c["x2"], "minkowski")
    yy = star4(c["y1"], c["y2"], "minkowski")
    assert verify_associativity4(xx, c["y1"], c["x2"], "minkowski") < 1e-9
    assert verify_associativity4(c["x1"], yy, c["y2"], "minkowski") < 1e-9


def test_covariance4_units():
    one = FourElement.one(ORDER)
    assert verify_covariance4("K", "left", one, one) < 1e-14


def test_covariance4_reduces_to_plane():
    c = coords()
    assert verify_covariance4("E", "left", c["x1"], c["y1"]) < 1e-9
    assert verify_covariance4("F", "right", c["x2"], c["y2"]) < 1e-9


@pytest.mark.parametrize("g", ["E", "F", "K"])
@pytest.mark.parametrize("copy", ["left", "right"])
def test_covariance4_grid(g, copy):
    c = coords()
    vals = list(c.values())
    for a in vals:
        for b in vals:
            assert verify_covariance4(g, copy, a, b) < 1e-9


def test_four_element_json():
    c = coords()["x1"]
    d = c.to_json()
    assert d["terms"][0]["j2"] == 1 and d["terms"][0]["m2"] == -1
    assert d["terms"][0]["jp2"] == 0 and d["terms"][0]["mp2"] == 0


def test_variant_validation():
    c = coords()
    with pytest.raises(ValueError):
        star4(c["x1"], c["x2"], "lorentzian")
    with pytest.raises(ValueError):
        composite_twist("other", (0, 0, 0, 0))
    with pytest.raises(ValueError):
        FourElement.coordinate("z1")
    with pytest.raises(ValueError):
        verify_covariance4("K", "middle", c["x1"], c["x1"])
