#!/usr/bin/env python3
# Irreducible representations of deformed su(2) and coupling coefficients.
#
# The deformed generators E, F, K act on the weight basis v_m with symmetric
# q-integer matrix elements; K is diagonal with q^{2m}.  Tensor products are
# reduced by the q-deformed Clebsch-Gordan matrix, whose columns are
# orthonormal order by order in hbar and intertwine the deformed coproduct.

import numpy as np

from qstar import (
    CGQuery,
    cg,
    cg_matrix,
    coproduct_rep,
    irrep_generator,
    qcg,
    verify_irrep_relations,
)

order = 6

# matrix of E on the spin-1 module: one-step raising with sqrt([j-m][j+m+1])
E = irrep_generator(1, "E", deformed=True, order=order)
print("E on spin 1, constant term:\n", E.constant_term())

# the algebra relations hold to rounding on every module
for j in (0.5, 1, 2):
    print(f"relation residual at spin {j}:", verify_irrep_relations(j, order))

# classical singlet coefficient 1/sqrt(2), Condon-Shortley sign
print("cg(1/2 1/2 0; 1/2 -1/2 0) =", cg(CGQuery.of(0.5, 0.5, 0, 0.5, -0.5, 0)))

# its q-deformation starts at the same value and picks up hbar corrections
print("qcg(1/2 1/2 0; 1/2 -1/2 0) =", qcg(CGQuery.of(0.5, 0.5, 0, 0.5, -0.5, 0), order))

# the coupling matrix block-diagonalizes the coproduct: conjugating the
# coproduct of E on 1/2 (x) 1/2 yields the spin-1 block and a zero singlet
U = cg_matrix(0.5, 0.5, deformed=True, order=order)
cop = coproduct_rep(0.5, 0.5, "E", deformed=True, order=order)
conj = U.transpose() @ cop @ U
rho1 = irrep_generator(1, "E", deformed=True, order=order)
print("block-diagonalization residual:", np.max(np.abs(conj.data[:, :3, :3] - rho1.data)))

# orthonormality of the deformed coupling columns, order by order
gram = (U.transpose() @ U).data.copy()
gram[0] -= np.eye(4)
print("orthonormality residual:", np.max(np.abs(gram)))
