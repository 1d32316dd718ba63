#!/usr/bin/env python3
# Quantum Euclidean 4-space and quantum Minkowski space.
#
# Functions on 4-space are pairs of plane factors.  The Euclidean star
# product twists the matching factors of the two arguments (legs 13 and 24);
# the Minkowski variant additionally braids the inner legs (2,3) with the
# R-matrix of deformed su(2), turning the componentwise product into a
# braided, still associative, product.

from qstar import (
    FourElement,
    PlaneElement,
    classical_product4,
    r_matrix_rep,
    star,
    star4,
    verify_associativity4,
    verify_covariance4,
    yang_baxter_residual,
)

order = 4

# quasi-triangularity of the R-matrix: Yang-Baxter on three spin-1/2 legs
print("Yang-Baxter residual:", yang_baxter_residual(0.5, 0.5, 0.5, order=6))
r = r_matrix_rep(0.5, 0.5, 6)
import numpy as np

print("R constant term vs identity:", np.max(np.abs(r.matrix.constant_term() - np.eye(4))))

# the four coordinate functions
x1, y1, x2, y2 = (FourElement.coordinate(n, order) for n in ("x1", "y1", "x2", "y2"))

# Euclidean 4-space factorizes into two independent plane star products
lhs = star4(x1, y1, "euclidean")
rhs = FourElement.from_planes(star(PlaneElement.x(order), PlaneElement.y(order)), PlaneElement.one(order))
print("euclidean factorization residual:", lhs.max_abs_diff(rhs))

# the Minkowski product braids coordinates living on different factors:
# x2 * x1 picks up a q^{1/2} relative to the classical product ...
print("minkowski x2*x1:", star4(x2, x1, "minkowski"))
print("  vs classical :", classical_product4(x2, x1))

# ... while the opposite placement keeps trivial R-legs
print("minkowski x1*x2 equals classical:",
      star4(x1, x2, "minkowski").max_abs_diff(classical_product4(x1, x2)))

# both products are associative on the coordinate functions
worst = 0.0
for a in (x1, y1, x2, y2):
    for b in (x1, y1, x2, y2):
        for c in (x1, y1, x2, y2):
            worst = max(worst, verify_associativity4(a, b, c, "minkowski"))
print("worst minkowski associator over all coordinate triples:", worst)

# the euclidean product is covariant under each su(2) copy separately
print("left-copy covariance residual :", verify_covariance4("E", "left", x1, y1))
print("right-copy covariance residual:", verify_covariance4("F", "right", x2, y2))
