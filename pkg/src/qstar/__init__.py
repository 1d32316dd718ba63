"""Covariant star products on the quantum plane and q-deformed 4-spaces.

Everything is computed order by order in the deformation parameter hbar:
truncated series scalars, weight representations of deformed su(2),
classical and q-deformed Clebsch-Gordan coefficients, twist
representations and their coassociator, the plane star product with its
bidifferential slices, and the composite (R-matrix) twists realizing
quantum Euclidean 4-space and quantum Minkowski space.
"""

from .hseries import (
    DEFAULT_ORDER,
    HalfInt,
    HSeries,
    IndexOutOfRange,
    NonPositiveLeadingTerm,
    NonUnitSeries,
    gauss_binomial,
    q_factorial,
    q_integer,
    q_power,
    spin,
    triangle,
    weights,
)
from .reps import (
    MixedFamily,
    RepMatrix,
    TensorOp,
    coproduct_rep,
    irrep_generator,
    tensor_product,
    verify_irrep_relations,
)
from .cgc import CGQuery, InvalidQuery, cg, cg_matrix, qcg
from .twist import (
    EtaFunction,
    EtaUndefined,
    NonInvertibleEta,
    TwistRep,
    coassociator_rep,
    twist_rep,
    verify_intertwiner,
)
from .qplane import (
    InvalidWeight,
    Monomial,
    OrderExceeded,
    PlaneElement,
    act,
    bidiff,
    mu_classical,
    mu_deformed,
    mu_normal_order,
    plane_normal_form,
    star,
    t_basis,
    verify_associativity,
    verify_covariance,
)
from .spacetime4d import (
    FourElement,
    RMatrixRep,
    classical_product4,
    composite_twist,
    r_matrix_rep,
    star4,
    verify_associativity4,
    verify_covariance4,
    yang_baxter_residual,
)
from .verify import VerifyCase, VerifyReport, run_suites

__version__ = "0.1.0"
