"""Exact computations with corner algebras e_I A e_I of finite-dimensional
quiver algebras: restriction, induction, coinduction, the comparison map
between them, and reconstruction of 0-generated modules from their slices.
"""

from .exactla import Matrix, PrimeField, QQ, Subspace, kernel_basis, rank, rref, spin_closure, use_field
from .algebra import (
    INFINITY,
    FDAlgebra,
    Quiver,
    Arrow,
    Relation,
    corner_algebra,
    framed_mckay_quiver,
    loop_quiver,
    mckay_algebra,
    preprojective_relations,
    star_quiver,
    truncated_algebra,
)
from .fdmod import (
    FDModule,
    IsoResult,
    ModuleError,
    ModuleHom,
    RelationViolation,
    direct_sum,
    hom_space,
    image_module,
    is_isomorphic,
    is_zero_generated,
    module_from_actions,
    module_from_arrows,
    regular_column,
    regular_module,
    simple_module,
)
from .recollement import (
    Covering,
    CounterexampleError,
    SliceBundle,
    coinduce,
    counit,
    distinguishes,
    distinguishing_slice,
    induce,
    nu,
    phi,
    psi,
    reconstruct,
    restrict,
    slice_module,
    splitting_P,
    unit,
)
from .orbifold import (
    Partition,
    enumerate_fixed_points,
    fixed_point_module,
    hilb_injectivity_experiment,
    weight_content,
)

__version__ = "0.1.0"
