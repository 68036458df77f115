"""Exact mod-p stable cohomology of Schur functor bundles.

Three mutually verifying routes compute the same polynomials: closed digit
formulas, a memoized six-case recursion for hook shapes, and homology of
explicit chain complexes over F_p.  A brute-force verifier covers the sharp
vanishing theorem for finite-length Koszul modules.
"""

from .arith import (
    CohPoly,
    Fp,
    Prime,
    SeriesTU,
    SparseMat,
    binom_mod_p,
    binom_residue,
    poly_mul,
    poly_reverse,
    rank_mod_p,
)
from .closedform import (
    DigitTuple,
    enumerate_Apd,
    hook_nonvanishing,
    p_index,
    series_A,
    series_H,
    series_H_coeff,
    sym_stable_poly,
    truncated_sym_poly,
)
from .complexes import (
    ChainComplex,
    HomologyProfile,
    WeightedComposition,
    build_C,
    build_G,
    duality_witness,
    frobenius_embedding_check,
    homology_poly,
    homology_series,
    ribbon_stable_poly,
    twocol_stable_poly,
)
from .hooks import hook_poly, symmetry_reduce
from .koszul import (
    HilbertTail,
    KoszulInstance,
    export_K,
    import_K,
    koszul_dims,
    predicted_tail,
    sample_generic_K,
    verified_dims,
)
from .partitions import (
    Partition,
    RibbonComposition,
    composition_to_hook,
    core_vanishing,
    hook_partition,
    hook_to_composition,
    p_core,
    transpose,
)
from .schur import (
    CrossReport,
    RouteMismatchError,
    ShapeSpec,
    parse_shape,
    shape_weight,
    stable_cohomology,
    weight_to_shape,
)

__version__ = "0.1.0"
