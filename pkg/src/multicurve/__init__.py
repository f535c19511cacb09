"""Exact invariants and stability certificates for sheaves on primitive multiple curves."""

from .core import (
    BundleOnC,
    CurveContext,
    ExactSeqWitness,
    Invariants,
    QlfType,
    RigidClass,
    RigidSheaf,
    TorsionLengths,
    VectorBundleCn,
    additivity_check,
    alternating_sums,
    classify_rigid,
    compare_slopes,
    first_graded,
    qlf_rank,
    rigid_invariants,
    rigid_type,
    rigid_V,
    second_graded,
    slope,
    star_sequence,
    total_invariants,
    vb_invariants,
)
from .duality import (
    FiltrationSlice,
    SliceDerived,
    cor2_check,
    cor2_sides,
    dual_invariants,
    dual_slice,
    dual_torsion,
    slice_derived,
)
from .errors import (
    BudgetExceeded,
    GenusTooSmall,
    InconsistentInput,
    InvalidContext,
    InvalidInput,
    InvalidSlice,
    MulticurveError,
    Overflow,
    WrongMultiplicity,
    ZeroRank,
)
from .moduli import (
    ModuliPoint,
    RegionRow,
    ext_dim_rr,
    moduli_dim,
    moduli_nonempty,
    moduli_rd,
    scan,
    vb_moduli_rd,
)
from .stability import (
    Certificate,
    Check,
    EqXResult,
    EquCC3Result,
    HNReport,
    LemmaInstance,
    LemmaResult,
    Origin,
    Premise,
    Status,
    eqX_bracket_form,
    eqX_check,
    equCC3_check,
    hn_analysis,
    ideal_point_slope,
    lemma_oracle,
    lemma_slopes,
    rigid_slice,
    theo1_certify,
    theo2_certify,
    theo3_certify,
    theo3_via_theo1,
    theo5_certify,
)

__version__ = "0.1.0"
