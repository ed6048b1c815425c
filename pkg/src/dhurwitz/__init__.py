"""dhurwitz: exact arithmetic for t-deformed monotone Hurwitz numbers,
weighted bipartite-map counts, Grassmannian Weingarten calculus and
topological recursion on their spectral curves."""

from .polys import (
    NonUnitLinearTerm,
    Poly,
    RatFn,
    TruncSeries,
    poly_from_strings,
    poly_gcd,
    poly_parse,
    poly_squarefree,
    poly_str,
    poly_to_strings,
    series_reversion,
)
from .mnrat import MNRational, PoleAtInfinity, gen_mn, large_n_expansion
from .permutations import (
    DegreeMismatch,
    DegreeTooLarge,
    NegativeWeight,
    Partition,
    Permutation,
    WeightMismatch,
    character,
    class_size,
    compose,
    cycle_type,
    jucys_cycle_identity_check,
    parse_cycles,
    partition_data,
    partitions_of,
)
from .factorizations import (
    BoundExceeded,
    MonotoneFactorisation,
    dessin_connected_count,
    dessin_disconnected_count,
    enumerate_monotone,
    strictly_monotone,
    weighted_counts,
)
from .weingarten import (
    LengthMismatch,
    SingularSystem,
    WeingartenTable,
    convolution_integral,
    jucys_weingarten_identity_check,
    largeN_check,
    orthogonality_residual,
    sw_character,
    sw_orthogonality_table,
    uw_leading,
)
from .hurwitz import (
    connected_from_disconnected,
    dessin_D,
    disconnected_table,
    monotone_H,
    narayana,
    one_point_H,
)
from .roots import (
    BoxNotIsolating,
    DegreeGap,
    NotRealRooted,
    RootBox,
    SturmChain,
    ZeroPolynomial,
    conjecture_scan,
    interlaces,
    is_real_rooted,
    isolate_real_roots,
    largeg_root_table,
    refine_root,
    sturm_chain,
)
from .multivar import MPoly, MRat, as_scalar
from .modtables import ModEngine, interpolated_table, weighted_table
from .specrec import (
    Correlator,
    DepthExceeded,
    ExpansionPointPole,
    FAMILIES,
    MAX_EULER,
    OddPartInS,
    SpectralCurve,
    build_curve,
    correlator_table,
    extract_coefficients,
    scalar_to_t,
    tr_correlator,
    verify_w11,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
