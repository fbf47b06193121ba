"""Exact-arithmetic toolkit for the rational elliptic surface whose
Q-Gorenstein smoothing is the Dolgachev surface of type (2, 3): chain
calculus for the T-singularities, the Picard lattice with its named-curve
registry, deformation bookkeeping into the rank-10 Neron-Severi lattice,
graded pieces of plane ideals, and the Ext table of the length-12
exceptional collection with its pseudoheight certificate."""

__version__ = "0.1.0"

from .linalg import (
    InvalidChain,
    MatQ,
    Rat,
    SingularMatrix,
    det_z,
    rank_q,
    solve_q,
    tridiag_det,
)
from .tchain import (
    DegenerateChain,
    InvalidPair,
    TChain,
    blow_up_chain,
    chain_from_ks,
    discrepancies,
    fiber_coefficients,
    hj_expand,
)
from .surface import (
    CongruenceViolation,
    DivY,
    QDivY,
    SurfaceModel,
    build_surface,
)
from .smoothing import (
    ChiBreakdown,
    DivGen,
    K_GEN,
    NotAdmissible,
    NotInvertible,
    Smoothing,
    chi_of_class,
    chi_wp2,
)
from .ideals import (
    Colon,
    Gens,
    HomPoly,
    PlaneConfig,
    Pow,
    Prod,
    graded_dim,
    graded_piece,
    parse_poly,
)
from .cohomology import (
    ExtTable,
    ExtTriple,
    WitnessSchedule,
    ZERO_SECTIONS,
    h0_gen_bound,
    h0_witness_bound,
    load_fixtures,
    normalize_rep,
    pseudoheight_ac,
    rule_out,
)

__all__ = [name for name in dir() if not name.startswith("_")]
