"""Principal graphs, indices and fusion rings of GHJ subfactors."""

__version__ = "0.1.0"

from .core import DynkinGraph, PFData, build_diagram, coxeter_number, perron_data
from .errors import (
    AmbiguousDecomposition,
    ClosureEscapesBasis,
    DecompositionFailed,
    DependentRepresentation,
    GHJError,
    LengthTooLarge,
    NonIntegerSolution,
    PremiseUnavailable,
    RankOutOfRange,
    UnknownFamily,
    UnknownVertex,
)
from .esspath import EssPathTable, esspath_oracle, esspath_table
from .ghj import (
    GHJReport,
    dual_principal_graph,
    even_fusion_rings,
    ghj_index,
    ghj_report,
    intermediate_decomposition,
    subequivalence_report,
)
from .sectors import (
    Decomposition,
    FusionRing,
    PrincipalGraphData,
    SectorLabel,
    aa_fusion_ring,
    aa_times_ak,
    ak_times_ka,
    principal_graph,
)
from .zsystem import (
    ConnectionSystem,
    ProductGram,
    decompose_zsystem,
    is_commutative,
    product_gram,
    zfusion_table,
)
