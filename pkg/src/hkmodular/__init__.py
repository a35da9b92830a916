"""Exact arithmetic for modular sheaves on hyperkähler fourfolds of K3^[2] type."""

from .abelian import PolarizedAbelianType, admissible_ranks, semihom_rank
from .blowup import BlowupClass, BlowupRing, eval_top_blowup, grr_hilb2, oracle_compare, pullback_ch
from .chern import (
    ChernCharacter,
    a_value,
    chern_classes_from_character,
    chi_end0,
    discriminant,
    hrr_chi,
    lambda_class,
    mercedes_identity,
    modularity_d,
    rank_restriction,
    twist,
)
from .cohomology import FujikiModel, H2Class, H4Class, H6Class, TopClass
from .errors import ConsistencyError, PreconditionError
from .hilb2 import (
    Hilb2Embedding,
    Hilb2Params,
    MukaiVector,
    catalog,
    chi_hom,
    dictionary,
    econ,
    hilb2_chern,
    hplus_class,
    modular_package,
    mukai_pair,
    mukai_square,
)
from .lattice import (
    GramLattice,
    LatVec,
    enumerate_negative_classes,
    isotropic_analysis,
    min_negative_square,
    nl_hypotheses,
    pair_and_divisibility,
)
from .walls import Wall, awalls, destabilizer_window, same_chamber, suitable

__version__ = "0.1.0"
