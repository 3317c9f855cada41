"""moldkit: exact tools for 2x2 matrix representations.

Classifies tuples of 2x2 matrices over prime fields or the rationals into
the six mold strata, decides conjugacy with explicit certificates,
extracts moduli coordinates, and verifies the structural claims by
exhaustive census over small finite fields.
"""

from .canon import (
    ABChart,
    CharDeriv,
    general_conjugator,
    scalar_decompose,
    ss_conjugator,
    ss_equivalent,
    uf2_decompose,
    uf2_reconstruct,
    uf2_transition,
    unipotent_decompose,
    unipotent_reconstruct,
)
from .census import CensusKey, StratumCounts, consistency_report, orbit_census, stratum_census
from .fields import FieldElement, FieldSpec, embed_int, inv
from .invariants import (
    InvariantVector,
    delta2,
    delta4,
    det_from_traces,
    invariant_vector,
    m_power_closed,
    reconstruct_from_traces,
    tau3,
    trace_word,
)
from .mat2 import (
    CompanionCert,
    Mat2,
    char_data,
    commutant_basis,
    commutator_image_test,
    companion_normalize,
    conjugate,
    eta,
)
from .mold import (
    MoldLabel,
    SubalgebraBasis,
    air_by_discriminants,
    classify,
    common_invariant_line,
    rank_le2_test,
    span_closure,
)
from .words import GROUP, MONOID, RepTuple, Word

__version__ = "0.1.0"

__all__ = [
    "ABChart",
    "CensusKey",
    "CharDeriv",
    "CompanionCert",
    "FieldElement",
    "FieldSpec",
    "GROUP",
    "InvariantVector",
    "Mat2",
    "MONOID",
    "MoldLabel",
    "RepTuple",
    "StratumCounts",
    "SubalgebraBasis",
    "Word",
    "air_by_discriminants",
    "char_data",
    "classify",
    "commutant_basis",
    "commutator_image_test",
    "common_invariant_line",
    "companion_normalize",
    "conjugate",
    "consistency_report",
    "delta2",
    "delta4",
    "det_from_traces",
    "embed_int",
    "eta",
    "general_conjugator",
    "inv",
    "invariant_vector",
    "m_power_closed",
    "orbit_census",
    "rank_le2_test",
    "reconstruct_from_traces",
    "scalar_decompose",
    "span_closure",
    "ss_conjugator",
    "ss_equivalent",
    "stratum_census",
    "tau3",
    "trace_word",
    "uf2_decompose",
    "uf2_reconstruct",
    "uf2_transition",
    "unipotent_decompose",
    "unipotent_reconstruct",
]
