"""ocnkit: one-counter nets, unary determinization, and LCM reduction generators."""

from .core import (
    Configuration,
    EquivReport,
    Ocn,
    OcnError,
    ParseError,
    accepts,
    bounded_equiv,
    is_deterministic,
    parse_ocn,
    serialize_ocn,
    step,
)
from .determinizer import (
    Inconclusive,
    NotUniformDet,
    UniformDet,
    decide_uniform_det,
    synthesize_docn,
    unary_language_dfa,
)
from .dot import export_dot
from .semilinear import (
    LinearSet2,
    SemilinearSet2,
    UnarySemilinear,
    normalize_common_period,
    to_ultimately_periodic,
    unary_semilinear_to_regex,
)
from .unary import Mcr, Tail, detect_periodicity, is_increasing, mcr, mcr_brute, mcr_prefix

__version__ = "0.1.0"

__all__ = [
    "Configuration", "EquivReport", "Inconclusive", "LinearSet2", "Mcr", "NotUniformDet", "Ocn",
    "OcnError", "ParseError", "SemilinearSet2", "Tail", "UnarySemilinear", "UniformDet",
    "accepts", "bounded_equiv", "decide_uniform_det", "detect_periodicity", "export_dot",
    "is_deterministic", "is_increasing", "mcr", "mcr_brute", "mcr_prefix",
    "normalize_common_period", "parse_ocn", "serialize_ocn", "step", "synthesize_docn",
    "to_ultimately_periodic", "unary_language_dfa", "unary_semilinear_to_regex",
]
