"""Lossy counter machines and the OCN constructions built from them."""

from .construction import (
    ReductionError,
    finite_reach_dfa,
    flow_violation_ocn,
    initial_config_gadget,
    lcm_to_ocn,
    violation_gadget,
)
from .gadgets import GADGET_NAMES, gadget, gadget_c_zero_docn, wrap_forall, wrap_uniform_lb
from .lcm import (
    DEC,
    INC,
    ZERO,
    Lcm,
    LcmConfig,
    LcmError,
    Op,
    ReachResult,
    RunEncoding,
    decode_reversed,
    encode_config,
    encode_run,
    is_legal_reversed_run,
    lcm_reach,
    lcm_step,
    op_allows,
    parse_lcm,
    serialize_lcm,
    zero_fr_reduction,
)

__all__ = [
    "DEC", "INC", "ZERO", "GADGET_NAMES",
    "Lcm", "LcmConfig", "LcmError", "Op", "ReachResult", "ReductionError", "RunEncoding",
    "decode_reversed", "encode_config", "encode_run", "finite_reach_dfa", "flow_violation_ocn",
    "gadget", "gadget_c_zero_docn", "initial_config_gadget", "is_legal_reversed_run",
    "lcm_reach", "lcm_step", "lcm_to_ocn", "op_allows", "parse_lcm", "serialize_lcm",
    "violation_gadget", "wrap_forall", "wrap_uniform_lb", "zero_fr_reduction",
]
