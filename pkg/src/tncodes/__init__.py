"""Tensor-network stabilizer codes: construction, exact enumeration, decoding."""

from .code import (
    StabilizerCode,
    brute_force_chi,
    brute_force_coset_histogram,
    brute_force_distance,
    compute_destabilizers,
    direct_rotated_surface,
    five_qubit,
    groups_equal,
    load_code,
    nine_qubit_state,
    pure_error,
    purified_five_qubit,
    save_code,
    steane,
    surface_fragment,
    surface_fragment_logx,
    surface_fragment_logz,
    syndrome_of,
    validate,
)
from .decoder import Decoder, ErrorModel, chi, depolarizing_model, ml_decode
from .engine import CosetTensor, code_to_coset_tensor, contract, plan_order, trace_legs
from .enumerator import (
    CosetWeightTable,
    coset_weights,
    distance,
    logical_profile,
    make_weight_tensor,
    restricted_weights,
)
from .network import (
    ContractionError,
    LegRef,
    NetworkSpec,
    NodeSpec,
    build,
    build_full,
    load_network,
    permute_legs,
    save_network,
    self_contract,
    tensor_product,
)
from .pauli import PauliString
from .sim import SimConfig, SimRecord, monte_carlo, run_trial, sample_error

__version__ = "0.1.0"
