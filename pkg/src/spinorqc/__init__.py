"""Algebraic spinors in Cl(1,3) for quantum computing: exact kernel,
tensor products, braids, teleportation, Majorana operators and a Pauli
matrix oracle."""

from .algebra import (
    PAULI,
    STA,
    Multivector,
    Signature,
    exp_bivector,
    gamma,
    grade_project,
    pseudoscalar,
    reverse,
    spin_membership,
)
from .braid import braid_b, braid_relation_check, teleport_decompose
from .errors import (
    ConvergenceError,
    ExpDomainError,
    NotEvenError,
    NotInIdealError,
    SignatureMismatch,
    SlotMismatch,
    SpinorQCError,
)
from .scalar import ComplexScalar, Scalar
from .spinor import P, QubitAmplitudes, decode_qubit, dual, encode_qubit, inner_product
from .tensor import (
    MultiQubitAmplitudes,
    TensorMultivector,
    bell_states,
    decode_state,
    encode_state,
    tensor,
    tmul,
)

__version__ = "0.1.0"

__all__ = [
    "PAULI",
    "STA",
    "ComplexScalar",
    "ConvergenceError",
    "ExpDomainError",
    "MultiQubitAmplitudes",
    "Multivector",
    "NotEvenError",
    "NotInIdealError",
    "P",
    "QubitAmplitudes",
    "Scalar",
    "Signature",
    "SignatureMismatch",
    "SlotMismatch",
    "SpinorQCError",
    "TensorMultivector",
    "bell_states",
    "braid_b",
    "braid_relation_check",
    "decode_qubit",
    "decode_state",
    "dual",
    "encode_qubit",
    "encode_state",
    "exp_bivector",
    "gamma",
    "grade_project",
    "inner_product",
    "pseudoscalar",
    "reverse",
    "spin_membership",
    "teleport_decompose",
    "tensor",
    "tmul",
]
