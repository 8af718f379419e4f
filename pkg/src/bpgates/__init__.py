"""Verification, discrete synthesis and CSS lifting for Z-bias-preserving
quantum gates."""

from .linalg import (
    DEFAULT_TOL,
    DENSE_QUBIT_CAP,
    GOLDEN_THETA,
    basis_state,
    pauli_x_string,
    pauli_z_string,
    phase_optimized_error,
    tensor,
    worst_case_error,
)
from .zx import ZXBlock, ZXDecomposition, block, block_basis_form, block_matrix, block_product_adjoint, is_z_type, reconstruct, zx_decompose
from .verify import (
    BpVerdict,
    PermutationWithPhases,
    check_normalizer,
    check_permutation,
    check_zx,
    coherence_rank,
    hadamard_bound,
    random_bp,
    support_set,
    to_unitary,
)
from .synth import (
    Gate,
    GateSequence,
    SynthesisReport,
    approximate_phase,
    diagonal_to_circuit,
    factor_dp,
    permutation_to_circuit,
    simulate,
    simulate_restricted,
    synthesize,
)
from .css import (
    BinaryCode,
    CssEncoding,
    GenericEncoding,
    build_css,
    check_equicoherent,
    coherence_scaling_check,
    decode,
    encode,
    lift_logical,
    obstruction_check,
    restrict_physical,
)

__version__ = "0.1.0"
