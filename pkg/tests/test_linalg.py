import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bpgates import linalg
from bpgates.linalg import (
    H,
    I2,
    X,
    Z,
    as_index,
    index_to_bits,
    pauli_x_string,
    pauli_z_string,
    phase_optimized_error,
    tensor,
    worst_case_error,
)

bitstrings = st.text(alphabet="01", min_size=1, max_size=6)


def test_tensor_identity():
    assert np.array_equal(tensor(I2, I2), np.eye(4))


def test_tensor_zz_sign_pattern():
    assert np.allclose(tensor(Z, Z), np.diag([1, -1, -1, 1]))


def test_tensor_xx_flips_both_qubits():
    psi = np.zeros(4)
    psi[0] = 1.0  # |00>
    assert np.allclose(tensor(X, X) @ psi, [0, 0, 0, 1])  # |11>


def test_tensor_associative_and_dims():
    rng = np.random.default_rng(7)
    # exactly representable entries keep float multiplication associative
    A, B, C = (rng.choice([-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0], size=(2, 2)) for _ in range(3))
    left = tensor(tensor(A, B), C)
    right = tensor(A, tensor(B, C))
    assert np.array_equal(left, right)
    assert left.shape == (8, 8)


def test_pauli_z_string_trivial_cases():
    assert np.array_equal(pauli_z_string("00"), np.eye(4))
    assert np.allclose(pauli_z_string("1"), np.diag([1, -1]))


def test_pauli_z_string_101():
    # entry at |s> is (-1)^(s0 xor s2)
    diag = pauli_z_string("101").diagonal().real
    for s in range(8):
        s0, s2 = (s >> 2) & 1, s & 1
        assert diag[s] == (-1.0) ** (s0 ^ s2)


def test_pauli_x_string_cases():
    assert np.array_equal(pauli_x_string("00"), np.eye(4))
    assert np.array_equal(pauli_x_string("1"), [[0, 1], [1, 0]])
    psi = np.zeros(4)
    psi[1] = 1.0  # |01>
    assert np.allclose(pauli_x_string("11") @ psi, [0, 0, 1, 0])  # |10>


@given(bitstrings, bitstrings)
@settings(max_examples=50, deadline=None)
def test_pauli_string_group_law(a, b):
    n = min(len(a), len(b))
    a, b = a[:n], b[:n]
    c = format(int(a, 2) ^ int(b, 2), f"0{n}b")
    assert np.array_equal(
        pauli_z_string(a) @ pauli_z_string(b), pauli_z_string(c)
    )
    assert np.array_equal(
        pauli_x_string(a) @ pauli_x_string(b), pauli_x_string(c)
    )


def test_as_index_roundtrip():
    assert as_index("101") == (5, 3)
    assert as_index([1, 0, 1]) == (5, 3)
    assert index_to_bits(5, 3) == "101"
    with pytest.raises(ValueError):
        as_index("10x")


def test_worst_case_error_examples():
    U = np.array([[np.exp(0.3j), 0], [0, np.exp(-0.2j)]])
    assert worst_case_error(U, U) == 0.0
    assert abs(worst_case_error(I2, X) - 2.0) < 1e-12
    assert abs(worst_case_error(H, I2) - 2.0) < 1e-12


def test_worst_case_error_dimension_mismatch():
    with pytest.raises(ValueError):
        worst_case_error(I2, np.eye(4))


def test_worst_case_error_metric_axioms():
    rng = np.random.default_rng(11)
    from conftest import random_unitary

    for _ in range(20):
        U, V, W = (random_unitary(2, rng) for _ in range(3))
        assert abs(worst_case_error(U, V) - worst_case_error(V, U)) < 1e-8
        assert worst_case_error(U, U) < 1e-12
        assert (
            worst_case_error(U, W)
            <= worst_case_error(U, V) + worst_case_error(V, W) + 1e-8
        )
        # left-invariance
        assert (
            abs(worst_case_error(W @ U, W @ V) - worst_case_error(U, V)) < 1e-8
        )


def test_phase_optimized_error():
    # global phase difference only: optimized error must vanish
    U = np.diag([1.0, 1.0]).astype(complex)
    V = np.exp(0.7j) * U
    assert worst_case_error(U, V) > 0.5
    assert phase_optimized_error(U, V) < 1e-12
    # brute-force grid oracle on random pairs
    rng = np.random.default_rng(3)
    from conftest import random_unitary

    for _ in range(10):
        A, B = random_unitary(2, rng), random_unitary(2, rng)
        grid = min(
            worst_case_error(A, np.exp(1j * phi) * B)
            for phi in np.linspace(0, 2 * np.pi, 2000)
        )
        assert phase_optimized_error(A, B) <= grid + 1e-5
        assert phase_optimized_error(A, B) >= grid - 1e-2


def test_num_qubits_validation():
    with pytest.raises(ValueError):
        linalg.num_qubits(3)
    with pytest.raises(ValueError):
        linalg.num_qubits(1 << (linalg.DENSE_QUBIT_CAP + 1))
    assert linalg.num_qubits(8) == 3


def test_walsh_hadamard_matches_definition():
    rng = np.random.default_rng(5)
    v = rng.normal(size=8) + 1j * rng.normal(size=8)
    out = linalg.walsh_hadamard(v)
    for u in range(8):
        direct = sum((-1.0) ** linalg.parity(u & s) * v[s] for s in range(8))
        assert abs(out[u] - direct) < 1e-10
