"""Dense linear algebra on n-qubit registers.

Global convention: big-endian qubit ordering. Qubit 0 is the leftmost bit
of a basis label and the most significant bit of its integer index, so
|s⟩ sits at index int(s, 2) and tensor(A, B) puts A on the high bits.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DEFAULT_TOL = 1e-9

# Dense 2^n x 2^n storage is the intended regime; larger gates must use the
# permutation-with-phases form instead.
DENSE_QUBIT_CAP = 10

# Default synthesis rotation angle: 2*pi*(sqrt(5)-1)/2. Its continued
# fraction is all 1s, which keeps phase-approximation repetition counts small.
GOLDEN_THETA = np.pi * (np.sqrt(5.0) - 1.0)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)
H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)


def rz(angle: float) -> np.ndarray:
    """Rotation about the z axis: diag(e^{-i a/2}, e^{i a/2})."""
    return np.diag([np.exp(-0.5j * angle), np.exp(0.5j * angle)])


def phase_gate(angle: float) -> np.ndarray:
    """diag(1, e^{i a}); equals rz(a) up to the global phase e^{i a/2}."""
    return np.diag([1.0, np.exp(1j * angle)])


def as_index(bits: str | Sequence[int]) -> tuple[int, int]:
    """Normalize a bit string ('101' or [1,0,1]) to (integer index, length)."""
    if isinstance(bits, str):
        if not bits or any(ch not in "01" for ch in bits):
            raise ValueError(f"invalid bit string {bits!r}")
        return int(bits, 2), len(bits)
    seq = list(bits)
    if not seq or any(b not in (0, 1) for b in seq):
        raise ValueError(f"invalid bit sequence {bits!r}")
    value = 0
    for b in seq:
        value = (value << 1) | b
    return value, len(seq)


def index_to_bits(index: int, n: int) -> str:
    """Big-endian bit-string label of a basis index."""
    if not 0 <= index < (1 << n):
        raise ValueError(f"index {index} out of range for {n} qubits")
    return format(index, f"0{n}b")


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def num_qubits(dim: int) -> int:
    """Qubit count for a dimension that must be an exact power of two."""
    n = dim.bit_length() - 1
    if dim <= 0 or (1 << n) != dim:
        raise ValueError(f"dimension {dim} is not a power of two")
    if n > DENSE_QUBIT_CAP:
        raise ValueError(f"{n} qubits exceeds dense cap {DENSE_QUBIT_CAP}")
    return n


def matrix_qubits(U: np.ndarray) -> int:
    U = np.asarray(U)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {U.shape}")
    return num_qubits(U.shape[0])


def is_unitary(U: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    U = np.asarray(U, dtype=complex)
    if U.ndim != 2 or U.shape[0] != U.shape[1]:
        return False
    return bool(np.max(np.abs(U @ U.conj().T - np.eye(U.shape[0]))) <= tol)


def require_unitary(U: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    U = np.asarray(U, dtype=complex)
    matrix_qubits(U)
    if not is_unitary(U, tol):
        raise ValueError("matrix is not unitary within tolerance")
    return U


def tensor(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Kronecker product; A acts on the more significant qubits."""
    return np.kron(np.asarray(A, dtype=complex), np.asarray(B, dtype=complex))


def tensor_all(mats: Iterable[np.ndarray]) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = tensor(out, m)
    return out


def pauli_z_string(c: str | Sequence[int]) -> np.ndarray:
    """Z_c = ⊗_i Z^{c_i}: diagonal with entry (-1)^{c·s} at basis index s."""
    cval, n = as_index(c)
    diag = np.array([(-1.0) ** parity(cval & s) for s in range(1 << n)])
    return np.diag(diag).astype(complex)


def pauli_x_string(v: str | Sequence[int]) -> np.ndarray:
    """X_v = ⊗_i X^{v_i}: permutation matrix |s⟩ ↦ |s ⊕ v⟩."""
    vval, n = as_index(v)
    dim = 1 << n
    M = np.zeros((dim, dim), dtype=complex)
    for s in range(dim):
        M[s ^ vval, s] = 1.0
    return M


def basis_state(bits: str | Sequence[int]) -> np.ndarray:
    """Computational basis state |bits⟩ as a state vector."""
    idx, n = as_index(bits)
    psi = np.zeros(1 << n, dtype=complex)
    psi[idx] = 1.0
    return psi


def worst_case_error(U: np.ndarray, V: np.ndarray) -> float:
    """max_ψ ‖(U−V)|ψ⟩‖, the largest singular value of U − V."""
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if U.shape != V.shape:
        raise ValueError(f"dimension mismatch: {U.shape} vs {V.shape}")
    return float(np.linalg.svd(U - V, compute_uv=False)[0])


def phase_optimized_error(U: np.ndarray, V: np.ndarray) -> float:
    """min_φ worst_case_error(U, e^{iφ} V) for unitary U, V.

    Since U − e^{iφ}V = U(I − e^{iφ}U†V) and W = U†V is unitary, the singular
    values are |1 − e^{iφ}λ_j| = 2|sin((φ + arg λ_j)/2)| over the eigenvalues
    λ_j of W. Minimizing the max chord distance over the circle reduces to
    finding the largest angular gap between the eigenvalue phases.
    """
    U = np.asarray(U, dtype=complex)
    V = np.asarray(V, dtype=complex)
    if U.shape != V.shape:
        raise ValueError(f"dimension mismatch: {U.shape} vs {V.shape}")
    lam = np.linalg.eigvals(U.conj().T @ V)
    angles = np.sort(np.angle(lam))
    gaps = np.diff(angles, append=angles[0] + 2.0 * np.pi)
    arc = 2.0 * np.pi - float(np.max(gaps))
    return float(2.0 * np.sin(min(arc / 2.0, np.pi) / 2.0))


def walsh_hadamard(vec: np.ndarray) -> np.ndarray:
    """Unnormalized Walsh-Hadamard transform: out[u] = Σ_s (-1)^{u·s} vec[s]."""
    out = np.array(vec, dtype=complex)
    h = 1
    while h < out.size:
        for i in range(0, out.size, 2 * h):
            a = out[i : i + h].copy()
            b = out[i + h : i + 2 * h].copy()
            out[i : i + h] = a + b
            out[i + h : i + 2 * h] = a - b
        h *= 2
    return out
