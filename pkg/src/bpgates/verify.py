"""Deciding Z-bias preservation by three independent characterizations.

A gate preserves Z bias iff it is a permutation of computational basis
states with per-state phases. The three routes:
  * check_permutation — column structure of the dense matrix,
  * check_zx          — orthogonality/completeness of the ZX blocks,
  * check_normalizer  — conjugated Z generators stay diagonal.
They must agree on every unitary; the test suite enforces that.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import numpy as np

from .linalg import (
    DEFAULT_TOL,
    index_to_bits,
    matrix_qubits,
    pauli_z_string,
    require_unitary,
)
from .zx import block, block_basis_form, block_matrix, is_z_type, zx_decompose

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class PermutationWithPhases:
    """Canonical form G = Σ_s e^{iφ_s}|σ(s)⟩⟨s| of a bias-preserving gate."""

    n: int
    perm: tuple[int, ...]  # sigma: source index -> target index
    phases: tuple[float, ...]  # phi_s, normalized to [0, 2pi)

    def __post_init__(self):
        dim = 1 << self.n
        if len(self.perm) != dim or len(self.phases) != dim:
            raise ValueError("perm/phases length must be 2^n")
        if sorted(self.perm) != list(range(dim)):
            raise ValueError("perm is not a bijection on basis indices")
        object.__setattr__(
            self, "phases", tuple(float(p) % TWO_PI for p in self.phases)
        )

    def compose(self, other: "PermutationWithPhases") -> "PermutationWithPhases":
        """self ∘ other (other applied first)."""
        if self.n != other.n:
            raise ValueError("qubit counts differ")
        dim = 1 << self.n
        perm = tuple(self.perm[other.perm[s]] for s in range(dim))
        phases = tuple(
            (other.phases[s] + self.phases[other.perm[s]]) % TWO_PI
            for s in range(dim)
        )
        return PermutationWithPhases(self.n, perm, phases)

    def adjoint(self) -> "PermutationWithPhases":
        dim = 1 << self.n
        inv = [0] * dim
        phases = [0.0] * dim
        for s in range(dim):
            inv[self.perm[s]] = s
            phases[self.perm[s]] = (-self.phases[s]) % TWO_PI
        return PermutationWithPhases(self.n, tuple(inv), tuple(phases))


@dataclass(frozen=True)
class BpVerdict:
    is_bp: bool
    canonical: Optional[PermutationWithPhases] = None
    witness: Optional[str] = None


def to_unitary(p: PermutationWithPhases) -> np.ndarray:
    dim = 1 << p.n
    M = np.zeros((dim, dim), dtype=complex)
    for s in range(dim):
        M[p.perm[s], s] = np.exp(1j * p.phases[s])
    return M


def check_permutation(G: np.ndarray, tol: float = DEFAULT_TOL) -> BpVerdict:
    """Column test: each column must hold exactly one unit-magnitude entry.

    Entries in the open band (tol, 1 - tol) are immediately diagnostic of a
    genuine superposition, so the first such column is reported as witness.
    """
    G = require_unitary(G, tol)
    n = matrix_qubits(G)
    dim = 1 << n
    perm = [-1] * dim
    phases = [0.0] * dim
    for s in range(dim):
        col = G[:, s]
        mags = np.abs(col)
        unit = np.where(np.abs(mags - 1.0) <= tol)[0]
        band = np.where((mags > tol) & (np.abs(mags - 1.0) > tol))[0]
        if band.size or unit.size != 1:
            entries = ", ".join(
                f"|{index_to_bits(int(t), n)}⟩: {mags[t]:.6f}"
                for t in np.where(mags > tol)[0]
            )
            return BpVerdict(
                is_bp=False,
                witness=f"column {index_to_bits(s, n)} has entries {entries}",
            )
        t = int(unit[0])
        perm[s] = t
        phases[s] = float(np.angle(col[t])) % TWO_PI
    if sorted(perm) != list(range(dim)):
        return BpVerdict(is_bp=False, witness="unit entries do not form a bijection")
    canonical = PermutationWithPhases(n, tuple(perm), tuple(phases))
    return BpVerdict(is_bp=True, canonical=canonical)


def check_zx(G: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Block test: A_v A_w† = 0 for v ≠ w and Σ_v A_v A_v† = I."""
    G = require_unitary(G, tol)
    n = matrix_qubits(G)
    d = zx_decompose(G, tol)
    parts = d.x_parts()
    mats = {v: block_matrix(block(d, v)) for v in parts}
    for v, w in combinations(parts, 2):
        if np.max(np.abs(mats[v] @ mats[w].conj().T)) > tol:
            return False
    total = sum((m @ m.conj().T for m in mats.values()), np.zeros((1 << n, 1 << n)))
    return bool(np.max(np.abs(total - np.eye(1 << n))) <= tol)


def check_normalizer(
    G: np.ndarray, tol: float = DEFAULT_TOL, exhaustive: bool = False
) -> bool:
    """Normalizer test: G Z G† must stay Z-type (diagonal) for every Z string.

    Checking the n single-qubit generators Z_i suffices: conjugation is a
    homomorphism and the diagonal unitaries are closed under products. The
    exhaustive variant over all 2^n strings is kept for cross-validation.
    """
    G = require_unitary(G, tol)
    n = matrix_qubits(G)
    Gdag = G.conj().T
    if exhaustive:
        strings = [index_to_bits(c, n) for c in range(1, 1 << n)]
    else:
        strings = ["0" * i + "1" + "0" * (n - 1 - i) for i in range(n)]
    for c in strings:
        if not is_z_type(G @ pauli_z_string(c) @ Gdag, tol):
            return False
    return True


def coherence_rank(psi: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Number of computational-basis amplitudes above tol; 0 for the 0 vector."""
    return int(np.count_nonzero(np.abs(np.asarray(psi)) > tol))


def support_set(psi: np.ndarray, tol: float = DEFAULT_TOL) -> set[str]:
    """Bit-string labels of the nonzero amplitudes."""
    psi = np.asarray(psi)
    from .linalg import num_qubits

    n = num_qubits(psi.size)
    return {index_to_bits(s, n) for s in np.where(np.abs(psi) > tol)[0]}


def hadamard_bound(n: int) -> float:
    """Lower bound √(2(1 − 2^{-n/2})) on the worst-case error when any
    bias-preserving gate stands in for the n-fold Hadamard."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return float(np.sqrt(2.0 * (1.0 - 2.0 ** (-n / 2.0))))


def support_partition(G: np.ndarray, tol: float = DEFAULT_TOL) -> dict[int, set[int]]:
    """Map v -> S_v from the block basis form; for a bias-preserving gate the
    supports partition the basis strings."""
    d = zx_decompose(G, tol)
    out: dict[int, set[int]] = {}
    for v in d.x_parts():
        support, _ = block_basis_form(block(d, v), tol)
        if support:
            out[v] = support
    return out


def random_bp(n: int, rng: np.random.Generator) -> PermutationWithPhases:
    """Uniform random permutation plus phases uniform in [0, 2π); this
    parameterizes the whole bias-preserving group."""
    dim = 1 << n
    perm = tuple(int(t) for t in rng.permutation(dim))
    phases = tuple(float(p) for p in rng.uniform(0.0, TWO_PI, size=dim))
    return PermutationWithPhases(n, perm, phases)
