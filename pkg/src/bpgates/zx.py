"""ZX-decomposition: G = Σ_{u,v} α_{u,v} Z_u X_v and its X-part blocks.

Coefficient storage is sparse: entries with |α| ≤ tol are absent. A gate
that permutes basis states with phases has at most 2^n nonzero coefficients
out of 4^n, so the sparse map is the natural carrier.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DEFAULT_TOL, matrix_qubits, parity, walsh_hadamard


@dataclass(frozen=True)
class ZXDecomposition:
    n: int
    coeffs: dict[tuple[int, int], complex]  # (u, v) -> alpha_{u,v}
    tol: float = DEFAULT_TOL

    def x_parts(self) -> list[int]:
        """Sorted list of v with at least one stored coefficient."""
        return sorted({v for (_, v) in self.coeffs})


@dataclass(frozen=True)
class ZXBlock:
    """A_v = Σ_u α_{u,v} Z_u X_v, the collected terms with X-part v."""

    n: int
    v: int
    coeffs: dict[int, complex] = field(default_factory=dict)  # u -> alpha


def zx_decompose(G: np.ndarray, tol: float = DEFAULT_TOL) -> ZXDecomposition:
    """Expand G in the Z_u X_v basis: α_{u,v} = Tr((Z_u X_v)† G) / 2^n.

    Z_u X_v has entry (-1)^{u·s} at (s, s⊕v), so for fixed v the coefficient
    column is the Walsh-Hadamard transform of the shifted diagonal
    d_v[s] = G[s, s⊕v].
    """
    G = np.asarray(G, dtype=complex)
    n = matrix_qubits(G)
    dim = 1 << n
    coeffs: dict[tuple[int, int], complex] = {}
    for v in range(dim):
        dv = np.array([G[s, s ^ v] for s in range(dim)])
        alpha = walsh_hadamard(dv) / dim
        for u in range(dim):
            if abs(alpha[u]) > tol:
                coeffs[(u, v)] = complex(alpha[u])
    return ZXDecomposition(n=n, coeffs=coeffs, tol=tol)


def reconstruct(d: ZXDecomposition) -> np.ndarray:
    dim = 1 << d.n
    M = np.zeros((dim, dim), dtype=complex)
    for (u, v), alpha in d.coeffs.items():
        for s in range(dim):
            M[s, s ^ v] += alpha * (-1.0) ** parity(u & s)
    return M


def block(d: ZXDecomposition, v: int | str) -> ZXBlock:
    """The block A_v; an all-absent block is the valid zero operator."""
    if isinstance(v, str):
        v = int(v, 2)
    if not 0 <= v < (1 << d.n):
        raise ValueError(f"v={v} out of range for n={d.n}")
    coeffs = {u: a for (u, w), a in d.coeffs.items() if w == v}
    return ZXBlock(n=d.n, v=v, coeffs=coeffs)


def block_matrix(b: ZXBlock) -> np.ndarray:
    dim = 1 << b.n
    M = np.zeros((dim, dim), dtype=complex)
    for u, alpha in b.coeffs.items():
        for s in range(dim):
            M[s, s ^ b.v] += alpha * (-1.0) ** parity(u & s)
    return M


def block_basis_form(
    b: ZXBlock, tol: float = DEFAULT_TOL
) -> tuple[set[int], dict[int, complex]]:
    """(S_v, β) with A_v = Σ_{s∈S_v} β_{s,v}|s⟩⟨s ⊕ v| and β_{s,v} = Σ_u (-1)^{u·s} α_{u,v}."""
    dim = 1 << b.n
    alpha = np.zeros(dim, dtype=complex)
    for u, a in b.coeffs.items():
        alpha[u] = a
    beta = walsh_hadamard(alpha)
    diag = {s: complex(beta[s]) for s in range(dim) if abs(beta[s]) > tol}
    return set(diag), diag


def block_product_adjoint(a: ZXBlock, b: ZXBlock) -> np.ndarray:
    """Dense A_v A_w†."""
    if a.n != b.n:
        raise ValueError("block qubit counts differ")
    return block_matrix(a) @ block_matrix(b).conj().T


def is_z_type(G: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff G is a combination of Z-string Paulis, i.e. every ZX
    coefficient with v ≠ 0 is below tol. Equivalent to G being diagonal."""
    d = zx_decompose(G, tol)
    return all(v == 0 for (_, v) in d.coeffs)
