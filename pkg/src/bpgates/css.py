"""CSS codes from classical code pairs, equicoherent encodings, and the
logical ↔ physical correspondence for bias-preserving gates.

A CSS code built from C1 ⊂ C2 encodes logical |x⟩ as the uniform coset
superposition over x·B + C1, where the transversal B extends a basis of C1
to one of C2. Every logical basis image has coherence rank |C1| and the
supports are disjoint cosets, which is exactly what lets a logical
permutation-with-phases lift to a physical one.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import gf2
from .linalg import DEFAULT_TOL, index_to_bits, num_qubits
from .verify import (
    TWO_PI,
    BpVerdict,
    PermutationWithPhases,
    check_permutation,
    coherence_rank,
)


class CodeConstructionError(ValueError):
    """Invalid classical code input or code pair."""


class NotInCodespaceError(ValueError):
    """State handed to decode lies outside the span of the code basis."""


class NotLogicalOperatorError(ValueError):
    """Physical gate does not map the codespace to itself."""


class NotBiasPreservingError(ValueError):
    """Physical gate fails the bias-preservation checks."""


@dataclass(frozen=True)
class BinaryCode:
    """Classical linear [n, k] code held as a row-reduced generator matrix."""

    n: int
    k: int
    generator: np.ndarray  # k x n uint8, RREF

    @classmethod
    def from_rows(cls, rows) -> "BinaryCode":
        A = gf2.as_gf2(rows)
        R, pivots = gf2.rref(A)
        if len(pivots) != A.shape[0]:
            raise CodeConstructionError(
                f"generator rows are dependent: rank {len(pivots)} < {A.shape[0]} rows"
            )
        R.setflags(write=False)
        return cls(n=A.shape[1], k=A.shape[0], generator=R)

    def words(self) -> list[int]:
        """All codewords as big-endian integers."""
        return [gf2.vec_to_int(w) for w in gf2.codewords(self.generator)]


@dataclass(frozen=True)
class CssEncoding:
    c1: BinaryCode
    c2: BinaryCode
    n: int
    k: int
    transversal: np.ndarray  # k x n uint8, coset representatives B_i
    l: int  # common coherence rank, |C1|
    basis_support: dict[int, frozenset[int]]  # logical x -> T(|x>_L)
    basis_states: dict[int, np.ndarray]  # logical x -> n-qubit state vector

    def coset_rep(self, x: int) -> int:
        """x·B as a big-endian integer, for a logical basis index x."""
        rep = np.zeros(self.n, dtype=np.uint8)
        for i in range(self.k):
            if (x >> (self.k - 1 - i)) & 1:
                rep ^= self.transversal[i]
        return gf2.vec_to_int(rep)


@dataclass(frozen=True)
class GenericEncoding:
    """Arbitrary basis-state encoding, for equicoherence counterexamples."""

    n: int
    k: int
    basis_states: dict[int, np.ndarray]

    @classmethod
    def from_states(cls, states: dict[int, np.ndarray], tol: float = DEFAULT_TOL):
        k = len(states).bit_length() - 1
        if 1 << k != len(states) or set(states) != set(range(1 << k)):
            raise ValueError("basis_states must be keyed by 0..2^k-1")
        n = num_qubits(next(iter(states.values())).size)
        vecs = {x: np.asarray(v, dtype=complex) for x, v in states.items()}
        for x, y in combinations(sorted(vecs), 2):
            if abs(np.vdot(vecs[x], vecs[y])) > tol:
                raise ValueError(f"basis states {x} and {y} are not orthogonal")
        for x, v in vecs.items():
            if abs(np.linalg.norm(v) - 1.0) > tol:
                raise ValueError(f"basis state {x} is not normalized")
        return cls(n=n, k=k, basis_states=vecs)


def build_css(c1: BinaryCode, c2: BinaryCode) -> CssEncoding:
    """Standard CSS encoding for C1 ⊂ C2.

    The transversal rows extend the row-reduced basis of C1 to a basis of
    C2 and are themselves reduced against C1, making the encoding a
    deterministic function of the code pair."""
    if c1.n != c2.n:
        raise CodeConstructionError(f"code lengths differ: {c1.n} vs {c2.n}")
    n = c1.n
    R1, piv1 = gf2.rref(c1.generator)
    R2, piv2 = gf2.rref(c2.generator)
    for row in c1.generator:
        if not gf2.in_rowspace(row, R2, piv2):
            raise CodeConstructionError("C1 is not a subcode of C2")
    k = c2.k - c1.k
    if k <= 0:
        raise CodeConstructionError(f"degenerate code: no logical qubits (k={k})")
    # extend C1's basis to C2's, keeping only the new directions
    new_rows = []
    stack = c1.generator.copy()
    for row in c2.generator:
        R, piv = gf2.rref(stack)
        if not gf2.in_rowspace(row, R, piv):
            new_rows.append(gf2.reduce_against(row, R1, piv1))
            stack = np.vstack([stack, row])
    B, _ = gf2.rref(np.array(new_rows, dtype=np.uint8))
    if B.shape[0] != k:
        raise CodeConstructionError("transversal extraction lost rank")
    B.setflags(write=False)

    c1_words = c1.words()
    l = len(c1_words)
    support: dict[int, frozenset[int]] = {}
    states: dict[int, np.ndarray] = {}
    amp = 1.0 / np.sqrt(l)
    for x in range(1 << k):
        rep = np.zeros(n, dtype=np.uint8)
        for i in range(k):
            if (x >> (k - 1 - i)) & 1:
                rep ^= B[i]
        rep_int = gf2.vec_to_int(rep)
        coset = frozenset(rep_int ^ y for y in c1_words)
        support[x] = coset
        psi = np.zeros(1 << n, dtype=complex)
        for t in coset:
            psi[t] = amp
        states[x] = psi
    return CssEncoding(
        c1=c1,
        c2=c2,
        n=n,
        k=k,
        transversal=B,
        l=l,
        basis_support=support,
        basis_states=states,
    )


def check_equicoherent(
    e: CssEncoding | GenericEncoding, tol: float = DEFAULT_TOL
) -> tuple[bool, int | None, str | None]:
    """Verify equal coherence ranks and pairwise disjoint supports of the
    logical basis images. Returns (ok, common rank l, violation)."""
    ranks = {x: coherence_rank(v, tol) for x, v in e.basis_states.items()}
    supports = {
        x: frozenset(np.where(np.abs(v) > tol)[0].tolist())
        for x, v in e.basis_states.items()
    }
    for x, y in combinations(sorted(ranks), 2):
        if ranks[x] != ranks[y]:
            return (
                False,
                None,
                f"condition 1: ranks differ for ({index_to_bits(x, e.k)}, "
                f"{index_to_bits(y, e.k)}): {ranks[x]} vs {ranks[y]}",
            )
        if supports[x] & supports[y]:
            overlap = sorted(supports[x] & supports[y])[0]
            return (
                False,
                None,
                f"condition 2: supports of ({index_to_bits(x, e.k)}, "
                f"{index_to_bits(y, e.k)}) overlap at {index_to_bits(overlap, e.n)}",
            )
    return True, ranks[0], None


def encode(e: CssEncoding | GenericEncoding, psi: np.ndarray) -> np.ndarray:
    """Linear extension of the basis map to a k-qubit state."""
    psi = np.asarray(psi, dtype=complex)
    if psi.size != 1 << e.k:
        raise ValueError(f"expected a {e.k}-qubit state, got dimension {psi.size}")
    out = np.zeros(1 << e.n, dtype=complex)
    for x in range(1 << e.k):
        if psi[x]:
            out += psi[x] * e.basis_states[x]
    return out


def decode(
    e: CssEncoding | GenericEncoding, psi_l: np.ndarray, tol: float = DEFAULT_TOL
) -> np.ndarray:
    """Recover the logical state by inner products with the basis images.
    Errors if the input leaves the codespace by more than tol in norm."""
    psi_l = np.asarray(psi_l, dtype=complex)
    if psi_l.size != 1 << e.n:
        raise ValueError(f"expected a {e.n}-qubit state, got dimension {psi_l.size}")
    coeffs = np.array([np.vdot(e.basis_states[x], psi_l) for x in range(1 << e.k)])
    residual = np.linalg.norm(psi_l - encode(e, coeffs))
    if residual > tol:
        raise NotInCodespaceError(f"residual norm {residual:.3e} outside codespace")
    return coeffs


def coherence_scaling_check(
    e: CssEncoding, psi: np.ndarray, tol: float = DEFAULT_TOL
) -> bool:
    """χ(encode(ψ)) must equal l · χ(ψ): each logical term contributes one
    disjoint coset of size l."""
    return coherence_rank(encode(e, psi), tol) == e.l * coherence_rank(psi, tol)


def lift_logical(e: CssEncoding, g: PermutationWithPhases) -> PermutationWithPhases:
    """Physical bias-preserving gate realizing a logical one.

    Cosets matched by C1-translation: γ(x·B ⊕ y) = π(x)·B ⊕ y for y ∈ C1,
    identity outside the codespace supports; each coset carries its logical
    phase. Satisfies encode ∘ G = Ĝ ∘ encode on the logical basis."""
    if g.n != e.k:
        raise ValueError(f"logical gate acts on {g.n} qubits, code has k={e.k}")
    dim = 1 << e.n
    perm = list(range(dim))
    phases = [0.0] * dim
    c1_words = e.c1.words()
    for x in range(1 << e.k):
        src_rep = e.coset_rep(x)
        dst_rep = e.coset_rep(g.perm[x])
        for y in c1_words:
            perm[src_rep ^ y] = dst_rep ^ y
            phases[src_rep ^ y] = g.phases[x]
    return PermutationWithPhases(e.n, tuple(perm), tuple(phases))


def restrict_physical(
    e: CssEncoding, g_hat: np.ndarray, tol: float = DEFAULT_TOL
) -> PermutationWithPhases:
    """Logical gate induced by a physical gate that is both bias-preserving
    and a logical operator; the result is guaranteed to be a permutation
    with phases."""
    verdict: BpVerdict = check_permutation(g_hat, tol)
    if not verdict.is_bp:
        raise NotBiasPreservingError(verdict.witness or "gate is not bias-preserving")
    perm = [0] * (1 << e.k)
    phases = [0.0] * (1 << e.k)
    for x in range(1 << e.k):
        image = np.asarray(g_hat, dtype=complex) @ e.basis_states[x]
        try:
            coeffs = decode(e, image, tol)
        except NotInCodespaceError as exc:
            raise NotLogicalOperatorError(
                f"image of logical |{index_to_bits(x, e.k)}⟩ leaves the codespace"
            ) from exc
        hits = np.where(np.abs(coeffs) > tol)[0]
        if hits.size != 1 or abs(abs(coeffs[hits[0]]) - 1.0) > tol:
            raise NotLogicalOperatorError(
                f"image of logical |{index_to_bits(x, e.k)}⟩ is not a basis state"
            )
        perm[x] = int(hits[0])
        phases[x] = float(np.angle(coeffs[hits[0]])) % TWO_PI
    return PermutationWithPhases(e.k, tuple(perm), tuple(phases))


def obstruction_check(
    e: GenericEncoding | CssEncoding, s: int, t: int, tol: float = DEFAULT_TOL
) -> tuple[int, int] | None:
    """Coherence-rank obstruction to lifting the logical gate |s⟩ → |t⟩.

    If the logical basis images have different ranks, no physical
    bias-preserving gate can realize that logical map; the rank pair is the
    certificate. Returns None when ranks agree."""
    if s == t:
        raise ValueError("s and t must be distinct logical basis indices")
    rs = coherence_rank(e.basis_states[s], tol)
    rt = coherence_rank(e.basis_states[t], tol)
    if rs != rt:
        return (rs, rt)
    return None
