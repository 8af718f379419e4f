"""Compiling bias-preserving gates into {X, Rz(θ), CNOT, CCNOT}.

The target in canonical form factors as G = D·P: a permutation P realized
exactly from {X, CNOT, CCNOT} via transpositions and Gray-code routing, and
a diagonal D approximated one-level factor at a time by repeating the fixed
rotation Rz(θ). All approximation error lives in the diagonal stage.

Sequence semantics: target ≈ e^{i·global_phase} · simulate(sequence), with
ancillas supplied and returned in |0⟩.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import DENSE_QUBIT_CAP, GOLDEN_THETA
from .verify import TWO_PI, PermutationWithPhases, to_unitary
from .linalg import phase_optimized_error

GATE_KINDS = ("X", "RZ", "CNOT", "CCNOT")

# Phases closer to 0 (mod 2pi) than this are treated as trivial diagonal
# factors and emit no gates.
PHASE_TRIVIAL = 1e-12


class PhaseApproximationError(RuntimeError):
    """The repetition search hit its iteration cap: θ/(2π) is effectively too
    close to rational at the requested accuracy."""


class AncillaNotRestoredError(RuntimeError):
    """A sequence left some ancilla out of |0⟩ on an input that supplied
    ancillas in |0⟩."""


@dataclass(frozen=True)
class Gate:
    kind: str  # one of GATE_KINDS
    qubits: tuple[int, ...]
    reps: int = 1  # repetition count, RZ only

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = {"X": 1, "RZ": 1, "CNOT": 2, "CCNOT": 3}[self.kind]
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubit indices must be distinct")
        if self.kind != "RZ" and self.reps != 1:
            raise ValueError("repetition count is only meaningful for RZ")
        if self.reps < 0:
            raise ValueError("repetition count must be nonnegative")


@dataclass
class GateSequence:
    n_data: int
    n_anc: int = 0
    gates: list[Gate] = field(default_factory=list)
    theta: float = GOLDEN_THETA
    global_phase: float = 0.0

    @property
    def n_total(self) -> int:
        return self.n_data + self.n_anc

    def validate(self) -> None:
        for g in self.gates:
            if any(q >= self.n_total or q < 0 for q in g.qubits):
                raise ValueError(f"gate {g} addresses qubit outside register")

    def gate_counts(self) -> dict[str, int]:
        counts = {k: 0 for k in GATE_KINDS}
        for g in self.gates:
            counts[g.kind] += 1
        return counts


@dataclass(frozen=True)
class SynthesisReport:
    sequence: GateSequence
    target_eps: float
    achieved_error: float
    gate_counts: dict[str, int]

    def __post_init__(self):
        if self.achieved_error > self.target_eps:
            raise PhaseApproximationError(
                f"achieved error {self.achieved_error} exceeds budget {self.target_eps}"
            )


def _monomial(seq: GateSequence) -> tuple[np.ndarray, np.ndarray]:
    """Run the sequence as a monomial operator: column s ends at basis index
    target[s] with amplitude amp[s]. Every primitive is a signed-phase
    permutation, so this is exact."""
    seq.validate()
    m = seq.n_total
    dim = 1 << m
    target = np.arange(dim, dtype=np.int64)
    amp = np.ones(dim, dtype=complex)
    for g in seq.gates:
        # big-endian: qubit q is integer bit position m-1-q
        bits = tuple(m - 1 - q for q in g.qubits)
        if g.kind == "X":
            target ^= 1 << bits[0]
        elif g.kind == "CNOT":
            ctrl = (target >> bits[0]) & 1
            target ^= ctrl << bits[1]
        elif g.kind == "CCNOT":
            ctrl = (target >> bits[0]) & (target >> bits[1]) & 1
            target ^= ctrl << bits[2]
        else:  # RZ: diag(e^{-i k θ/2}, e^{+i k θ/2}) on the qubit
            bit = (target >> bits[0]) & 1
            amp = amp * np.exp(0.5j * g.reps * seq.theta * (2 * bit - 1))
    return target, amp


def simulate(seq: GateSequence) -> np.ndarray:
    """Dense unitary on all n_data + n_anc qubits (global_phase not applied)."""
    if seq.n_total > DENSE_QUBIT_CAP:
        raise ValueError(f"{seq.n_total} qubits exceeds dense cap {DENSE_QUBIT_CAP}")
    target, amp = _monomial(seq)
    dim = 1 << seq.n_total
    M = np.zeros((dim, dim), dtype=complex)
    M[target, np.arange(dim)] = amp
    return M


def simulate_restricted(seq: GateSequence) -> np.ndarray:
    """Dense unitary on the data qubits, with ancillas in and out at |0⟩.

    Raises AncillaNotRestoredError if any |data⟩⊗|0...0⟩ input leaves an
    ancilla excited; the check is exact at the permutation level."""
    if seq.n_total > DENSE_QUBIT_CAP:
        raise ValueError(f"{seq.n_total} qubits exceeds dense cap {DENSE_QUBIT_CAP}")
    target, amp = _monomial(seq)
    ddim = 1 << seq.n_data
    anc_mask = (1 << seq.n_anc) - 1
    M = np.zeros((ddim, ddim), dtype=complex)
    for d in range(ddim):
        s = d << seq.n_anc
        t = int(target[s])
        if t & anc_mask:
            raise AncillaNotRestoredError(
                f"input {d:0{seq.n_data}b} leaves ancillas at {t & anc_mask:0{seq.n_anc}b}"
            )
        M[t >> seq.n_anc, d] = amp[s]
    return M


def factor_dp(p: PermutationWithPhases) -> tuple[np.ndarray, tuple[int, ...]]:
    """G = D·P with P the bare permutation and D the diagonal of phases
    re-indexed to target positions: D[σ(s)] = e^{iφ_s}."""
    dim = 1 << p.n
    d = np.zeros(dim)
    for s in range(dim):
        d[p.perm[s]] = p.phases[s]
    return d, p.perm


def _mcx_core(controls: list[int], target: int, anc_start: int) -> tuple[list[Gate], int]:
    """Multi-controlled X with all controls at value 1, built from the
    generating set. Returns (gates, ancillas used); ancillas are clean and
    restored. controls may be empty."""
    c = len(controls)
    if c == 0:
        return [Gate("X", (target,))], 0
    if c == 1:
        return [Gate("CNOT", (controls[0], target))], 0
    if c == 2:
        return [Gate("CCNOT", (controls[0], controls[1], target))], 0
    # Toffoli ladder: AND the controls pairwise into c-2 clean ancillas.
    n_anc = c - 2
    anc = list(range(anc_start, anc_start + n_anc))
    compute = [Gate("CCNOT", (controls[0], controls[1], anc[0]))]
    for i in range(2, c - 1):
        compute.append(Gate("CCNOT", (controls[i], anc[i - 2], anc[i - 1])))
    body = [Gate("CCNOT", (controls[c - 1], anc[-1], target))]
    return compute + body + list(reversed(compute)), n_anc


def _mcx_pattern(
    n: int, pattern: int, flip_qubit: int, anc_start: int
) -> tuple[list[Gate], int]:
    """X on flip_qubit controlled on every other qubit matching the bits of
    `pattern` (an n-qubit basis index). Zero-valued controls are conjugated
    with X."""
    controls = [q for q in range(n) if q != flip_qubit]
    zeros = [q for q in controls if not (pattern >> (n - 1 - q)) & 1]
    conj = [Gate("X", (q,)) for q in zeros]
    core, n_anc = _mcx_core(controls, flip_qubit, anc_start)
    return conj + core + list(reversed(conj)), n_anc


def _transposition(n: int, a: int, b: int, anc_start: int) -> tuple[list[Gate], int]:
    """Exact swap of basis states |a⟩ ↔ |b⟩ via a Gray-code path."""
    diffs = [p for p in range(n - 1, -1, -1) if (a ^ b) >> p & 1]
    path = [a]
    cur = a
    for p in diffs:
        cur ^= 1 << p
        path.append(cur)
    gates: list[Gate] = []
    n_anc = 0
    steps = []
    for i in range(len(path) - 1):
        flip_pos = (path[i] ^ path[i + 1]).bit_length() - 1
        g, used = _mcx_pattern(n, path[i], n - 1 - flip_pos, anc_start)
        n_anc = max(n_anc, used)
        steps.append(g)
    for g in steps[:-1]:
        gates.extend(g)
    gates.extend(steps[-1])
    for g in reversed(steps[:-1]):
        gates.extend(g)
    return gates, n_anc


def permutation_to_circuit(perm: tuple[int, ...] | list[int], n: int) -> GateSequence:
    """Exact realization of a basis permutation over {X, CNOT, CCNOT}.

    Cycles are split into transpositions sharing the cycle's first element;
    each transposition is routed through Gray-code neighbours so that every
    step is a multi-controlled X."""
    dim = 1 << n
    perm = list(perm)
    if sorted(perm) != list(range(dim)):
        raise ValueError("not a bijection on basis indices")
    # cycle decomposition; (c0 c1 ... c_{m-1}) = (c0 c_{m-1})···(c0 c1),
    # with (c0 c1) applied first in circuit time
    transpositions: list[tuple[int, int]] = []
    seen = [False] * dim
    for start in range(dim):
        if seen[start]:
            continue
        cycle = [start]
        seen[start] = True
        t = perm[start]
        while t != start:
            cycle.append(t)
            seen[t] = True
            t = perm[t]
        for t in cycle[1:]:
            transpositions.append((cycle[0], t))
    gates: list[Gate] = []
    n_anc = 0
    for a, b in transpositions:
        g, used = _transposition(n, a, b, anc_start=n)
        n_anc = max(n_anc, used)
        gates.extend(g)
    return GateSequence(n_data=n, n_anc=n_anc, gates=gates, global_phase=0.0)


def circular_distance(a: float, b: float) -> float:
    """Distance between angles on the circle, in [0, π]."""
    d = (a - b) % TWO_PI
    return min(d, TWO_PI - d)


def approximate_phase(
    phi: float, eps: float, theta: float = GOLDEN_THETA, cap: int = 10**7
) -> int:
    """Smallest k ≥ 0 with k·θ within eps of φ on the circle.

    Terminates for θ/(2π) irrational by equidistribution; floating point
    cannot certify irrationality, so the cap turns a near-rational θ into an
    explicit error instead of a silent hang."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    angle = 0.0
    for k in range(cap + 1):
        if circular_distance(angle, phi) < eps:
            return k
        angle = (angle + theta) % TWO_PI
    raise PhaseApproximationError(
        f"no k <= {cap} with k*theta within {eps} of {phi}; theta too close to rational"
    )


def _phase_factor_gates(
    n: int, index: int, k: int, anc_start: int
) -> tuple[list[Gate], int]:
    """Gates applying e^{i k θ} to basis index `index` (data qubits only),
    with an overall factor e^{-i k θ/2} tracked by the caller."""
    if n == 1:
        body = [Gate("RZ", (0,), reps=k)]
        if index == 0:
            return [Gate("X", (0,))] + body + [Gate("X", (0,))], 0
        return body, 0
    # select index with an MCX into a dedicated phase ancilla, rotate it
    phase_anc = anc_start
    zeros = [q for q in range(n) if not (index >> (n - 1 - q)) & 1]
    conj = [Gate("X", (q,)) for q in zeros]
    core, ladder_anc = _mcx_core(list(range(n)), phase_anc, anc_start + 1)
    select = conj + core + list(reversed(conj))
    gates = select + [Gate("RZ", (phase_anc,), reps=k)] + list(reversed(select))
    return gates, 1 + ladder_anc


def diagonal_to_circuit(
    phases: np.ndarray | list[float],
    eps: float,
    theta: float = GOLDEN_THETA,
    cap: int = 10**7,
) -> GateSequence:
    """Approximate diag(e^{iφ_0}, ..., e^{iφ_{2^n-1}}) over the gate set.

    Each nontrivial one-level factor gets a uniform share eps/m of the
    budget; the chord error of each factor is below its share, and the
    operator norm is subadditive under unitary composition."""
    phases = [float(p) % TWO_PI for p in phases]
    dim = len(phases)
    n = dim.bit_length() - 1
    if 1 << n != dim:
        raise ValueError("phase list length must be a power of two")
    nontrivial = [j for j in range(dim) if circular_distance(phases[j], 0.0) > PHASE_TRIVIAL]
    seq = GateSequence(n_data=n, n_anc=0, gates=[], theta=theta, global_phase=0.0)
    if not nontrivial:
        return seq
    budget = eps / len(nontrivial)
    for j in nontrivial:
        k = approximate_phase(phases[j], budget, theta, cap)
        gates, n_anc = _phase_factor_gates(n, j, k, anc_start=n)
        seq.gates.extend(gates)
        seq.n_anc = max(seq.n_anc, n_anc)
        seq.global_phase = (seq.global_phase + 0.5 * k * theta) % TWO_PI
    return seq


def synthesize(
    p: PermutationWithPhases,
    eps: float,
    theta: float = GOLDEN_THETA,
    cap: int = 10**7,
) -> SynthesisReport:
    """Compile a bias-preserving gate with certified error below eps.

    The permutation stage is exact; the diagonal stage carries the whole
    budget. achieved_error is the phase-optimized worst-case error between
    the target and the simulated data-qubit restriction."""
    if eps <= 0:
        raise ValueError("eps must be positive")
    d_phases, perm = factor_dp(p)
    perm_seq = permutation_to_circuit(perm, p.n)
    diag_seq = diagonal_to_circuit(d_phases, eps, theta, cap)
    seq = GateSequence(
        n_data=p.n,
        n_anc=max(perm_seq.n_anc, diag_seq.n_anc),
        gates=perm_seq.gates + diag_seq.gates,  # G = D·P: P acts first
        theta=theta,
        global_phase=diag_seq.global_phase,
    )
    achieved = phase_optimized_error(to_unitary(p), simulate_restricted(seq))
    return SynthesisReport(
        sequence=seq,
        target_eps=eps,
        achieved_error=achieved,
        gate_counts=seq.gate_counts(),
    )
