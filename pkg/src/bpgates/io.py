"""Text file formats: matrices, ZX decompositions, circuits, classical
codes, and permutation-with-phases gates.

All formats share the conventions: '#' starts a comment line, blank lines
are ignored, and floating-point values are written with 17 significant
digits so that emit → parse round-trips exactly at double precision.
"""

from __future__ import annotations

from typing import TextIO

import numpy as np

from .css import BinaryCode
from .linalg import GOLDEN_THETA, index_to_bits, num_qubits
from .synth import Gate, GateSequence
from .verify import PermutationWithPhases
from .zx import ZXDecomposition


class FormatError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for i, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            out.append((i, line))
    return out


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def format_complex(z: complex) -> str:
    return f"{z.real:.17g}{z.imag:+.17g}i"


def parse_complex(token: str, lineno: int | None = None) -> complex:
    if not token.endswith("i"):
        raise FormatError(f"complex entry {token!r} missing 'i' suffix", lineno)
    body = token[:-1]
    # split at the sign of the imaginary part: last +/- not in an exponent
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "eE":
            try:
                return complex(float(body[:pos]), float(body[pos:]))
            except ValueError:
                break
    raise FormatError(f"cannot parse complex entry {token!r}", lineno)


# ---------------------------------------------------------------- matrices

def write_matrix(U: np.ndarray, fp: TextIO) -> None:
    """Format: `n <qubits>` header, then 2^n rows of 2^n `a{+|-}bi` entries."""
    U = np.asarray(U, dtype=complex)
    n = num_qubits(U.shape[0])
    fp.write(f"n {n}\n")
    for row in U:
        fp.write(" ".join(format_complex(z) for z in row) + "\n")


def read_matrix(text: str) -> np.ndarray:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty matrix file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "n":
        raise FormatError(f"expected header 'n <qubits>', got {header!r}", lineno)
    try:
        n = int(parts[1])
    except ValueError:
        raise FormatError(f"invalid qubit count {parts[1]!r}", lineno) from None
    dim = 1 << n
    if len(lines) - 1 != dim:
        raise FormatError(f"expected {dim} matrix rows, found {len(lines) - 1}")
    M = np.zeros((dim, dim), dtype=complex)
    for r, (lineno, line) in enumerate(lines[1:]):
        tokens = line.split()
        if len(tokens) != dim:
            raise FormatError(f"expected {dim} entries, found {len(tokens)}", lineno)
        for c, tok in enumerate(tokens):
            M[r, c] = parse_complex(tok, lineno)
    return M


# ------------------------------------------------- ZX decompositions

def write_zx(d: ZXDecomposition, fp: TextIO) -> None:
    """Lines `u-bits v-bits re im`, sorted lexicographically."""
    for (u, v) in sorted(d.coeffs, key=lambda uv: (index_to_bits(uv[0], d.n), index_to_bits(uv[1], d.n))):
        a = d.coeffs[(u, v)]
        fp.write(
            f"{index_to_bits(u, d.n)} {index_to_bits(v, d.n)} {_fmt(a.real)} {_fmt(a.imag)}\n"
        )


def read_zx(text: str) -> ZXDecomposition:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty decomposition file")
    coeffs: dict[tuple[int, int], complex] = {}
    n = None
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 4:
            raise FormatError("expected 'u-bits v-bits re im'", lineno)
        ub, vb, re_s, im_s = parts
        if n is None:
            n = len(ub)
        if len(ub) != n or len(vb) != n or set(ub + vb) - {"0", "1"}:
            raise FormatError(f"bad bit strings {ub!r} {vb!r}", lineno)
        try:
            coeffs[(int(ub, 2), int(vb, 2))] = complex(float(re_s), float(im_s))
        except ValueError:
            raise FormatError("bad coefficient value", lineno) from None
    assert n is not None
    return ZXDecomposition(n=n, coeffs=coeffs)


# ------------------------------------------------------------- circuits

def write_circuit(seq: GateSequence, fp: TextIO) -> None:
    fp.write(f"qubits {seq.n_data}\n")
    fp.write(f"ancillas {seq.n_anc}\n")
    fp.write(f"theta {_fmt(seq.theta)}\n")
    fp.write(f"globalphase {_fmt(seq.global_phase)}\n")
    for g in seq.gates:
        if g.kind == "RZ":
            fp.write(f"RZ {g.qubits[0]} {g.reps}\n")
        else:
            fp.write(f"{g.kind} {' '.join(str(q) for q in g.qubits)}\n")


def read_circuit(text: str) -> GateSequence:
    lines = _content_lines(text)
    headers: dict[str, str] = {}
    gates: list[Gate] = []
    for lineno, line in lines:
        parts = line.split()
        key = parts[0]
        if key in ("qubits", "ancillas", "theta", "globalphase"):
            if len(parts) != 2:
                raise FormatError(f"header {key} takes one value", lineno)
            headers[key] = parts[1]
        elif key in ("X", "CNOT", "CCNOT", "RZ"):
            try:
                args = [int(p) for p in parts[1:]]
            except ValueError:
                raise FormatError(f"bad gate arguments in {line!r}", lineno) from None
            try:
                if key == "RZ":
                    if len(args) != 2:
                        raise ValueError("RZ takes qubit and repetition count")
                    gates.append(Gate("RZ", (args[0],), reps=args[1]))
                else:
                    gates.append(Gate(key, tuple(args)))
            except ValueError as exc:
                raise FormatError(str(exc), lineno) from None
        else:
            raise FormatError(f"unknown line {line!r}", lineno)
    for required in ("qubits", "ancillas"):
        if required not in headers:
            raise FormatError(f"missing header '{required}'")
    try:
        seq = GateSequence(
            n_data=int(headers["qubits"]),
            n_anc=int(headers["ancillas"]),
            gates=gates,
            theta=float(headers["theta"]) if "theta" in headers else GOLDEN_THETA,
            global_phase=float(headers.get("globalphase", "0")),
        )
    except ValueError as exc:
        raise FormatError(f"bad header value: {exc}") from None
    try:
        seq.validate()
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return seq


# ------------------------------------------------------- classical codes

def write_code(code: BinaryCode, fp: TextIO) -> None:
    """Header `n <len> k <dim>`, then k rows of 0/1 characters."""
    fp.write(f"n {code.n} k {code.k}\n")
    for row in code.generator:
        fp.write("".join(str(int(b)) for b in row) + "\n")


def read_code(text: str) -> BinaryCode:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty code file")
    lineno, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "n" or parts[2] != "k":
        raise FormatError(f"expected header 'n <len> k <dim>', got {header!r}", lineno)
    try:
        n, k = int(parts[1]), int(parts[3])
    except ValueError:
        raise FormatError("bad header values", lineno) from None
    if len(lines) - 1 != k:
        raise FormatError(f"expected {k} generator rows, found {len(lines) - 1}")
    rows = []
    for lineno, line in lines[1:]:
        if len(line) != n or set(line) - {"0", "1"}:
            raise FormatError(f"expected {n} binary characters, got {line!r}", lineno)
        rows.append([int(ch) for ch in line])
    return BinaryCode.from_rows(rows)


# -------------------------------------------- permutation-with-phases gates

def write_perm(p: PermutationWithPhases, fp: TextIO) -> None:
    """Lines `s-bits -> t-bits phase=<radians>` for every basis string s."""
    for s in range(1 << p.n):
        fp.write(
            f"{index_to_bits(s, p.n)} -> {index_to_bits(p.perm[s], p.n)} "
            f"phase={_fmt(p.phases[s])}\n"
        )


def read_perm(text: str) -> PermutationWithPhases:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty gate file")
    entries: dict[int, tuple[int, float]] = {}
    n = None
    for lineno, line in lines:
        parts = line.split()
        if len(parts) != 4 or parts[1] != "->" or not parts[3].startswith("phase="):
            raise FormatError("expected 's-bits -> t-bits phase=<radians>'", lineno)
        sb, tb = parts[0], parts[2]
        if n is None:
            n = len(sb)
        if len(sb) != n or len(tb) != n or set(sb + tb) - {"0", "1"}:
            raise FormatError(f"bad bit strings {sb!r} {tb!r}", lineno)
        try:
            phase = float(parts[3][len("phase="):])
        except ValueError:
            raise FormatError("bad phase value", lineno) from None
        s = int(sb, 2)
        if s in entries:
            raise FormatError(f"duplicate source string {sb}", lineno)
        entries[s] = (int(tb, 2), phase)
    assert n is not None
    if set(entries) != set(range(1 << n)):
        raise FormatError(f"expected all {1 << n} source strings exactly once")
    perm = tuple(entries[s][0] for s in range(1 << n))
    phases = tuple(entries[s][1] for s in range(1 << n))
    try:
        return PermutationWithPhases(n, perm, phases)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def read_file(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fp:
        return fp.read()


def write_file(path: str, writer, obj) -> None:
    with open(path, "w", encoding="utf-8") as fp:
        writer(obj, fp)
