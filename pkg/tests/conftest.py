import numpy as np
import pytest

from bpgates import BinaryCode, build_css


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-like random unitary from the QR decomposition of a Ginibre matrix."""
    dim = 1 << n
    A = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    Q, R = np.linalg.qr(A)
    return Q * (np.diagonal(R) / np.abs(np.diagonal(R)))


def random_state(n: int, rng: np.random.Generator) -> np.ndarray:
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi)


@pytest.fixture
def rng():
    return np.random.default_rng(20260823)


@pytest.fixture
def code_422():
    c1 = BinaryCode.from_rows([[1, 1, 1, 1]])
    c2 = BinaryCode.from_rows([[1, 1, 0, 0], [0, 1, 1, 0], [0, 0, 1, 1]])
    return build_css(c1, c2)


@pytest.fixture
def steane():
    hamming = [[1, 0, 0, 0, 0, 1, 1],
               [0, 1, 0, 0, 1, 0, 1],
               [0, 0, 1, 0, 1, 1, 0],
               [0, 0, 0, 1, 1, 1, 1]]
    dual = [[0, 1, 1, 1, 1, 0, 0],
            [1, 0, 1, 1, 0, 1, 0],
            [1, 1, 0, 1, 0, 0, 1]]
    return build_css(BinaryCode.from_rows(dual), BinaryCode.from_rows(hamming))
