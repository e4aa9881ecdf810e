import math

import numpy as np
import pytest

R2 = 1 / math.sqrt(2.0)


def random_amplitudes(rng, n):
    z = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return z / np.linalg.norm(z)


def random_unitary(rng):
    z = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_u1u2(rng):
    a = random_amplitudes(rng, 1)
    return complex(a[0]), complex(a[1])


def ket(bits):
    """Independent basis-ket builder: kron of single-qubit kets, q1 leftmost."""
    out = np.array([1.0 + 0j])
    for b in bits:
        out = np.kron(out, [1.0, 0.0] if b == "0" else [0.0, 1.0])
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def bell_amps():
    return np.array([R2, 0, 0, R2], dtype=complex)
