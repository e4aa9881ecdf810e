"""Fourier duality between state amplitudes ``C_h`` and condition amplitudes ``D_j``.

The kernel is the parity sign ``(-1)**popcount(h & j)``, which makes the
transform the normalized Walsh-Hadamard transform. It is its own inverse.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import kernels
from .condition_core import ConditionLabel, OutcomeLabel, check_n
from .errors import DomainError
from .qcondition import QConditionVector
from .statevector import NORM_TOL, StateVector, make_rng

BASES = {"e": math.e, "2": 2.0, "two": 2.0}


def kernel(h: OutcomeLabel, j: ConditionLabel) -> int:
    if h.n != j.n:
        raise DomainError(f"label length mismatch: {h.n} vs {j.n}")
    return -1 if (h.value & j.value).bit_count() & 1 else 1


def _check_pow2(x: np.ndarray) -> None:
    size = x.shape[-1]
    if size < 1 or size & (size - 1):
        raise DomainError(f"transform length {size} is not a power of two")


def wht(x) -> np.ndarray:
    """Normalized Walsh-Hadamard transform, butterfly with 1/sqrt(2) per stage.

    Works along the last axis, so a 2-D array transforms row by row.
    """
    arr = np.asarray(x)
    if not np.iscomplexobj(arr):
        arr = arr.astype(np.float64)
    else:
        arr = arr.astype(np.complex128)
    _check_pow2(arr)
    return kernels.wht(arr)


def kernel_matrix(n: int) -> np.ndarray:
    """``E[h, j] / sqrt(2**n)`` assembled entry by entry from :func:`kernel`."""
    n = check_n(n)
    dim = 1 << n
    scale = 1.0 / math.sqrt(dim)
    m = np.empty((dim, dim))
    for h in range(dim):
        for j in range(dim):
            m[j, h] = kernel(OutcomeLabel(n, h), ConditionLabel(n, j)) * scale
    return m


def wht_direct(x) -> np.ndarray:
    """O(N**2) summation over the kernel; reference for the butterfly."""
    arr = np.asarray(x)
    _check_pow2(arr)
    dim = arr.shape[-1]
    n = dim.bit_length() - 1
    idx = np.arange(dim)
    parity = np.zeros((dim, dim), dtype=np.int64)
    for b in range(n):
        parity ^= ((idx[:, None] >> b) & 1) & ((idx[None, :] >> b) & 1)
    signs = 1 - 2 * parity
    return (arr @ signs) / math.sqrt(dim)


def state_to_condition(s: StateVector) -> QConditionVector:
    return QConditionVector(wht(s.amplitudes))


def condition_to_state(phi: QConditionVector) -> StateVector:
    return StateVector(wht(phi.amplitudes))


# ---------------------------------------------------------------- entropy


def _log_base(base) -> float:
    key = str(base).lower()
    if key not in BASES:
        raise DomainError(f"unsupported log base {base!r}; use 'e' or '2'")
    return math.log(BASES[key])


def _entropy_of_probs(p: np.ndarray, base) -> np.ndarray:
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0, -p * np.log(np.where(p > 0, p, 1.0)), 0.0)
    return terms.sum(axis=-1) / _log_base(base)


def entropy(amplitudes, base="e") -> float:
    """Shannon entropy of ``|x_i|**2`` with ``0 log 0 = 0``."""
    x = np.asarray(amplitudes)
    p = np.abs(x) ** 2
    total = float(p.sum())
    if abs(total - 1.0) > 2 * NORM_TOL:
        raise DomainError(f"amplitudes are not normalized: sum |x|^2 = {total!r}")
    return max(float(_entropy_of_probs(p, base)), 0.0)


@dataclass(frozen=True)
class EntropyPair:
    H_S: float
    H_C: float
    base: str

    @property
    def total(self) -> float:
        return self.H_S + self.H_C


def _base_name(base) -> str:
    key = str(base).lower()
    _log_base(key)
    return "2" if key in ("2", "two") else "e"


def uncertainty_sum(s: StateVector, base="e") -> EntropyPair:
    name = _base_name(base)
    return EntropyPair(
        H_S=entropy(s.amplitudes, name),
        H_C=entropy(state_to_condition(s).amplitudes, name),
        base=name,
    )


def random_states(n: int, samples: int, rng: np.random.Generator) -> np.ndarray:
    """Rows of normalized complex Gaussian amplitudes (Haar-uniform states)."""
    dim = 1 << check_n(n)
    # each sample consumes 2*dim consecutive normals, so batching never shifts the stream
    g = rng.standard_normal((samples, dim, 2))
    z = g[..., 0] + 1j * g[..., 1]
    return z / np.linalg.norm(z, axis=1, keepdims=True)


@dataclass(frozen=True)
class ScanResult:
    n: int
    samples: int
    seed: int
    base: str
    H_S: np.ndarray
    H_C: np.ndarray
    min_sum: float
    argmin: int
    argmin_state: StateVector
    histogram: tuple

    @property
    def sums(self) -> np.ndarray:
        return self.H_S + self.H_C

    def rows(self):
        for i, (hs, hc) in enumerate(zip(self.H_S, self.H_C)):
            yield i, float(hs), float(hc), float(hs + hc), self.seed


def min_uncertainty_scan(n: int, samples: int, seed: int, base="e", bins: int = 20,
                         chunk: int = 1 << 15) -> ScanResult:
    """Entropy sums over random states; reports the smallest one observed.

    No lower bound beyond strict positivity is assumed.
    """
    n = check_n(n)
    if isinstance(samples, bool) or not isinstance(samples, (int, np.integer)) or samples < 1:
        raise DomainError(f"samples must be a positive integer, got {samples!r}")
    name = _base_name(base)
    rng = make_rng(seed)
    hs = np.empty(samples)
    hc = np.empty(samples)
    best = None
    for start in range(0, samples, chunk):
        stop = min(start + chunk, samples)
        x = random_states(n, stop - start, rng)
        y = kernels.wht(x)
        hs[start:stop] = _entropy_of_probs(np.abs(x) ** 2, name)
        hc[start:stop] = _entropy_of_probs(np.abs(y) ** 2, name)
        k = int(np.argmin(hs[start:stop] + hc[start:stop]))
        if best is None or hs[start + k] + hc[start + k] < hs[best[0]] + hc[best[0]]:
            best = (start + k, x[k].copy())
    np.maximum(hs, 0.0, out=hs)
    np.maximum(hc, 0.0, out=hc)
    sums = hs + hc
    top = 2 * n * math.log(2.0) / _log_base(name)
    counts, edges = np.histogram(sums, bins=bins, range=(0.0, top))
    return ScanResult(
        n=n, samples=int(samples), seed=int(seed), base=name,
        H_S=hs, H_C=hc,
        min_sum=float(sums[best[0]]), argmin=best[0],
        argmin_state=StateVector(best[1]),
        histogram=(tuple(int(c) for c in counts), tuple(float(e) for e in edges)),
    )
