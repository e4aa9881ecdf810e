"""Inner loops over dense amplitude arrays.

Each kernel exists twice: a ``*_numpy`` version built from vectorized array
operations and a ``*_numba`` version compiled with ``@njit``. The unsuffixed
names are bound to one of them at import time according to
:mod:`condspace._accel`. The two agree to rounding; complex multiplication is
not guaranteed to round identically in numba and numpy.

Index convention: for an ``n``-qubit register, qubit ``k`` (1-based) lives at
bit position ``n - k`` of the amplitude index, i.e. ``q_1`` is the most
significant bit.
"""

import math

import numpy as np

from ._accel import BACKEND, HAVE_NUMBA, USE_NUMBA, njit

INV_SQRT2 = 1.0 / math.sqrt(2.0)


# ---------------------------------------------------------------- numpy path


def apply_2x2_numpy(amps, tbit, ctrl_mask, ctrl_val, u):
    """Apply the 2x2 block ``u`` to every amplitude pair ``(i, i | tbit)``
    whose index has target bit clear and ``i & ctrl_mask == ctrl_val``.

    Returns a new array; entries outside the selected pairs are copied
    untouched.
    """
    out = amps.copy()
    idx = np.arange(amps.shape[0], dtype=np.int64)
    sel = ((idx & tbit) == 0) & ((idx & ctrl_mask) == ctrl_val)
    i0 = idx[sel]
    i1 = i0 | tbit
    a0 = amps[i0]
    a1 = amps[i1]
    out[i0] = u[0, 0] * a0 + u[0, 1] * a1
    out[i1] = u[1, 0] * a0 + u[1, 1] * a1
    return out


def wht_numpy(x):
    """Normalized fast Walsh-Hadamard transform along the last axis."""
    y = np.array(x, copy=True)
    n_amp = y.shape[-1]
    lead = y.shape[:-1]
    h = 1
    while h < n_amp:
        v = y.reshape(lead + (n_amp // (2 * h), 2, h))
        a = v[..., 0, :].copy()
        b = v[..., 1, :]
        v[..., 0, :] = (a + b) * INV_SQRT2
        v[..., 1, :] = (a - b) * INV_SQRT2
        h *= 2
    return y


def parity_table_numpy(n, mask):
    """Parity of ``popcount(i & mask)`` for every ``i`` in ``[0, 2**n)``."""
    idx = np.arange(1 << n, dtype=np.int64)
    par = np.zeros(1 << n, dtype=np.uint8)
    bit = 0
    m = mask
    while m:
        if m & 1:
            par ^= ((idx >> bit) & 1).astype(np.uint8)
        m >>= 1
        bit += 1
    return par


# ---------------------------------------------------------------- numba path


@njit(cache=True, nogil=True)
def _apply_2x2_inplace(out, amps, tbit, ctrl_mask, ctrl_val, u00, u01, u10, u11):
    for i in range(amps.shape[0]):
        if (i & tbit) != 0 or (i & ctrl_mask) != ctrl_val:
            continue
        j = i | tbit
        a0 = amps[i]
        a1 = amps[j]
        out[i] = u00 * a0 + u01 * a1
        out[j] = u10 * a0 + u11 * a1


def apply_2x2_numba(amps, tbit, ctrl_mask, ctrl_val, u):
    out = amps.copy()
    _apply_2x2_inplace(
        out, amps, int(tbit), int(ctrl_mask), int(ctrl_val),
        u[0, 0], u[0, 1], u[1, 0], u[1, 1],
    )
    return out


@njit(cache=True, nogil=True)
def _wht_rows_inplace(y, inv_sqrt2):
    rows, n_amp = y.shape
    for r in range(rows):
        h = 1
        while h < n_amp:
            for start in range(0, n_amp, 2 * h):
                for k in range(start, start + h):
                    a = y[r, k]
                    b = y[r, k + h]
                    y[r, k] = (a + b) * inv_sqrt2
                    y[r, k + h] = (a - b) * inv_sqrt2
            h *= 2


def wht_numba(x):
    y = np.array(x, copy=True)
    shape = y.shape
    y2 = np.ascontiguousarray(y.reshape(-1, shape[-1]))
    _wht_rows_inplace(y2, INV_SQRT2)
    return y2.reshape(shape)


@njit(cache=True, nogil=True)
def _parity_fill(par, mask):
    for i in range(par.shape[0]):
        v = i & mask
        p = 0
        while v:
            v &= v - 1
            p ^= 1
        par[i] = p


def parity_table_numba(n, mask):
    par = np.empty(1 << n, dtype=np.uint8)
    _parity_fill(par, int(mask))
    return par


if USE_NUMBA:
    apply_2x2 = apply_2x2_numba
    wht = wht_numba
    parity_table = parity_table_numba
else:
    apply_2x2 = apply_2x2_numpy
    wht = wht_numpy
    parity_table = parity_table_numpy

__all__ = [
    "BACKEND",
    "HAVE_NUMBA",
    "USE_NUMBA",
    "apply_2x2",
    "apply_2x2_numpy",
    "apply_2x2_numba",
    "wht",
    "wht_numpy",
    "wht_numba",
    "parity_table",
    "parity_table_numpy",
    "parity_table_numba",
]
