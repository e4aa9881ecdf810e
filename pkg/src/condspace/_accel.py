"""Backend selection for the hot kernels.

Set ``CONDSPACE_DISABLE_NUMBA=1`` to force the pure-numpy path. When numba
is not importable the numpy path is used regardless.
"""

import os

_FLAG = "CONDSPACE_DISABLE_NUMBA"


def _env_disabled() -> bool:
    return os.environ.get(_FLAG, "").strip().lower() in ("1", "true", "yes", "on")


try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda fn: fn


USE_NUMBA = HAVE_NUMBA and not _env_disabled()

BACKEND = "numba" if USE_NUMBA else "numpy"
