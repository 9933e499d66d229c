"""Hot numeric loops, each with a numba and a pure-numpy implementation.

The backend is chosen once at import time.  Set ``EXPOLAB_NUMBA=0`` to force
the numpy path (also used automatically when numba is not importable).  Both
implementations stay importable as ``numpy_impl`` and ``numba_impl`` so they
can be compared directly.
"""

import os

from . import numpy_impl

try:
    from . import numba_impl
    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    numba_impl = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("EXPOLAB_NUMBA", "1").lower() not in ("0", "false", "no", "off")
BACKEND = "numba" if USE_NUMBA else "numpy"

_impl = numba_impl if USE_NUMBA else numpy_impl

tau_recurrence_mod = _impl.tau_recurrence_mod
kloosterman_matrix = _impl.kloosterman_matrix
fourier_grid = _impl.fourier_grid
twisted_partial_sums = _impl.twisted_partial_sums

__all__ = ["BACKEND", "HAVE_NUMBA", "USE_NUMBA", "fourier_grid", "kloosterman_matrix",
           "numba_impl", "numpy_impl", "tau_recurrence_mod", "twisted_partial_sums"]
