"""Fit kernel selection.

Imports the compiled kernel when available and falls back to the pure
Python reference implementation otherwise.  Setting the environment
variable ``POSTSELECT_PURE=1`` forces the pure Python kernel.
``IMPLEMENTATION`` reports which one is active ("cython" or "python").
"""

import os

if os.environ.get("POSTSELECT_PURE") == "1":
    from . import _fitkernel_py as _impl
else:
    try:
        from . import _fitkernel as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _fitkernel_py as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
BIG = _impl.BIG
fit_objective = _impl.fit_objective
pattern_search = _impl.pattern_search
