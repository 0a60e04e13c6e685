"""Select the kernel implementation at import time.

The compiled extension is preferred when present; the numpy implementation
is the fallback and the reference.  Override with the environment variable
``BCIPHS_KERNELS``:

- ``auto`` (default): compiled if importable, else pure Python
- ``cython``: compiled, raise if the extension is missing
- ``python``: always the numpy implementation

``BACKEND`` records which one is active.
"""

from __future__ import annotations

import os

_mode = os.environ.get("BCIPHS_KERNELS", "auto").strip().lower()
if _mode not in ("auto", "cython", "python"):
    raise ValueError(f"BCIPHS_KERNELS must be auto, cython or python, got {_mode!r}")

if _mode == "python":
    from . import _kernels_py as kernels

    BACKEND = "python"
else:
    try:
        from . import _kernels_cy as kernels  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:
        if _mode == "cython":
            raise ImportError(
                "BCIPHS_KERNELS=cython but the compiled extension is not "
                "available; reinstall without BCIPHS_NO_EXT or use the "
                "python backend"
            )
        from . import _kernels_py as kernels  # type: ignore[no-redef]

        BACKEND = "python"

diff_first = kernels.diff_first
forces_and_fluxes = kernels.forces_and_fluxes
assemble_rates = kernels.assemble_rates
