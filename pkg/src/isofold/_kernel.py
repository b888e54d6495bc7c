"""Selects the interval-refinement kernel at import time.

The compiled kernel is preferred when present; the pure-Python one is
the fallback.  ``ISOFOLD_KERNEL=python`` or ``=compiled`` forces a
choice (the latter fails loudly when the extension is missing, which is
what you want in a benchmark).
"""

import os

OP_LEAF = 0
OP_ADD = 1
OP_SUB = 2
OP_MUL = 3
OP_DIV = 4
OP_SQRT = 5

_choice = os.environ.get("ISOFOLD_KERNEL", "").strip().lower()
if _choice not in ("", "compiled", "python"):
    raise RuntimeError(f"ISOFOLD_KERNEL must be 'compiled' or 'python', got {_choice!r}")

if _choice == "python":
    from . import _refine_py as _impl

    kernel_name = "python"
elif _choice == "compiled":
    from . import _refine as _impl

    kernel_name = "compiled"
else:
    try:
        from . import _refine as _impl

        kernel_name = "compiled"
    except ImportError:
        from . import _refine_py as _impl

        kernel_name = "python"

eval_interval = _impl.eval_interval
