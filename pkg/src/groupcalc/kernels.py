"""Kernel selection: the compiled extension when built, pure Python otherwise.

Set GROUPCALC_PURE=1 in the environment to force the pure-Python kernels
even when the extension is available (used by tests and the benchmark).
"""

import os

if os.environ.get("GROUPCALC_PURE"):
    from groupcalc import _purekernels as _impl
else:
    try:
        from groupcalc import _speedups as _impl  # type: ignore[attr-defined]
    except ImportError:
        from groupcalc import _purekernels as _impl

IMPLEMENTATION = _impl.IMPLEMENTATION
reduce_syllables = _impl.reduce_syllables
concat_reduce = _impl.concat_reduce
bs_reduce_parts = _impl.bs_reduce_parts
