"""Backend selection: compiled straightening/elimination core when available.

`walg._speedups` is a Cython build of `walg._kernels`.  We prefer it, fall
back to pure Python silently, and honor::

    WALG_BACKEND=python     force the pure-Python kernels
    WALG_BACKEND=compiled   require the extension (ImportError if missing)

Both backends compute identical results; see benchmarks/bench_backends.py
for the speed comparison.
"""

import os

_choice = os.environ.get("WALG_BACKEND", "").strip().lower()

if _choice in ("python", "py", "pure"):
    from walg import _kernels as _impl
    COMPILED = False
elif _choice in ("compiled", "c", "cython", "speedups"):
    from walg import _speedups as _impl  # type: ignore[no-redef]
    COMPILED = True
else:
    try:
        from walg import _speedups as _impl  # type: ignore[no-redef]
        COMPILED = True
    except ImportError:
        from walg import _kernels as _impl
        COMPILED = False

gen_times_mono = _impl.gen_times_mono
mono_times_gen = _impl.mono_times_gen
mul_terms = _impl.mul_terms
mul_terms_rl = _impl.mul_terms_rl
rref_sparse = _impl.rref_sparse
rref_dense = _impl.rref_dense


def backend_name():
    return "compiled" if COMPILED else "python"
