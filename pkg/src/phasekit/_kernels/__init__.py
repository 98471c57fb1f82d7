"""Numeric hot kernels with a compiled core and a pure-NumPy fallback.

The compiled extension (``_fast``, Cython) is preferred; if it is missing or
``PHASEKIT_PURE_PYTHON=1`` is set, the NumPy reference (``_ref``) is used.
Both expose the same callables and agree to solver tolerance (see
``tests/test_kernels.py`` and ``benchmarks/bench_kernels.py``).
"""

import os

from . import _ref

if os.environ.get("PHASEKIT_PURE_PYTHON", "") == "1":
    impl = _ref
    HAVE_COMPILED = False
else:
    try:
        from . import _fast as impl  # type: ignore[attr-defined]

        HAVE_COMPILED = True
    except ImportError:
        impl = _ref
        HAVE_COMPILED = False

IMPL_NAME = "compiled" if HAVE_COMPILED else "numpy"

mf_reduced_energy = impl.mf_reduced_energy
mf_relax_batch = impl.mf_relax_batch
make_chain_xapply = impl.make_chain_xapply
ff_energy_quad = impl.ff_energy_quad
ff_mx_quad = impl.ff_mx_quad
