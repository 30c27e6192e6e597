"""Kernel selection: compiled extension if built, numpy fallback otherwise.

Set ACSLAB_PURE_PYTHON=1 to force the fallback (useful for testing and
benchmarking the two implementations against each other).
"""

import os

from . import pyref

HAVE_COMPILED = False
_impl = pyref

if not os.environ.get("ACSLAB_PURE_PYTHON"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
        HAVE_COMPILED = True
    except ImportError:
        pass

KIND_EXACT = pyref.KIND_EXACT
KIND_LOWER_OR = pyref.KIND_LOWER_OR
KIND_TRUNCATED = pyref.KIND_TRUNCATED
KIND_LUT = pyref.KIND_LUT

IMPL_NAME = "compiled" if HAVE_COMPILED else "python"

acs_run = _impl.acs_run
traceback = _impl.traceback
pair_metrics = _impl.pair_metrics
pair_metrics_sampled = _impl.pair_metrics_sampled

# python-only paths (never compiled)
acs_run_generic = pyref.acs_run_generic
sample_operands = pyref.sample_operands
add_many = pyref.add_many
accumulate_arrays = pyref.accumulate_arrays


def implementations():
    """All importable kernel implementations, name -> module."""
    impls = {"python": pyref}
    try:
        from . import _core
        impls["compiled"] = _core
    except ImportError:
        pass
    return impls
