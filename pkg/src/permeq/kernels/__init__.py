"""Kernel backend selection.

The compiled extension is preferred when present; set PERMEQ_PURE=1 to
force the pure-Python twin. Both expose the same functions with
identical semantics (see ``_pure`` for the reference docstrings).
"""

import os

from . import _pure

_impl = _pure
if not os.environ.get("PERMEQ_PURE"):
    try:
        from . import _core as _impl  # type: ignore[no-redef]
    except ImportError:
        pass

BACKEND = _impl.BACKEND_NAME

solution_indices = _impl.solution_indices
min_distances = _impl.min_distances
cheeger_scan = _impl.cheeger_scan
inclusion_count = _impl.inclusion_count
inclusion_count_batch = _impl.inclusion_count_batch
diagonal_suite = _impl.diagonal_suite


def backends():
    """All importable backends, for equivalence tests and benchmarks."""
    out = {"pure": _pure}
    try:
        from . import _core

        out["cython"] = _core
    except ImportError:
        pass
    return out
