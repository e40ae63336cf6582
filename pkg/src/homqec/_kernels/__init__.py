"""Hot kernels: compiled Cython core with a pure-Python fallback.

The compiled module is used when it imports cleanly. Set ``HOMQEC_PURE=1``
to force the fallback (handy for benchmarks and for checking that the two
agree).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("HOMQEC_PURE", "") not in ("", "0"):
    _impl = _pure
else:
    try:
        from . import _core as _impl
    except ImportError:  # extension not built
        _impl = _pure

BACKEND = "cython" if _impl is not _pure else "python"

gf2_rref = _impl.gf2_rref
bfs_all_pairs = _impl.bfs_all_pairs
apply_paths = _impl.apply_paths
min_weight_perfect_matching = _impl.min_weight_perfect_matching

__all__ = [
    "BACKEND",
    "gf2_rref",
    "bfs_all_pairs",
    "apply_paths",
    "min_weight_perfect_matching",
]
