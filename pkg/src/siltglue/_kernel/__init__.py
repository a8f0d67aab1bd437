"""Row-reduction kernel selection.

Imports the compiled Cython kernel when available, otherwise falls back to
the pure-Python implementation.  Set ``SILTGLUE_PURE=1`` to force the
fallback (the benchmark uses this to compare the two).
"""

import os

from . import _rref_py

if os.environ.get("SILTGLUE_PURE"):
    _impl = _rref_py
else:
    try:
        from . import _rref_cy as _impl
    except ImportError:
        _impl = _rref_py

IMPL = _impl.IMPL
rref_qq = _impl.rref_qq
rref_fp = _impl.rref_fp

__all__ = ["IMPL", "rref_qq", "rref_fp"]
