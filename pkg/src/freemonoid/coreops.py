"""Hot-kernel dispatch: compiled ``_core`` when importable, else ``_core_py``.

Set ``FREEMONOID_PURE=1`` to force the pure twin (used by the benchmark and
the equivalence tests).
"""

from __future__ import annotations

import os

if os.environ.get("FREEMONOID_PURE"):
    from . import _core_py as _impl
else:
    try:
        from . import _core as _impl  # type: ignore[attr-defined]
    except ImportError:
        from . import _core_py as _impl

ACCELERATED: bool = _impl.ACCELERATED

uf_find = _impl.uf_find
uf_unite_pairs = _impl.uf_unite_pairs
uf_canonical = _impl.uf_canonical
mixed_mult = _impl.mixed_mult
mixed_inv = _impl.mixed_inv
