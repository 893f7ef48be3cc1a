"""Backend selection for the table kernels.

The compiled extension is preferred when present; set
HOOPFORGE_PURE_PYTHON=1 to force the pure-Python implementation.
Both backends expose the same functions over flat row-major tables and
must produce identical outputs (see tests/test_kernels_parity.py).
"""

from __future__ import annotations

import os

if os.environ.get("HOOPFORGE_PURE_PYTHON") == "1":
    from hoopforge import _kernels_py as _impl
else:
    try:
        from hoopforge import _kernels_cy as _impl  # type: ignore[attr-defined]
    except ImportError:
        from hoopforge import _kernels_py as _impl

BACKEND = _impl.BACKEND

hoop_axiom_witness = _impl.hoop_axiom_witness
lalgebra_axiom_witness = _impl.lalgebra_axiom_witness
canonical_tables = _impl.canonical_tables
iso_tables = _impl.iso_tables
enumerate_hoop_tables = _impl.enumerate_hoop_tables
action_axiom_witness = _impl.action_axiom_witness
enumerate_action_tables = _impl.enumerate_action_tables


def flatten(rows) -> tuple:
    return tuple(v for row in rows for v in row)


def unflatten(flat, n) -> tuple:
    return tuple(tuple(flat[i * n: (i + 1) * n]) for i in range(n))
