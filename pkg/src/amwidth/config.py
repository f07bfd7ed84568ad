"""Resource bounds.

All exhaustive computations in this package walk the full subset lattice
of a ground set, so every entry point is guarded by one of these caps.
``AMALGAM_MAX_ELEMENTS`` overrides the hard table cap (default 20); the
per-operation defaults below are clamped to it.
"""

import os

from .errors import ResourceError

_DEFAULT_TABLE_CAP = 20

# Per-operation defaults, before clamping to the table cap.
CIRCUITS_CAP = 16
ZETA_CAP = 16
REALIZE_CAP = 16
NAIVE_MSO_CAP = 12
FLATS_CAP = 16

# Compiled-MSO table entries per subformula.
MSO_BUDGET = 10**6


def table_cap():
    """Largest ground set for which a full rank table may be built."""
    raw = os.environ.get("AMALGAM_MAX_ELEMENTS")
    if raw is None:
        return _DEFAULT_TABLE_CAP
    try:
        return max(1, int(raw))
    except ValueError:
        return _DEFAULT_TABLE_CAP


def check_cap(n, cap, what):
    cap = min(cap, table_cap())
    if n > cap:
        raise ResourceError(
            f"{what} needs a ground set of at most {cap} elements, got {n}"
        )
