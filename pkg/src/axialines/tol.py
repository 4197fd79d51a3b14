"""Global tolerance scale.

Every threshold in the package is a base value multiplied by the scale
returned here; the AXI_TOL environment variable overrides the scale.
"""

import os

_SCALE = None


def refresh():
    """Re-read AXI_TOL (the CLI calls this once at startup)."""
    global _SCALE
    try:
        _SCALE = float(os.environ.get("AXI_TOL", "1.0"))
    except ValueError:
        _SCALE = 1.0
    if not _SCALE > 0.0:
        _SCALE = 1.0
    return _SCALE


def tol(base):
    """base tolerance times the global scale."""
    if _SCALE is None:
        refresh()
    return base * _SCALE
