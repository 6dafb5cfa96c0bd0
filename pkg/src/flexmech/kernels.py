"""Kernel backend selection: compiled extension if present, else pure Python.

Set ``FLEXMECH_PURE_PYTHON=1`` to force the fallback (useful for the
benchmark and for debugging the extension).
"""

import os

from . import _notchpure

_impl = _notchpure
BACKEND = "pure-python"

if os.environ.get("FLEXMECH_PURE_PYTHON") != "1":
    try:
        from . import _notchcore as _compiled

        _impl = _compiled
        BACKEND = "compiled"
    except ImportError:
        pass

torsion_beta = _impl.torsion_beta
rect_torsion_constant = _impl.rect_torsion_constant
notch_thickness = _impl.notch_thickness
notch_kernels = _impl.notch_kernels
adaptive_quadrature = _notchpure.adaptive_quadrature  # generic f(x); pure only


def available_backends():
    """Importable kernel implementations, keyed by name."""
    out = {"pure-python": _notchpure}
    try:
        from . import _notchcore as compiled

        out["compiled"] = compiled
    except ImportError:
        pass
    return out
