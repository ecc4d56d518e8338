"""Kernel backend selection.

The compiled extension `circbridge._kernels` is preferred when it was
built; otherwise the pure-Python twin `circbridge._kernels_py` is used.
Both implement identical arithmetic, so results do not depend on which
one is active.  Set CIRCBRIDGE_BACKEND=python to force the fallback.
"""

import os

_forced = os.environ.get("CIRCBRIDGE_BACKEND", "").strip().lower()

if _forced == "python":
    from . import _kernels_py as _impl
    _NAME = "python"
elif _forced in ("", "auto", "compiled", "c"):
    try:
        from . import _kernels as _impl  # type: ignore[attr-defined]
        _NAME = "compiled"
    except ImportError:
        if _forced in ("compiled", "c"):
            raise
        from . import _kernels_py as _impl
        _NAME = "python"
else:
    raise RuntimeError("unknown CIRCBRIDGE_BACKEND value: %r" % _forced)

i0_series_sum = _impl.i0_series_sum
i1_series_sum = _impl.i1_series_sum
sigma2_series = _impl.sigma2_series
i0e_asym_bracket = _impl.i0e_asym_bracket
i1e_asym_bracket = _impl.i1e_asym_bracket
vm_scaled_mass = _impl.vm_scaled_mass
wn_density_at = _impl.wn_density_at


def backend_name():
    """Name of the active kernel backend: 'compiled' or 'python'."""
    return _NAME
