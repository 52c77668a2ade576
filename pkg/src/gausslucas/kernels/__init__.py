"""Hot numeric kernels with two interchangeable backends.

``numba`` (default when importable) and ``numpy``. Set ``GLL_DISABLE_NUMBA=1``
to force the numpy path at import, or call :func:`set_backend` at runtime.
"""

import os

from . import _numpy

BACKENDS = {"numpy": _numpy}
try:
    from . import _numba
except ImportError:  # pragma: no cover - numba is a declared dependency
    pass
else:
    BACKENDS["numba"] = _numba

_disabled = os.environ.get("GLL_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")
_active = "numba" if "numba" in BACKENDS and not _disabled else "numpy"


def get_backend():
    return BACKENDS[_active]


def set_backend(name: str) -> None:
    global _active
    if name not in BACKENDS:
        raise ValueError(f"unknown or unavailable kernel backend {name!r}; have {sorted(BACKENDS)}")
    _active = name


def backend_name() -> str:
    return _active
