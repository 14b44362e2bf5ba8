"""Backend selection for the Gaussian-kernel sums.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy twin in ``_pykernels``. Set ``DELTAXAI_KERNELS=python`` to force the
fallback. Both backends agree to floating-point rounding (~1e-13 relative),
not bit for bit, because their summation orders differ.
"""

import os

from deltaxai import _pykernels

try:
    from deltaxai import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    BACKENDS["cython"] = _ckernels


def _initial():
    requested = os.environ.get("DELTAXAI_KERNELS", "").strip().lower()
    if requested:
        if requested not in BACKENDS:
            raise ImportError(
                f"DELTAXAI_KERNELS={requested!r} unavailable; have {sorted(BACKENDS)}"
            )
        return requested
    return "cython" if "cython" in BACKENDS else "python"


_active = _initial()


def backend():
    """Name of the backend currently in use."""
    return _active


def set_backend(name):
    """Switch backends process-wide. Meant for benchmarks and tests, not for use mid-computation."""
    global _active
    if name not in BACKENDS:
        raise ValueError(f"unknown kernel backend {name!r}; have {sorted(BACKENDS)}")
    _active = name


def pdf_sum(samples, points, bandwidth):
    return BACKENDS[_active].pdf_sum(samples, points, bandwidth)


def cdf_mean(samples, points, bandwidth):
    return BACKENDS[_active].cdf_mean(samples, points, bandwidth)


def sf_mean(samples, points, bandwidth):
    return BACKENDS[_active].sf_mean(samples, points, bandwidth)
