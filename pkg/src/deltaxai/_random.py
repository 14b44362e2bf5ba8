"""Seeded random streams.

Every draw comes from numpy's Philox4x64-10 counter-based generator keyed by
``SeedSequence(seed mod 2**64, spawn_key=key)``. Stream keys in use:

* ``(0,)``     population sampling
* ``(1, r)``   bootstrap replicate ``r``

Draws are built from raw 64-bit words (``BitGenerator.random_raw``) rather than
numpy's higher-level samplers, so the mapping from seed to numbers is fully
documented here:

* uniform on the open interval (0, 1): ``((w >> 12) + 0.5) / 2**52``
* standard normal: inverse normal CDF (``scipy.special.ndtri``) of that uniform
* index in ``[0, n)``: ``((w >> 32) * n) >> 32`` (multiply-shift, n < 2**32)
"""

import numpy as np
from scipy.special import ndtri

POPULATION = 0
BOOTSTRAP = 1

_MASK64 = (1 << 64) - 1


def stream(seed, *key):
    """Independent bit generator for ``(seed, key)``."""
    ss = np.random.SeedSequence(int(seed) & _MASK64, spawn_key=tuple(int(k) for k in key))
    return np.random.Philox(ss)


def uniforms(bitgen, size):
    words = np.asarray(bitgen.random_raw(size), dtype=np.uint64)
    return ((words >> np.uint64(12)).astype(np.float64) + 0.5) * 2.0**-52


def standard_normals(bitgen, size):
    return ndtri(uniforms(bitgen, size))


def indices(bitgen, n, size):
    if not 0 < n < 1 << 32:
        raise ValueError("index range must be in [1, 2**32)")
    words = np.asarray(bitgen.random_raw(size), dtype=np.uint64)
    return ((words >> np.uint64(32)) * np.uint64(n)) >> np.uint64(32)
