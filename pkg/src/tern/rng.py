"""Counter-derived random substreams.

Every stochastic quantity in the package is drawn from a generator whose
state depends only on the master seed and a key describing *what* is being
simulated (grid index, chunk number, parameter value).  Work can therefore be
split across any number of workers without changing a single draw.
"""

from __future__ import annotations

import struct
from typing import Union

import numpy as np

Key = Union[int, float, str]

_TAGS: dict[str, int] = {}


def _key_to_int(part: Key) -> int:
    if isinstance(part, bool):
        return int(part)
    if isinstance(part, (int, np.integer)):
        if part < 0:
            raise ValueError(f"substream key parts must be non-negative, got {part}")
        return int(part)
    if isinstance(part, (float, np.floating)):
        # bit pattern of the float; 0.0 and -0.0 collapse to one stream
        value = float(part) + 0.0
        return struct.unpack("<Q", struct.pack("<d", value))[0]
    if isinstance(part, str):
        if part not in _TAGS:
            _TAGS[part] = int.from_bytes(part.encode("utf-8")[:8].ljust(8, b"\0"), "little")
        return _TAGS[part]
    raise TypeError(f"unsupported substream key part: {part!r}")


def substream(seed: int, *key: Key) -> np.random.Generator:
    """Return an independent generator for ``(seed, *key)``.

    Identical arguments always give an identical stream; distinct keys give
    statistically independent streams (``SeedSequence`` spawn keys).
    """
    if seed < 0:
        raise ValueError(f"seed must be non-negative, got {seed}")
    ss = np.random.SeedSequence(entropy=int(seed), spawn_key=tuple(_key_to_int(k) for k in key))
    return np.random.Generator(np.random.PCG64(ss))


def as_seed(rng: Union[int, np.random.Generator, None]) -> int:
    """Reduce a user supplied seed or generator to an integer master seed."""
    if rng is None:
        return 0
    if isinstance(rng, (int, np.integer)):
        return int(rng)
    if isinstance(rng, np.random.Generator):
        return int(rng.integers(0, 2**63 - 1))
    raise TypeError(f"expected an int seed or numpy Generator, got {type(rng).__name__}")
