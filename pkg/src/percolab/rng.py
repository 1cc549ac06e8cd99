"""Counter-based per-edge uniforms.

The uniform attached to edge ``i`` under ``(seed, label)`` is a pure function
of those three values, so a mask can be evaluated in any order, in chunks, or
one edge at a time (the BFS coin oracle) and always agrees bit for bit.

Construction (SplitMix64 finaliser used as a counter hash)::

    key = mix64(seed XOR blake2b64(label))
    u_i = (mix64(key + (i + 1) * GOLDEN) >> 11) * 2**-53
"""

from __future__ import annotations

import hashlib

import numba as nb
import numpy as np

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_INV53 = 1.0 / 9007199254740992.0  # 2**-53

CHUNK = 1 << 22


def mix64(z: int) -> int:
    """SplitMix64 finaliser on a Python int (reference implementation)."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def label_hash(label: str) -> int:
    return int.from_bytes(hashlib.blake2b(label.encode(), digest_size=8).digest(), "little")


def stream_key(seed: int, label: str) -> int:
    if not 0 <= seed <= MASK64:
        raise ValueError(f"seed must be a 64-bit unsigned integer, got {seed}")
    return mix64(seed ^ label_hash(label))


def uniform_ref(seed: int, label: str, i: int) -> float:
    """Pure-Python value of ``u_i``; slow, used as an oracle for the kernels."""
    key = stream_key(seed, label)
    h = mix64(key + (i + 1) * GOLDEN)
    return (h >> 11) * _INV53


@nb.njit(inline="always")
def _mix(z):
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_M1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_M2)
    return z ^ (z >> np.uint64(31))


@nb.njit(nogil=True, cache=True)
def _uniforms_at(key, idx, out):
    g = np.uint64(GOLDEN)
    for j in range(idx.shape[0]):
        h = _mix(key + np.uint64(idx[j] + 1) * g)
        out[j] = (h >> np.uint64(11)) * _INV53


@nb.njit(nogil=True, cache=True)
def _kept_range(key, start, stop, p, out):
    g = np.uint64(GOLDEN)
    c = 0
    for i in range(start, stop):
        h = _mix(key + np.uint64(i + 1) * g)
        if (h >> np.uint64(11)) * _INV53 < p:
            out[c] = i
            c += 1
    return c


def uniforms(seed: int, label: str, idx) -> np.ndarray:
    """Uniforms in [0, 1) for the given counter values."""
    idx = np.ascontiguousarray(idx, dtype=np.int64)
    out = np.empty(idx.shape[0], dtype=np.float64)
    _uniforms_at(np.uint64(stream_key(seed, label)), idx, out)
    return out


def kept_indices(seed: int, label: str, m: int, p: float) -> np.ndarray:
    """Sorted indices ``i < m`` with ``u_i < p``.

    Evaluated in fixed-size chunks so memory stays proportional to the kept
    count rather than ``m`` (complete graphs with ~1e9 edges).
    """
    if p <= 0.0 or m == 0:
        return np.empty(0, dtype=np.int64)
    if p >= 1.0:
        return np.arange(m, dtype=np.int64)
    key = np.uint64(stream_key(seed, label))
    buf = np.empty(min(m, CHUNK), dtype=np.int64)
    parts = []
    for start in range(0, m, CHUNK):
        stop = min(m, start + CHUNK)
        c = _kept_range(key, start, stop, float(p), buf)
        parts.append(buf[:c].copy())
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int64)
