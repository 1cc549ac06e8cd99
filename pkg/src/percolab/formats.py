"""On-disk formats.

Edge list (text)::

    n m
    u v        # m lines, u < v, lexicographically increasing, 0-indexed

Mask (binary): 8-byte little-endian unsigned edge count, then the keep bits
packed little-endian within each byte, ceil(m/8) bytes.

Classes (text): one line per class, space-separated member ids.
"""

from __future__ import annotations

import io
import os

import numpy as np

from .errors import FormatError, OutputUnwritableError
from .graph import Graph


def _open_write(path, mode="w"):
    try:
        return open(path, mode)
    except OSError as exc:
        raise OutputUnwritableError(f"cannot write {path}: {exc}") from exc


def write_edgelist(g: Graph, path) -> None:
    with _open_write(path) as fh:
        fh.write(f"{g.n} {g.m}\n")
        if g.m:
            buf = io.StringIO()
            np.savetxt(buf, g.edges, fmt="%d")
            fh.write(buf.getvalue())


def read_edgelist(path) -> Graph:
    """Read a canonical edge list; rejects anything out of canonical order."""
    with open(path) as fh:
        header = fh.readline().split()
        if len(header) != 2:
            raise FormatError(f"{path}:1: expected header 'n m', got {' '.join(header)!r}")
        try:
            n, m = int(header[0]), int(header[1])
        except ValueError:
            raise FormatError(f"{path}:1: header is not two integers") from None
        body = fh.read()
    rows = [ln for ln in body.split("\n") if ln.strip()]
    if len(rows) != m:
        raise FormatError(f"{path}: header declares {m} edges, found {len(rows)} lines")
    if m == 0:
        return Graph(n, np.empty((0, 2), dtype=np.int64))
    try:
        e = np.array([ln.split() for ln in rows], dtype=np.int64)
    except ValueError:
        raise FormatError(f"{path}: every edge line must hold two integers") from None
    if e.ndim != 2 or e.shape[1] != 2:
        raise FormatError(f"{path}: every edge line must hold exactly two integers")
    bad = np.flatnonzero((e < 0).any(axis=1) | (e >= n).any(axis=1))
    if bad.size:
        i = bad[0]
        raise FormatError(f"{path}:{i + 2}: vertex out of range 0..{n - 1} in '{rows[i]}'")
    bad = np.flatnonzero(e[:, 0] >= e[:, 1])
    if bad.size:
        i = bad[0]
        raise FormatError(f"{path}:{i + 2}: pair '{rows[i]}' is not canonical (need u < v)")
    code = e[:, 0] * n + e[:, 1]
    bad = np.flatnonzero(code[1:] <= code[:-1])
    if bad.size:
        i = bad[0] + 1
        raise FormatError(
            f"{path}:{i + 2}: pair '{rows[i]}' is not strictly after '{rows[i - 1]}' "
            "(edges must be sorted and unique)"
        )
    return Graph(n, e)


def write_mask(keep: np.ndarray, path) -> None:
    keep = np.asarray(keep, dtype=bool)
    with _open_write(path, "wb") as fh:
        fh.write(np.uint64(keep.shape[0]).astype("<u8").tobytes())
        fh.write(np.packbits(keep, bitorder="little").tobytes())


def read_mask(path, expected_m: int | None = None) -> np.ndarray:
    raw = np.fromfile(path, dtype=np.uint8)
    if raw.shape[0] < 8:
        raise FormatError(f"{path}: mask file shorter than its 8-byte header")
    m = int(raw[:8].view("<u8")[0])
    nbytes = (m + 7) // 8
    if raw.shape[0] != 8 + nbytes:
        raise FormatError(f"{path}: expected {8 + nbytes} bytes for {m} edges, got {raw.shape[0]}")
    if expected_m is not None and m != expected_m:
        raise FormatError(f"{path}: mask covers {m} edges, graph has {expected_m}")
    return np.unpackbits(raw[8:], count=m, bitorder="little").astype(bool)


def write_classes(classes, path) -> None:
    with _open_write(path) as fh:
        for c in classes:
            fh.write(" ".join(str(int(v)) for v in c) + "\n")


def read_classes(path) -> list[np.ndarray]:
    with open(path) as fh:
        return [np.array(ln.split(), dtype=np.int64) for ln in fh if ln.strip()]


def ensure_parent(path) -> None:
    parent = os.path.dirname(os.fspath(path))
    if parent:
        try:
            os.makedirs(parent, exist_ok=True)
        except OSError as exc:
            raise OutputUnwritableError(f"cannot create {parent}: {exc}") from exc
