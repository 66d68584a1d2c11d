"""Sequence loading, normalization and chunk planning.

Normalization happens exactly once, at load time: downstream code only ever
sees the 5-class codes, so an 'N' sitting on a chunk border behaves as OTHER
when the border symbols feed start-state speculation.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .alphabet import DROP, BYTE_CODES, encode

FASTA_EXTENSIONS = (".fa", ".fasta")


@dataclass(frozen=True)
class Sequence:
    """Normalized input: one uint8 code per retained symbol."""

    symbols: np.ndarray
    source_name: str = ""

    def __post_init__(self):
        self.symbols.setflags(write=False)

    @property
    def length(self) -> int:
        return int(self.symbols.shape[0])


@dataclass(frozen=True)
class ChunkPlan:
    """Contiguous half-open per-worker ranges covering [0, length).

    boundary_symbols is aligned with bounds; entry 0 is None, entry i >= 1 is
    (last symbol of chunk i-1, first symbol of chunk i) from the normalized
    sequence.
    """

    worker_count: int
    bounds: tuple[tuple[int, int], ...]
    boundary_symbols: tuple[tuple[int, int] | None, ...]


def detect_format(path: str | os.PathLike) -> str:
    """Extension-based default: .fa/.fasta means fasta, anything else raw."""
    return "fasta" if str(path).lower().endswith(FASTA_EXTENSIONS) else "raw"


def load_sequence(path: str | os.PathLike, fmt: str = "fasta") -> Sequence:
    """Load and normalize a DNA file.

    fasta: '>' header lines are discarded entirely. raw: the whole body is
    used. Both modes drop ASCII whitespace and map every non-acgt byte to
    OTHER. An empty result is legal (length 0), not an error.
    """
    if fmt not in ("fasta", "raw"):
        raise ValueError(f"unknown format {fmt!r}")
    with open(path, "rb") as fh:
        data = fh.read()
    if fmt == "fasta":
        data = b"".join(line for line in data.splitlines() if not line.startswith(b">"))
    raw = np.frombuffer(data, dtype=np.uint8)
    codes = BYTE_CODES[raw]
    symbols = np.ascontiguousarray(codes[codes != DROP])
    return Sequence(symbols, source_name=os.fspath(path))


def sequence_from_text(text: str, name: str = "<text>") -> Sequence:
    """Raw-mode normalization of an in-memory string (tests, demos)."""
    return Sequence(encode(text), source_name=name)


def plan_chunks(seq: Sequence, requested_workers: int) -> ChunkPlan:
    """Split [0, length) into floor-division chunks, remainder on the last.

    The effective worker count is clamped to the sequence length, so every
    chunk is non-empty (an empty sequence degenerates to one empty chunk).
    """
    if requested_workers < 1:
        raise ValueError("requested_workers must be >= 1")
    n = seq.length
    w = min(requested_workers, max(1, n))
    q = n // w
    bounds = tuple((i * q, (i + 1) * q if i < w - 1 else n) for i in range(w))
    boundary: list[tuple[int, int] | None] = [None]
    for i in range(1, w):
        start = bounds[i][0]
        boundary.append((int(seq.symbols[start - 1]), int(seq.symbols[start])))
    return ChunkPlan(worker_count=w, bounds=bounds, boundary_symbols=tuple(boundary))
