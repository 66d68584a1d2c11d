"""The 5-class symbol alphabet shared by every module.

Every input byte is normalized to one of five codes: the four bases plus
OTHER, which stands for anything that is not a/c/g/t (ambiguity codes,
digits, punctuation). No motif literal ever contains OTHER, so reading it
drops every partial match back to the automaton start state.
"""

from __future__ import annotations

import numpy as np

A, C, G, T, OTHER = 0, 1, 2, 3, 4
N_SYMBOLS = 5

BASES = "acgt"
BASE_CODES = {"a": A, "c": C, "g": G, "t": T}
CODE_CHARS = "acgt?"  # OTHER rendered as '?' in diagnostics

# Byte -> code table. ASCII whitespace (space, tab, CR, LF) maps to DROP and
# is removed during loading; everything else survives as a symbol.
DROP = 5
_table = np.full(256, OTHER, dtype=np.uint8)
for _base, _code in BASE_CODES.items():
    _table[ord(_base)] = _code
    _table[ord(_base.upper())] = _code
for _ws in b" \t\r\n":
    _table[_ws] = DROP
BYTE_CODES = _table
BYTE_CODES.setflags(write=False)


def encode_bytes(data: bytes) -> np.ndarray:
    """Normalize a byte string to symbol codes, dropping ASCII whitespace."""
    raw = np.frombuffer(data, dtype=np.uint8)
    codes = BYTE_CODES[raw]
    return np.ascontiguousarray(codes[codes != DROP])


def encode(text: str) -> np.ndarray:
    """Normalize a str the same way raw file bodies are normalized."""
    return encode_bytes(text.encode("ascii", errors="replace"))


def decode(codes) -> str:
    """Render symbol codes back to text ('?' for OTHER). Diagnostic helper."""
    return "".join(CODE_CHARS[c] for c in codes)
