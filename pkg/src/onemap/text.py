"""Text ingestion, rank reduction and Hamming distance."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "Alphabet",
    "IntText",
    "SequenceError",
    "EmptySequenceError",
    "FastaParseError",
    "ingest",
    "from_string",
    "reverse",
    "hamming",
]


class SequenceError(ValueError):
    """Base class for input problems."""


class EmptySequenceError(SequenceError):
    def __init__(self, name: Optional[str] = None):
        where = f" in record {name!r}" if name else ""
        super().__init__(f"empty sequence{where}")


class FastaParseError(SequenceError):
    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line


@dataclass(frozen=True)
class Alphabet:
    """Bijection between source bytes and ranks ``0..size-1``."""

    byte_of: bytes

    def __post_init__(self):
        if not self.byte_of:
            raise ValueError("alphabet must have at least one letter")
        if len(set(self.byte_of)) != len(self.byte_of):
            raise ValueError("alphabet letters must be distinct")

    @property
    def size(self) -> int:
        return len(self.byte_of)

    @property
    def rank_of(self) -> dict:
        return {b: r for r, b in enumerate(self.byte_of)}

    @classmethod
    def from_bytes(cls, data: bytes) -> "Alphabet":
        return cls(bytes(sorted(set(data))))

    @classmethod
    def integer(cls, sigma: int) -> "Alphabet":
        """Alphabet for synthetic texts, letters drawn from printable ASCII when possible."""
        if sigma <= 26:
            return cls(bytes(range(ord("a"), ord("a") + sigma)))
        if sigma > 256:
            raise ValueError("sigma above 256 cannot be mapped onto bytes")
        return cls(bytes(range(sigma)))


@dataclass(frozen=True, eq=False)
class IntText:
    """Immutable rank-reduced text."""

    ranks: np.ndarray
    alphabet: Alphabet
    source_name: Optional[str] = None

    def __post_init__(self):
        ranks = np.ascontiguousarray(self.ranks, dtype=np.int32)
        if ranks.ndim != 1 or ranks.size == 0:
            raise EmptySequenceError(self.source_name)
        if ranks.min() < 0 or ranks.max() >= self.alphabet.size:
            raise ValueError("rank outside alphabet")
        ranks.setflags(write=False)
        object.__setattr__(self, "ranks", ranks)

    def __len__(self) -> int:
        return int(self.ranks.size)

    @property
    def n(self) -> int:
        return int(self.ranks.size)

    @property
    def sigma(self) -> int:
        return self.alphabet.size

    def __getitem__(self, item):
        return self.ranks[item]

    def __eq__(self, other) -> bool:
        if not isinstance(other, IntText):
            return NotImplemented
        return self.alphabet == other.alphabet and np.array_equal(self.ranks, other.ranks)

    def __hash__(self) -> int:
        return hash((self.alphabet, self.ranks.tobytes()))

    def window(self, i: int, m: int) -> np.ndarray:
        return self.ranks[i : i + m]

    def decode(self) -> bytes:
        table = np.frombuffer(self.alphabet.byte_of, dtype=np.uint8)
        return table[self.ranks].tobytes()

    def __repr__(self) -> str:
        body = self.decode()
        if len(body) > 40:
            body = body[:37] + b"..."
        return f"IntText({body!r}, n={self.n}, sigma={self.sigma})"


def _rank(data: bytes, name: Optional[str]) -> IntText:
    if not data:
        raise EmptySequenceError(name)
    raw = np.frombuffer(data, dtype=np.uint8)
    letters, ranks = np.unique(raw, return_inverse=True)
    return IntText(ranks.astype(np.int32), Alphabet(letters.tobytes()), name)


def from_string(text, name: Optional[str] = None) -> IntText:
    """Shortcut for tests and interactive use: rank a ``str`` or ``bytes``."""
    if isinstance(text, str):
        text = text.encode()
    return _rank(bytes(text), name)


def _parse_fasta(data: bytes):
    records = []
    name = None
    chunks: list = []
    header_line = 0
    for lineno, line in enumerate(data.splitlines(), start=1):
        if line.startswith(b">"):
            if name is not None:
                records.append((name, header_line, b"".join(chunks)))
            name = line[1:].strip().decode(errors="replace")
            if not name:
                raise FastaParseError(lineno, "header without a record name")
            header_line = lineno
            chunks = []
            continue
        stripped = b"".join(line.split())
        if not stripped:
            continue
        if name is None:
            raise FastaParseError(lineno, "sequence data before the first '>' header")
        chunks.append(stripped)
    if name is None:
        raise FastaParseError(1, "no '>' header found")
    records.append((name, header_line, b"".join(chunks)))
    return records


def ingest(data: bytes, format: str = "raw", case_fold: bool = False) -> list:
    """Parse ``data`` into one :class:`IntText` per record.

    Letters are ranked by byte value, so ``b"aabaaabbbb"`` becomes
    ``[0,0,1,0,0,0,1,1,1,1]``. Bytes such as ``N`` are ordinary letters.
    """
    if not data:
        raise EmptySequenceError()
    if case_fold:
        data = data.upper()
    if format == "raw":
        if data.endswith(b"\r\n"):
            data = data[:-2]
        elif data.endswith(b"\n"):
            data = data[:-1]
        return [_rank(data, None)]
    if format == "fasta":
        out = []
        for name, _line, seq in _parse_fasta(data):
            out.append(_rank(seq, name))
        return out
    raise ValueError(f"unknown format {format!r}")


def reverse(t: IntText) -> IntText:
    return IntText(t.ranks[::-1].copy(), t.alphabet, t.source_name)


def hamming(a: Sequence, b: Sequence) -> float:
    """Number of mismatching offsets; ``math.inf`` when the lengths differ."""
    if len(a) != len(b):
        return math.inf
    if isinstance(a, (str, bytes)) or isinstance(b, (str, bytes)):
        return sum(1 for x, y in zip(a, b) if x != y)
    return int(np.count_nonzero(np.asarray(a) != np.asarray(b)))
