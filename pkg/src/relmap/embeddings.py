"""Word embedding storage and vector arithmetic.

Embeddings are read from the whitespace-delimited text interchange format
(optional ``count dimension`` header, then one ``token v1 ... vD`` line per
word). The table is immutable after loading and safe to share across
workers.
"""

from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Iterable, Mapping

import numpy as np

from .errors import LoadError, OOVError, ValidationError


@dataclass(frozen=True)
class EmbeddingTable:
    """Token -> vector map with a fixed dimension.

    Multiword tokens are stored underscore-joined. `lookup` handles the
    fallback chain for queries that miss: case folding, space-to-underscore
    joining, and (optionally) averaging constituent word vectors.
    """

    dimension: int
    entries: Mapping[str, np.ndarray]
    _folded: Mapping[str, str] = field(default_factory=dict, repr=False)

    def __post_init__(self):
        folded: dict[str, str] = {}
        for token in self.entries:
            folded.setdefault(token.lower(), token)
        object.__setattr__(self, "_folded", folded)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: str) -> bool:
        return token in self.entries

    def _resolve_single(self, token: str) -> np.ndarray | None:
        vec = self.entries.get(token)
        if vec is not None:
            return vec
        exact = self._folded.get(token.lower())
        if exact is not None:
            return self.entries[exact]
        return None

    def lookup(self, token: str, *, constituent_mean: bool = True) -> np.ndarray:
        """Resolve a token to its vector.

        Order: exact match, case-folded match, underscore-joined form of a
        spaced phrase, then (if `constituent_mean`) the mean of the phrase's
        constituent word vectors. Raises OOVError when nothing resolves.
        """
        vec = self._resolve_single(token)
        if vec is not None:
            return vec
        if " " in token:
            joined = self._resolve_single(token.replace(" ", "_"))
            if joined is not None:
                return joined
            if constituent_mean:
                parts = token.split()
                part_vecs = [self._resolve_single(p) for p in parts]
                if all(v is not None for v in part_vecs):
                    return np.mean(part_vecs, axis=0)
                missing = [p for p, v in zip(parts, part_vecs) if v is None]
                raise OOVError(token, f"constituents also missing: {missing}")
        raise OOVError(token)


def load_embeddings(source: IO[bytes] | IO[str] | str, expected_dimension: int) -> EmbeddingTable:
    """Parse the text interchange format into an EmbeddingTable.

    `source` is a path, a text stream, or a byte stream. An optional first
    line ``count dimension`` is accepted and checked against
    `expected_dimension`. Any line whose vector length differs from
    `expected_dimension`, any duplicate token, and an empty stream are
    load errors.
    """
    if expected_dimension <= 0:
        raise ValidationError("expected_dimension must be positive")
    if isinstance(source, str):
        with open(source, "rb") as fh:
            return load_embeddings(fh, expected_dimension)
    raw = source.read()
    if isinstance(raw, bytes):
        text = raw.decode("utf-8")
    else:
        text = raw
    lines = text.splitlines()
    entries: dict[str, np.ndarray] = {}
    start = 0
    if lines:
        head = lines[0].split()
        if len(head) == 2:
            try:
                declared_count, declared_dim = int(head[0]), int(head[1])
            except ValueError:
                pass
            else:
                if declared_dim != expected_dimension:
                    raise LoadError(
                        f"header declares dimension {declared_dim}, expected {expected_dimension}"
                    )
                del declared_count  # informational only
                start = 1
    for lineno, line in enumerate(lines[start:], start=start + 1):
        if not line.strip():
            continue
        fields = line.split()
        token, values = fields[0], fields[1:]
        if len(values) != expected_dimension:
            raise LoadError(
                f"line {lineno}: token {token!r} has {len(values)} components, "
                f"expected {expected_dimension}"
            )
        if token in entries:
            raise LoadError(f"line {lineno}: duplicate token {token!r}")
        try:
            vec = np.array([float(v) for v in values], dtype=np.float64)
        except ValueError as exc:
            raise LoadError(f"line {lineno}: unparseable value ({exc})") from exc
        if not np.all(np.isfinite(vec)):
            raise LoadError(f"line {lineno}: non-finite component in {token!r}")
        vec.setflags(write=False)
        entries[token] = vec
    if not entries:
        raise LoadError("empty embedding stream")
    return EmbeddingTable(dimension=expected_dimension, entries=entries)


def save_embeddings(table: EmbeddingTable, stream: IO[str], header: bool = True) -> None:
    """Write a table back to the text interchange format.

    Values are written with shortest round-trip float formatting, so a
    load/save/load cycle preserves every vector bit-exactly.
    """
    if header:
        stream.write(f"{len(table)} {table.dimension}\n")
    for token, vec in table.entries.items():
        stream.write(token + " " + " ".join(repr(float(v)) for v in vec) + "\n")


def embedding_table_from_dict(vectors: Mapping[str, Iterable[float]], dimension: int) -> EmbeddingTable:
    """Build a table from an in-memory mapping (scenario files, tests)."""
    entries: dict[str, np.ndarray] = {}
    for token, values in vectors.items():
        vec = np.asarray(list(values), dtype=np.float64)
        if vec.shape != (dimension,):
            raise ValidationError(f"vector for {token!r} has shape {vec.shape}, expected ({dimension},)")
        if not np.all(np.isfinite(vec)):
            raise ValidationError(f"vector for {token!r} has non-finite components")
        vec.setflags(write=False)
        entries[token] = vec
    if not entries:
        raise ValidationError("no vectors supplied")
    return EmbeddingTable(dimension=dimension, entries=entries)


def cosine(u: np.ndarray, v: np.ndarray) -> float:
    """Cosine similarity of two equal-length nonzero vectors, in [-1, 1]."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValidationError(f"length mismatch: {u.shape} vs {v.shape}")
    nu = float(np.linalg.norm(u))
    nv = float(np.linalg.norm(v))
    if nu == 0.0 or nv == 0.0:
        raise ValidationError("cosine similarity is undefined for a zero vector")
    return float(np.clip(np.dot(u, v) / (nu * nv), -1.0, 1.0))


def diff_vector(table: EmbeddingTable, w1: str, w2: str) -> np.ndarray:
    """Difference of the two tokens' vectors: lookup(w1) - lookup(w2)."""
    return table.lookup(w1) - table.lookup(w2)


def parse_embeddings_text(text: str, expected_dimension: int) -> EmbeddingTable:
    """Convenience wrapper for loading from an in-memory string."""
    return load_embeddings(io.StringIO(text), expected_dimension)
