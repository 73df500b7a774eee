"""JSON file format for residue systems.

    {"classes": [{"a": 1, "n": 2}, ...], "weights": [1, ...], "metadata": {...}}

``weights`` and ``metadata`` are optional. Residues may be unnormalized on
input; they are reduced when converted to a :class:`ResidueSystem`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DocumentError
from .residue import ResidueSystem


@dataclass(frozen=True)
class SystemDocument:
    classes: tuple[tuple[int, int], ...]
    weights: tuple[int, ...] | None = None
    metadata: dict = field(default_factory=dict, compare=True)

    @classmethod
    def from_system(cls, system: ResidueSystem, **metadata):
        return cls(tuple((c.residue, c.modulus) for c in system.classes),
                   system.weights, dict(metadata))

    def to_system(self) -> ResidueSystem:
        try:
            return ResidueSystem.from_pairs(self.classes, self.weights)
        except (ValueError, TypeError) as exc:
            raise DocumentError(str(exc)) from exc

    def to_json(self) -> dict:
        out = {"classes": [{"a": a, "n": n} for a, n in self.classes]}
        if self.weights is not None:
            out["weights"] = list(self.weights)
        if self.metadata:
            out["metadata"] = self.metadata
        return out

    @classmethod
    def from_json(cls, obj) -> "SystemDocument":
        if not isinstance(obj, dict):
            raise DocumentError("document must be a JSON object")
        unknown = set(obj) - {"classes", "weights", "metadata"}
        if unknown:
            raise DocumentError(f"unknown keys: {sorted(unknown)}")
        raw = obj.get("classes")
        if not isinstance(raw, list) or not raw:
            raise DocumentError("'classes' must be a nonempty list")
        classes = []
        for i, entry in enumerate(raw):
            if not isinstance(entry, dict) or set(entry) != {"a", "n"}:
                raise DocumentError(f"class #{i} must be an object with keys 'a' and 'n'")
            a, n = entry["a"], entry["n"]
            if not _is_int(a) or not _is_int(n):
                raise DocumentError(f"class #{i}: 'a' and 'n' must be integers")
            if n < 1:
                raise DocumentError(f"class #{i}: modulus must be positive, got {n}")
            classes.append((a, n))
        weights = obj.get("weights")
        if weights is not None:
            if not isinstance(weights, list) or not all(_is_int(w) for w in weights):
                raise DocumentError("'weights' must be a list of integers")
            if len(weights) != len(classes):
                raise DocumentError(f"{len(weights)} weights for {len(classes)} classes")
            weights = tuple(weights)
        metadata = obj.get("metadata", {})
        if not isinstance(metadata, dict):
            raise DocumentError("'metadata' must be an object")
        return cls(tuple(classes), weights, metadata)


def _is_int(v):
    return isinstance(v, int) and not isinstance(v, bool)


def dumps(doc: SystemDocument) -> str:
    return json.dumps(doc.to_json(), indent=2) + "\n"


def loads(text: str) -> SystemDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc
    return SystemDocument.from_json(obj)


def read_document(path) -> SystemDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    return loads(text)


def read_system(path) -> ResidueSystem:
    return read_document(path).to_system()


def write_document(doc: SystemDocument, path) -> None:
    Path(path).write_text(dumps(doc), encoding="utf-8")
