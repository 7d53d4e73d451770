"""The triple-system container and its JSON / text formats."""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import StructureError
from .groups import GroupSpec, element_from_json, element_to_json, parse_descriptor


@dataclass(frozen=True, order=True)
class Infinity:
    index: int

    def __str__(self):
        return f"inf{self.index}"


_INF_RE = re.compile(r"inf(\d+)$")


def label_to_json(p):
    return str(p) if isinstance(p, Infinity) else element_to_json(p)


def label_to_text(p):
    return str(p) if isinstance(p, Infinity) else json.dumps(element_to_json(p), separators=(",", ":"))


def _freeze(x):
    return tuple(_freeze(c) for c in x) if isinstance(x, list) else x


def label_from_json(data, group=None):
    if isinstance(data, str):
        m = _INF_RE.match(data)
        if not m or int(m.group(1)) < 1:
            raise StructureError(f"bad point label {data!r}")
        return Infinity(int(m.group(1)))
    if group is not None:
        return element_from_json(group, data)
    if not isinstance(data, list):
        raise StructureError(f"bad point label {data!r}")
    return _freeze(data)


@dataclass
class TripleSystem:
    """Points with infinities first, blocks as rows of point indices.

    ``blocks`` is an ``(b, 3)`` integer array, each row sorted ascending and
    rows in lexicographic order, so two systems with the same labelled
    blocks compare equal via :meth:`to_json`.
    """

    v: int
    f: int
    points: list
    blocks: np.ndarray
    group: GroupSpec | None = None
    case: str = ""
    _index: dict = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.points) != self.v:
            raise StructureError(f"{len(self.points)} point labels for v={self.v}")
        b = np.asarray(self.blocks, dtype=np.int64).reshape(-1, 3)
        b = np.sort(b, axis=1)
        if len(b):
            b = b[np.lexsort(b.T[::-1])]
        self.blocks = b

    @property
    def index(self):
        if self._index is None:
            self._index = {p: i for i, p in enumerate(self.points)}
        return self._index

    @classmethod
    def from_labels(cls, points, blocks, f=None, group=None, case=""):
        idx = {p: i for i, p in enumerate(points)}
        if len(idx) != len(points):
            raise StructureError("duplicate point labels")
        try:
            rows = [[idx[p] for p in b] for b in blocks]
        except KeyError as exc:
            raise StructureError(f"block uses unknown point {exc.args[0]!r}") from None
        if any(len(r) != 3 for r in rows):
            raise StructureError("every block needs exactly 3 points")
        if f is None:
            f = sum(isinstance(p, Infinity) for p in points)
        return cls(len(points), f, list(points), np.array(rows, dtype=np.int64).reshape(-1, 3), group, case)

    def block_labels(self):
        pts = self.points
        return [tuple(pts[i] for i in row) for row in self.blocks.tolist()]

    def to_json(self):
        return {
            "v": self.v,
            "f": self.f,
            "group": self.group.descriptor if self.group is not None else None,
            "case": self.case,
            "points": [label_to_json(p) for p in self.points],
            "blocks": [[label_to_json(p) for p in b] for b in self.block_labels()],
        }

    @classmethod
    def from_json(cls, data):
        for key in ("v", "points", "blocks"):
            if key not in data:
                raise StructureError(f"missing key {key!r}")
        group = parse_descriptor(data["group"]) if data.get("group") else None
        points = []
        for i, p in enumerate(data["points"]):
            try:
                points.append(label_from_json(p, group))
            except StructureError as exc:
                raise StructureError(f"points[{i}]: {exc}") from None
        blocks = []
        for i, b in enumerate(data["blocks"]):
            if not isinstance(b, list):
                raise StructureError(f"blocks[{i}]: expected a list of 3 labels")
            try:
                blocks.append([label_from_json(p, group) for p in b])
            except StructureError as exc:
                raise StructureError(f"blocks[{i}]: {exc}") from None
        T = cls.from_labels(points, blocks, f=data.get("f"), group=group, case=data.get("case", ""))
        if T.v != data["v"]:
            raise StructureError(f"v={data['v']} but {T.v} points listed")
        return T

    @classmethod
    def from_text(cls, text, group=None):
        """Parse the one-block-per-line format; points are whatever appears."""
        blocks = []
        for lineno, line in enumerate(text.splitlines(), start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            toks = line.split()
            if len(toks) != 3:
                raise StructureError(f"line {lineno}: expected 3 labels, got {len(toks)}")
            try:
                blocks.append([label_from_json(t if t.startswith("inf") else json.loads(t), group)
                               for t in toks])
            except (StructureError, ValueError) as exc:
                raise StructureError(f"line {lineno}: {exc}") from None
        seen = {p for b in blocks for p in b}
        infs = sorted(p for p in seen if isinstance(p, Infinity))
        rest = sorted(p for p in seen if not isinstance(p, Infinity))
        return cls.from_labels(infs + rest, blocks, group=group)

    def to_text(self):
        return "".join(" ".join(label_to_text(p) for p in b) + "\n" for b in self.block_labels())
