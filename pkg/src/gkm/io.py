"""JSON interchange for graphs with connection, axial and embedding blocks.

Scalars serialize as ``"p/q"`` strings or ``{"a": .., "b": .., "d": ..}`` for
a + b sqrt(d).  Output is compact with sorted keys, so parse then serialize
reproduces the input bytes.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any

from .axial import AxialFunction, Embedding
from .errors import ValidationError
from .graph import Connection, Graph
from .scalars import format_scalar, to_scalar

__all__ = ["SCHEMA_VERSION", "Document", "dumps", "loads", "from_fixture", "jsonable"]

SCHEMA_VERSION = 1


@dataclass
class Document:
    graph: Graph
    connection: Connection | None = None
    axial: AxialFunction | None = None
    embedding: Embedding | None = None
    name: str | None = None
    expected: dict = field(default_factory=dict)
    extra: dict = field(default_factory=dict)  # command-specific payload

    def to_json(self) -> dict:
        g = self.graph
        out: dict[str, Any] = {
            "schema_version": SCHEMA_VERSION,
            "graph": {"vertices": g.vertex_count,
                      "edges": [[g.tail(e), g.head(e)] for e in range(0, g.edge_count, 2)]},
        }
        if self.name is not None:
            out["name"] = self.name
        if self.connection is not None:
            out["connection"] = {str(e): sorted([x, y] for x, y in m.items())
                                 for e, m in enumerate(self.connection.maps)}
        if self.axial is not None:
            out["axial"] = {"dim": self.axial.dim,
                            "values": [[format_scalar(x) for x in v] for v in self.axial.values]}
        if self.embedding is not None:
            out["embedding"] = [[format_scalar(x) for x in p] for p in self.embedding.points]
        if self.expected:
            out["expected"] = jsonable(self.expected)
        out.update(jsonable(self.extra))
        return out


def jsonable(x):
    """Tuples to lists, exact scalars to strings, dict keys to strings."""
    if isinstance(x, dict):
        return {str(k): jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, frozenset, set)):
        items = sorted(x) if isinstance(x, (frozenset, set)) else x
        return [jsonable(v) for v in items]
    if isinstance(x, bool) or x is None or isinstance(x, (int, str)):
        return x
    try:
        return format_scalar(x)
    except (TypeError, ValueError):
        return str(x)


def dumps(doc: Document | dict) -> str:
    data = doc.to_json() if isinstance(doc, Document) else jsonable(doc)
    return json.dumps(data, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def _scalars(row):
    try:
        return tuple(to_scalar(x) for x in row)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"bad scalar in {row!r}: {exc}", "exact scalars") from None


def loads(text: str) -> Document:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON: {exc}", "json") from None
    if not isinstance(data, dict) or "graph" not in data:
        raise ValidationError("document has no graph block", "schema")
    ver = data.get("schema_version", SCHEMA_VERSION)
    if ver != SCHEMA_VERSION:
        raise ValidationError(f"unsupported schema_version {ver}", "schema")
    gb = data["graph"]
    g = Graph(int(gb["vertices"]), [tuple(e) for e in gb["edges"]])
    conn = None
    if "connection" in data:
        maps = {}
        for k, pairs in data["connection"].items():
            maps[int(k)] = {int(x): int(y) for x, y in pairs}
        conn = Connection(g, maps)
    axial = None
    if "axial" in data:
        ab = data["axial"]
        axial = AxialFunction(g, [_scalars(v) for v in ab["values"]], int(ab["dim"]))
    emb = None
    if "embedding" in data:
        emb = Embedding([_scalars(p) for p in data["embedding"]])
        if len(emb) != g.vertex_count:
            raise ValidationError("embedding needs one point per vertex", "embedding")
    known = {"schema_version", "graph", "connection", "axial", "embedding", "name", "expected"}
    extra = {k: v for k, v in data.items() if k not in known}
    return Document(g, conn, axial, emb, data.get("name"), data.get("expected", {}), extra)


def from_fixture(fx) -> Document:
    return Document(fx.graph, fx.connection, fx.axial, fx.embedding, fx.name, dict(fx.expected))
