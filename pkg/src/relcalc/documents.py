"""JSON relation documents.

A document looks like::

    {"ambient_dim": 2, "kind": "operator",
     "payload": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]],
     "tol": 1e-10}

Complex numbers are ``[re, im]`` pairs (a bare real number is accepted on
input). ``kind`` selects the payload shape: ``operator`` is an ``n x n``
matrix (list of rows), ``pairs`` a list of ``[f, g]`` vector pairs, and
``basis`` a ``2n x d`` matrix whose columns span the graph.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass

import numpy as np

from . import relation as rel
from .errors import RelcalcError
from .relation import LinearRelation
from .subspace import DEFAULT_TOL

KINDS = ("operator", "pairs", "basis")


class DocumentError(RelcalcError, ValueError):
    """Malformed relation document; carries the field path and source line."""

    def __init__(self, msg, field=None, line=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field}")
        super().__init__(f"{msg} ({', '.join(where)})" if where else msg)
        self.field = field
        self.line = line


@dataclass(eq=False)
class RelationDocument:
    ambient_dim: int
    kind: str
    payload: object
    tol: float | None = None

    def to_relation(self, tol: float | None = None) -> LinearRelation:
        tol = tol if tol is not None else (self.tol if self.tol is not None else DEFAULT_TOL)
        n = self.ambient_dim
        if self.kind == "operator":
            return rel.from_operator(self.payload, tol)
        if self.kind == "pairs":
            return rel.from_pairs(self.payload, tol, n=n)
        return rel.from_basis(self.payload, tol)

    def to_json(self) -> dict:
        if self.kind == "pairs":
            payload = [[encode_vector(f), encode_vector(g)] for f, g in self.payload]
        else:
            payload = encode_matrix(self.payload)
        out = {"ambient_dim": self.ambient_dim, "kind": self.kind, "payload": payload}
        if self.tol is not None:
            out["tol"] = self.tol
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def encode_complex(z) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def encode_vector(v) -> list:
    return [encode_complex(z) for z in np.ravel(v)]


def encode_matrix(m) -> list:
    return [encode_vector(row) for row in np.asarray(m)]


def document_from_relation(t: LinearRelation) -> RelationDocument:
    return RelationDocument(t.n, "basis", np.array(t.graph.basis), t.tol)


def _line_of(text: str, key: str):
    if text is None:
        return None
    m = re.search(r'"%s"\s*:' % re.escape(key), text)
    return text.count("\n", 0, m.start()) + 1 if m else None


def _complex(x, path):
    if isinstance(x, bool):
        raise DocumentError("expected a number or [re, im]", path)
    if isinstance(x, (int, float)):
        z = complex(x)
    elif isinstance(x, list) and len(x) == 2 and all(
        isinstance(v, (int, float)) and not isinstance(v, bool) for v in x
    ):
        z = complex(x[0], x[1])
    else:
        raise DocumentError("expected a number or [re, im]", path)
    if not np.isfinite(z):
        raise DocumentError("non-finite number", path)
    return z


def _vector(v, length, path):
    if not isinstance(v, list):
        raise DocumentError("expected a list", path)
    if length is not None and len(v) != length:
        raise DocumentError(f"expected {length} entries, got {len(v)}", path)
    return np.array([_complex(x, f"{path}[{i}]") for i, x in enumerate(v)], dtype=complex)


def _matrix(rows, nrows, ncols, path):
    if not isinstance(rows, list):
        raise DocumentError("expected a list of rows", path)
    if len(rows) != nrows:
        raise DocumentError(f"expected {nrows} rows, got {len(rows)}", path)
    if nrows and ncols is None:
        ncols = len(rows[0]) if isinstance(rows[0], list) else None
    out = [_vector(r, ncols, f"{path}[{i}]") for i, r in enumerate(rows)]
    return np.array(out, dtype=complex).reshape(nrows, ncols or 0)


def parse_document(data, text: str | None = None) -> RelationDocument:
    """Validate decoded JSON ``data``; ``text`` (if given) is used for line numbers."""
    if not isinstance(data, dict):
        raise DocumentError("top level must be an object", "$", 1 if text else None)
    for key in ("ambient_dim", "kind", "payload"):
        if key not in data:
            raise DocumentError(f"missing required field {key!r}", key)
    n = data["ambient_dim"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise DocumentError("ambient_dim must be a positive integer", "ambient_dim",
                            _line_of(text, "ambient_dim"))
    kind = data["kind"]
    if kind not in KINDS:
        raise DocumentError(f"kind must be one of {KINDS}", "kind", _line_of(text, "kind"))
    tol = data.get("tol")
    if tol is not None and (not isinstance(tol, (int, float)) or isinstance(tol, bool)
                            or not tol > 0 or not np.isfinite(tol)):
        raise DocumentError("tol must be a positive number", "tol", _line_of(text, "tol"))
    raw = data["payload"]
    line = _line_of(text, "payload")
    try:
        if kind == "operator":
            payload = _matrix(raw, n, n, "payload")
        elif kind == "basis":
            payload = _matrix(raw, 2 * n, None, "payload")
        else:
            if not isinstance(raw, list):
                raise DocumentError("expected a list of [f, g] pairs", "payload")
            payload = []
            for i, pair in enumerate(raw):
                if not isinstance(pair, list) or len(pair) != 2:
                    raise DocumentError("expected an [f, g] pair", f"payload[{i}]")
                payload.append((_vector(pair[0], n, f"payload[{i}][0]"),
                                _vector(pair[1], n, f"payload[{i}][1]")))
    except DocumentError as exc:
        raise DocumentError(str(exc).split(" (")[0], exc.field, line) from None
    return RelationDocument(n, kind, payload, None if tol is None else float(tol))


def loads(text: str) -> RelationDocument:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc.msg}", f"column {exc.colno}", exc.lineno) from None
    return parse_document(data, text)


def load(path) -> RelationDocument:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
