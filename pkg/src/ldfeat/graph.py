"""Immutable labeled, weighted, directed graph."""

from __future__ import annotations

import enum
import math
import re
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

MISSING = None


class GraphError(ValueError):
    """Raised for invalid graph construction or lookups."""


class Direction(str, enum.Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"

    @classmethod
    def parse(cls, value: "str | Direction") -> "Direction":
        if isinstance(value, cls):
            return value
        text = str(value).strip().lower()
        if text in ("undirected", "undirected-view", "undirected_view"):
            return cls.UNDIRECTED
        if text == "directed":
            return cls.DIRECTED
        raise GraphError(f"unknown direction mode: {value!r}")


_DIGITS = re.compile(r"^\d+$")


def id_sort_key(ext_id: str):
    """Order numeric ids numerically and put them before other strings."""
    if _DIGITS.match(ext_id):
        return (0, int(ext_id), ext_id)
    return (1, 0, ext_id)


class LabeledGraph:
    """A social network ``(V, E, X, L, Y, W)`` with dense integer node ids.

    Nodes are ``0 .. n-1``; ``ids[i]`` is the external string id of node ``i``.
    Edges are directed, at most one per ordered pair, never self-loops, with
    non-negative weights.  ``labels`` is a partial map: nodes without an entry
    have unknown labels.

    Instances are read-only after construction.
    """

    __slots__ = (
        "_ids", "_index", "_out", "_in", "_und", "_attributes",
        "_attribute_schema", "_labels", "_label_set",
    )

    def __init__(
        self,
        ids: Sequence[str],
        edges: Iterable[tuple[int, int, float]] = (),
        *,
        labels: Mapping[int, str] | None = None,
        label_set: Iterable[str] | None = None,
        attributes: Sequence[Mapping[str, object]] | None = None,
        attribute_schema: Sequence[tuple[str, str]] = (),
    ):
        ids = tuple(str(i) for i in ids)
        n = len(ids)
        index = {ext: i for i, ext in enumerate(ids)}
        if len(index) != n:
            raise GraphError("duplicate external node ids")

        out: list[dict[int, float]] = [{} for _ in range(n)]
        inc: list[dict[int, float]] = [{} for _ in range(n)]
        for i, j, w in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise GraphError(f"edge ({i}, {j}) references an unknown node")
            if i == j:
                raise GraphError(f"self-loop on node {ids[i]!r}")
            w = float(w)
            if not w >= 0 or math.isinf(w):
                raise GraphError(f"invalid weight {w} on edge ({ids[i]!r}, {ids[j]!r})")
            if j in out[i]:
                raise GraphError(f"parallel edge ({ids[i]!r}, {ids[j]!r})")
            out[i][j] = w
            inc[j][i] = w

        labels = dict(labels or {})
        if label_set is None:
            label_set = sorted(set(labels.values()))
        label_set = tuple(label_set)
        if len(set(label_set)) != len(label_set):
            raise GraphError("duplicate entries in label set")
        allowed = set(label_set)
        for v, lab in labels.items():
            if not 0 <= v < n:
                raise GraphError(f"label attached to unknown node {v}")
            if lab not in allowed:
                raise GraphError(f"label {lab!r} of node {ids[v]!r} not in label set")

        schema = tuple((str(name), str(kind)) for name, kind in attribute_schema)
        for _, kind in schema:
            if kind not in ("numeric", "nominal"):
                raise GraphError(f"attribute kind must be numeric or nominal, got {kind!r}")
        if attributes is None:
            attributes = [{} for _ in range(n)]
        if len(attributes) != n:
            raise GraphError("one attribute mapping per node is required")
        names = [name for name, _ in schema]
        attrs = tuple(
            MappingProxyType({name: a.get(name, MISSING) for name in names})
            for a in attributes
        )

        self._ids = ids
        self._index = MappingProxyType(index)
        self._out = tuple(MappingProxyType(d) for d in out)
        self._in = tuple(MappingProxyType(d) for d in inc)
        self._und = tuple(
            frozenset(out[v]).union(inc[v]) for v in range(n)
        )
        self._labels = MappingProxyType(labels)
        self._label_set = label_set
        self._attributes = attrs
        self._attribute_schema = schema

    # -- basic accessors -------------------------------------------------
    @property
    def n(self) -> int:
        return len(self._ids)

    def __len__(self) -> int:
        return len(self._ids)

    @property
    def ids(self) -> tuple[str, ...]:
        return self._ids

    @property
    def nodes(self) -> range:
        return range(len(self._ids))

    def index(self, ext_id: str) -> int:
        try:
            return self._index[ext_id]
        except KeyError:
            raise GraphError(f"unknown node id {ext_id!r}") from None

    @property
    def labels(self) -> Mapping[int, str]:
        return self._labels

    @property
    def label_set(self) -> tuple[str, ...]:
        return self._label_set

    @property
    def attributes(self) -> tuple[Mapping[str, object], ...]:
        return self._attributes

    @property
    def attribute_schema(self) -> tuple[tuple[str, str], ...]:
        return self._attribute_schema

    def label(self, v: int) -> str | None:
        return self._labels.get(v)

    def out_edges(self, v: int) -> Mapping[int, float]:
        self._check(v)
        return self._out[v]

    def in_edges(self, v: int) -> Mapping[int, float]:
        self._check(v)
        return self._in[v]

    def edges(self):
        """Iterate ``(i, j, w)`` in ascending ``(i, j)`` order."""
        for i in range(self.n):
            for j in sorted(self._out[i]):
                yield i, j, self._out[i][j]

    @property
    def n_edges(self) -> int:
        return sum(len(d) for d in self._out)

    def has_edge(self, i: int, j: int) -> bool:
        return j in self._out[i]

    def weight(self, i: int, j: int) -> float:
        """Weight of the directed edge ``i -> j``; missing edges raise."""
        try:
            return self._out[i][j]
        except KeyError:
            raise GraphError(f"no edge ({i}, {j})") from None

    def _check(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < len(self._ids)):
            raise GraphError(f"unknown node {v!r}")

    # -- neighbourhoods --------------------------------------------------
    def neighbors(self, v: int, direction: Direction | str = Direction.UNDIRECTED) -> frozenset[int]:
        self._check(v)
        if Direction.parse(direction) is Direction.DIRECTED:
            return frozenset(self._out[v])
        return self._und[v]

    def labeled_neighbors(self, v: int, direction: Direction | str = Direction.UNDIRECTED) -> frozenset[int]:
        labels = self._labels
        return frozenset(u for u in self.neighbors(v, direction) if u in labels)

    def strength(self, v: int, u: int, direction: Direction | str = Direction.UNDIRECTED) -> float:
        """Connection strength from ``v`` to neighbour ``u``.

        Directed mode uses the out-edge only.  The undirected view prefers the
        out-edge weight and falls back to the in-edge weight.
        """
        if u in self._out[v]:
            return self._out[v][u]
        if Direction.parse(direction) is Direction.UNDIRECTED and v in self._out[u]:
            return self._out[u][v]
        raise GraphError(f"{u} is not a neighbour of {v}")

    def adjacency(self, direction: Direction | str = Direction.UNDIRECTED) -> list[list[int]]:
        """Sorted neighbour lists, one per node."""
        if Direction.parse(direction) is Direction.DIRECTED:
            return [sorted(d) for d in self._out]
        return [sorted(s) for s in self._und]

    def known_unknown(self) -> tuple[frozenset[int], frozenset[int]]:
        known = frozenset(self._labels)
        return known, frozenset(v for v in self.nodes if v not in known)

    # -- derived graphs --------------------------------------------------
    def with_labels(self, labels: Mapping[int, str]) -> "LabeledGraph":
        """Copy sharing structure and attributes but with new labels."""
        return LabeledGraph(
            self._ids,
            self.edges(),
            labels=labels,
            label_set=self._label_set,
            attributes=self._attributes,
            attribute_schema=self._attribute_schema,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self._ids == other._ids
            and list(self.edges()) == list(other.edges())
            and dict(self._labels) == dict(other._labels)
            and self._label_set == other._label_set
            and self._attribute_schema == other._attribute_schema
            and [dict(a) for a in self._attributes] == [dict(a) for a in other._attributes]
        )

    __hash__ = None  # type: ignore[assignment]

    def __reduce__(self):
        return (
            _rebuild,
            (self._ids, list(self.edges()), dict(self._labels), self._label_set,
             [dict(a) for a in self._attributes], self._attribute_schema),
        )

    def __repr__(self) -> str:
        return (
            f"LabeledGraph(n={self.n}, edges={self.n_edges}, "
            f"labeled={len(self._labels)}, label_set={self._label_set})"
        )


def _rebuild(ids, edges, labels, label_set, attributes, schema):
    return LabeledGraph(ids, edges, labels=labels, label_set=label_set,
                        attributes=attributes, attribute_schema=schema)


def neighbors(g: LabeledGraph, v: int, direction: Direction | str = Direction.UNDIRECTED) -> frozenset[int]:
    return g.neighbors(v, direction)


def labeled_neighbors(g: LabeledGraph, v: int, direction: Direction | str = Direction.UNDIRECTED) -> frozenset[int]:
    return g.labeled_neighbors(v, direction)


def known_unknown_partition(g: LabeledGraph) -> tuple[frozenset[int], frozenset[int]]:
    """Split nodes into those with a known label and the rest."""
    return g.known_unknown()


def from_edge_list(
    edges: Iterable[tuple[str, str, float]],
    *,
    extra_nodes: Iterable[str] = (),
    labels: Mapping[str, str] | None = None,
    label_set: Iterable[str] | None = None,
    attributes: Mapping[str, Mapping[str, object]] | None = None,
    attribute_schema: Sequence[tuple[str, str]] = (),
) -> LabeledGraph:
    """Build a graph keyed by external ids; node ids follow :func:`id_sort_key` order."""
    edges = list(edges)
    names = {str(a) for a, _, _ in edges} | {str(b) for _, b, _ in edges}
    names.update(str(x) for x in extra_nodes)
    ids = sorted(names, key=id_sort_key)
    index = {ext: i for i, ext in enumerate(ids)}
    attributes = attributes or {}
    return LabeledGraph(
        ids,
        [(index[str(a)], index[str(b)], w) for a, b, w in edges],
        labels={index[k]: v for k, v in (labels or {}).items() if k in index},
        label_set=label_set,
        attributes=[attributes.get(ext, {}) for ext in ids],
        attribute_schema=attribute_schema,
    )
