"""Label-induced sub-networks."""

from __future__ import annotations

from dataclasses import dataclass

from .graph import GraphError, LabeledGraph


@dataclass(frozen=True)
class LabelSubgraph:
    """Materialised view of the nodes carrying ``label``.

    ``graph`` has its own dense ids; ``to_base[k]`` is the base-graph id of
    subgraph node ``k`` and ``from_base`` is the inverse map.
    """

    base: LabeledGraph
    label: str
    graph: LabeledGraph
    to_base: tuple[int, ...]
    from_base: dict[int, int]
    focus: int | None = None

    @property
    def nodes(self) -> frozenset[int]:
        """Members as base-graph ids."""
        return frozenset(self.to_base)

    def __contains__(self, v: int) -> bool:
        return v in self.from_base


def _check_label(g: LabeledGraph, label: str) -> None:
    if label not in g.label_set:
        raise GraphError(f"label {label!r} not in label set {g.label_set}")


def label_members(g: LabeledGraph, label: str) -> list[int]:
    _check_label(g, label)
    return [v for v in g.nodes if g.labels.get(v) == label]


def induced(g: LabeledGraph, members, label: str, focus: int | None = None) -> LabelSubgraph:
    """Induce ``g`` on ``members`` (base ids); weights are copied unchanged."""
    to_base = tuple(sorted(members))
    from_base = {v: k for k, v in enumerate(to_base)}
    edges = []
    for k, v in enumerate(to_base):
        for u, w in g.out_edges(v).items():
            if u in from_base:
                edges.append((k, from_base[u], w))
    sub = LabeledGraph(
        [g.ids[v] for v in to_base],
        edges,
        labels={k: g.labels[v] for k, v in enumerate(to_base) if v in g.labels},
        label_set=g.label_set,
        attributes=[g.attributes[v] for v in to_base],
        attribute_schema=g.attribute_schema,
    )
    return LabelSubgraph(g, label, sub, to_base, from_base, focus)


def select(g: LabeledGraph, label: str) -> LabelSubgraph:
    """Sub-network of every node labeled ``label`` with the edges among them."""
    return induced(g, label_members(g, label), label)


def select_augmented(g: LabeledGraph, label: str, focus: int) -> LabelSubgraph:
    """Like :func:`select` with ``focus`` added along with its induced edges."""
    members = label_members(g, label)
    if not (isinstance(focus, int) and 0 <= focus < g.n):
        raise GraphError(f"unknown node {focus!r}")
    if g.labels.get(focus) == label:
        return induced(g, members, label)
    return induced(g, members + [focus], label, focus)
