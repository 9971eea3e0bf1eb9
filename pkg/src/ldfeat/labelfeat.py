"""Label-dependent node features.

``ncn`` and ``ncs`` measure how a node's labeled neighbourhood splits across
classes.  :func:`lift` turns any label-independent measure into a per-label
feature by evaluating it on the sub-network induced by that label.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .graph import Direction, GraphError, LabeledGraph
from .measures import _local_cc, betweenness, clustering_coefficient, degree_centrality, measure_name
from .subgraph import select, select_augmented

Measure = Callable[[LabeledGraph, Direction], Sequence[float]]


class LiftMode(str, enum.Enum):
    AUGMENTED = "augmented"
    STRICT = "strict"


class MissingPolicy(str, enum.Enum):
    MISSING = "missing"
    ZERO = "zero"


@dataclass(frozen=True)
class LabelFeatureVector:
    measure: str
    label: str
    values: tuple  # float or None, indexed by base node id
    mode: LiftMode


def _check(g: LabeledGraph, label: str, v: int) -> None:
    if label not in g.label_set:
        raise GraphError(f"label {label!r} not in label set {g.label_set}")
    if not (isinstance(v, int) and 0 <= v < g.n):
        raise GraphError(f"unknown node {v!r}")


def _on_missing(policy) -> float | None:
    return 0.0 if MissingPolicy(policy) is MissingPolicy.ZERO else None


def ncn(g, label, v, direction=Direction.UNDIRECTED, missing=MissingPolicy.MISSING):
    """Share of ``v``'s labeled neighbours that carry ``label``."""
    _check(g, label, v)
    labeled = g.labeled_neighbors(v, direction)
    if not labeled:
        return _on_missing(missing)
    hits = sum(1 for u in labeled if g.labels[u] == label)
    return hits / len(labeled)


def ncs(g, label, v, direction=Direction.UNDIRECTED, missing=MissingPolicy.MISSING):
    """Share of ``v``'s connection strength to labeled neighbours going to ``label``."""
    _check(g, label, v)
    labeled = sorted(g.labeled_neighbors(v, direction))
    total = 0.0
    hit = 0.0
    for u in labeled:
        w = g.strength(v, u, direction)
        total += w
        if g.labels[u] == label:
            hit += w
    if total <= 0.0:
        return _on_missing(missing)
    return hit / total


def lift(
    measure: Measure,
    g: LabeledGraph,
    label: str,
    direction=Direction.UNDIRECTED,
    mode=LiftMode.AUGMENTED,
) -> LabelFeatureVector:
    """Evaluate ``measure`` on the ``label`` sub-network for every base node.

    Augmented mode adds each node to the sub-network before evaluating it
    there, so nodes outside the class still get a value.  Strict mode gives
    ``None`` for nodes not carrying ``label``.

    The three built-in measures take closed-form shortcuts; any other
    callable goes through :func:`lift_generic`.
    """
    direction = Direction.parse(direction)
    mode = LiftMode(mode)
    if label not in g.label_set:
        raise GraphError(f"label {label!r} not in label set {g.label_set}")
    kernel = _KERNELS.get(measure)
    if kernel is None:
        return lift_generic(measure, g, label, direction, mode)
    sub = select(g, label)
    values: list[float | None]
    if mode is LiftMode.STRICT:
        inner = measure(sub.graph, direction)
        values = [None] * g.n
        for k, v in enumerate(sub.to_base):
            values[v] = float(inner[k])
    else:
        values = kernel(g, sub, direction)
    return LabelFeatureVector(measure_name(measure), label, tuple(values), mode)


def lift_generic(measure, g, label, direction=Direction.UNDIRECTED, mode=LiftMode.AUGMENTED):
    """Reference lifting: materialise each (augmented) sub-network and evaluate."""
    direction = Direction.parse(direction)
    mode = LiftMode(mode)
    sub = select(g, label)
    inner = measure(sub.graph, direction)
    values: list[float | None] = [None] * g.n
    for k, v in enumerate(sub.to_base):
        values[v] = float(inner[k])
    if mode is LiftMode.AUGMENTED:
        for v in g.nodes:
            if values[v] is not None:
                continue
            aug = select_augmented(g, label, v)
            values[v] = float(measure(aug.graph, direction)[aug.from_base[v]])
    return LabelFeatureVector(measure_name(measure), label, tuple(values), mode)


def cc_label(g, label, v, direction=Direction.UNDIRECTED, mode=LiftMode.AUGMENTED):
    """Clustering coefficient of ``v`` inside the ``label`` sub-network."""
    _check(g, label, v)
    return lift(clustering_coefficient, g, label, direction, mode).values[v]


# -- closed-form augmented kernels ------------------------------------------
#
# Adding a focal node f to G_l only adds edges incident to f, so its degree
# and clustering coefficient depend on N(f) restricted to V_l alone.  Its
# betweenness follows from all-pairs distances and path counts of G_l: the
# shortest s->f distance is 1 + min over in-neighbours u of d(s, u).

def _degree_kernel(g, sub, direction):
    members = sub.from_base
    size = len(members)
    out = []
    for v in g.nodes:
        others = size - 1 if v in members else size
        k = sum(1 for u in g.neighbors(v, direction) if u in members)
        out.append(k / others if others > 0 else 0.0)
    return out


def _clustering_kernel(g, sub, direction):
    members = sub.from_base
    return [
        _local_cc(g, frozenset(u for u in g.neighbors(v, direction) if u in members), direction)
        for v in g.nodes
    ]


def _paths_matrix(sub_graph: LabeledGraph, direction: Direction):
    """Hop distances (``inf`` if unreachable) and shortest-path counts."""
    adj = sub_graph.adjacency(direction)
    m = len(adj)
    dist = np.full((m, m), np.inf)
    sigma = np.zeros((m, m))
    for s in range(m):
        d = [-1] * m
        c = [0] * m
        d[s] = 0
        c[s] = 1
        queue = deque([s])
        while queue:
            v = queue.popleft()
            dv = d[v] + 1
            for w in adj[v]:
                if d[w] < 0:
                    d[w] = dv
                    queue.append(w)
                if d[w] == dv:
                    c[w] += c[v]
        reached = [t for t in range(m) if d[t] >= 0]
        dist[s, reached] = [d[t] for t in reached]
        sigma[s, reached] = [c[t] for t in reached]
    return dist, sigma


def _betweenness_kernel(g, sub, direction):
    inner = betweenness(sub.graph, direction)
    members = sub.from_base
    m = len(sub.to_base)
    values: list[float] = [0.0] * g.n
    for k, v in enumerate(sub.to_base):
        values[v] = inner[k]
    if m < 2:
        return values
    dist, sigma = _paths_matrix(sub.graph, direction)
    off_diag = ~np.eye(m, dtype=bool)
    for v in g.nodes:
        if v in members:
            continue
        if direction is Direction.DIRECTED:
            into = [members[u] for u in g.in_edges(v) if u in members]
            outof = [members[u] for u in g.out_edges(v) if u in members]
        else:
            into = outof = [members[u] for u in g.neighbors(v, direction) if u in members]
        if not into or not outof:
            continue
        # s -> f: last hop from an in-neighbour
        d_in_all = dist[:, into] + 1.0
        d_in = d_in_all.min(axis=1)
        s_in = np.where(d_in_all == d_in[:, None], sigma[:, into], 0.0).sum(axis=1)
        # f -> t: first hop to an out-neighbour
        d_out_all = dist[outof, :] + 1.0
        d_out = d_out_all.min(axis=0)
        s_out = np.where(d_out_all == d_out[None, :], sigma[outof, :], 0.0).sum(axis=0)
        through = d_in[:, None] + d_out[None, :]
        best = np.minimum(dist, through)
        via = (through == best) & np.isfinite(through) & off_diag
        if not via.any():
            continue
        through_count = np.outer(s_in, s_out)
        total = np.where(dist == best, sigma, 0.0) + through_count
        score = float((through_count[via] / total[via]).sum())
        if direction is Direction.UNDIRECTED:
            score /= 2.0
        values[v] = score
    return values


_KERNELS = {
    betweenness: _betweenness_kernel,
    degree_centrality: _degree_kernel,
    clustering_coefficient: _clustering_kernel,
}

