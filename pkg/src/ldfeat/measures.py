"""Label-independent structural measures.

Every measure maps ``(graph, direction)`` to a list of floats indexed by node
id.  Shortest paths count hops; edge weights are ignored.
"""

from __future__ import annotations

from collections import deque

from .graph import Direction, LabeledGraph


def betweenness(g: LabeledGraph, direction: Direction | str = Direction.UNDIRECTED) -> list[float]:
    """Unnormalised betweenness centrality (Brandes' dependency accumulation).

    Directed mode sums over ordered source/target pairs along out-edges.  The
    undirected view sums over unordered pairs, i.e. half the ordered total.
    """
    direction = Direction.parse(direction)
    adj = g.adjacency(direction)
    n = len(adj)
    cb = [0.0] * n
    for s in range(n):
        stack = []
        preds: list[list[int]] = [[] for _ in range(n)]
        sigma = [0] * n
        dist = [-1] * n
        sigma[s] = 1
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            stack.append(v)
            dv = dist[v] + 1
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dv
                    queue.append(w)
                if dist[w] == dv:
                    sigma[w] += sigma[v]
                    preds[w].append(v)
        delta = [0.0] * n
        while stack:
            w = stack.pop()
            coeff = (1.0 + delta[w]) / sigma[w]
            for v in preds[w]:
                delta[v] += sigma[v] * coeff
            if w != s:
                cb[w] += delta[w]
    if direction is Direction.UNDIRECTED:
        cb = [c / 2.0 for c in cb]
    return cb


def degree_centrality(g: LabeledGraph, direction: Direction | str = Direction.UNDIRECTED) -> list[float]:
    """Neighbour count over ``n - 1``; 0 for every node when ``n < 2``."""
    n = g.n
    if n < 2:
        return [0.0] * n
    return [len(g.neighbors(v, direction)) / (n - 1) for v in g.nodes]


def clustering_coefficient(g: LabeledGraph, direction: Direction | str = Direction.UNDIRECTED) -> list[float]:
    """Local clustering coefficient.

    In directed mode the neighbourhood is the out-neighbour set and each
    directed edge among neighbours counts once against ``k(k-1)``.  The
    undirected view counts each adjacent neighbour pair once against
    ``k(k-1)/2``.  Nodes with fewer than two neighbours get 0.
    """
    direction = Direction.parse(direction)
    return [_local_cc(g, g.neighbors(v, direction), direction) for v in g.nodes]


def _local_cc(g: LabeledGraph, nbrs, direction: Direction) -> float:
    k = len(nbrs)
    if k < 2:
        return 0.0
    if direction is Direction.DIRECTED:
        links = sum(1 for a in nbrs for b in g.out_edges(a) if b in nbrs)
        return links / (k * (k - 1))
    und = g.neighbors
    links = sum(1 for a in nbrs for b in und(a, direction) if b in nbrs)
    # each unordered pair was seen from both ends
    return (links / 2) / (k * (k - 1) / 2)


MEASURES = {
    "betweenness": betweenness,
    "degree": degree_centrality,
    "clustering": clustering_coefficient,
}


def measure_name(measure) -> str:
    for name, fn in MEASURES.items():
        if fn is measure:
            return name
    return getattr(measure, "__name__", repr(measure))
