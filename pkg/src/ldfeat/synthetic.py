"""Seeded homophilous test networks."""

from __future__ import annotations

import numpy as np

from .graph import GraphError, LabeledGraph

GENDERS = ("f", "m")
COUNTRIES = ("CA", "DE", "PL", "UK", "US")
PROVIDERS = ("att", "sprint", "tmobile", "verizon")
SCHEMA = (("age", "numeric"), ("gender", "nominal"), ("country", "nominal"), ("phone_provider", "nominal"))


def generate_homophily_graph(
    n: int = 200,
    class_balance: float = 0.5,
    p_in: float = 0.15,
    p_out: float = 0.03,
    weight_range: tuple[float, float] = (0.1, 1.0),
    seed: int = 7,
) -> LabeledGraph:
    """Random directed graph where same-class pairs link more often.

    Each node gets label ``'1'`` with probability ``class_balance``.  Every
    ordered pair gets an edge with probability ``p_in`` (same class) or
    ``p_out`` (different class), weighted uniformly in ``weight_range``.
    Profile attributes are drawn independently of the labels.
    """
    if not (0.0 <= p_out <= p_in <= 1.0):
        raise GraphError(f"need 0 <= p_out <= p_in <= 1, got p_in={p_in}, p_out={p_out}")
    if not 0.0 <= class_balance <= 1.0:
        raise GraphError("class_balance must be in [0, 1]")
    if n < 0:
        raise GraphError("n must be non-negative")
    lo, hi = weight_range
    if not 0.0 <= lo <= hi:
        raise GraphError("weight_range must satisfy 0 <= low <= high")
    rng = np.random.default_rng(seed)
    y = (rng.random(n) < class_balance).astype(int)
    same = y[:, None] == y[None, :]
    prob = np.where(same, p_in, p_out)
    hit = rng.random((n, n)) < prob
    np.fill_diagonal(hit, False)
    weights = rng.uniform(lo, hi, size=(n, n))
    src, dst = np.nonzero(hit)
    edges = [(int(i), int(j), float(weights[i, j])) for i, j in zip(src, dst)]

    ages = rng.integers(18, 66, size=n)
    genders = rng.integers(0, len(GENDERS), size=n)
    countries = rng.integers(0, len(COUNTRIES), size=n)
    providers = rng.integers(0, len(PROVIDERS), size=n)
    attributes = [
        {
            "age": float(ages[i]),
            "gender": GENDERS[genders[i]],
            "country": COUNTRIES[countries[i]],
            "phone_provider": PROVIDERS[providers[i]],
        }
        for i in range(n)
    ]
    width = max(3, len(str(max(n - 1, 0))))
    ids = [f"n{i:0{width}d}" for i in range(n)]
    return LabeledGraph(
        ids,
        edges,
        labels={i: str(y[i]) for i in range(n)},
        label_set=("0", "1"),
        attributes=attributes,
        attribute_schema=SCHEMA,
    )


def shuffle_labels(g: LabeledGraph, seed: int) -> LabeledGraph:
    """Same graph with labels assigned uniformly at random (50/50)."""
    rng = np.random.default_rng(seed)
    draws = rng.integers(0, 2, size=g.n)
    return g.with_labels({v: str(draws[v]) for v in g.nodes})


def parse_params(text: str) -> dict:
    """Parse ``"n=200,p_in=0.15,p_out=0.03"`` into generator keyword arguments."""
    out: dict = {}
    if not text:
        return out
    for part in text.split(","):
        if not part.strip():
            continue
        if "=" not in part:
            raise ValueError(f"expected key=value, got {part!r}")
        key, value = (s.strip() for s in part.split("=", 1))
        key = {"balance": "class_balance"}.get(key, key)
        if key in ("n", "seed"):
            out[key] = int(value)
        elif key in ("class_balance", "p_in", "p_out"):
            out[key] = float(value)
        elif key in ("w_min", "w_max"):
            out[key] = float(value)
        else:
            raise ValueError(f"unknown synthetic parameter {key!r}")
    if "w_min" in out or "w_max" in out:
        out["weight_range"] = (out.pop("w_min", 0.1), out.pop("w_max", 1.0))
    return out
