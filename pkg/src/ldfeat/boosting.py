"""AdaBoost.M1 over decision stumps.

Rows are float arrays: numeric features as-is, nominal features as domain
indices, missing values as NaN.  Classes are the integers 0 and 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

ALPHA_CAP = math.log(1e10)
LEFT, RIGHT = "left", "right"


@dataclass(frozen=True)
class DecisionStump:
    """One-split classifier.

    Numeric columns send ``x <= threshold`` left; nominal columns send
    ``x == value`` left.  ``column=None`` is the constant predictor
    ``left_class``.
    """

    column: int | None
    kind: str = "numeric"
    threshold: float = 0.0
    left_class: int = 0
    right_class: int = 0
    missing_branch: str = LEFT

    def branches(self, X: np.ndarray) -> np.ndarray:
        """Boolean mask of rows routed left."""
        X = np.atleast_2d(X)
        if self.column is None:
            return np.ones(len(X), dtype=bool)
        x = X[:, self.column]
        missing = np.isnan(x)
        with np.errstate(invalid="ignore"):
            left = x == self.threshold if self.kind == "nominal" else x <= self.threshold
        return np.where(missing, self.missing_branch == LEFT, left)

    def predict(self, X: np.ndarray) -> np.ndarray:
        return np.where(self.branches(X), self.left_class, self.right_class).astype(int)


@dataclass
class StumpEnsemble:
    stumps: list[tuple[DecisionStump, float]] = field(default_factory=list)
    iterations: int = 10
    n_features: int | None = None
    errors: list[float] = field(default_factory=list)

    def decision(self, X: np.ndarray, rounds: int | None = None) -> np.ndarray:
        """Vote margin ``sum(alpha | says 1) - sum(alpha | says 0)``."""
        X = np.atleast_2d(np.asarray(X, dtype=float))
        if self.n_features is not None and X.shape[1] != self.n_features:
            raise ValueError(f"expected {self.n_features} features, got {X.shape[1]}")
        margin = np.zeros(len(X))
        for stump, alpha in self.stumps[:rounds]:
            margin += np.where(stump.predict(X) == 1, alpha, -alpha)
        return margin

    def predict(self, X: np.ndarray, rounds: int | None = None) -> np.ndarray:
        # ties (including the empty ensemble) go to class 0
        return (self.decision(X, rounds) > 0).astype(int)


def _leaf(w0: float, w1: float) -> tuple[int, float]:
    return (1, w0) if w1 > w0 else (0, w1)


def _split_errors(L0, L1, R0, R1, M0, M1):
    """Errors with missing rows sent left or right; arrays over candidates."""
    err_left = np.minimum(L0 + M0, L1 + M1) + np.minimum(R0, R1)
    err_right = np.minimum(L0, L1) + np.minimum(R0 + M0, R1 + M1)
    return err_left, err_right


def _make(column, kind, threshold, L0, L1, R0, R1, M0, M1, missing_left):
    if missing_left:
        lc, _ = _leaf(L0 + M0, L1 + M1)
        rc, _ = _leaf(R0, R1)
    else:
        lc, _ = _leaf(L0, L1)
        rc, _ = _leaf(R0 + M0, R1 + M1)
    return DecisionStump(column, kind, float(threshold), lc, rc, LEFT if missing_left else RIGHT)


def best_stump(X: np.ndarray, y: np.ndarray, w: np.ndarray, kinds: Sequence[str]) -> tuple[DecisionStump, float]:
    """Stump with the lowest weighted error; returns ``(stump, error)``.

    Candidates are midpoints between consecutive distinct values of numeric
    columns and one-value-versus-rest splits of nominal columns.  Missing
    values go to whichever branch errs less.  Ties keep the earliest column
    and candidate.  Without any candidate the constant majority stump is used.
    """
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    w = np.asarray(w, dtype=float)
    best: tuple[DecisionStump, float] | None = None
    for j, kind in enumerate(kinds):
        x = X[:, j]
        missing = np.isnan(x)
        M0 = float(w[missing & (y == 0)].sum())
        M1 = float(w[missing & (y == 1)].sum())
        xv, yv, wv = x[~missing], y[~missing], w[~missing]
        if len(xv) == 0:
            continue
        T0 = float(wv[yv == 0].sum())
        T1 = float(wv[yv == 1].sum())
        if kind == "nominal":
            cands = np.unique(xv)
            L0 = np.array([wv[(xv == c) & (yv == 0)].sum() for c in cands])
            L1 = np.array([wv[(xv == c) & (yv == 1)].sum() for c in cands])
            thresholds = cands
        else:
            order = np.argsort(xv, kind="stable")
            xs, ys, ws = xv[order], yv[order], wv[order]
            cut = np.nonzero(xs[:-1] < xs[1:])[0]
            if len(cut) == 0:
                continue
            c0 = np.cumsum(np.where(ys == 0, ws, 0.0))
            c1 = np.cumsum(np.where(ys == 1, ws, 0.0))
            L0, L1 = c0[cut], c1[cut]
            thresholds = (xs[cut] + xs[cut + 1]) / 2.0
            bad = ~((xs[cut] <= thresholds) & (thresholds < xs[cut + 1]))
            thresholds = np.where(bad, xs[cut], thresholds)
        R0, R1 = T0 - L0, T1 - L1
        e_left, e_right = _split_errors(L0, L1, R0, R1, M0, M1)
        err = np.minimum(e_left, e_right)
        k = int(np.argmin(err))
        if best is None or err[k] < best[1] - 1e-12:
            stump = _make(j, kind, thresholds[k], L0[k], L1[k], R0[k], R1[k], M0, M1,
                          e_left[k] <= e_right[k])
            best = (stump, float(err[k]))
    if best is None:
        w0 = float(w[y == 0].sum())
        w1 = float(w[y == 1].sum())
        cls, err = _leaf(w0, w1)
        best = (DecisionStump(None, left_class=cls, right_class=cls), err)
    return best


def _weight_quantile(w: np.ndarray, percent: float) -> np.ndarray:
    """Indices of the heaviest rows holding ``percent`` of the total weight."""
    if percent >= 100.0:
        return np.arange(len(w))
    order = np.argsort(w, kind="stable")
    target = w.sum() * percent / 100.0
    total = 0.0
    k = len(w) - 1
    while k >= 0:
        total += w[order[k]]
        if total >= target:
            break
        k -= 1
    k = max(k, 0)
    # keep rows tied with the last one taken
    while k > 0 and w[order[k - 1]] == w[order[k]]:
        k -= 1
    return np.sort(order[k:])


def train_adaboost(
    X: np.ndarray,
    y: np.ndarray,
    kinds: Sequence[str],
    iterations: int = 10,
    weight_threshold: float = 100.0,
) -> StumpEnsemble:
    X = np.asarray(X, dtype=float)
    y = np.asarray(y, dtype=int)
    n = len(y)
    if n == 0:
        raise ValueError("cannot train on an empty set")
    if X.ndim != 2 or X.shape[0] != n:
        raise ValueError("X must be a 2-D array with one row per label")
    ens = StumpEnsemble(iterations=iterations, n_features=X.shape[1])
    if (y == y[0]).all():
        const = DecisionStump(None, left_class=int(y[0]), right_class=int(y[0]))
        ens.stumps.append((const, ALPHA_CAP))
        ens.errors.append(0.0)
        return ens
    w = np.full(n, 1.0 / n)
    for _ in range(iterations):
        rows = _weight_quantile(w, weight_threshold)
        stump, _ = best_stump(X[rows], y[rows], w[rows], kinds)
        wrong = stump.predict(X) != y
        eps = float(w[wrong].sum() / w.sum())
        if eps >= 0.5:
            break
        if eps <= 0.0:
            ens.stumps.append((stump, ALPHA_CAP))
            ens.errors.append(0.0)
            break
        ratio = (1.0 - eps) / eps
        ens.stumps.append((stump, math.log(ratio)))
        ens.errors.append(eps)
        w = np.where(wrong, w * ratio, w)
        w = w / w.sum()
    return ens


def predict(ens: StumpEnsemble, row) -> int:
    return int(ens.predict(np.asarray(row, dtype=float).reshape(1, -1))[0])
