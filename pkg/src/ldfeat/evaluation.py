"""Stratified cross-validation of boosted stumps over the feature sets."""

from __future__ import annotations

import csv
import io
import statistics
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .boosting import train_adaboost
from .config import RunConfig
from .dataset import BINARY, build_features, choose_hidden, mask_labels
from .graph import LabeledGraph, id_sort_key

ALGORITHM = "AdaBoostM1"


@dataclass(frozen=True)
class FoldResult:
    accuracy: float
    precision: float
    f_measure: float
    n_test: int


@dataclass
class EvalReport:
    feature_set: int
    protocol: str
    per_fold: list[FoldResult]
    config: RunConfig
    seed: int
    n_rows: int = 0
    degenerate: bool = False
    notes: list[str] = field(default_factory=list)

    def _mean(self, attr: str) -> float:
        if not self.per_fold:
            return 0.0
        return sum(getattr(f, attr) for f in self.per_fold) / len(self.per_fold)

    @property
    def accuracy(self) -> float:
        return self._mean("accuracy")

    @property
    def precision(self) -> float:
        return self._mean("precision")

    @property
    def f_measure(self) -> float:
        return self._mean("f_measure")

    @property
    def accuracy_std(self) -> float:
        accs = [f.accuracy for f in self.per_fold]
        return statistics.pstdev(accs) if accs else 0.0


def binary_metrics(y_true, y_pred, average: str = "binary") -> tuple[float, float, float]:
    """Accuracy, precision and F-measure for positive class 1.

    Undefined precision or F-measure count as 0.  ``average="macro"``
    averages precision and F-measure over both classes.
    """
    y_true = np.asarray(y_true, dtype=int)
    y_pred = np.asarray(y_pred, dtype=int)
    if len(y_true) == 0:
        return 0.0, 0.0, 0.0
    acc = float((y_true == y_pred).mean())

    def pf(pos: int) -> tuple[float, float]:
        tp = int(((y_pred == pos) & (y_true == pos)).sum())
        fp = int(((y_pred == pos) & (y_true != pos)).sum())
        fn = int(((y_pred != pos) & (y_true == pos)).sum())
        prec = tp / (tp + fp) if tp + fp else 0.0
        rec = tp / (tp + fn) if tp + fn else 0.0
        f = 2 * prec * rec / (prec + rec) if prec + rec else 0.0
        return prec, f

    if average == "macro":
        p1, f1 = pf(1)
        p0, f0 = pf(0)
        return acc, (p0 + p1) / 2, (f0 + f1) / 2
    p, f = pf(1)
    return acc, p, f


def stratified_folds(y, folds: int, rng: np.random.Generator) -> list[np.ndarray]:
    """Seeded shuffle, then deal each class round-robin across the folds.

    The fold counter carries over from one class to the next so fold sizes
    differ by at most one.
    """
    y = np.asarray(y)
    n = len(y)
    if folds < 2:
        raise ValueError("need at least 2 folds")
    if folds > n:
        raise ValueError(f"cannot make {folds} non-empty folds from {n} rows")
    perm = rng.permutation(n)
    assignment = np.empty(n, dtype=int)
    k = 0
    for cls in sorted(set(y.tolist())):
        for idx in perm[y[perm] == cls]:
            assignment[idx] = k % folds
            k += 1
    return [np.nonzero(assignment == f)[0] for f in range(folds)]


def _fit_score(X, y, kinds, train, test, config):
    ens = train_adaboost(X[train], y[train], kinds, config.iterations, config.weight_threshold)
    pred = ens.predict(X[test])
    acc, prec, f = binary_metrics(y[test], pred, config.average)
    return FoldResult(acc, prec, f, len(test))


def _matrix_arrays(m):
    X, cols = m.to_numpy()
    kinds = [c.kind for c in cols]
    return X, kinds


def _masked_fold(args):
    g, feature_set, config, targets, rows, test_rows, train_rows, y = args
    gm = mask_labels(g, [rows[i] for i in test_rows])
    m = build_features(gm, feature_set, config, targets=targets)
    X, kinds = _matrix_arrays(m)
    X = X[_row_positions(gm, rows)]
    return _fit_score(X, y, kinds, train_rows, test_rows, config)


def _transductive_fold(args):
    X, y, kinds, train, test, config = args
    return _fit_score(X, y, kinds, train, test, config)


def _row_positions(g: LabeledGraph, nodes) -> np.ndarray:
    """Matrix row index of each node (matrices are sorted by external id)."""
    order = sorted(g.nodes, key=lambda v: id_sort_key(g.ids[v]))
    pos = {v: k for k, v in enumerate(order)}
    return np.array([pos[v] for v in nodes], dtype=int)


def cross_validate(
    g: LabeledGraph,
    feature_set: int,
    config: RunConfig | None = None,
    **overrides,
) -> EvalReport:
    """Stratified k-fold evaluation of one feature set.

    Only nodes with a true label take part.  With ``label_fraction < 1`` a
    seeded share of labels is hidden from the label-dependent features up
    front.  Under ``fold-masked`` the test fold's labels are also hidden while
    its features are computed; ``transductive`` computes features once with
    every visible label.
    """
    config = (config or RunConfig()).replace(**overrides) if overrides else (config or RunConfig())
    seq = np.random.SeedSequence(config.seed)
    fold_rng, mask_rng = (np.random.default_rng(s) for s in seq.spawn(2))

    truth = {v: lab for v, lab in g.labels.items() if lab in BINARY}
    rows = sorted(truth, key=lambda v: id_sort_key(g.ids[v]))
    y = np.array([int(truth[v]) for v in rows], dtype=int)
    report = EvalReport(feature_set, config.masking, [], config, config.seed, n_rows=len(rows))
    if len(set(y.tolist())) < 2:
        report.degenerate = True
        report.notes.append("a class is absent from the data; metrics are degenerate")

    visible = g
    if config.label_fraction < 1.0:
        hidden = choose_hidden(g, config.label_fraction, mask_rng)
        visible = mask_labels(g, hidden)
        report.notes.append(f"labels hidden from features: {len(hidden)} of {len(g.labels)}")

    folds = stratified_folds(y, config.folds, fold_rng)
    all_idx = np.arange(len(rows))
    splits = [(np.setdiff1d(all_idx, test), test) for test in folds]

    masked = config.masking == "fold-masked" and feature_set in (3, 4)
    if masked:
        jobs = [(visible, feature_set, config, truth, rows, test, train, y) for train, test in splits]
        worker = _masked_fold
    else:
        m = build_features(visible, feature_set, config, targets=truth)
        X, kinds = _matrix_arrays(m)
        X = X[_row_positions(visible, rows)]
        jobs = [(X, y, kinds, train, test, config) for train, test in splits]
        worker = _transductive_fold

    if config.threads > 1:
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            report.per_fold = list(pool.map(worker, jobs))
    else:
        report.per_fold = [worker(job) for job in jobs]
    return report


# -- rendering ----------------------------------------------------------------

def _fmt(x: float) -> str:
    return f"{x:.4f}"


def header_lines(config: RunConfig, protocols) -> list[str]:
    lines = [f"# algorithm = {ALGORITHM} (decision stumps)"]
    lines.append(f"# protocol = {', '.join(protocols)}")
    lines.extend(f"# {line}" for line in config.lines() if not line.startswith("masking "))
    lines.append(
        "# neighbour strength = out-edge weight"
        + (", else in-edge weight" if config.direction == "undirected" else " only")
    )
    return lines


def format_table(reports: list[EvalReport]) -> str:
    if not reports:
        return ""
    protocols = sorted({r.protocol for r in reports})
    out = header_lines(reports[0].config, protocols)
    cols = ("algorithm", "set", "protocol", "accuracy", "acc_std", "precision", "f_measure")
    table = [cols]
    for r in reports:
        table.append((
            ALGORITHM, str(r.feature_set), r.protocol,
            _fmt(r.accuracy), _fmt(r.accuracy_std), _fmt(r.precision), _fmt(r.f_measure),
        ))
    widths = [max(len(row[i]) for row in table) for i in range(len(cols))]
    for row in table:
        out.append("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    for r in reports:
        for note in r.notes:
            out.append(f"# set {r.feature_set} ({r.protocol}): {note}")
    return "\n".join(out) + "\n"


def format_csv(reports: list[EvalReport]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["algorithm", "feature_set", "protocol", "fold", "accuracy", "precision", "f_measure", "n_test"])
    for r in reports:
        for k, f in enumerate(r.per_fold):
            writer.writerow([ALGORITHM, r.feature_set, r.protocol, k, repr(f.accuracy), repr(f.precision),
                             repr(f.f_measure), f.n_test])
        writer.writerow([ALGORITHM, r.feature_set, r.protocol, "mean", repr(r.accuracy), repr(r.precision),
                         repr(r.f_measure), r.n_rows])
    return buf.getvalue()
