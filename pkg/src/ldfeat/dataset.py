"""Feature matrices and their ARFF / CSV serialisation.

Feature sets:

1. raw profile attributes
2. betweenness, degree, clustering coefficient
3. strength share and neighbour share per class, then betweenness, degree and
   clustering coefficient inside each class sub-network
4. all of the above
"""

from __future__ import annotations

import csv
import dataclasses
import io
import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .config import RunConfig
from .graph import Direction, GraphError, LabeledGraph, id_sort_key
from .labelfeat import lift, ncn, ncs
from .measures import betweenness, clustering_coefficient, degree_centrality

TARGET = "class"
BINARY = ("0", "1")

LI_COLUMNS = ("betweenness", "degree", "clustering")
LD_COLUMNS = (
    "ncs_0", "ncs_1", "ncn_0", "ncn_1",
    "betweenness_0", "betweenness_1",
    "degree_0", "degree_1",
    "clustering_0", "clustering_1",
)
_LI = {"betweenness": betweenness, "degree": degree_centrality, "clustering": clustering_coefficient}


@dataclass(frozen=True)
class Column:
    name: str
    kind: str  # "numeric" or "nominal"
    domain: tuple[str, ...] = ()


@dataclass
class FeatureMatrix:
    """Rows of feature values in ``ids`` order; the last column is the target.

    Values are floats for numeric columns, strings for nominal ones and
    ``None`` when missing.
    """

    columns: list[Column]
    ids: list[str]
    rows: list[list]
    target: str = TARGET
    provenance: dict = field(default_factory=dict)
    relation: str = "features"

    def __post_init__(self):
        names = [c.name for c in self.columns]
        if len(set(names)) != len(names):
            raise ValueError("duplicate column names")
        if len(self.ids) != len(self.rows):
            raise ValueError("one id per row is required")
        width = len(self.columns)
        for row in self.rows:
            if len(row) != width:
                raise ValueError("row arity does not match column count")
        for j, col in enumerate(self.columns):
            if col.kind == "nominal":
                allowed = set(col.domain)
                for row in self.rows:
                    if row[j] is not None and row[j] not in allowed:
                        raise ValueError(f"value {row[j]!r} outside domain of {col.name}")
            elif col.kind != "numeric":
                raise ValueError(f"unknown column kind {col.kind!r}")

    @property
    def feature_columns(self) -> list[Column]:
        return [c for c in self.columns if c.name != self.target]

    @property
    def names(self) -> list[str]:
        return [c.name for c in self.columns]

    def column(self, name: str) -> list:
        j = self.names.index(name)
        return [row[j] for row in self.rows]

    def targets(self) -> list:
        return self.column(self.target)

    def to_numpy(self) -> tuple[np.ndarray, list[Column]]:
        """Feature block as floats; nominal values become domain indices, missing is NaN."""
        cols = self.feature_columns
        idx = [self.names.index(c.name) for c in cols]
        X = np.full((len(self.rows), len(cols)), np.nan)
        for c_pos, (j, col) in enumerate(zip(idx, cols)):
            lookup = {v: float(k) for k, v in enumerate(col.domain)}
            for r, row in enumerate(self.rows):
                val = row[j]
                if val is None:
                    continue
                X[r, c_pos] = lookup[val] if col.kind == "nominal" else float(val)
        return X, cols

    def __eq__(self, other):
        if not isinstance(other, FeatureMatrix):
            return NotImplemented
        return (
            self.columns == other.columns
            and self.ids == other.ids
            and self.target == other.target
            and _rows_equal(self.rows, other.rows)
        )


def _rows_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    for ra, rb in zip(a, b):
        for x, y in zip(ra, rb):
            if isinstance(x, float) and isinstance(y, float) and math.isnan(x) and math.isnan(y):
                continue
            if x != y or type(x) is not type(y):
                return False
    return True


# -- feature computation ------------------------------------------------------

def feature_set_columns(g: LabeledGraph, feature_set: int) -> list[str]:
    if feature_set not in (1, 2, 3, 4):
        raise ValueError(f"feature set must be 1-4, got {feature_set!r}")
    raw = [name for name, _ in g.attribute_schema]
    return {
        1: raw,
        2: list(LI_COLUMNS),
        3: list(LD_COLUMNS),
        4: raw + list(LI_COLUMNS) + list(LD_COLUMNS),
    }[feature_set]


def li_feature_values(g: LabeledGraph, direction) -> dict[str, list[float]]:
    return {name: list(_LI[name](g, direction)) for name in LI_COLUMNS}


def ld_feature_values(g: LabeledGraph, config: RunConfig) -> dict[str, list]:
    """The ten label-dependent columns, computed from the labels visible in ``g``."""
    if set(g.label_set) != set(BINARY):
        raise GraphError("label-dependent features need the binary label set {'0', '1'}")
    d = config.direction
    out: dict[str, list] = {}
    for lab in BINARY:
        out[f"ncs_{lab}"] = [ncs(g, lab, v, d, config.missing) for v in g.nodes]
        out[f"ncn_{lab}"] = [ncn(g, lab, v, d, config.missing) for v in g.nodes]
    for name, fn in _LI.items():
        for lab in BINARY:
            out[f"{name}_{lab}"] = list(lift(fn, g, lab, d, config.lift_mode).values)
    return out


def build_features(
    g: LabeledGraph,
    feature_set: int,
    config: RunConfig | None = None,
    *,
    targets: Mapping[int, str] | None = None,
    li_cache: dict | None = None,
) -> FeatureMatrix:
    """Assemble one feature set for every node of ``g``.

    ``targets`` overrides the target column (by node id); by default it is the
    graph's own labels.  Label-dependent columns always use ``g.labels``, so
    callers mask labels on ``g`` and pass the true labels as ``targets``.
    """
    config = config or RunConfig()
    names = feature_set_columns(g, feature_set)
    if feature_set in (3, 4):
        if not g.labels:
            raise GraphError("feature sets 3 and 4 need a labeled graph")
    values: dict[str, list] = {}
    schema = dict(g.attribute_schema)
    columns: list[Column] = []
    if feature_set in (1, 4):
        for name, kind in g.attribute_schema:
            values[name] = [g.attributes[v][name] for v in g.nodes]
    if feature_set in (2, 4):
        if li_cache is not None and "li" in li_cache:
            values.update(li_cache["li"])
        else:
            li = li_feature_values(g, config.direction)
            if li_cache is not None:
                li_cache["li"] = li
            values.update(li)
    if feature_set in (3, 4):
        values.update(ld_feature_values(g, config))
    for name in names:
        if schema.get(name) == "nominal":
            domain = sorted({x for x in values[name] if x is not None}, key=id_sort_key)
            columns.append(Column(name, "nominal", tuple(domain)))
        else:
            columns.append(Column(name, "numeric"))
    columns.append(Column(TARGET, "nominal", BINARY))

    labels = g.labels if targets is None else targets
    order = sorted(g.nodes, key=lambda v: id_sort_key(g.ids[v]))
    rows = []
    for v in order:
        row = []
        for name in names:
            val = values[name][v]
            if isinstance(val, (int, float)) and not isinstance(val, bool):
                val = float(val)
            row.append(val)
        lab = labels.get(v)
        row.append(lab if lab in BINARY else None)
        rows.append(row)
    provenance = {"feature_set": feature_set, **dataclasses.asdict(config)}
    return FeatureMatrix(columns, [g.ids[v] for v in order], rows, TARGET, provenance)


# -- label masking ------------------------------------------------------------

def mask_labels(g: LabeledGraph, hide) -> LabeledGraph:
    """Copy of ``g`` with the labels of ``hide`` removed."""
    hide = set(hide)
    for v in hide:
        if not (isinstance(v, (int, np.integer)) and 0 <= v < g.n):
            raise GraphError(f"unknown node {v!r}")
    return g.with_labels({v: lab for v, lab in g.labels.items() if v not in hide})


def hidden_count(n_known: int, label_fraction: float) -> int:
    """Number of labels to hide so that ``label_fraction`` stay visible (floor on the hidden side)."""
    return int(math.floor(round((1.0 - label_fraction) * n_known, 9)))


def choose_hidden(g: LabeledGraph, label_fraction: float, rng: np.random.Generator) -> list[int]:
    known = sorted(g.labels)
    k = hidden_count(len(known), label_fraction)
    if k == 0:
        return []
    picks = rng.permutation(len(known))[:k]
    return sorted(known[i] for i in picks)


# -- ARFF ---------------------------------------------------------------------

_SPECIAL = set(" ,'\"%{}\t\\\n\r")


def _quote(token: str) -> str:
    if token == "" or token == "?" or any(ch in _SPECIAL for ch in token):
        return "'" + token.replace("\\", "\\\\").replace("'", "\\'") + "'"
    return token


def _format_value(val, col: Column) -> str:
    if val is None:
        return "?"
    if col.kind == "numeric":
        return repr(float(val))
    return _quote(str(val))


def arff_text(m: FeatureMatrix, relation: str | None = None) -> str:
    relation = m.relation if relation is None else relation
    out = io.StringIO()
    for key, val in m.provenance.items():
        out.write(f"% {key} = {val}\n")
    if m.provenance:
        out.write("%\n")
    out.write(f"@RELATION {_quote(relation)}\n\n")
    for col in m.columns:
        if col.kind == "numeric":
            out.write(f"@ATTRIBUTE {_quote(col.name)} NUMERIC\n")
        else:
            dom = ",".join(_quote(v) for v in col.domain)
            out.write(f"@ATTRIBUTE {_quote(col.name)} {{{dom}}}\n")
    out.write("\n@DATA\n")
    for row in m.rows:
        out.write(",".join(_format_value(v, c) for v, c in zip(row, m.columns)))
        out.write("\n")
    return out.getvalue()


def write_arff(m: FeatureMatrix, relation: str | None, path, ids_path=None) -> None:
    """Write ``m`` as ARFF; row ids go to the optional ``ids_path`` sidecar."""
    _write(path, arff_text(m, relation))
    if ids_path is not None:
        _write(ids_path, "".join(f"{i}\n" for i in m.ids))


def _write(path, text: str) -> None:
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


def _tokenize(text: str, sep: str = ",") -> list[tuple[str, bool]]:
    """Split ``text`` on ``sep`` honouring quotes; returns ``(token, was_quoted)``."""
    tokens = []
    i, n = 0, len(text)
    while i < n:
        while i < n and text[i] in " \t":
            i += 1
        if i >= n:
            break
        if text[i] in "'\"":
            q = text[i]
            i += 1
            buf = []
            while i < n and text[i] != q:
                if text[i] == "\\" and i + 1 < n:
                    i += 1
                buf.append(text[i])
                i += 1
            if i >= n:
                raise ValueError(f"unterminated quote in {text!r}")
            i += 1
            tokens.append(("".join(buf), True))
            while i < n and text[i] in " \t":
                i += 1
        else:
            j = i
            while j < n and text[j] != sep and not (sep == " " and text[j] in " \t"):
                j += 1
            tokens.append((text[i:j].strip(), False))
            i = j
        if i < n and text[i] == sep:
            i += 1
    return tokens


def _split_first(text: str) -> tuple[str, str]:
    """Split off one possibly quoted token; returns ``(token, remainder)``."""
    text = text.strip()
    if text[:1] in ("'", '"'):
        q = text[0]
        i = 1
        buf = []
        while i < len(text) and text[i] != q:
            if text[i] == "\\" and i + 1 < len(text):
                i += 1
            buf.append(text[i])
            i += 1
        return "".join(buf), text[i + 1:].strip()
    head = text.split(None, 1)
    return head[0], (head[1].strip() if len(head) > 1 else "")


def read_arff(path, ids_path=None) -> FeatureMatrix:
    """Minimal ARFF reader for the subset :func:`write_arff` produces."""
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    provenance: dict = {}
    columns: list[Column] = []
    rows: list[list] = []
    in_data = False
    relation = "features"
    for line in lines:
        text = line.strip()
        if not text:
            continue
        if text.startswith("%"):
            body = text[1:].strip()
            if not in_data and " = " in body:
                k, v = body.split(" = ", 1)
                provenance[k] = v
            continue
        if not in_data:
            head = text.split(None, 1)
            key = head[0].upper()
            rest = head[1] if len(head) > 1 else ""
            if key == "@RELATION":
                relation = _split_first(rest)[0]
            elif key == "@ATTRIBUTE":
                name, kind_text = _split_first(rest)
                if kind_text.startswith("{"):
                    inner = kind_text[1:kind_text.rindex("}")]
                    domain = tuple(tok for tok, _ in _tokenize(inner))
                    columns.append(Column(name, "nominal", domain))
                elif kind_text.upper() in ("NUMERIC", "REAL", "INTEGER"):
                    columns.append(Column(name, "numeric"))
                else:
                    raise ValueError(f"unsupported attribute type {kind_text!r}")
            elif key == "@DATA":
                in_data = True
            continue
        toks = _tokenize(text)
        if len(toks) != len(columns):
            raise ValueError(f"data row has {len(toks)} values, expected {len(columns)}")
        row = []
        for (tok, quoted), col in zip(toks, columns):
            if tok == "?" and not quoted:
                row.append(None)
            elif col.kind == "numeric":
                row.append(float(tok))
            else:
                row.append(tok)
        rows.append(row)
    if ids_path is not None:
        with open(ids_path, encoding="utf-8") as fh:
            ids = [line.rstrip("\n") for line in fh if line.rstrip("\n")]
    else:
        ids = [str(i) for i in range(len(rows))]
    if "feature_set" in provenance:
        try:
            provenance["feature_set"] = int(provenance["feature_set"])
        except ValueError:
            pass
    target = TARGET if any(c.name == TARGET for c in columns) else (columns[-1].name if columns else TARGET)
    return FeatureMatrix(columns, ids, rows, target, provenance, relation)


# -- CSV ----------------------------------------------------------------------

def csv_text(m: FeatureMatrix) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["id", *m.names])
    for ext, row in zip(m.ids, m.rows):
        out = [ext]
        for val, col in zip(row, m.columns):
            if val is None:
                out.append("")
            elif col.kind == "numeric":
                out.append(repr(float(val)))
            else:
                out.append(val)
        writer.writerow(out)
    return buf.getvalue()


def write_csv(m: FeatureMatrix, path) -> None:
    _write(path, csv_text(m))


def read_csv(path, columns: Sequence[Column] | None = None) -> FeatureMatrix:
    """Read a feature CSV.  Without ``columns`` the schema is inferred:
    the target column is nominal ``{0,1}``, other columns are numeric when
    every value parses as a number."""
    with open(path, encoding="utf-8", newline="") as fh:
        records = list(csv.reader(fh))
    header, body = records[0], records[1:]
    if header[0] != "id":
        raise ValueError("first CSV column must be 'id'")
    names = header[1:]
    if columns is None:
        columns = []
        for j, name in enumerate(names, 1):
            present = [r[j] for r in body if r[j] != ""]
            if name == TARGET:
                columns.append(Column(name, "nominal", BINARY))
                continue
            try:
                [float(x) for x in present]
                columns.append(Column(name, "numeric"))
            except ValueError:
                columns.append(Column(name, "nominal", tuple(sorted(set(present), key=id_sort_key))))
    columns = list(columns)
    rows = []
    for r in body:
        row = []
        for val, col in zip(r[1:], columns):
            if val == "":
                row.append(None)
            elif col.kind == "numeric":
                row.append(float(val))
            else:
                row.append(val)
        rows.append(row)
    return FeatureMatrix(columns, [r[0] for r in body], rows, TARGET)
