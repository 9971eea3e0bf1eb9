"""Building graphs from attendance records and flat files.

File formats
------------
attendance CSV   ``person,talk``
profile CSV      ``person,age,gender,country,phone_provider`` (empty = missing)
targets CSV      ``person,tags`` with ``|``-separated tags
edge list        ``src<TAB>dst<TAB>weight``
label sidecar    ``node<TAB>label``

Lines starting with ``#`` are comments.  Every reader accepts a path or
``"-"`` for standard input.
"""

from __future__ import annotations

import csv
import io
import sys
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Iterable, Mapping

from .graph import GraphError, LabeledGraph, from_edge_list, id_sort_key

PROFILE_FIELDS = ("age", "gender", "country", "phone_provider")


class ParseError(ValueError):
    """Malformed input file."""


@dataclass(frozen=True, order=True)
class AttendanceRecord:
    participant: str
    event: str


@dataclass
class IngestReport:
    persons_raw: int = 0
    persons_kept: int = 0
    events: int = 0
    presences_raw: int = 0
    presences_kept: int = 0
    directed_edges: int = 0
    unresolved_ids: int = 0
    extra: dict = field(default_factory=dict)

    def lines(self) -> list[str]:
        out = [
            f"persons_raw = {self.persons_raw}",
            f"persons_kept = {self.persons_kept}",
            f"events = {self.events}",
            f"presences_raw = {self.presences_raw}",
            f"presences_kept = {self.presences_kept}",
            f"directed_edges = {self.directed_edges}",
            f"unresolved_ids = {self.unresolved_ids}",
        ]
        out.extend(f"{k} = {v}" for k, v in sorted(self.extra.items()))
        return out


# -- raw text helpers ---------------------------------------------------------

def _open_text(source):
    if source == "-" or source is None:
        return io.StringIO(sys.stdin.read())
    if hasattr(source, "read"):
        return source
    return open(source, encoding="utf-8", newline="")


def _csv_rows(source, required: tuple[str, ...]):
    with _open_text(source) as fh:
        lines = [line for line in fh if line.strip() and not line.lstrip().startswith("#")]
    reader = csv.DictReader(lines)
    header = reader.fieldnames or []
    missing = [c for c in required if c not in header]
    if missing:
        raise ParseError(f"{source}: missing column(s) {', '.join(missing)}")
    return header, list(reader)


def read_attendance(source) -> list[AttendanceRecord]:
    _, rows = _csv_rows(source, ("person", "talk"))
    return [AttendanceRecord(r["person"].strip(), r["talk"].strip()) for r in rows]


def _parse_number(text: str):
    try:
        return float(text)
    except ValueError:
        return None


def read_profiles(source) -> tuple[dict[str, dict], tuple[tuple[str, str], ...]]:
    """Profiles keyed by person, plus the attribute schema.

    A column is numeric when every non-empty value parses as a number.
    """
    header, rows = _csv_rows(source, ("person",))
    names = [h for h in header if h != "person"]
    kinds = {}
    for name in names:
        present = [r[name].strip() for r in rows if (r.get(name) or "").strip()]
        numeric = bool(present) and all(_parse_number(x) is not None for x in present)
        kinds[name] = "numeric" if numeric else "nominal"
    profiles = {}
    for r in rows:
        attrs = {}
        for name in names:
            raw = (r.get(name) or "").strip()
            if not raw:
                attrs[name] = None
            elif kinds[name] == "numeric":
                attrs[name] = float(raw)
            else:
                attrs[name] = raw
        profiles[r["person"].strip()] = attrs
    return profiles, tuple((name, kinds[name]) for name in names)


def read_targets(source) -> dict[str, frozenset[str]]:
    _, rows = _csv_rows(source, ("person", "tags"))
    out = {}
    for r in rows:
        tags = frozenset(t.strip() for t in (r["tags"] or "").split("|") if t.strip())
        out[r["person"].strip()] = tags
    return out


# -- pipeline steps -----------------------------------------------------------

def dedupe(records: Iterable[AttendanceRecord]) -> list[AttendanceRecord]:
    return sorted(set(records))


def clean_participants(records, profiles=None, targets=None):
    """Drop every record of a participant without interest tags.

    Returns ``(kept_records, report)``; counts are over distinct
    (participant, event) pairs.
    """
    targets = targets or {}
    records = dedupe(records)
    kept = [r for r in records if targets.get(r.participant)]
    report = IngestReport(
        persons_raw=len({r.participant for r in records}),
        persons_kept=len({r.participant for r in kept}),
        events=len({r.event for r in kept}),
        presences_raw=len(records),
        presences_kept=len(kept),
    )
    report.extra["events_raw"] = len({r.event for r in records})
    return kept, report


def project_coattendance(records: Iterable[AttendanceRecord], extra_nodes: Iterable[str] = ()) -> LabeledGraph:
    """Directed co-attendance network.

    ``w_ij = |T_i & T_j| / |T_i|`` where ``T_i`` is the set of events attended by
    ``i``; no edge when the two never met.
    """
    records = dedupe(records)
    attended: dict[str, set[str]] = defaultdict(set)
    audience: dict[str, set[str]] = defaultdict(set)
    for r in records:
        attended[r.participant].add(r.event)
        audience[r.event].add(r.participant)
    shared: Counter = Counter()
    for people in audience.values():
        for a, b in combinations(sorted(people), 2):
            shared[a, b] += 1
    edges = []
    for (a, b), common in shared.items():
        edges.append((a, b, common / len(attended[a])))
        edges.append((b, a, common / len(attended[b])))
    return from_edge_list(edges, extra_nodes=list(attended) + list(extra_nodes))


def attach_labels_and_attributes(
    g: LabeledGraph,
    profiles: Mapping[str, Mapping[str, object]] | None,
    target_tag: str,
    targets: Mapping[str, Iterable[str]],
    attribute_schema=None,
) -> tuple[LabeledGraph, IngestReport]:
    """Binary labels ``'1'``/``'0'`` for having ``target_tag`` plus profile attributes."""
    profiles = profiles or {}
    if attribute_schema is None:
        attribute_schema = tuple((name, "nominal") for name in PROFILE_FIELDS)
    names = [name for name, _ in attribute_schema]
    known = set(g.ids)
    unresolved = len(set(profiles) - known) + len(set(targets) - known)
    labels = {}
    attributes = []
    for v, ext in enumerate(g.ids):
        tags = targets.get(ext)
        if tags is not None:
            labels[v] = "1" if target_tag in tags else "0"
        prof = profiles.get(ext, {})
        attributes.append({name: prof.get(name) for name in names})
    out = LabeledGraph(
        g.ids, g.edges(), labels=labels, label_set=("0", "1"),
        attributes=attributes, attribute_schema=attribute_schema,
    )
    report = IngestReport(unresolved_ids=unresolved)
    return out, report


def ingest(attendance, profiles, targets, tag, *, keep_isolated=False):
    """Clean, project and label; returns ``(graph, report)``."""
    records = read_attendance(attendance)
    prof, schema = read_profiles(profiles)
    tgt = read_targets(targets)
    kept, report = clean_participants(records, prof, tgt)
    extra = []
    if keep_isolated:
        extra = [p for p in prof if tgt.get(p)]
    g = project_coattendance(kept, extra_nodes=extra)
    g, attach_report = attach_labels_and_attributes(g, prof, tag, tgt, schema)
    report.directed_edges = g.n_edges
    report.unresolved_ids = attach_report.unresolved_ids
    report.extra["nodes"] = g.n
    report.extra["positives"] = sum(1 for lab in g.labels.values() if lab == "1")
    return g, report


# -- edge list and sidecars ---------------------------------------------------

def _format_number(x: float) -> str:
    return repr(float(x))


def load_edge_list(source, labels=None, attributes=None) -> LabeledGraph:
    """Read a whitespace-separated ``src dst weight`` list plus optional sidecars."""
    edges = []
    with _open_text(source) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) != 3:
                raise ParseError(f"{source}:{lineno}: expected 'src dst weight', got {text!r}")
            try:
                w = float(parts[2])
            except ValueError:
                raise ParseError(f"{source}:{lineno}: bad weight {parts[2]!r}") from None
            if w < 0:
                raise GraphError(f"{source}:{lineno}: negative weight {w}")
            if parts[0] == parts[1]:
                raise GraphError(f"{source}:{lineno}: self-loop on {parts[0]!r}")
            edges.append((parts[0], parts[1], w))
    label_map = read_labels(labels) if labels is not None else {}
    prof, schema = read_profiles(attributes) if attributes is not None else ({}, ())
    label_set = sorted(set(label_map.values()), key=id_sort_key)
    if set(label_map.values()) <= {"0", "1"}:
        label_set = ["0", "1"] if label_map else []
    return from_edge_list(
        edges,
        extra_nodes=list(label_map) + list(prof),
        labels=label_map,
        label_set=label_set,
        attributes=prof,
        attribute_schema=schema,
    )


def read_labels(source) -> dict[str, str]:
    out = {}
    with _open_text(source) as fh:
        for lineno, line in enumerate(fh, 1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            parts = text.split()
            if len(parts) == 1:
                continue  # node listed without a label
            if len(parts) != 2:
                raise ParseError(f"{source}:{lineno}: expected 'node label', got {text!r}")
            out[parts[0]] = parts[1]
    return out


def write_edge_list(g: LabeledGraph, path) -> None:
    lines = [f"{g.ids[i]}\t{g.ids[j]}\t{_format_number(w)}\n" for i, j, w in g.edges()]
    _write_text(path, "".join(lines))


def write_labels(g: LabeledGraph, path) -> None:
    """One line per node; unlabeled nodes are listed without a label."""
    lines = []
    for v, ext in enumerate(g.ids):
        lab = g.labels.get(v)
        lines.append(f"{ext}\t{lab}\n" if lab is not None else f"{ext}\n")
    _write_text(path, "".join(lines))


def write_attributes(g: LabeledGraph, path) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    names = [name for name, _ in g.attribute_schema]
    writer.writerow(["person", *names])
    for v, ext in enumerate(g.ids):
        row = [ext]
        for name, kind in g.attribute_schema:
            val = g.attributes[v][name]
            if val is None:
                row.append("")
            elif kind == "numeric":
                row.append(_format_number(val))
            else:
                row.append(val)
        writer.writerow(row)
    _write_text(path, buf.getvalue())


def write_id_map(g: LabeledGraph, path) -> None:
    _write_text(path, "".join(f"{v}\t{ext}\n" for v, ext in enumerate(g.ids)))


def _write_text(path, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc


GRAPH_FILES = {
    "edges": "edges.tsv",
    "labels": "labels.tsv",
    "attributes": "attributes.csv",
    "ids": "ids.tsv",
}


def save_graph_dir(g: LabeledGraph, out_dir) -> dict[str, Path]:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {k: out / name for k, name in GRAPH_FILES.items()}
    write_edge_list(g, paths["edges"])
    write_labels(g, paths["labels"])
    write_attributes(g, paths["attributes"])
    write_id_map(g, paths["ids"])
    return paths


def load_graph_dir(path) -> LabeledGraph:
    base = Path(path)
    edges = base / GRAPH_FILES["edges"]
    if not edges.exists():
        raise FileNotFoundError(f"{edges} not found")
    labels = base / GRAPH_FILES["labels"]
    attrs = base / GRAPH_FILES["attributes"]
    return load_edge_list(
        edges,
        labels=labels if labels.exists() else None,
        attributes=attrs if attrs.exists() else None,
    )
