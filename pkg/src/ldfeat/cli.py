"""Command-line entry point: ``ldfeat ingest | features | export | evaluate``."""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .config import ConfigError, RunConfig
from .dataset import build_features, choose_hidden, mask_labels, write_arff, write_csv
from .evaluation import cross_validate, format_csv, format_table
from .graph import GraphError
from .ingest import ParseError, ingest, load_edge_list, load_graph_dir, save_graph_dir
from .synthetic import generate_homophily_graph, parse_params

log = logging.getLogger("ldfeat")
_D = RunConfig()

# CLI flag -> RunConfig field
_CONFIG_FLAGS = (
    "direction", "lift_mode", "masking", "missing", "label_fraction",
    "folds", "iterations", "weight_threshold", "average", "seed", "threads",
)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", metavar="FILE", help="key = value config file; flags override it (default: none)")
    p.add_argument("--direction", choices=["undirected", "directed"],
                   help=f"adjacency used by every measure (default: {_D.direction})")
    p.add_argument("--lift-mode", choices=["augmented", "strict"],
                   help=f"per-class sub-network evaluation mode (default: {_D.lift_mode})")
    p.add_argument("--missing", choices=["missing", "zero"],
                   help=f"value for undefined neighbour shares (default: {_D.missing})")
    p.add_argument("--label-fraction", type=float, metavar="F",
                   help=f"share of known labels visible to features (default: {_D.label_fraction})")
    p.add_argument("--seed", type=int, help=f"seed for all randomness (default: {_D.seed})")
    p.add_argument("--threads", type=int, metavar="N", help=f"worker cap (default: {_D.threads})")


def _add_graph_source(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("graph input (one of)")
    g.add_argument("--graph", metavar="DIR", help="directory written by 'ingest' (default: none)")
    g.add_argument("--edges", metavar="FILE", help="edge list TSV, '-' for stdin (default: none)")
    g.add_argument("--labels", metavar="FILE", help="label sidecar TSV (default: none)")
    g.add_argument("--attributes", metavar="FILE", help="attribute CSV (default: none)")
    g.add_argument("--synthetic", metavar="PARAMS", nargs="?", const="",
                   help="generate a graph, e.g. 'n=200,p_in=0.15,p_out=0.03' "
                        "(defaults: n=200,balance=0.5,p_in=0.15,p_out=0.03; seed from --seed)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ldfeat", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr (default: off)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="build a labeled co-attendance network")
    p.add_argument("--attendance", required=True, metavar="CSV", help="person,talk rows (required)")
    p.add_argument("--profiles", required=True, metavar="CSV", help="person,age,gender,... rows (required)")
    p.add_argument("--targets", required=True, metavar="CSV", help="person,tags rows (required)")
    p.add_argument("--tag", required=True, help="interest tag used as the positive class (required)")
    p.add_argument("--out", required=True, metavar="DIR", help="output directory (required)")
    p.add_argument("--keep-isolated", action="store_true",
                   help="keep tagged profiles with no co-attendance as isolated nodes (default: off)")
    p.set_defaults(func=cmd_ingest, subparser=p)

    for name in ("features", "export"):
        p = sub.add_parser(name, help="compute a feature set and write ARFF or CSV"
                           + (" (alias of features)" if name == "export" else ""))
        _add_graph_source(p)
        p.add_argument("--set", type=int, choices=[1, 2, 3, 4], default=4, dest="feature_set",
                       help="feature set (default: 4)")
        p.add_argument("--format", choices=["arff", "csv"], default="arff", help="output format (default: arff)")
        p.add_argument("--relation", default="features", help="ARFF relation name (default: features)")
        p.add_argument("--out", required=True, metavar="FILE", help="output path (required)")
        _add_common(p)
        p.set_defaults(func=cmd_features, subparser=p)

    p = sub.add_parser("evaluate", help="cross-validate boosted stumps on feature sets")
    _add_graph_source(p)
    p.add_argument("--sets", default="1,2,3,4", help="comma-separated feature sets (default: 1,2,3,4)")
    p.add_argument("--folds", type=int, help=f"cross-validation folds, at least 2 (default: {_D.folds})")
    p.add_argument("--iterations", type=int, help=f"boosting rounds (default: {_D.iterations})")
    p.add_argument("--weight-threshold", type=float, metavar="P",
                   help=f"percent of weight mass each stump trains on (default: {_D.weight_threshold:g})")
    p.add_argument("--masking", choices=["transductive", "fold-masked", "both"],
                   help=f"label visibility protocol (default: {_D.masking})")
    p.add_argument("--average", choices=["binary", "macro"],
                   help=f"precision/F-measure averaging (default: {_D.average})")
    p.add_argument("--out", metavar="DIR", help="write report.txt and report.csv here (default: none)")
    _add_common(p)
    p.set_defaults(func=cmd_evaluate, subparser=p)
    return parser


def _config(args, parser) -> RunConfig:
    base = RunConfig.load(args.config) if getattr(args, "config", None) else RunConfig()
    changes = {}
    for key in _CONFIG_FLAGS:
        val = getattr(args, key, None)
        if val is not None and not (key == "masking" and val == "both"):
            changes[key] = val
    try:
        return base.replace(**changes)
    except ConfigError as exc:
        parser.error(str(exc))


def _load_graph(args, parser, config: RunConfig):
    sources = [args.graph is not None, args.edges is not None, args.synthetic is not None]
    if sum(sources) != 1:
        parser.error("give exactly one of --graph, --edges or --synthetic")
    if args.graph is not None:
        return load_graph_dir(args.graph)
    if args.edges is not None:
        return load_edge_list(args.edges, labels=args.labels, attributes=args.attributes)
    try:
        params = parse_params(args.synthetic)
    except ValueError as exc:
        parser.error(str(exc))
    params.setdefault("seed", config.seed)
    return generate_homophily_graph(**params)


def cmd_ingest(args, parser) -> int:
    g, report = ingest(args.attendance, args.profiles, args.targets, args.tag, keep_isolated=args.keep_isolated)
    paths = save_graph_dir(g, args.out)
    text = "".join(line + "\n" for line in report.lines())
    (Path(args.out) / "report.txt").write_text(text, encoding="utf-8")
    sys.stdout.write(text)
    log.info("wrote %s", ", ".join(str(p) for p in paths.values()))
    return 0


def cmd_features(args, parser) -> int:
    config = _config(args, parser)
    g = _load_graph(args, parser, config)
    truth = dict(g.labels)
    if config.label_fraction < 1.0:
        rng = np.random.default_rng(config.seed)
        g = mask_labels(g, choose_hidden(g, config.label_fraction, rng))
    if args.feature_set in (3, 4) and not g.labels:
        raise GraphError(f"feature set {args.feature_set} needs node labels; supply --labels")
    m = build_features(g, args.feature_set, config, targets=truth)
    if args.format == "arff":
        write_arff(m, args.relation, args.out, ids_path=f"{args.out}.ids")
    else:
        write_csv(m, args.out)
    print(f"wrote {args.out}: {len(m.rows)} rows, {len(m.feature_columns)} features + {m.target}")
    return 0


def cmd_evaluate(args, parser) -> int:
    config = _config(args, parser)
    try:
        sets = [int(s) for s in args.sets.split(",") if s.strip()]
    except ValueError:
        parser.error(f"bad --sets value {args.sets!r}")
    if not sets or any(s not in (1, 2, 3, 4) for s in sets):
        parser.error("--sets takes values from 1,2,3,4")
    g = _load_graph(args, parser, config)
    protocols = ["transductive", "fold-masked"] if args.masking == "both" else [config.masking]
    reports = []
    for protocol in protocols:
        for s in sets:
            log.info("evaluating set %d (%s)", s, protocol)
            reports.append(cross_validate(g, s, config.replace(masking=protocol)))
    table = format_table(reports)
    sys.stdout.write(table)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.txt").write_text(table, encoding="utf-8")
        (out / "report.csv").write_text(format_csv(reports), encoding="utf-8")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    sub = args.subparser
    folds = getattr(args, "folds", None)
    if folds is not None and folds < 2:
        sub.error("--folds must be at least 2")
    try:
        return args.func(args, sub)
    except (GraphError, ParseError, ConfigError, FileNotFoundError, OSError, ValueError) as exc:
        print(f"ldfeat {args.command}: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
