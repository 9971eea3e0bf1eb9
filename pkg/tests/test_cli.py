import hashlib

import pytest

from ldfeat.cli import build_parser, main
from ldfeat.dataset import LD_COLUMNS, read_arff
from ldfeat.synthetic import generate_homophily_graph
from ldfeat.ingest import save_graph_dir


def _digest(path):
    return hashlib.sha256(path.read_bytes()).hexdigest()


def _inputs(tmp_path):
    (tmp_path / "a.csv").write_text("person,talk\n1,t1\n1,t2\n2,t1\n3,t2\n4,t1\n")
    (tmp_path / "p.csv").write_text("person,age,gender\n1,30,m\n2,25,f\n3,41,f\n4,52,m\n")
    (tmp_path / "t.csv").write_text("person,tags\n1,activism\n2,\n3,activism|crypto\n4,crypto\n")


def _table_rows(text):
    return [line.split() for line in text.splitlines() if line.startswith("AdaBoostM1")]


@pytest.fixture
def graph_dir(tmp_path):
    save_graph_dir(generate_homophily_graph(n=60, seed=5), tmp_path / "net")
    return tmp_path / "net"


def test_ingest_happy_path(tmp_path, capsys):
    _inputs(tmp_path)
    code = main(["ingest", "--attendance", str(tmp_path / "a.csv"), "--profiles", str(tmp_path / "p.csv"),
                 "--targets", str(tmp_path / "t.csv"), "--tag", "activism", "--out", str(tmp_path / "net")])
    assert code == 0
    out = capsys.readouterr().out
    assert "persons" in out and "edges" in out
    for name in ("edges.tsv", "labels.tsv", "attributes.csv", "ids.tsv", "report.txt"):
        assert (tmp_path / "net" / name).exists()


def test_ingest_missing_targets_is_usage_error(tmp_path):
    _inputs(tmp_path)
    with pytest.raises(SystemExit) as exc:
        main(["ingest", "--attendance", str(tmp_path / "a.csv"), "--profiles", str(tmp_path / "p.csv"),
              "--tag", "activism", "--out", str(tmp_path / "net")])
    assert exc.value.code == 2


def test_ingest_unreadable_file_exits_nonzero(tmp_path, capsys):
    code = main(["ingest", "--attendance", str(tmp_path / "nope.csv"), "--profiles", str(tmp_path / "p.csv"),
                 "--targets", str(tmp_path / "t.csv"), "--tag", "x", "--out", str(tmp_path / "net")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_features_set3_arff(graph_dir, tmp_path):
    out = tmp_path / "f.arff"
    assert main(["features", "--graph", str(graph_dir), "--set", "3", "--format", "arff", "--out", str(out)]) == 0
    m = read_arff(out, f"{out}.ids")
    assert m.names[:-1] == list(LD_COLUMNS)
    assert m.names[-1] == "class"


def test_features_set2_on_unlabeled_graph(tmp_path):
    (tmp_path / "e.tsv").write_text("a\tb\t1.0\nb\tc\t0.5\nc\ta\t2.0\n")
    out = tmp_path / "f.csv"
    assert main(["features", "--edges", str(tmp_path / "e.tsv"), "--set", "2", "--format", "csv",
                 "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "id,betweenness,degree,clustering,class"


def test_features_set3_without_labels_fails(tmp_path, capsys):
    (tmp_path / "e.tsv").write_text("a\tb\t1.0\n")
    code = main(["features", "--edges", str(tmp_path / "e.tsv"), "--set", "3", "--out", str(tmp_path / "f")])
    assert code == 1
    assert "labels" in capsys.readouterr().err
    assert not (tmp_path / "f").exists()


@pytest.mark.parametrize("fmt", ["arff", "csv"])
def test_features_twice_identical_digest(graph_dir, tmp_path, fmt):
    a, b = tmp_path / f"a.{fmt}", tmp_path / f"b.{fmt}"
    for out in (a, b):
        main(["export", "--graph", str(graph_dir), "--set", "4", "--format", fmt, "--out", str(out),
              "--label-fraction", "0.5", "--seed", "3"])
    assert _digest(a) == _digest(b)


def test_evaluate_four_row_table(graph_dir, capsys):
    assert main(["evaluate", "--graph", str(graph_dir), "--sets", "1,2,3,4", "--folds", "10", "--seed", "42"]) == 0
    rows = _table_rows(capsys.readouterr().out)
    assert [r[1] for r in rows] == ["1", "2", "3", "4"]


def test_evaluate_synthetic_set3_beats_set1(capsys, tmp_path):
    assert main(["evaluate", "--synthetic", "n=200,p_in=0.15,p_out=0.03", "--sets", "1,3",
                 "--out", str(tmp_path / "rep")]) == 0
    rows = {r[1]: float(r[3]) for r in _table_rows(capsys.readouterr().out)}
    assert rows["3"] > rows["1"]
    assert (tmp_path / "rep" / "report.txt").exists()
    assert (tmp_path / "rep" / "report.csv").exists()


def test_evaluate_both_protocols(graph_dir, capsys):
    main(["evaluate", "--graph", str(graph_dir), "--sets", "3", "--folds", "3", "--masking", "both"])
    rows = _table_rows(capsys.readouterr().out)
    assert [r[2] for r in rows] == ["transductive", "fold-masked"]


@pytest.mark.parametrize("folds", ["1", "0", "-3"])
def test_folds_below_two_is_usage_error(graph_dir, folds):
    with pytest.raises(SystemExit) as exc:
        main(["evaluate", "--graph", str(graph_dir), "--folds", folds])
    assert exc.value.code == 2


def test_bad_sets_and_sources_are_usage_errors(graph_dir):
    for argv in (["evaluate", "--graph", str(graph_dir), "--sets", "5"],
                 ["evaluate", "--sets", "1"],
                 ["evaluate", "--graph", str(graph_dir), "--synthetic", "n=10"],
                 ["evaluate", "--synthetic", "bogus=1"]):
        with pytest.raises(SystemExit) as exc:
            main(argv)
        assert exc.value.code == 2


@pytest.mark.parametrize("command", ["ingest", "features", "export", "evaluate"])
def test_help_lists_every_flag_with_default(command, capsys):
    with pytest.raises(SystemExit):
        main([command, "--help"])
    text = capsys.readouterr().out
    sub = build_parser()._subparsers._group_actions[0].choices[command]
    for action in sub._actions:
        if action.dest == "help":
            continue
        assert action.option_strings[0] in text
        assert action.help and ("default:" in action.help or "defaults:" in action.help
                                or "required" in action.help)


def test_config_file_then_flag_override(graph_dir, tmp_path, capsys):
    cfg = tmp_path / "run.cfg"
    cfg.write_text("# run\ndirection = directed\niterations = 3\nseed = 5\n")
    main(["evaluate", "--graph", str(graph_dir), "--sets", "1", "--folds", "3", "--config", str(cfg),
          "--seed", "8"])
    text = capsys.readouterr().out
    assert "# direction = directed" in text
    assert "# iterations = 3" in text
    assert "# seed = 8" in text


def test_bad_config_value_is_usage_error(graph_dir, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["evaluate", "--graph", str(graph_dir), "--label-fraction", "1.5"])
    assert exc.value.code == 2
