"""Command-line interface: output shapes, formats, and exit codes."""

from __future__ import annotations

import contextlib
import io
import json
import os
import tempfile
from fractions import Fraction

from oristar import cli
from oristar.digraph import StarSpec, format_graph, parse_graph
from oristar.verify import SuiteReport

STAR21 = "dg 4\n0 1\n0 2\n3 0\n"


def _run(argv: list[str]) -> tuple[int, str]:
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli.main(argv)
    return code, buf.getvalue()


def _run_err(argv: list[str]) -> tuple[int, str]:
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        try:
            code = cli.main(argv)
        except SystemExit as exc:  # argparse usage failures
            code = exc.code if isinstance(exc.code, int) else 1
    return code, err.getvalue()


def _star_file(dirname: str) -> str:
    path = os.path.join(dirname, "star.dg")
    with open(path, "w") as fh:
        fh.write(STAR21)
    return path


def test_opt_json():
    code, out = _run(["opt", "--k", "2", "--l", "1"])
    assert code == 0
    rep = json.loads(out)
    assert rep["command"] == "opt" and rep["seed"] == 0
    assert abs(float(rep["inducibility"]) - 0.2025) < 1e-9
    assert abs(float(rep["alpha"]) - 0.3) < 1e-6
    assert abs(float(rep["d"]) - 9 / 14) < 1e-6
    assert rep["conjectural"] is True


def test_approx_compares_to_solver():
    code, out = _run(["approx", "--k", "4", "--l", "2"])
    assert code == 0
    rep = json.loads(out)
    assert abs(rep["relative_value_error"]) <= 1e-7
    assert rep["alpha_hat"] > 0 and rep["d_hat"] > 0


def test_table_csv_default():
    code, out = _run(["inducibility-table", "--m-max", "7"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("# oristar ")
    header = lines[1].split(",")
    assert header[:4] == ["k", "l", "m", "alpha"]
    rows = [dict(zip(header, ln.split(","))) for ln in lines[2:]]
    specs = {(int(r["k"]), int(r["l"])) for r in rows}
    assert specs == {(5, 1), (4, 2), (3, 3), (6, 1), (5, 2), (4, 3)}
    for r in rows:
        assert r["conjectural"] == "false"  # the table starts at m = 6
        if int(r["k"]) == int(r["l"]):
            assert r["d"] == ""


def test_density_exact_and_fractions():
    with tempfile.TemporaryDirectory() as tmp:
        path = _star_file(tmp)
        code, out = _run(["density", "--in", path, "--k", "2", "--l", "1"])
    assert code == 0
    rep = json.loads(out)
    assert rep["mode"] == "exact" and rep["count"] == 1
    assert rep["i_density_fraction"] == "1/1"
    assert rep["s_density_fraction"] == "1/128"
    assert abs(float(rep["s_density"]) - 1 / 128) < 1e-50


def test_density_auto_monte_carlo_above_cap():
    with tempfile.TemporaryDirectory() as tmp:
        path = _star_file(tmp)
        code, out = _run(
            ["density", "--in", path, "--k", "2", "--l", "1", "--exact-cap", "3",
             "--samples", "50000", "--seed", "7"]
        )
    assert code == 0
    rep = json.loads(out)
    assert rep["mode"] == "monte-carlo" and rep["samples"] == 50000
    assert abs(rep["estimate"] - 1 / 128) <= 5 * rep["std_error"]


def test_mc_command_deterministic():
    with tempfile.TemporaryDirectory() as tmp:
        path = _star_file(tmp)
        args = ["mc", "--in", path, "--k", "2", "--l", "1", "--samples", "20000"]
        code1, out1 = _run(args)
        code2, out2 = _run(args)
    assert code1 == code2 == 0 and out1 == out2
    rep = json.loads(out1)
    assert rep["samples"] == 20000 and rep["std_error"] > 0


def test_construct_writes_parseable_graph():
    with tempfile.TemporaryDirectory() as tmp:
        out_path = os.path.join(tmp, "g.dg")
        code, out = _run(
            ["construct", "--k", "2", "--l", "1", "--n", "10",
             "--alpha", "0.3", "--d", str(9 / 14), "--out", out_path]
        )
        assert code == 0
        rep = json.loads(out)
        assert rep["sizes"] == [3, 5, 2] and rep["arcs"] == 21
        with open(out_path) as fh:
            G = parse_graph(fh.read())
    assert G.n == 10 and len(G.arcs) == 21
    assert abs(rep["predicted_s"] - 0.016875) < 1e-12


def test_construct_flag_validation():
    with tempfile.TemporaryDirectory() as tmp:
        out_path = os.path.join(tmp, "g.dg")
        # alpha without d on the asymmetric branch is a domain error
        code, err = _run_err(
            ["construct", "--k", "2", "--l", "1", "--n", "10",
             "--alpha", "0.3", "--out", out_path]
        )
        assert code == 1 and "error" in err
        # d is meaningless for k = l
        code, err = _run_err(
            ["construct", "--k", "2", "--l", "2", "--n", "10",
             "--alpha", "0.3", "--d", "0.5", "--out", out_path]
        )
        assert code == 1


def test_search_exhaustive_with_witness():
    with tempfile.TemporaryDirectory() as tmp:
        out_path = os.path.join(tmp, "w.dg")
        code, out = _run(
            ["search", "--k", "1", "--l", "1", "--n", "4", "--exhaustive",
             "--out", out_path]
        )
        assert code == 0
        rep = json.loads(out)
        with open(out_path) as fh:
            W = parse_graph(fh.read())
    assert rep["best_count"] == 4
    assert rep["best_i_fraction"] == "1/1"
    assert rep["explored"] == 729
    assert sorted(tuple(a) for a in rep["witness_arcs"]) == W.sorted_arcs()


def test_search_local_restarts():
    code, out = _run(
        ["search", "--k", "2", "--l", "1", "--n", "8", "--local",
         "--restarts", "3", "--moves", "50"]
    )
    assert code == 0
    rep = json.loads(out)
    assert len(rep["restart_counts"]) == 3
    assert max(rep["restart_counts"]) == rep["best_count"] > 0


def test_verify_arithmetic_ok():
    code, out = _run(["verify", "--suite", "arithmetic"])
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["suites"][0]["suite"] == "arithmetic"
    assert rep["suites"][0]["checks"] > 1000


def test_verify_failure_exits_two(monkeypatch):
    import oristar.cli as climod

    def fake_suite(graphs=1000, seed=0):
        return SuiteReport("degree-bound", graphs, ("graph 3 spec (4, 2): 1 violators",))

    monkeypatch.setattr(climod, "degree_bound_suite", fake_suite)
    code, out = _run(["verify", "--suite", "degree-bound", "--graphs", "5"])
    assert code == 2
    rep = json.loads(out)
    assert rep["ok"] is False and rep["suites"][0]["failures"]


def test_stats_fractions_exact():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "c.dg")
        _run(["construct", "--k", "4", "--l", "2", "--n", "70", "--out", path])
        code, out = _run(["stats", "--in", path, "--k", "4", "--l", "2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["alpha_fraction"] == "1/7"
    num, den = rep["d_fraction"].split("/")
    assert Fraction(int(num), int(den)) == Fraction(2, 3)
    assert rep["s_is_exact"] is True


def test_stability_command():
    with tempfile.TemporaryDirectory() as tmp:
        path = os.path.join(tmp, "c.dg")
        _run(["construct", "--k", "4", "--l", "2", "--n", "140", "--out", path])
        code, out = _run(["stability", "--in", path, "--k", "4", "--l", "2",
                          "--eps", "0.05"])
        assert code == 0
        rep = json.loads(out)
        assert rep["violating_counts"] == [0, 0, 0]
        assert sum(rep["partition_sizes"]) == 140
        code, _ = _run_err(["stability", "--in", path, "--k", "4", "--l", "2",
                            "--eps", "-1"])
        assert code == 1


def test_usage_and_missing_file_errors():
    code, err = _run_err(["opt", "--k", "2"])  # missing required --l
    assert code == 1 and "error" in err
    code, err = _run_err(["density", "--in", "/nonexistent.dg", "--k", "2", "--l", "1"])
    assert code == 1 and "error" in err
    code, err = _run_err(["opt", "--k", "1", "--l", "1"])  # unsupported spec
    assert code == 1
    code, err = _run_err(["nonsense"])
    assert code == 1


def test_byte_identical_reruns_and_csv():
    args = ["opt", "--k", "3", "--l", "2", "--format", "csv"]
    code1, out1 = _run(args)
    code2, out2 = _run(args)
    assert code1 == code2 == 0 and out1 == out2
    lines = out1.strip().splitlines()
    assert lines[0].startswith("# oristar ") and "seed=0" in lines[0]
    assert len(lines) == 3  # comment, header, one row


def test_workers_env_override(monkeypatch):
    monkeypatch.setenv("ORISTAR_WORKERS", "3")
    assert cli._default_workers() == 3
    monkeypatch.delenv("ORISTAR_WORKERS")
    assert cli._default_workers() >= 1
