import io
import shutil
import subprocess
import sys

import pytest

from holiest.cli import fuzz_case, main
from holiest.embedding import write_emg
from holiest.oracles import cycle_graph, torus_grid, unit_costs
from holiest.perturb import write_cst


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    status = main(list(argv), out, err)
    return status, out.getvalue(), err.getvalue()


@pytest.fixture
def torus(tmp_path):
    g = torus_grid(3, 3)
    emg = tmp_path / "t.emg"
    cst = tmp_path / "t.cst"
    emg.write_text(write_emg(g))
    cst.write_text(write_cst(unit_costs(g)))
    return str(emg), str(cst)


def test_validate_and_genus(torus):
    emg, cst = torus
    assert run("validate", "--graph", emg, "--costs", cst) == (0, "ok V=9 E=18 F=9 genus=1\n", "")
    assert run("genus", "--graph", emg)[1] == "1\n"


def test_signatures_table(torus):
    emg, _ = torus
    status, out, _ = run("signatures", "--graph", emg)
    rows = [line.split("\t") for line in out.splitlines()]
    assert status == 0 and len(rows) == 18 and all(len(r) == 3 for r in rows)
    assert rows[2] == ["2", "1", "0"] and rows[11] == ["11", "0", "1"]


def test_drainage_table(torus):
    emg, _ = torus
    status, out, _ = run("drainage", "--graph", emg)
    z = [int(line.split("\t")[1]) for line in out.splitlines()]
    assert z == [0, 0, 0, 0, 0, -1, -1, 2, -2, -4, 0, 0, -8, 0, 1, 0, 1, 0]


def test_sssp_both_variants(torus):
    emg, cst = torus
    for variant in ("standard", "modified"):
        status, out, _ = run("sssp", "--graph", emg, "--costs", cst, "--source", "0", "--variant", variant)
        dists = [int(line.split("\t")[2]) for line in out.splitlines()]
        assert status == 0 and dists == [0, 1, 1, 1, 2, 2, 1, 2, 2]


def test_traces_agree(torus):
    emg, cst = torus
    s1, ref, _ = run("mssp-ref", "--graph", emg, "--costs", cst)
    s2, lin, _ = run("mssp-linear", "--graph", emg, "--costs", cst, "--audit")
    assert s1 == s2 == 0
    assert ref == lin and len(ref.splitlines()) == 24


def test_distances(torus, tmp_path):
    emg, cst = torus
    walk = tmp_path / "walk.txt"
    pairs = tmp_path / "pairs.tsv"
    walk.write_text("0 1 2 5 8\n")
    pairs.write_text("0\t0\n0\t2\n1\t2\n2\t3\n3\t4\n")
    for engine in ("linear", "reference"):
        status, out, _ = run("distances", "--graph", emg, "--costs", cst, "--walk", str(walk),
                             "--pairs", str(pairs), "--engine", engine)
        assert status == 0
        assert out == "0\t0\t0\n0\t2\t1\n1\t2\t1\n2\t3\t2\n3\t4\t1\n"


def test_gen_round_trip(tmp_path):
    prefix = str(tmp_path / "inst")
    status, out, _ = run("gen", "--kind", "torus_grid", "--params", "4", "3", "--out", prefix)
    assert status == 0 and out.split() == [prefix + ".emg", prefix + ".cst"]
    assert run("validate", "--graph", prefix + ".emg", "--costs", prefix + ".cst")[1].startswith("ok V=12")


def test_fuzz_command():
    status, out, _ = run("fuzz", "--count", "5", "--max-n", "20", "--verbose")
    assert status == 0
    assert out.splitlines()[-1] == "fuzz: 5 instances, 0 failures"
    assert len(out.splitlines()) == 6


def test_fuzz_case_reports_ok():
    seed, status, detail = fuzz_case(3, 30)
    assert (seed, status) == (3, "ok") and detail.startswith("n=")


def test_input_errors_exit_one(tmp_path, torus):
    emg, cst = torus
    bad = tmp_path / "bad.emg"
    bad.write_text("emg 1\nnot a graph\n")
    assert run("genus", "--graph", str(bad))[0] == 1
    assert run("genus", "--graph", str(tmp_path / "missing.emg"))[0] == 1
    assert run("mssp-ref", "--graph", emg, "--costs", cst, "--sink-face", "99")[0] == 1
    assert run("sssp", "--graph", emg, "--costs", cst, "--source", "42")[0] == 1
    assert run("fuzz", "--count", "-1")[0] == 1


def test_usage_errors_exit_one():
    status, _, err = run("frobnicate")
    assert status == 1 and err.startswith("holiest:")
    assert run("genus")[0] == 1
    assert run()[0] == 1


def test_missing_costs_need_default(tmp_path):
    g = cycle_graph(4)
    emg = tmp_path / "c.emg"
    cst = tmp_path / "c.cst"
    emg.write_text(write_emg(g))
    cst.write_text("0 1\n")
    assert run("validate", "--graph", str(emg), "--costs", str(cst))[0] == 1
    assert run("validate", "--graph", str(emg), "--costs", str(cst), "--default-cost", "2")[0] == 0


def test_console_script_and_module(torus):
    emg, _ = torus
    exe = shutil.which("holiest")
    if exe:
        res = subprocess.run([exe, "genus", "--graph", emg], capture_output=True, text=True)
        assert res.returncode == 0 and res.stdout == "1\n"
    res = subprocess.run([sys.executable, "-m", "holiest", "genus", "--graph", emg],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout == "1\n"


def test_validate_reports_missing_dart(tmp_path):
    bad = tmp_path / "m.emg"
    bad.write_text("emg 1\n1 2\n0 2 1\n")
    status, _, err = run("validate", "--graph", str(bad))
    assert status == 1 and "DartMissing" in err


@pytest.mark.parametrize(
    "kind,params",
    [("torus_grid", ["3", "4"]), ("planar_grid", ["3", "2"]), ("bouquet", ["2"]),
     ("random_rotation", ["6", "1"]), ("path", ["4"]), ("cycle", ["5"])],
)
def test_gen_then_validate(tmp_path, kind, params):
    prefix = str(tmp_path / kind)
    assert run("gen", "--kind", kind, "--params", *params, "--cost-model", "positive_random",
               "--max-cost", "3", "--out", prefix)[0] == 0
    assert run("validate", "--graph", prefix + ".emg", "--costs", prefix + ".cst")[0] == 0


def test_trace_schema(torus):
    import json

    emg, cst = torus
    _, out, _ = run("mssp-linear", "--graph", emg, "--costs", cst)
    for line in out.splitlines():
        assert set(json.loads(line)) == {"iter", "kind", "in", "out", "lambda_c0"}
