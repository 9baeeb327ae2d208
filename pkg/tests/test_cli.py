import json

import pytest
from click.testing import CliRunner

from lexgames.cli import main
from lexgames.textio import parse_graph, parse_machine


@pytest.fixture
def run(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)

    return invoke


def _vertices(text):
    return sum(line.startswith("vertex ") for line in text.splitlines())


def test_member(run):
    r = run("member", "MaxParity(3)", "| 1 2")
    assert r.exit_code == 0 and r.output.strip() == "rejected witness=2"
    r = run("member", "minlex{0:TW@0,1:TL@1}", "| 0")
    assert r.exit_code == 0 and r.output.strip() == "accepted witness=0"
    assert run("member", "MaxParity(3)", "| 1 (").exit_code == 3
    assert run("member", "MaxParity(", "| 1").exit_code == 3


def test_member_json(run):
    r = run("--format", "json", "member", "MaxParity(3)", "0 | 1")
    data = json.loads(r.output)
    assert data["exit"] == 0 and data["accepted"] is True and data["witness"] == "1"


def test_build_signature(run, tmp_path):
    r = run("build", "signature", "--alpha", 2, "--kappa", 2)
    assert r.exit_code == 0 and _vertices(r.output) == 2
    r = run("build", "signature", "--alpha", 2, "--kappa", 2, "--guarded", "-o", "g.txt")
    assert r.exit_code == 0 and r.output == ""
    assert len(parse_graph((tmp_path / "g.txt").read_text())) == 4
    assert run("build", "signature", "--alpha", 8, "--kappa", 10, "--budget", 100).exit_code == 2


def test_build_small_graphs(run):
    assert _vertices(run("build", "chain", "--class", "1", "--k", 3).output) == 3
    assert _vertices(run("build", "loop", "--class", "0").output) == 1
    assert run("build", "chain", "--class", "0, 1", "--k", 3).exit_code == 3


def test_build_power(run, tmp_path):
    (tmp_path / "bases.txt").write_text("0 loop\n1 chain 2\n")
    r = run("build", "power", "--spec", "bases.txt", "--beta", 2)
    assert r.exit_code == 0 and "vertex ((1,0,0),(0,T))" in r.output
    r = run("--format", "json", "build", "power", "--spec", "bases.txt", "--beta", 3, "--budget", 3)
    assert r.exit_code == 2 and json.loads(r.output)["error"] == "budget"
    # an edge going up in the order is not monotone
    (tmp_path / "bad.graph").write_text("vertex a key=0\nvertex b key=1\nedge a 0 b\n")
    (tmp_path / "bad.txt").write_text("0 graph bad.graph\n")
    assert run("build", "power", "--spec", "bad.txt", "--beta", 2).exit_code == 3
    (tmp_path / "junk.txt").write_text("0 banana\n")
    assert run("build", "power", "--spec", "junk.txt", "--beta", 2).exit_code == 3


def test_build_combinators(run, tmp_path):
    run("build", "loop", "--class", "0", "-o", "l.txt")
    run("build", "chain", "--class", "1", "--k", 2, "-o", "c.txt")
    assert _vertices(run("build", "sum", "l.txt", "c.txt").output) == 3
    assert _vertices(run("build", "tensor", "c.txt", "--k", 3).output) == 6
    assert _vertices(run("build", "lexprod", "l.txt", "c.txt").output) == 2
    assert run("build", "tensor", "c.txt", "--k", 3, "--budget", 5).exit_code == 2


def test_check_commands(run, tmp_path):
    run("build", "signature", "--alpha", 2, "--kappa", 3, "-o", "s.txt")
    assert run("check", "satisfies", "--graph", "s.txt", "--objective", "MaxParity(2)").exit_code == 0
    assert run("check", "monotone", "--graph", "s.txt").exit_code == 0
    r = run("check", "order", "--graph", "s.txt")
    assert r.exit_code == 0 and "total=True" in r.output
    (tmp_path / "bad.graph").write_text("vertex a\nedge a 0 a\n")
    r = run("check", "satisfies", "--graph", "bad.graph", "--objective", "MaxParity(2)")
    assert r.exit_code == 1 and "violated" in r.output
    assert run("check", "satisfies", "--graph", "missing.graph", "--objective", "MaxParity(2)").exit_code == 3


def test_check_universality_parity_product(run, tmp_path):
    run("build", "signature", "--alpha", 2, "--kappa", 3, "-o", "s.txt")
    args = ("check", "universality", "--universal", "s.txt", "--objective", "MaxParity(2)", "--colours", "0,1", "--size", 2)
    r = run(*args, "--wrap", 2)
    assert r.exit_code == 0 and r.output.strip().endswith("pass")
    r = run(*args, "--almost")
    assert r.exit_code == 0
    run("build", "chain", "--class", "1", "--k", 1, "-o", "c1.txt")
    r = run(
        "--format", "json", "check", "universality", "--universal", "c1.txt", "--objective", "TL@1",
        "--colours", "1", "--size", 2, "--artifacts", "out",
    )
    data = json.loads(r.output)
    assert r.exit_code == 1 and data["failures"] > 0
    failures = sorted((tmp_path / "out").iterdir())
    assert len(failures) == data["failures"]
    parse_graph(failures[0].read_text())
    assert run(*args, "--budget", 10).exit_code == 2


def test_generate_and_solve(run, tmp_path):
    W = "MaxParity(3)"
    for seed in range(5):
        assert run("--seed", seed, "generate", "--objective", W, "--colours", "0,1,2", "-o", f"g{seed}.txt").exit_code == 0
        r = run("solve", "--game", f"g{seed}.txt", "--objective", W, "--auto", "--oracle")
        assert r.exit_code == 0 and "oracle agrees" in r.output
    run("build", "signature", "--alpha", 3, "--kappa", 6, "-o", "s.txt")
    run("build", "tensor", "s.txt", "--k", 6, "-o", "u.txt")
    a = run("--format", "json", "solve", "--game", "g0.txt", "--objective", W, "--universal", "u.txt")
    b = run("--format", "json", "solve", "--game", "g0.txt", "--objective", W, "--auto")
    assert json.loads(a.output)["winning"] == json.loads(b.output)["winning"]
    assert run("solve", "--game", "g0.txt", "--objective", W).exit_code == 3


def test_output_is_deterministic(run, tmp_path):
    outs = [run("--seed", 7, "generate", "--objective", "MinParity(3)", "--colours", "0,1,2", "--eps-rate", 0.2).output for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
    (tmp_path / "g.txt").write_text(outs[0])
    solved = [run("solve", "--game", "g.txt", "--objective", "MinParity(3)", "--auto").output for _ in range(2)]
    assert solved[0] == solved[1]


MACHINE_LAST_ONE = """\
letters 0 1
state s out=1
state z out=1
state o out=2
init s
trans s 0 z
trans s 1 o
trans z 0 z
trans z 1 o
trans o 0 z
trans o 1 o
"""

MACHINE_ONE = "letters 0 1\nstate s out=1\ninit s\ntrans s 0 s\ntrans s 1 s\n"
MACHINE_TWO = "letters 0 1\nstate s out=2\ninit s\ntrans s 0 s\ntrans s 1 s\n"


def test_reduce_commands(run, tmp_path):
    (tmp_path / "f.m").write_text(MACHINE_LAST_ONE)
    (tmp_path / "one.m").write_text(MACHINE_ONE)
    (tmp_path / "two.m").write_text(MACHINE_TWO)
    r = run("reduce", "union", "-f", "f.m", "-g", "two.m", "-o", "u.m")
    assert r.exit_code == 0
    u = parse_machine((tmp_path / "u.m").read_text())
    assert set(u.out.values()) <= {1, 2}
    assert run("reduce", "max", "-f", "f.m", "-g", "one.m").exit_code == 0
    r = run("reduce", "image", "-f", "f.m", "| 0")
    assert r.exit_code == 0 and "cobuchi=True" in r.output
    r = run("reduce", "image", "-f", "f.m", "| 0 1")
    assert "cobuchi=False" in r.output
    assert run("reduce", "step", "--small", "two.m", "--big", "one.m", "--next", "f.m").exit_code == 0
    assert run("reduce", "step", "--small", "one.m", "--big", "two.m", "--next", "f.m").exit_code == 3
    r = run("reduce", "chain", "f.m", "one.m")
    assert r.exit_code == 0 and "out=0" in r.output
    assert run("reduce", "chain", "f.m", "two.m").exit_code == 3


def test_reduce_letter_maps(run):
    assert run("reduce", "double", "3 | 0 5").output.strip() == "6 | 0 10"
    assert run("reduce", "collapse", "w w | 1", "--alpha", "w").output.strip() == "0 2 | 1"
    assert run("reduce", "collapse", "w w | 1", "--alpha", "w", "--gammas", "2,1").exit_code == 3
    assert run("reduce", "double", "| w").exit_code == 3
