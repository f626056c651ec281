import itertools
import json
import re
import subprocess
import sys

import pytest

from conftest import DESK_K, DESK_N

from thuesub.cli import main

SQUARE_RE = re.compile(r"(.+)\1")


@pytest.fixture
def k3_files(tmp_path):
    (tmp_path / "k3.txt").write_text("0 1\n0 2\n1 2\n")
    (tmp_path / "plan.txt").write_text(f"0 1 {DESK_K}\n0 2 {DESK_K}\n1 2 {DESK_K} v->u\n")
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


def test_sync_facts_command(capsys):
    code, out, _ = run(capsys, "lemma4", "verify")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 4 and all(": PASS" in ln for ln in lines)


def test_count_squarefree_table(capsys):
    code, out, _ = run(capsys, "words", "count-squarefree", "--max", 12)
    assert code == 0
    rows = [ln.split("\t") for ln in out.splitlines()[1:]]
    for n, count, exceeds in rows:
        n = int(n)
        brute = sum(1 for t in itertools.product("012", repeat=n) if not SQUARE_RE.search("".join(t)))
        assert int(count) == brute
        assert exceeds == ("1" if n >= 1 else "0")


def test_count_squarefree_plot(capsys, tmp_path):
    fig = tmp_path / "growth.png"
    code, out, _ = run(capsys, "words", "count-squarefree", "--max", 8, "--plot", fig)
    assert code == 0 and fig.stat().st_size > 1000


def test_find_square_exit_codes(capsys):
    assert run(capsys, "words", "find-square", "0120")[0] == 0
    code, out, _ = run(capsys, "words", "find-square", "012012", "--format", "structured")
    assert code == 1
    assert json.loads(out)["square"] == {"start": 0, "period": 3, "factor": "012012"}


def test_morphism_commands(capsys):
    code, out, _ = run(capsys, "morphism", "images", "01")
    assert code == 0 and len(out.splitlines()) == 4
    code, out, _ = run(capsys, "morphism", "check-th6", "--max-len", 3, "--format", "structured")
    assert code == 0 and json.loads(out)["words"] == 21


def test_nice_commands(capsys):
    assert run(capsys, "nice", "find", "--length", 11)[1].strip() == "01210201210"
    assert run(capsys, "nice", "find", "--length", 5)[0] == 1
    assert run(capsys, "nice", "find", "--length", 1, "--budget", 1)[0] == 2
    code, out, _ = run(capsys, "nice", "enumerate", "--length", 30, "--limit", 3)
    assert code == 0 and len(out.split()) == 3
    code, out, _ = run(capsys, "nice", "from-h", "--length", 170)
    assert code == 0 and len(out.strip()) == 170
    assert run(capsys, "nice", "from-h", "--length", 143)[0] == 1


def test_goodset_build_and_verify(capsys, tmp_path):
    out_file = tmp_path / "gs.txt"
    code, _, _ = run(capsys, "goodset", "build", "--n", 30, "--size", 3, "--index", "40..41", "--out", out_file)
    assert code == 0
    assert out_file.read_text().startswith("n=30 index_set=40..41\n")
    assert run(capsys, "goodset", "verify", out_file)[0] == 0
    # a mirror pair is not good
    w = out_file.read_text().splitlines()[1]
    out_file.write_text(f"n=30 index_set=40\n{w}\n{w[::-1]}\n")
    code, out, _ = run(capsys, "goodset", "verify", out_file)
    assert code == 1 and "mirror" in out


def test_graph_edgecolor(capsys, tmp_path):
    g = tmp_path / "k4.txt"
    g.write_text("\n".join(f"{a} {b}" for a, b in itertools.combinations(range(4), 2)) + "\n")
    ec = tmp_path / "ec.txt"
    code, out, _ = run(capsys, "graph", "edgecolor", "--graph", g, "--out", ec)
    assert code == 0 and "pi_prime: 5" in out
    assert run(capsys, "graph", "verify-edges", "--graph", g, "--coloring", ec)[0] == 0
    code, out, _ = run(capsys, "graph", "edgecolor", "--graph", g, "--path-only", "--out", ec)
    assert "pi_prime: 3" in out
    # the path-only coloring fails the closed-walk check
    assert run(capsys, "graph", "verify-edges", "--graph", g, "--coloring", ec)[0] == 1
    assert run(capsys, "graph", "verify-edges", "--graph", g, "--coloring", ec, "--path-only")[0] == 0


def test_color_then_verify(capsys, k3_files):
    d = k3_files
    code, out, _ = run(capsys, "color", "--graph", d / "k3.txt", "--plan", d / "plan.txt", "--mode", "desk",
                       "--n", DESK_N, "--out", d / "col.txt", "--plot", d / "strip.png", "--goodset-out", d / "gs.txt")
    assert code == 0
    assert (d / "strip.png").exists() and (d / "gs.txt").exists()
    text = (d / "col.txt").read_text()
    assert text.startswith("[report]\n") and "[vertices]\n" in text
    code, out, _ = run(capsys, "verify", "--graph", d / "k3.txt", "--plan", d / "plan.txt",
                       "--coloring", d / "col.txt")
    assert code == 0 and "verdict: clean" in out
    # break one division vertex
    lines = text.splitlines()
    i = lines.index("[vertices]") + 10
    vid, col, prov = lines[i].split(maxsplit=2)
    prev = lines[i - 1].split()[1]
    lines[i] = f"{vid} {prev} {prov}"
    (d / "bad.txt").write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "verify", "--graph", d / "k3.txt", "--plan", d / "plan.txt",
                       "--coloring", d / "bad.txt", "--format", "structured")
    assert code == 1 and json.loads(out)["verdict"] == "witness"


def test_pipeline_command(capsys, k3_files):
    d = k3_files
    code, out, _ = run(capsys, "pipeline", "--graph", d / "k3.txt", "--uniform", DESK_K, "--n", DESK_N,
                       "--format", "structured")
    assert code == 0
    data = json.loads(out)
    assert data["verification"]["verdict"] == "clean" and data["n"] == DESK_N


def test_deterministic_artifacts(capsys, k3_files):
    d = k3_files
    outs = []
    for tag in ("a", "b"):
        run(capsys, "color", "--graph", d / "k3.txt", "--plan", d / "plan.txt", "--n", DESK_N,
            "--out", d / f"col_{tag}.txt", "--goodset-out", d / "gs.txt", "--plot", d / f"strip_{tag}.png")
        run(capsys, "words", "count-squarefree", "--max", 10, "--plot", d / f"growth_{tag}.png")
        outs.append(run(capsys, "suite", "crossval", "--seed", 3, "--format", "structured")[1])
    assert (d / "col_a.txt").read_bytes() == (d / "col_b.txt").read_bytes()
    assert (d / "strip_a.png").read_bytes() == (d / "strip_b.png").read_bytes()
    assert (d / "growth_a.png").read_bytes() == (d / "growth_b.png").read_bytes()
    assert outs[0] == outs[1]


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite", "greedy-bound", "--trials", 20)
    assert code == 0 and "PASS" in out
    code, out, _ = run(capsys, "suite", "lift", "--trials", 50, "--path-only")
    assert code == 1 and "FAIL" in out


def test_params(capsys):
    code, out, _ = run(capsys, "params", "--pi-prime", 3, "--format", "structured")
    data = json.loads(out)
    assert code == 0 and data["n"] == 8750 and data["c"] == 35216


def test_error_exit_codes(capsys, k3_files, tmp_path):
    d = k3_files
    with pytest.raises(SystemExit) as exc:
        main(["bogus"])
    assert exc.value.code == 64
    with pytest.raises(SystemExit) as exc:
        main(["color"])
    assert exc.value.code == 64
    assert run(capsys, "color", "--graph", d / "k3.txt", "--uniform", 100, "--n", DESK_N)[0] == 64
    assert run(capsys, "color", "--graph", d / "k3.txt", "--uniform", DESK_K)[0] == 64
    assert run(capsys, "color", "--graph", tmp_path / "missing.txt", "--uniform", DESK_K, "--n", DESK_N)[0] == 74


def test_console_script_entry():
    out = subprocess.run([sys.executable, "-m", "thuesub.cli", "lemma4", "verify"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout.count("PASS") == 4
