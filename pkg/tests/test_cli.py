import json
import subprocess
import sys

import pytest

from parryseq.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("argv, expected", [
    (["rep", "--system", "eq-4.1", "16"], "101"),
    (["val", "--system", "modified-fibonacci", "20"], "6"),
    (["rep", "--system", "fibonacci", "0"], "eps"),
    (["beta", "--builtin", "eq-4.1", "--x", "1", "--digits", "8"], "3203(0)"),
    (["beta", "--builtin", "eq-4.1", "--x", "1/3", "--digits", "12"], "10(2212)"),
    (["beta", "--builtin", "eq-4.1", "--x", "1/2", "--digits", "21"], "123102303001010220123"),
    (["beta", "--x", "4/beta^2", "--digits", "12"], "101111202300"),
    (["beta", "--poly=-1,-1,1", "--x", "1"], "11(0)"),
    (["substitution", "--kind", "quadratic"], "a -> aaab, b -> b"),
])
def test_examples(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out.strip() == expected


def test_global_flags_before_or_after(capsys):
    _, a, _ = run(capsys, "--system", "fibonacci", "rep", "7")
    _, b, _ = run(capsys, "rep", "--system", "fibonacci", "7")
    assert a == b == "1010\n"


def test_formats(capsys, tmp_path):
    _, out, _ = run(capsys, "rep", "--format", "json", "--system", "base-2", "5", "6")
    assert json.loads(out) == {"5": "101", "6": "110"}
    _, out, _ = run(capsys, "enumerate", "--system", "fibonacci", "--count", "5", "--format", "csv")
    assert out.splitlines() == ["val,rep", "0,eps", "1,1", "2,10", "3,100", "4,101"]
    _, out, _ = run(capsys, "automaton", "--kind", "parry", "--format", "dot")
    assert out.startswith('digraph "parry"')
    target = tmp_path / "c.csv"
    code, out, _ = run(capsys, "complexity", "--substitution", "a->aaab, b->b", "--max-len", "12",
                       "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().splitlines()[10] == "10,49,4.900000"


def test_sequence_commands(capsys):
    _, out, _ = run(capsys, "prefix", "--length", "28")
    assert out.strip() == "0100100000000001000000000000"
    _, out, _ = run(capsys, "kernel", "--max-len", "1")
    assert out.startswith("kernel classes: 8\nvalue classes: 3")
    code, out, _ = run(capsys, "kernel2d", "--system", "fibonacci", "--grid", "12")
    assert code == 0 and "agrees" in out
    _, out, _ = run(capsys, "complexity", "--max-len", "10")
    assert "diagnostic:" in out


def test_usage_errors(capsys):
    assert run(capsys, "rep", "--system", "nope", "3")[0] == 2
    assert run(capsys, "beta", "--x", "3/2")[0] == 2
    assert run(capsys, "beta", "--x", "abc")[0] == 2
    assert run(capsys, "reproduce", "nope")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_json_system_file(capsys, tmp_path):
    spec = tmp_path / "trib.json"
    spec.write_text(json.dumps({"coefficients": [1, 1, 1], "initial_terms": [1, 2, 4]}))
    _, out, _ = run(capsys, "rep", "--system", str(spec), "12")
    assert out.strip() == "1101"     # 12 = 7 + 4 + 1


def test_cache_dir(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("PARRYSEQ_CACHE_DIR", str(tmp_path))
    run(capsys, "enumerate", "--system", "modified-fibonacci", "--count", "4")
    files = list(tmp_path.glob("system-*.json"))
    assert len(files) == 1
    _, out, _ = run(capsys, "enumerate", "--system", "modified-fibonacci", "--count", "4")
    assert out.split() == ["eps", "1", "2", "10"]


def test_reproduce(capsys):
    code, out, _ = run(capsys, "reproduce", "fig2")
    assert code == 0 and "rows: produced 34" in out
    code, out, _ = run(capsys, "reproduce", "u3-conjecture")
    assert code == 0 and "holds for n=2..40" in out
    code, out, _ = run(capsys, "reproduce", "table1")
    assert code == 1 and "MISMATCH" in out


def test_deterministic_output_and_entry_point():
    cmd = [sys.executable, "-m", "parryseq.cli", "reproduce", "digit-strings"]
    a = subprocess.run(cmd, capture_output=True, text=True)
    b = subprocess.run(cmd, capture_output=True, text=True)
    assert a.returncode == 0 and a.stdout == b.stdout
