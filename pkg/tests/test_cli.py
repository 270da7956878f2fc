import json
import subprocess
import sys
from pathlib import Path

import pytest

from hklat.cli import build_parser, main

GOLDEN = Path(__file__).parent / "golden"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_expr(capsys):
    code, out, _ = run_cli(capsys, "invariants", "U(3)")
    assert code == 0
    assert "p-elementary: true (p=3, a=2)" in out
    assert "signature: (1, 1)" in out


def test_invariants_json_file(tmp_path, capsys):
    f = tmp_path / "lat.json"
    f.write_text(json.dumps({"gram": [[0, 1], [1, 0]], "name": "U"}))
    code, out, _ = run_cli(capsys, "invariants", str(f))
    assert code == 0
    assert "discriminant group: trivial" in out


def test_invariants_rejects_odd_lattice(tmp_path, capsys):
    f = tmp_path / "odd.json"
    f.write_text(json.dumps({"gram": [[1]]}))
    code, _, err = run_cli(capsys, "invariants", str(f))
    assert code == 2
    assert "even" in err


def test_invariants_rejects_garbage(capsys):
    code, _, err = run_cli(capsys, "invariants", "Q17")
    assert code == 1


def test_tables_p19_csv(capsys):
    code, out, _ = run_cli(capsys, "tables", "--prime", "19", "--format", "csv")
    assert code == 0
    data_row = out.strip().split("\n")[1]
    assert ",20,20," in data_row
    assert data_row.startswith("19,1,1,")


def test_tables_all_golden(capsys):
    for fmt, name in (("md", "tables_all.md"), ("csv", "tables_all.csv"), ("json", "tables_all.json")):
        code, out, _ = run_cli(capsys, "tables", "--all", "--format", fmt)
        assert code == 0
        assert out == (GOLDEN / name).read_text(), f"golden diff for {name}"


def test_tables_single_golden(capsys):
    code, out, _ = run_cli(capsys, "tables", "--prime", "19", "--format", "csv")
    assert out == (GOLDEN / "table_p19.csv").read_text()


def test_tables_out_file(tmp_path, capsys):
    target = tmp_path / "t.csv"
    code, out, _ = run_cli(capsys, "tables", "--prime", "17", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert ",35,35," in target.read_text()


def test_tables_requires_prime_or_all(capsys):
    code, _, err = run_cli(capsys, "tables", "--format", "csv")
    assert code == 1


def test_figures_golden(capsys):
    for which in (1, 2):
        code, out, _ = run_cli(capsys, "figures", "--which", str(which), "--format", "json")
        assert code == 0
        assert out.rstrip("\n") == (GOLDEN / f"figure{which}.json").read_text().rstrip("\n")
        code, out, _ = run_cli(capsys, "figures", "--which", str(which), "--format", "txt")
        assert out.rstrip("\n") == (GOLDEN / f"figure{which}.txt").read_text().rstrip("\n")


def test_figures_json_roundtrip(capsys):
    code, out, _ = run_cli(capsys, "figures", "--which", "1", "--format", "json")
    data = json.loads(out)
    assert data["figure"] == 1
    assert {"r": 20, "a": 2, "delta_t": 1} in data["points"]


def test_figures_rejects_other_orders(capsys):
    code, _, err = run_cli(capsys, "figures", "--order", "3", "--which", "1")
    assert code == 1


def test_embed(capsys):
    code, out, _ = run_cli(capsys, "embed", "--expr", "U^2 + E8^2 + A2")
    assert code == 0
    assert "embeds in U^3 + E8^2 + <-2>: yes" in out
    assert "orthogonal class: <6>" in out
    code, out, _ = run_cli(capsys, "embed", "--expr", "U^2 + E8 + E6*(3)")
    assert "embeds in U^3 + E8^2 + <-2>: no" in out


def test_involution(capsys):
    code, out, _ = run_cli(capsys, "involution", "--r", "2", "--a", "2", "--delta", "1")
    assert code == 0
    assert "case I" in out and "case II" in out
    code, out, _ = run_cli(capsys, "involution", "--r", "1", "--a", "1", "--delta", "0")
    assert code == 2


def test_census(tmp_path, capsys):
    f = tmp_path / "locus.json"
    f.write_text(json.dumps({"p": 3, "k": 2, "n": [0, 5]}))
    code, out, _ = run_cli(capsys, "census", str(f), "--check", "3,5,5")
    assert code == 0
    assert "MATCH" in out
    code, out, _ = run_cli(capsys, "census", str(f), "--check", "3,6,4")
    assert code == 2
    assert "MISMATCH" in out


def test_local_actions(capsys):
    code, out, _ = run_cli(capsys, "local-actions", "--prime", "7")
    assert code == 0
    assert "multiplicities (2, 2, 0)" in out


def test_parser_rejects_missing_subcommand():
    with pytest.raises(SystemExit) as exc:
        build_parser().parse_args([])
    assert exc.value.code != 0


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hklat.cli", "tables", "--prime", "13", "--format", "csv"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "no-known-realization" in proc.stdout or "True" in proc.stdout


def test_tables_json_roundtrip(capsys):
    _, out, _ = run_cli(capsys, "tables", "--all", "--format", "json")
    records = json.loads(out)
    assert len(records) == 45
    assert {"p", "m", "a", "chi", "h_star", "S", "T"} <= set(records[0])


def test_embed_rejects_mixed_group(capsys):
    code, _, err = run_cli(capsys, "embed", "--expr", "<6> + E8")
    assert code == 2


def test_determinism(capsys):
    outs = set()
    for _ in range(2):
        _, out, _ = run_cli(capsys, "tables", "--all", "--format", "json")
        outs.add(out)
    assert len(outs) == 1
