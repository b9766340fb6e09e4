import csv
import io
import json
import os
import subprocess
from pathlib import Path

import pytest

CLI = os.environ.get("TMT_CLI")
DATA = Path(__file__).resolve().parents[2] / "data"

pytestmark = pytest.mark.skipif(not CLI, reason="TMT_CLI not set")


def run(*args, tmp_path):
    manifest = tmp_path / "manifest.json"
    r = subprocess.run([CLI, "--manifest", str(manifest), *args], capture_output=True, text=True)
    return r, manifest


def test_catalog(tmp_path):
    r, manifest = run("catalog", "--necklace", "12:3", "--melons", "--tree", "2,2", tmp_path=tmp_path)
    assert r.returncode == 0
    rows = json.loads(r.stdout)["bubbles"]
    omegas = {b["name"]: b["omega"] for b in rows}
    assert omegas["necklace 12:3"] == 5
    assert omegas["tree 2,2"] == 5
    assert [omegas[f"melon {c}"] for c in range(1, 5)] == [3, 3, 3, 3]
    m = json.loads(manifest.read_text())
    assert m["command"] == "catalog" and m["exit_status"] == 0


def test_verify_and_config_precedence(tmp_path):
    r, _ = run("verify", "--model", "restricted", "--edges", "3", tmp_path=tmp_path)
    assert r.returncode == 0 and json.loads(r.stdout)["pass"]
    # The file asks for edges 3; the flag wins.
    r, manifest = run("--config", str(DATA / "verify_full.json"), "verify", "--edges", "2", tmp_path=tmp_path)
    assert r.returncode == 0
    table = list(csv.DictReader(io.StringIO(r.stdout)))
    assert table and all(int(row["omega"]) >= 0 for row in table)
    assert max(int(row["edges"]) for row in table) == 2
    cfg = json.loads(manifest.read_text())["config"]
    assert cfg["verify"]["model"] == "full"
    r, _ = run("verify", "--oracle", "--max-vertices", "4", tmp_path=tmp_path)
    assert r.returncode == 0


def test_sd(tmp_path):
    r, _ = run("sd", "--potential", str(DATA / "zero.json"), "--formal", "--order", "10", "--format", "csv",
               tmp_path=tmp_path)
    assert r.returncode == 0
    rows = list(csv.DictReader(io.StringIO(r.stdout)))
    assert [row["coefficient"] for row in rows] == ["1", "1", "2", "5", "14", "42"]
    r, _ = run("sd", "--potential", str(DATA / "quartic.json"), "--gamma", "--order", "200", tmp_path=tmp_path)
    assert r.returncode == 0
    assert abs(json.loads(r.stdout)["fit"]["gamma"] + 0.5) < 0.1
    r, _ = run("sd", "--potential", str(DATA / "quartic.json"), "--numeric", "--coupling", "g=-0.05",
               tmp_path=tmp_path)
    assert r.returncode == 1


def test_usage_errors(tmp_path):
    for args in (["verify", "--model", "bogus"], ["catalog"], ["sd"], ["nonsense"], ["catalog", "--necklace", "15:2"]):
        r, _ = run(*args, tmp_path=tmp_path)
        assert r.returncode == 2, args


def test_export_dot(tmp_path):
    r, _ = run("export-dot", "--tree", "2,2", tmp_path=tmp_path)
    assert r.returncode == 0 and r.stdout.startswith("graph")
