import json
import subprocess
import sys

import pytest

from damage_lab import cli
from damage_lab.cache import CACHE_ENV, CacheRecord, ResultCache


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    return code, json.loads(out.strip().splitlines()[-1])


@pytest.fixture(autouse=True)
def no_env_cache(monkeypatch):
    monkeypatch.delenv(CACHE_ENV, raising=False)


class TestCompute:
    @pytest.mark.parametrize("metric,spec,want", [
        ("dmg", "cycle:7", 3), ("dmg", "product:complete:3xcomplete:3", 3),
        ("dmgprime", "cycle:6", 3), ("capt", "path:5", 2), ("capt", "cycle:4", "inf"),
        ("rad", "cycle:7", 3), ("copwin", "cycle:4", False)])
    def test_values(self, capsys, metric, spec, want):
        code, d = run_json(capsys, "compute", metric, spec)
        assert code == 0 and d["value"] == want

    def test_text_output(self, capsys):
        code, out, _ = run(capsys, "compute", "dmg", "cycle:5")
        assert code == 0 and out.startswith("dmg = 2")

    def test_budget_exit(self, capsys):
        code, _, err = run(capsys, "compute", "dmg", "cycle:10", "--max-states", "1000")
        assert code == 3 and "budget" in err

    def test_disconnected_is_usage(self, capsys):
        code, _, err = run(capsys, "compute", "dmg", "edges:3:0-1")
        assert code == 2 and err

    @pytest.mark.parametrize("argv", [["compute", "dmg", "cycle:x"], ["compute", "nope", "cycle:4"],
                                      ["compute"], ["frobnicate"]])
    def test_usage_errors(self, capsys, argv):
        assert run(capsys, *argv)[0] == 2


class TestCache:
    def test_hit_after_miss(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        _, first = run_json(capsys, "compute", "dmg", "cycle:6", "--cache", str(path), "--recheck", "0")
        _, second = run_json(capsys, "compute", "dmgprime", "cycle:6", "--cache", str(path),
                             "--recheck", "0")
        assert not first["cached"] and second["cached"] and second["value"] == 3
        assert len(path.read_text().splitlines()) == 1

    def test_env_variable(self, capsys, tmp_path, monkeypatch):
        path = tmp_path / "env.jsonl"
        monkeypatch.setenv(CACHE_ENV, str(path))
        run_json(capsys, "compute", "dmg", "cycle:5")
        assert ResultCache(path).lookup("cycle:5").dmg == 2
        run_json(capsys, "compute", "dmg", "cycle:5", "--no-cache")
        assert len(path.read_text().splitlines()) == 1

    def test_version_mismatch_is_ignored(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        stale = CacheRecord("cycle:5", 5, 99, 99, 99, 2, solver_version="0")
        ResultCache(path).append(stale)
        _, d = run_json(capsys, "compute", "dmg", "cycle:5", "--cache", str(path))
        assert d["value"] == 2 and not d["cached"]

    def test_recheck_catches_a_bad_record(self, capsys, tmp_path):
        path = tmp_path / "c.jsonl"
        ResultCache(path).append(CacheRecord("cycle:5", 5, 7, 7, "inf", 2))
        _, d = run_json(capsys, "compute", "dmg", "cycle:5", "--cache", str(path), "--recheck", "1")
        assert d["value"] == 2 and not d["cached"]

    def test_torn_line_is_skipped(self, tmp_path):
        path = tmp_path / "c.jsonl"
        rec = CacheRecord("path:3", 3, 0, 1, 1, 1)
        ResultCache(path).append(rec)
        with path.open("a") as fh:
            fh.write('{"graph_key": "path:3", "n"')
        assert ResultCache(path).lookup("path:3") == rec

    def test_record_round_trip(self):
        rec = CacheRecord("cycle:4", 4, 1, 2, "inf", 2, [0, 1, 2, 3])
        line = rec.to_json()
        assert json.loads(line)["schema"] == "damage-lab/cache-record/1"
        assert CacheRecord.from_json(line) == rec


class TestVerify:
    def test_pass(self, capsys):
        code, out, _ = run(capsys, "verify", "radius-lower-bound", "--enum", "4")
        assert code == 0 and "radius-lower-bound" in out

    def test_fail_exit_and_counterexample(self, capsys, tmp_path):
        out_file = tmp_path / "r.jsonl"
        code, out, _ = run(capsys, "verify", "cycle-formula", "--max", "4", "--out", str(out_file))
        assert code == 1
        rows = [json.loads(line) for line in out_file.read_text().splitlines()]
        bad = [r for r in rows if r["verdict"] == "fail"]
        assert [r["instance"] for r in bad] == ["cycle:3"]
        assert bad[0]["counterexample"]["graph6"]

    def test_inconclusive_exit(self, capsys):
        code, _, _ = run(capsys, "verify", "prime-range", "--family", "cycle:9", "--max-states", "10")
        assert code == 3

    def test_unknown_check(self, capsys):
        assert run(capsys, "verify", "nope")[0] == 2

    def test_corpus_file(self, capsys, tmp_path):
        f = tmp_path / "g.g6"
        f.write_text("Bw\nCr\n")
        code, out, _ = run(capsys, "verify", "prime-range", "--corpus", str(f), "--json")
        assert code == 0 and len(out.splitlines()) == 2


class TestSimulate:
    def test_oscillation(self, capsys):
        code, d = run_json(capsys, "simulate", "cycle:6", "--cop", "oscillation",
                           "--robber", "solver-optimal", "--robber-start", "4")
        assert code == 0 and d["damage"] == 2

    def test_two_phase_vs_shadow(self, capsys, tmp_path):
        t = tmp_path / "t.jsonl"
        code, d = run_json(capsys, "simulate", "product:cycle:4xcycle:5", "--cop", "two-phase",
                           "--robber", "shadow", "--transcript", str(t))
        assert code == 0 and d["damage"] <= 8 and t.read_text()

    def test_tree_center(self, capsys):
        code, d = run_json(capsys, "simulate", "path:5", "--cop", "tree-center", "--robber",
                           "solver-optimal")
        assert d["damage"] == 1

    def test_text_transcript(self, capsys):
        code, out, _ = run(capsys, "simulate", "cycle:4", "--cop", "stationary", "--robber", "stationary")
        assert code == 0 and "damage 1" in out and "state-cycle" in out

    def test_incompatible_host(self, capsys):
        assert run(capsys, "simulate", "cycle:7", "--cop", "oscillation", "--robber", "stationary")[0] == 2

    def test_unknown_strategy(self, capsys):
        assert run(capsys, "simulate", "cycle:7", "--cop", "nope", "--robber", "stationary")[0] == 2

    def test_round_cap(self, capsys):
        code, _, _ = run(capsys, "simulate", "cycle:8", "--cop", "cycle-opposition", "--robber",
                         "stationary", "--rounds", "0")
        assert code == 3


class TestBestResponse:
    def test_cycle_opposition(self, capsys):
        code, d = run_json(capsys, "bestresponse", "cycle:9", "--fix", "cop:cycle-opposition")
        assert code == 0 and d["value"] == 4 and d["bound"] == "dmg <= 4"

    def test_shadow_lower_bound(self, capsys):
        code, d = run_json(capsys, "bestresponse", "product:cycle:4xcycle:4", "--fix", "robber:shadow",
                           "--cap", "4")
        assert code == 0 and d["bound"] == "dmg >= 4"

    def test_stationary_on_k4(self, capsys):
        _, plain = run_json(capsys, "bestresponse", "complete:4", "--fix", "cop:stationary")
        _, prime = run_json(capsys, "bestresponse", "complete:4", "--fix", "cop:stationary", "--prime")
        assert (plain["value"], prime["value"]) == (0, 1)

    def test_not_adjacent_prime(self, capsys):
        _, d = run_json(capsys, "bestresponse", "cycle:8", "--fix", "cop:cycle-opposition",
                        "--prime", "--not-adjacent")
        assert d["value"] == 4

    def test_bad_fix(self, capsys):
        assert run(capsys, "bestresponse", "cycle:5", "--fix", "stationary")[0] == 2

    def test_budget(self, capsys):
        code, _, _ = run(capsys, "bestresponse", "product:cycle:4xcycle:5", "--fix", "cop:two-phase",
                         "--max-states", "100")
        assert code == 3


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "damage_lab.cli", "compute", "dmg", "cycle:5"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "dmg = 2" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "damage_lab.cli", "compute", "dmg", "cycle:0"],
                          capture_output=True, text=True)
    assert proc.returncode == 2
