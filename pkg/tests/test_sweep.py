import io
import json

import pytest

import locdim.verify as verify_mod
from locdim.graph import decode_graph6, encode_graph6, gtw
from locdim.sweep import SweepConfig, default_jobs, iter_source, run_sweep
from locdim.verify import EQUALITY


def write_corpus(tmp_path, lines):
    p = tmp_path / "corpus.g6"
    p.write_text("\n".join(lines) + "\n")
    return str(p)


def collect(cfg, **kw):
    rows = []
    summary = run_sweep(cfg, lambda rep: rows.append(rep.to_json()), **kw)
    return summary, rows


def test_equality_family_corpus(tmp_path):
    path = write_corpus(tmp_path, [encode_graph6(gtw(t, w)) for t, w in [(2, 3), (2, 4), (3, 3)]])
    summary, rows = collect(SweepConfig(path=path))
    assert summary.rows == 3 == len(rows)
    assert summary.equality == 3 and summary.violations == 0
    assert [json.loads(r)["checks"]["main_bound"] for r in rows] == [EQUALITY] * 3


def test_malformed_lines_are_reported_and_skipped(tmp_path):
    path = write_corpus(tmp_path, ["Bw", "not!graph6", "", "D{c", "A_x"])
    summary, rows = collect(SweepConfig(path=path))
    assert [ln for ln, _ in summary.malformed] == [2, 5]
    assert summary.graphs_seen == 2 and summary.rows == 1  # K_3 is filtered, D{c kept


def test_builtin_counts():
    summary, _ = collect(SweepConfig(builtin_n=5, builtin_min_n=5, applicable_only=False,
                                     checks=("theorem",)))
    assert summary.graphs_seen == 1024 and summary.rows == 728
    summary, _ = collect(SweepConfig(builtin_n=5, builtin_min_n=5, checks=("theorem",)))
    assert summary.rows == 520


def test_omega_filters():
    summary, rows = collect(SweepConfig(builtin_n=5, builtin_min_n=5, omega_min=4, checks=("theorem",)))
    assert rows and all(json.loads(r)["omega"] == 4 for r in rows)


def test_random_model_is_seeded():
    cfg = SweepConfig(random_count=25, random_n=9, random_p=0.4, plant_omega=4, seed=11)
    a, b = collect(cfg)[1], collect(cfg)[1]
    assert a == b and len(a) >= 1
    assert all(json.loads(r)["omega"] >= 4 for r in a)
    other = collect(SweepConfig(random_count=25, random_n=9, random_p=0.4, plant_omega=4, seed=12))[1]
    assert other != a
    first_id = next(iter_source(cfg))[1]
    assert first_id.startswith("seed=11#0:")
    assert decode_graph6(first_id.split(":", 1)[1]).n == 9


def test_reports_identical_across_job_counts():
    base = dict(builtin_n=5, chunk_size=97)
    one = collect(SweepConfig(jobs=1, **base))
    two = collect(SweepConfig(jobs=2, **base))
    assert one[1] == two[1]
    assert one[0].to_dict() == two[0].to_dict()


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig()
    with pytest.raises(ValueError):
        SweepConfig(builtin_n=8)
    with pytest.raises(ValueError):
        SweepConfig(random_count=3)
    with pytest.raises(ValueError):
        SweepConfig(builtin_n=3, checks=("magic",))
    with pytest.raises(ValueError):
        SweepConfig(builtin_n=3, path="x.g6")


def test_violation_halts_with_counterexample(tmp_path, monkeypatch):
    monkeypatch.setattr(verify_mod, "bound", lambda n, w: 0)
    out = tmp_path / "cx.json"
    summary, rows = collect(SweepConfig(builtin_n=5), counterexample_path=str(out))
    assert summary.halted and summary.violations == 1 and len(rows) == 1
    saved = json.loads(out.read_text())
    assert saved == summary.counterexample and saved["checks"]["main_bound"] == "fails"


def test_default_jobs(monkeypatch):
    monkeypatch.setenv("LOCDIM_JOBS", "3")
    assert default_jobs() == 3
    monkeypatch.setenv("LOCDIM_JOBS", "many")
    assert default_jobs() == 1
