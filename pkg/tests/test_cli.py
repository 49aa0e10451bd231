import json
import subprocess
import sys

import pytest

from jumploci import serialize
from jumploci.fixtures import mellin_constant_torus, shift_fixture


def run_cli(*args, **kwargs):
    return subprocess.run(
        [sys.executable, "-m", "jumploci.cli", *args],
        capture_output=True,
        text=True,
        **kwargs,
    )


@pytest.fixture
def m2_files(tmp_path):
    fx = mellin_constant_torus(2)
    cx = tmp_path / "m2.complex"
    loci = tmp_path / "m2.loci"
    cx.write_text(serialize.dump_complex(fx.complex))
    loci.write_text(serialize.dump_loci(fx.profile))
    return cx, loci


def test_validate_pass(m2_files):
    cx, _ = m2_files
    result = run_cli("validate", str(cx))
    assert result.returncode == 0
    assert "ok: True" in result.stdout


def test_validate_checked_and_failed(tmp_path):
    bad = tmp_path / "bad.complex"
    bad.write_text(
        "ring vars=t1 torus=1 abelian=0\n"
        "degrees -1..1\n"
        "ranks 1,1,1\n"
        "differential -1\n"
        "t1 - 1\n"
        "differential 0\n"
        "t1 - 1\n"
    )
    result = run_cli("validate", str(bad))
    assert result.returncode == 1
    assert "ok: False" in result.stdout


def test_validate_malformed_input(tmp_path):
    junk = tmp_path / "junk.complex"
    junk.write_text("word salad\n")
    result = run_cli("validate", str(junk))
    assert result.returncode == 2
    assert "input error" in result.stderr


def test_missing_file_is_input_error():
    result = run_cli("validate", "/nonexistent/path.complex")
    assert result.returncode == 2


def test_jump_ideals_report(m2_files):
    cx, _ = m2_files
    result = run_cli("jump-ideals", str(cx), "--degrees=-1..0", "--json")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    degrees = {e["degree"]: e for e in doc["degrees"]}
    assert set(degrees) == {-1, 0}
    assert degrees[0]["saturated_basis"] == ["t1 - 1", "t2 - 1"]


def test_exactness_pass_and_fail(m2_files, tmp_path):
    cx, _ = m2_files
    assert run_cli("exactness", str(cx)).returncode == 0
    shifted = shift_fixture(mellin_constant_torus(2), -1)
    f = tmp_path / "shifted.complex"
    f.write_text(serialize.dump_complex(shifted.complex))
    result = run_cli("exactness", str(f))
    assert result.returncode == 1
    assert "assumption_holds: False" in result.stdout


def test_perversity_complex_with_loci(m2_files):
    cx, loci = m2_files
    result = run_cli("perversity", str(cx), "--loci", str(loci), "--samples", "15", "--seed", "4")
    assert result.returncode == 0
    assert "verdict: perverse" in result.stdout


def test_perversity_loci_only(m2_files):
    _, loci = m2_files
    result = run_cli("perversity", str(loci), "--json")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert doc["verdict"] == "perverse"
    assert doc["provenance"]["conditions"] == "exact"


def test_perversity_failing_fixture(tmp_path):
    fx = shift_fixture(mellin_constant_torus(2), 1)
    cxf = tmp_path / "s.complex"
    locif = tmp_path / "s.loci"
    cxf.write_text(serialize.dump_complex(fx.complex))
    locif.write_text(serialize.dump_loci(fx.profile))
    result = run_cli("perversity", str(cxf), "--loci", str(locif), "--json")
    assert result.returncode == 1
    doc = json.loads(result.stdout)
    assert doc["verdict"] == "lower-only"
    assert any(v["degree"] == 1 for v in doc["violations"])


def test_perversity_complex_requires_loci(m2_files):
    cx, _ = m2_files
    result = run_cli("perversity", str(cx))
    assert result.returncode == 2


def test_perversity_rejects_mismatched_declaration(m2_files, tmp_path):
    cx, _ = m2_files
    wrong = mellin_constant_torus(2)
    profile = wrong.profile.shift(0)
    doc = json.loads(serialize.dump_loci(profile))
    doc["loci"]["0"][0]["translate"] = [["2", "0"], ["1", "0"]]
    bad = tmp_path / "wrong.loci"
    bad.write_text(json.dumps(doc))
    result = run_cli("perversity", str(cx), "--loci", str(bad))
    assert result.returncode == 2
    assert "witness" in result.stderr


def test_codims_report(m2_files):
    _, loci = m2_files
    result = run_cli("codims", str(loci), "--json")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    entry = {e["degree"]: e for e in doc["degrees"]}[0]
    assert entry["codim_sa"] == "2" and entry["codim_a"] == "0"


def test_codims_reports_rejections(tmp_path):
    doc = {
        "format": "jumploci-loci",
        "ring": {"vars": ["t1", "t2"], "torus": 0, "abelian": 1},
        "loci": {"0": [{"translate": [["1", "0"], ["1", "0"]], "lattice": [[1, 0]]}]},
    }
    f = tmp_path / "odd.loci"
    f.write_text(json.dumps(doc))
    result = run_cli("codims", str(f), "--json")
    assert result.returncode == 2
    out = json.loads(result.stdout)
    assert out["rejected_components"]


def test_fixtures_round_trip(tmp_path):
    cxf = tmp_path / "fx.complex"
    locif = tmp_path / "fx.loci"
    result = run_cli(
        "fixtures", "induce", "--m", "1", "--n", "2",
        "--complex-out", str(cxf), "--loci-out", str(locif),
    )
    assert result.returncode == 0
    assert run_cli("validate", str(cxf)).returncode == 0
    assert run_cli("perversity", str(cxf), "--loci", str(locif)).returncode == 0


def test_fixtures_stdout_document():
    result = run_cli("fixtures", "mellin", "--m", "1")
    assert result.returncode == 0
    assert result.stdout.startswith("ring vars=t1")
    assert "jumploci-loci" in result.stdout


def test_sample_command(m2_files, tmp_path):
    cx, _ = m2_files
    pts = tmp_path / "points.json"
    pts.write_text(json.dumps([[["1", "0"], ["1", "0"]], [["2", "0"], ["1", "0"]]]))
    result = run_cli("sample", str(cx), "--points", str(pts), "--degrees=0..0", "--json")
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert doc["points"][0]["memberships"]["0"]["member"] is True
    assert doc["points"][1]["memberships"]["0"]["member"] is False


def test_reports_byte_identical_across_runs(m2_files):
    cx, loci = m2_files
    args = ("perversity", str(cx), "--loci", str(loci), "--samples", "20", "--seed", "9", "--json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.stdout == second.stdout
    assert first.returncode == second.returncode == 0


def test_threads_flag_accepted(m2_files):
    cx, _ = m2_files
    serial = run_cli("jump-ideals", str(cx), "--json")
    threaded = run_cli("jump-ideals", str(cx), "--threads", "4", "--json")
    assert threaded.returncode == 0
    assert serial.stdout == threaded.stdout


def test_spair_budget_env_triggers_resource_exit(m2_files):
    import os

    cx, _ = m2_files
    env = dict(os.environ, JUMPLOCI_SPAIR_BUDGET="1")
    result = subprocess.run(
        [sys.executable, "-m", "jumploci.cli", "jump-ideals", str(cx)],
        capture_output=True,
        text=True,
        env=env,
    )
    assert result.returncode == 3
    assert "resource cap" in result.stderr


def test_module_entry_point(m2_files):
    cx, _ = m2_files
    result = subprocess.run(
        [sys.executable, "-m", "jumploci", "validate", str(cx)],
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
