"""End-to-end tests driving the real command-line interface."""

import json
import subprocess
import sys

import pytest

CLI = [sys.executable, "-m", "knowlock.cli"]

SENTINEL_VALUE = "sentinel-secret-zy81-never-printed"


def run_cli(*args, stdin: bytes = b"", env=None):
    return subprocess.run(
        [*CLI, *args],
        input=stdin,
        capture_output=True,
        timeout=120,
        env=env,
    )


@pytest.fixture
def workdir(tmp_path):
    (tmp_path / "post.txt").write_bytes(b"my protected announcement\nsecond line\n")
    return tmp_path


def _protect(workdir, *extra, threshold="3"):
    return run_cli(
        "protect",
        "--attr", "First name=John",
        "--attr", f"Home town={SENTINEL_VALUE}",
        "--attr", "University=TU Darmstadt",
        "--attr", "Pet=Snowball",
        "--threshold", threshold,
        "--in", str(workdir / "post.txt"),
        "--out", str(workdir / "post.env"),
        *extra,
    )


def test_protect_then_access_roundtrip(workdir):
    result = _protect(workdir)
    assert result.returncode == 0, result.stderr
    assert "n=4 t=3" in result.stderr.decode()

    out = run_cli(
        "access",
        "--in", str(workdir / "post.env"),
        "--value", "1=john",
        "--value", f"2={SENTINEL_VALUE}",
        "--value", "4=snowball",
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout == (workdir / "post.txt").read_bytes()


def test_protect_never_prints_values(workdir):
    result = _protect(workdir)
    assert SENTINEL_VALUE.encode() not in result.stdout
    assert SENTINEL_VALUE.encode() not in result.stderr
    assert SENTINEL_VALUE.encode() not in (workdir / "post.env").read_bytes()


def test_protect_threshold_exceeding_n_fails(workdir):
    result = _protect(workdir, threshold="5")
    assert result.returncode == 3


def test_protect_bad_attr_syntax(workdir):
    result = run_cli(
        "protect", "--attr", "no separator here",
        "--in", str(workdir / "post.txt"), "--out", "-",
    )
    assert result.returncode == 2


def test_protect_seeded_is_reproducible(workdir):
    a = _protect(workdir, "--seed", "9")
    env_a = (workdir / "post.env").read_bytes()
    b = _protect(workdir, "--seed", "9")
    env_b = (workdir / "post.env").read_bytes()
    assert a.returncode == b.returncode == 0
    assert env_a == env_b


def test_access_wrong_value_exits_zero_with_warning(workdir):
    assert _protect(workdir).returncode == 0
    out = run_cli(
        "access",
        "--in", str(workdir / "post.env"),
        "--value", "1=john",
        "--value", "2=wrong town",
        "--value", "4=snowball",
    )
    assert out.returncode == 0
    assert out.stdout != (workdir / "post.txt").read_bytes()
    assert b"may be wrong" in out.stderr


def test_access_wrong_guess_count_exits_three(workdir):
    assert _protect(workdir).returncode == 0
    out = run_cli(
        "access", "--in", str(workdir / "post.env"), "--value", "1=john",
    )
    assert out.returncode == 3


def test_access_malformed_envelope_exits_five(workdir):
    assert _protect(workdir).returncode == 0
    doc = json.loads((workdir / "post.env").read_text())
    doc["n"] = 3
    (workdir / "broken.env").write_text(json.dumps(doc))
    out = run_cli(
        "access", "--in", str(workdir / "broken.env"), "--value", "1=john",
    )
    assert out.returncode == 5


def test_access_missing_file_exits_four(workdir):
    out = run_cli(
        "access", "--in", str(workdir / "nope.env"), "--value", "1=x",
    )
    assert out.returncode == 4


def test_stdin_stdout_pipe(workdir):
    result = run_cli(
        "protect", "--attr", "k=v", "--threshold", "1",
        stdin=b"piped content",
    )
    assert result.returncode == 0
    out = run_cli("access", "--value", "1=v", stdin=result.stdout)
    assert out.returncode == 0
    assert out.stdout == b"piped content"


def test_attrs_add_list_rm(workdir):
    store = str(workdir / "store.json")
    assert run_cli("attrs", "add", "--store", store, "--desc", "Name",
                   "--value", SENTINEL_VALUE).returncode == 0
    shown = run_cli("attrs", "list", "--store", store)
    assert shown.returncode == 0
    assert b"Name" in shown.stdout
    assert SENTINEL_VALUE.encode() not in shown.stdout  # masked by default
    revealed = run_cli("attrs", "list", "--store", store, "--reveal")
    assert SENTINEL_VALUE.encode() in revealed.stdout

    removed = run_cli("attrs", "rm", "--store", store, "--desc", "Name")
    assert removed.returncode == 0
    again = run_cli("attrs", "rm", "--store", store, "--desc", "Name")
    assert again.returncode == 0  # idempotent delete
    assert b"nothing" in again.stderr


def test_attrs_add_empty_value_rejected(workdir):
    result = run_cli(
        "attrs", "add", "--store", str(workdir / "s.json"),
        "--desc", "Name", "--value", "   ",
    )
    assert result.returncode == 2


def test_auto_access_from_store(workdir):
    store = str(workdir / "store.json")
    assert _protect(workdir).returncode == 0
    for desc, value in [
        ("First name", "john"),
        ("Home town", SENTINEL_VALUE),
        ("University", "tu darmstadt"),
    ]:
        run_cli("attrs", "add", "--store", store, "--desc", desc, "--value", value)
    out = run_cli(
        "access", "--auto", "--store", store, "--in", str(workdir / "post.env"),
    )
    assert out.returncode == 0, out.stderr
    assert out.stdout == (workdir / "post.txt").read_bytes()
    assert SENTINEL_VALUE.encode() not in out.stderr


def test_auto_access_no_match_exits_one(workdir):
    store = str(workdir / "store.json")
    assert _protect(workdir).returncode == 0
    run_cli("attrs", "add", "--store", store, "--desc", "First name",
            "--value", "wrong")
    out = run_cli(
        "access", "--auto", "--store", store, "--in", str(workdir / "post.env"),
    )
    assert out.returncode == 1


def test_store_env_variable(workdir, monkeypatch):
    store = workdir / "env-store.json"
    env = {"KNOWLOCK_STORE": str(store), "PATH": "/usr/bin:/bin"}
    result = run_cli(
        "attrs", "add", "--desc", "Name", "--value", "john", env=env
    )
    assert result.returncode == 0, result.stderr
    assert store.exists()


BASIS_CSV = """description,value,count
Name,john,50
Name,jane,30
Name,alex,20
Town,berlin,70
Town,paris,30
"""

TARGETS_CSV = """profile_id,description,value
p0,Name,john
p0,Town,berlin
p1,Name,jane
p1,Town,paris
p2,Name,nobody
p2,Town,berlin
"""


def test_attack_end_to_end(workdir):
    (workdir / "basis.csv").write_text(BASIS_CSV)
    (workdir / "targets.csv").write_text(TARGETS_CSV)
    result = run_cli(
        "attack",
        "--basis", str(workdir / "basis.csv"),
        "--targets", str(workdir / "targets.csv"),
        "--threshold", "2",
        "--budget", "100",
        "--out-dir", str(workdir / "out"),
    )
    assert result.returncode == 0, result.stderr
    report = json.loads((workdir / "out" / "report.json").read_text())
    assert report["target_count"] == 3
    assert report["per_profile_trials"]["p0"] == 1  # both rank-1 values
    assert report["per_profile_trials"]["p2"] is None  # value outside basis
    payoff = (workdir / "out" / "payoff.csv").read_text().splitlines()
    assert payoff[0] == "budget,fraction_accessed"


def test_attack_inconsistent_corpus_exits_six(workdir):
    (workdir / "basis.csv").write_text("description,value,count\nName,john,1\n")
    (workdir / "targets.csv").write_text(TARGETS_CSV)
    result = run_cli(
        "attack",
        "--basis", str(workdir / "basis.csv"),
        "--targets", str(workdir / "targets.csv"),
        "--threshold", "1",
        "--out-dir", str(workdir / "out"),
    )
    assert result.returncode == 6


def test_bench_runs_floor(workdir):
    result = run_cli("bench", "--suite", "keygen", "--runs", "10")
    assert result.returncode == 2


def test_bench_unknown_suite(workdir):
    result = run_cli("bench", "--suite", "nonsense")
    assert result.returncode == 2


def test_bench_keygen_csv(workdir):
    result = run_cli(
        "bench", "--suite", "keygen", "--runs", "30",
        "--schemes", "1-of-1,2-of-3",
    )
    assert result.returncode == 0, result.stderr
    lines = result.stdout.decode().strip().splitlines()
    assert lines[0] == "suite,n,t,size_bytes,mean_ms,stddev_ms,runs"
    assert len(lines) == 3
