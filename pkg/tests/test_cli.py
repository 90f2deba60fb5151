import pytest

from birkhoff.cli import main
from birkhoff.dist import generate_manifest, read_manifest, write_manifest
from birkhoff.golden import golden_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr()


def test_count_dp(capsys):
    code, out = run(capsys, "count", "--n", 3, "--t", 2, "--engine", "dp")
    assert code == 0 and out.out.strip() == "21"


def test_count_series_and_out(capsys, tmp_path):
    code, out = run(capsys, "count", "--n", 2, "--t-max", 3, "--out", tmp_path / "c.txt")
    assert out.out.split("\n")[:4] == ["0 1", "1 2", "2 3", "3 4"]
    assert (tmp_path / "c.txt").read_text().splitlines()[3] == "n=2;t=3;value=4"


def test_engine_flag_transparency(capsys):
    for n in range(1, 5):
        for t in range(7):
            _, dp = run(capsys, "count", "--n", n, "--t", t, "--engine", "dp")
            _, ct = run(capsys, "count", "--n", n, "--t", t, "--engine", "ct")
            assert dp.out == ct.out, (n, t)


def test_volume_ct_record(capsys, tmp_path):
    out_file = tmp_path / "v.txt"
    code, out = run(capsys, "volume", "--n", 3, "--engine", "ct", "--out", out_file)
    assert code == 0
    fields = dict(line.split("=", 1) for line in out_file.read_text().splitlines())
    assert fields["volume"] == "9/8" and fields["leading"] == "1/8"
    assert fields["engine"] == "ct" and fields["degree"] == "4"


def test_out_files_are_byte_identical(capsys, tmp_path):
    run(capsys, "ehrhart", "--n", 4, "--engine", "ct", "--out", tmp_path / "a")
    run(capsys, "ehrhart", "--n", 4, "--engine", "ct", "--jobs", 2, "--out", tmp_path / "b")
    assert (tmp_path / "a").read_bytes() == (tmp_path / "b").read_bytes()


def test_verify_golden_b10(capsys):
    code, out = run(capsys, "verify", "--golden", "b10", "--volume-file", golden_path("b10"))
    assert code == 0 and "match" in out.out


def test_verify_golden_mismatch_and_structural(capsys, tmp_path):
    run(capsys, "volume", "--n", 3, "--out", tmp_path / "v3")
    code, _ = run(capsys, "verify", "--golden", "b10", "--volume-file", tmp_path / "v3")
    assert code == 1
    code, out = run(capsys, "verify", "--result", tmp_path / "v3")
    assert code == 0 and "functional-equation" in out.out
    text = (tmp_path / "v3").read_text().replace("coefficients=1/1,", "coefficients=2/1,")
    (tmp_path / "bad").write_text(text)
    code, out = run(capsys, "verify", "--result", tmp_path / "bad")
    assert code == 3 and "anchor" in out.err


def test_usage_errors_exit_64(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count", "--n", "x"])
    assert info.value.code == 64
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 64
    code, _ = run(capsys, "count", "--n", 3)
    assert code == 64


def test_status_progress(capsys, tmp_path):
    m = generate_manifest(3, [1, 2], 4)
    write_manifest(m, tmp_path / "m")
    log = tmp_path / "r"
    log.write_text("")
    code, out = run(capsys, "status", "--manifest", tmp_path / "m", "--results", log)
    assert out.out.startswith("0/6 done") and code == 2
    before = log.read_bytes()
    run(capsys, "worker", "--manifest", tmp_path / "m", "--results", log, "--lock-dir", tmp_path / "locks")
    code, out = run(capsys, "status", "--manifest", tmp_path / "m", "--results", log)
    assert out.out.startswith("6/6 done") and code == 0
    lines = log.read_text().splitlines()
    log.write_text("\n".join(lines[:4]) + "\n")
    snapshot = log.read_bytes()
    code, out = run(capsys, "status", "--manifest", tmp_path / "m", "--results", log)
    assert out.out.startswith("4/6 done") and log.read_bytes() == snapshot
    assert before == b""


def test_status_unreadable(capsys, tmp_path):
    code, _ = run(capsys, "status", "--manifest", tmp_path / "missing", "--results", tmp_path / "r")
    assert code == 2


def test_tasks_and_aggregate(capsys, tmp_path):
    run(capsys, "tasks", "--n", 3, "--ts", "1,2", "--chunk-size", 4, "--out", tmp_path / "m")
    assert len(read_manifest(tmp_path / "m").chunks) == 6
    log = tmp_path / "r"
    run(capsys, "worker", "--manifest", tmp_path / "m", "--results", log, "--lock-dir", tmp_path / "locks")
    code, out = run(capsys, "aggregate", "--manifest", tmp_path / "m", "--results", log, "--out", tmp_path / "agg")
    assert code == 0 and "H_3(2) = 21" in out.out
    assert "volume=9/8" in (tmp_path / "agg").read_text()
    lines = log.read_text().splitlines()
    log.write_text("\n".join(lines[1:]) + "\n")
    code, out = run(capsys, "aggregate", "--manifest", tmp_path / "m", "--results", log)
    assert code == 2 and "n=3;t=1;lo=0;hi=4" in out.err


def test_subprocess_entry_point_and_logging(cli):
    proc = cli("count", "--n", 4, "--t", 3, env={"BIRKHOFF_LOG": "debug"})
    assert proc.stdout.strip() == "2008"
    proc = cli("worker", "--connect", "127.0.0.1:1", "--retries", 1, "--backoff", 0.01,
               check=False, env={"BIRKHOFF_LOG": "info"})
    assert proc.returncode != 0 and "connect failed" in proc.stderr
