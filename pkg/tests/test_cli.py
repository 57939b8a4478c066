import json

import pytest

from ringreps.cli import main


def run(capsys, *argv):
    rc = main(list(argv))
    out = capsys.readouterr()
    return rc, out.out, out.err


def test_classes_known_counts(capsys):
    rc, out, _ = run(capsys, "classes", "--scheme", "sl(2)",
                     "--ring", "truncpoly(gf(2),r=3)")
    assert rc == 0 and "24 conjugacy classes" in out
    rc, out, _ = run(capsys, "classes", "--scheme", "sl(2)", "--ring", "zmod(2^3)")
    assert rc == 0 and "30 conjugacy classes" in out


def test_classes_r_override_and_json(capsys):
    rc, out, _ = run(capsys, "classes", "--scheme", "sl(2)",
                     "--ring", "truncpoly(gf(2),r=2)", "--r", "3", "--out", "json")
    assert rc == 0
    data = json.loads(out)
    assert data["num_classes"] == 24
    assert data["config"]["command"] == "classes"


def test_classes_abelian_csv(capsys):
    rc, out, _ = run(capsys, "classes", "--scheme", "gl(1)",
                     "--ring", "zmod(2^2)", "--out", "csv")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "class,size,centralizer_order"
    assert len(lines) == 3  # abelian: one class per element


def test_compare_exit_codes_and_output(capsys):
    rc, out, _ = run(capsys, "compare", "--scheme", "gl(2)", "--q", "2",
                     "--out", "json")
    assert rc == 0
    report = json.loads(out)
    assert report["verdicts"]["global_equal"]
    assert report["config"]["q"] == 2


def test_compare_exploratory_exit_zero(capsys):
    rc, out, _ = run(capsys, "compare", "--scheme", "sl(2)", "--q", "2",
                     "--out", "json")
    assert rc == 0
    assert json.loads(out)["verdicts"]["exploratory"]


def test_compare_cache_byte_identical(tmp_path, capsys):
    args = ("compare", "--scheme", "sl(2)", "--q", "3", "--out", "json",
            "--cache-dir", str(tmp_path))
    rc1, out1, _ = run(capsys, *args)
    rc2, out2, _ = run(capsys, *args)
    assert rc1 == rc2 == 0
    assert out1 == out2
    assert any(tmp_path.iterdir())
    # a different seed misses the cache and is computed fresh
    rc3, out3, _ = run(capsys, *args, "--seed", "1")
    assert rc3 == 0
    assert json.loads(out3)["seed"] == 1


def test_compare_csv(capsys):
    rc, out, _ = run(capsys, "compare", "--scheme", "gl(2)", "--q", "2",
                     "--out", "csv")
    assert rc == 0
    lines = out.strip().splitlines()
    assert lines[0] == "ring,dimension,count"
    assert len(lines) > 2


def test_verify_passes(capsys):
    rc, out, _ = run(capsys, "verify", "--scheme", "sl(2)", "--ring", "zmod(3^2)")
    assert rc == 0
    data = json.loads(out)
    assert all(chk["pass"] for chk in data["checks"].values())
    assert data["checks"]["exp_twist_law"]["twist"] == 1
    assert data["checks"]["exp_twist_law"]["failures"] == 0


def test_bound_refusal_exit_3(capsys):
    rc, _, err = run(capsys, "classes", "--scheme", "sl(2)", "--ring", "gf(7)",
                     "--max-order", "100")
    assert rc == 3
    assert "336" in err  # actionable message names the required bound


def test_bad_descriptor_exit_2(capsys):
    rc, _, err = run(capsys, "classes", "--scheme", "sl(2)", "--ring", "nope(1)")
    assert rc == 2 and "error" in err


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    rc = main(["compare", "--scheme", "sl(2)", "--q", "3", "--out", "json",
               "--out-file", str(path)])
    assert rc == 0
    assert json.loads(path.read_text())["verdicts"]["global_equal"]
