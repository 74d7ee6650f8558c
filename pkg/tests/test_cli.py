import csv
import io
import json
import subprocess
import sys

import pytest

from etbounds.cli import fmt, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def report(text):
    return dict(line.split(" = ", 1) for line in text.strip().splitlines())


def test_fmt():
    assert fmt(1.0) == "1"
    assert fmt(0) == "0"
    assert fmt(0.0) == "0"
    assert fmt(-17543.3210707946) == "-17543.3210708"
    assert fmt(1234567.0) == "1.234567e+06"
    assert fmt(3.2e-5) == "3.2e-05"
    assert fmt(1 / 3) == "0.333333333333"
    assert fmt(None) == ""
    assert fmt(12) == "12"
    assert fmt(0.0001) == "0.0001"


def test_solve_harmonic_custom(capsys):
    code, out, _ = run(capsys, "solve", "--kinetic", "p^2/(2*m)", "--param", "m=1", "--potential", "x*x",
                       "--builtin-none", "-N", "2", "--stats", "boson")
    assert code == 0
    r = report(out)
    assert float(r["E"]) == pytest.approx(1.0, rel=1e-11)
    assert r["bound"] == "Exact"
    assert r["n_roots"] == "1"


def test_solve_calogero(capsys):
    code, out, _ = run(capsys, "solve", "--model", "calogero", "--param", "m=1", "--param", "omega=1",
                       "--param", "g=1", "-N", "3", "--stats", "fermion")
    r = report(out)
    assert code == 0
    assert float(r["E"]) == pytest.approx(5.744563, abs=1e-6)
    assert r["bound"] == "LowerBound"


def test_solve_exit_codes(capsys):
    code, _, err = run(capsys, "solve", "--model", "gaussian", "--inv-mass", "43.281307", "--V0", "10",
                       "--a", "0.2", "-N", "20", "--stats", "boson")
    assert code == 4
    assert "irrelevant" in err
    code, _, _ = run(capsys, "solve", "--potential", "1/x^2", "-N", "3")
    assert code == 3
    code, _, _ = run(capsys, "solve", "--potential", "x*y", "-N", "3")
    assert code == 2
    code, _, _ = run(capsys, "solve", "--potential", "x^2 +", "-N", "3")
    assert code == 2
    with pytest.raises(SystemExit) as info:
        main(["solve", "--potential", "x^2"])
    assert info.value.code == 2


def test_solve_excited_state_label(capsys):
    code, out, _ = run(capsys, "solve", "--model", "harmonic", "-N", "3", "--occ", "1,0")
    r = report(out)
    assert code == 0
    assert float(r["Q"]) == 2.0
    assert "no bound guarantee asserted" in r["note"]


def test_solve_json_matches_text(capsys):
    args = ["solve", "--model", "gaussian", "--param", "v_g=1", "--param", "a=1", "--param", "m=1", "-N", "2"]
    _, text, _ = run(capsys, *args)
    _, js, _ = run(capsys, *args, "--json")
    r, j = report(text), json.loads(js)
    assert j["E"] == float(r["E"]) == pytest.approx(-0.13954, abs=1e-5)
    assert j["bound"] == r["bound"] == "UpperBound"
    assert j["n_roots"] == 2


def test_calogero_sweep(capsys):
    code, out, _ = run(capsys, "calogero-sweep", "--N", "2:100", "--g-prime", "1")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["N", "g_prime", "E_exact", "E_et", "delta_c", "delta_limit"]
    assert len(rows) == 99
    deltas = [float(r["delta_c"]) for r in rows]
    assert all(b > a for a, b in zip(deltas, deltas[1:]))
    assert deltas[-1] < 0.381966 < deltas[-1] + 0.02
    assert float(rows[1]["delta_c"]) == pytest.approx(0.198781, abs=1e-6)
    _, out, _ = run(capsys, "calogero-sweep", "--N", "2:30", "--g-prime", "0")
    assert {r["delta_c"] for r in csv.DictReader(io.StringIO(out))} == {"0"}


def test_gauss_sweep(capsys):
    code, out, _ = run(capsys, "gauss-sweep", "--N", "3,5,20,100", "--a", "0.2,0.5,1.0",
                       "--V0", "10", "--inv-mass", "43.281307")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert code == 0
    assert list(rows[0]) == ["N", "a", "V_g", "Y", "W0_Y", "E_et_K", "status"]
    assert len(rows) == 12
    by_key = {(r["N"], r["a"]): r for r in rows}
    assert by_key[("20", "0.2")]["status"] == "irrelevant"
    assert by_key[("20", "0.2")]["E_et_K"] == ""
    assert float(by_key[("100", "1")]["E_et_K"]) == pytest.approx(-1.75e4, rel=0.01)
    for r in rows:
        if r["status"] == "ok":
            assert float(r["E_et_K"]) < 0


def test_sweeps_json_same_numbers(capsys):
    for cmd in (["calogero-sweep", "--N", "2:12"], ["gauss-sweep"]):
        _, text, _ = run(capsys, *cmd)
        _, js, _ = run(capsys, *cmd, "--json")
        rows = list(csv.DictReader(io.StringIO(text)))
        records = json.loads(js)
        assert len(rows) == len(records)
        for row, rec in zip(rows, records):
            assert list(row) == list(rec)
            for k, v in row.items():
                if v == "":
                    assert rec[k] is None
                elif k == "status":
                    assert rec[k] == v
                else:
                    assert rec[k] == float(v)


def test_output_file_and_ascii(tmp_path, capsys):
    path = tmp_path / "g.csv"
    assert main(["gauss-sweep", "-o", str(path)]) == 0
    raw = path.read_bytes()
    raw.decode("ascii")
    assert raw.startswith(b"N,a,V_g,Y,W0_Y,E_et_K,status\n")


def _sweep(tmp_path):
    path = tmp_path / "sweep.csv"
    main(["gauss-sweep", "-o", str(path)])
    return path


def test_compare_self_reference_gives_zero(tmp_path, capsys):
    sweep = _sweep(tmp_path)
    rows = list(csv.DictReader(sweep.open()))
    ref = tmp_path / "ref.csv"
    lines = ["model,N,a,e_ref_K"] + [f"gaussian,{r['N']},{r['a']},{r['E_et_K']}" for r in rows if r["status"] == "ok"]
    ref.write_text("\n".join(lines) + "\n")
    code, out, _ = run(capsys, "compare", "--sweep", str(sweep), "--reference", str(ref))
    assert code == 0
    out_rows = list(csv.DictReader(io.StringIO(out)))
    assert list(out_rows[0])[-2:] == ["e_ref", "delta_g"]
    for r in out_rows:
        if r["status"] == "ok":
            assert r["delta_g"] == "0"
        else:
            assert r["e_ref"] == "" and r["delta_g"] == ""


def test_compare_reference_errors(tmp_path, capsys):
    sweep = _sweep(tmp_path)
    cases = {
        "model,N,a,e_ref_mK\ngaussian,100,1.0,-1\n": "unit mismatch",
        "model,N,a,e_ref_K\ngaussian,100,1.0,-1\ngaussian,100,1,-2\n": ":3: duplicate",
        "model,N,a,e_ref_K\ngaussian,100,abc,-1\n": ":2: malformed",
        "model,N,a,e_ref_K\ngaussian,100,1.0,inf\n": ":2: energy is not finite",
        "model,N,a\n": ":1: header",
        "model,N,a,e_ref_K\ngaussian,100,1.0,5.0\n": "negative",
    }
    for i, (content, message) in enumerate(cases.items()):
        ref = tmp_path / f"bad{i}.csv"
        ref.write_text(content)
        code, _, err = run(capsys, "compare", "--sweep", str(sweep), "--reference", str(ref))
        assert code == 5, content
        assert message in err
    code, _, _ = run(capsys, "compare", "--sweep", str(sweep), "--reference", str(tmp_path / "missing.csv"))
    assert code == 5


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle")
    assert code == 0
    assert float(report(out)["E_oracle"]) == pytest.approx(1.0, abs=1e-6)
    code, out, _ = run(capsys, "oracle", "--model", "calogero", "--param", "g=1")
    assert float(report(out)["E_oracle"]) == pytest.approx(2.118034, abs=1e-5)
    assert report(out)["boundary"] == "half"
    code, out, _ = run(capsys, "oracle", "--model", "gaussian", "--param", "v_g=1", "--param", "a=1",
                       "--param", "m=1", "--check-et")
    r = report(out)
    assert r["verdict"] == "upper bound holds"
    assert r["bound"] == "UpperBound"


def test_help_lists_commands():
    proc = subprocess.run([sys.executable, "-m", "etbounds", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for cmd in ("solve", "calogero-sweep", "gauss-sweep", "compare", "oracle"):
        assert cmd in proc.stdout
