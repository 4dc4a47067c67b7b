import csv
import json
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from essnormal.cli import IdealFileError, main, parse_ideal_file, read_ideal_file, validate_report
from essnormal.cli.report import csv_text
from essnormal.oplab import WeightScheme

from conftest import DATA


def run(*args, cwd=None):
    return subprocess.run([sys.executable, "-m", "essnormal", *args], capture_output=True, text=True, cwd=cwd)


# ideal files

def test_parse_quasi_prime_example_file():
    f = read_ideal_file(DATA / "ex47.ideal")
    assert f.num_vars == 3 and len(f.generators) == 3 and f.name == "ex47"
    assert f.generators[0] == "z1^2 - 2*z1*z2 + z2^2"


def test_zero_generator():
    with pytest.raises(IdealFileError) as e:
        parse_ideal_file("ring vars = z1\ngen = z1 - z1\n")
    assert e.value.message == "zero generator" and e.value.line == 2


def test_weight_line():
    f = parse_ideal_file("ring vars = z1 z2\nweight = bergman s = 1\ngen = z1\n")
    assert f.weight == WeightScheme.bergman(1)
    assert parse_ideal_file("ring vars = z1\nweight = bergman s = 1/2\n").weight == WeightScheme.bergman("1/2")


@pytest.mark.parametrize(
    "text,line,column,message",
    [
        ("ring vars = z1 z2\ngen = z1 + z3\n", 2, 12, "undeclared variable z3"),
        ("ring vars = z1 z2\ngen = z1 +* z2\n", 2, 11, "unexpected '*'"),
        ("gen = z1\n", 1, 1, "missing 'ring vars =' line"),
        ("ring vars = z1 z3\n", 1, 13, "variables must be z1 z2"),
        ("ring vars = z1\nweight = sobolev\n", 2, 10, None),
        ("ring vars = z1\n  frobnicate\n", 2, 3, None),
    ],
)
def test_positioned_errors(text, line, column, message):
    with pytest.raises(IdealFileError) as e:
        parse_ideal_file(text)
    assert (e.value.line, e.value.column) == (line, column)
    if message:
        assert e.value.message == message


gen_texts = st.sampled_from(["z1^2", "(z1 - z2)^2", "z3*(z1 + i*z2)", "1/2*z1*z3 - z2^2", "(2/3 - i)*z3^3 + z1^3"])


@settings(max_examples=40)
@given(st.lists(gen_texts, max_size=4), st.sampled_from(["hardy", "bergman s = 1", "bergman s = 3/2"]))
def test_print_parse_fixed_point(gens, weight):
    text = "# c\nring vars = z1 z2 z3\n" + f"weight = {weight}\n" + "".join(f"gen = {g}  # x\n" for g in gens)
    f = parse_ideal_file(text)
    g = parse_ideal_file(f.format())
    assert g == f
    assert g.format() == f.format()


# csv

def test_csv_sorted_with_lf():
    text = csv_text([("b", "x", 10, 0.5), ("a", "x", 2, 1.0), ("b", "x", 9, 0.25)])
    assert text == "experiment,ideal,parameter,value\na,x,2,1.0\nb,x,9,0.25\nb,x,10,0.5\n"
    assert "\r" not in text


# commands

def test_analyze_json(tmp_path):
    out = tmp_path / "out.json"
    r = run("analyze", str(DATA / "ex47.ideal"), "--json", str(out))
    assert r.returncode == 0, r.stderr
    doc = json.loads(out.read_text())
    validate_report(doc)
    assert doc["verdict"]["kind"] == "EssentiallyNormal"
    assert doc["components"][0]["class"] == "EssentiallyQuasiPrime(1)"
    assert doc["lines"][0]["lambda_set"] == [1, 2]
    assert "verdict: EssentiallyNormal" in r.stdout


@pytest.mark.parametrize(
    "name,code,verdict",
    [("ex48", 0, "NotEssentiallyNormal"), ("empty-variety", 0, "FiniteDimensional"),
     ("double-line", 0, "NotEssentiallyNormal"), ("irrational", 1, "Unsupported"),
     ("plane-pair", 0, "NotEssentiallyNormal(dimension>=2)")],
)
def test_analyze_exit_codes(name, code, verdict):
    assert main(["analyze", str(DATA / f"{name}.ideal")]) == code


def test_analyze_verdict_lines(capsys):
    main(["analyze", str(DATA / "ex48.ideal")])
    assert "verdict: NotEssentiallyNormal" in capsys.readouterr().out


def test_input_errors(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "missing.ideal")]) == 2
    bad = tmp_path / "bad.ideal"
    bad.write_text("ring vars = z1\ngen = z1 - z1\n")
    assert main(["analyze", str(bad)]) == 2
    assert "line 2, column 7: zero generator" in capsys.readouterr().err
    inhom = tmp_path / "inhom.ideal"
    inhom.write_text("ring vars = z1 z2\ngen = z1^2 - z2\n")
    assert main(["analyze", str(inhom)]) == 2
    assert main(["frobnicate"]) == 2
    assert main(["lab", "commutators", str(DATA / "diagonal.ideal"), "--pair", "1,5", "--max-degree", "8"]) == 2


def test_lab_commutators_csv(tmp_path):
    out = tmp_path / "c.csv"
    r = run("lab", "commutators", str(DATA / "diagonal.ideal"), "--pair", "1,1", "--max-degree", "12", "--width", "0",
            "--csv", str(out))
    assert r.returncode == 0, r.stderr
    raw = out.read_bytes()
    assert b"\r" not in raw
    rows = list(csv.DictReader(raw.decode().splitlines()))
    assert [int(row["parameter"]) for row in rows] == list(range(12))
    for row in rows:
        n = int(row["parameter"])
        assert float(row["value"]) == pytest.approx(1 / ((n + 1) * (n + 2)), abs=1e-10)
        assert row["experiment"] == "commutator_1_1" and row["ideal"] == "diagonal"


def test_lab_berezin(capsys):
    code = main(["lab", "berezin", str(DATA / "cond_a.ideal"), "--f", "z3", "--ray", "1,1,0", "--radii", "0.5,0.9"])
    assert code == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert [r["parameter"] for r in rows] == ["0.5", "0.9"]
    assert float(rows[1]["value"]) > 0.15


def test_lab_index(capsys):
    assert main(["lab", "index", str(DATA / "diagonal.ideal"), "--component", "1", "--max-degree", "10"]) == 0
    captured = capsys.readouterr()
    assert "index -1 (stable)" in captured.err
    assert main(["lab", "index", str(DATA / "diagonal.ideal"), "--component", "2", "--max-degree", "10"]) == 2


def test_lab_spectrum(capsys):
    code = main(["lab", "spectrum", str(DATA / "diagonal.ideal"), "--grid-file", str(DATA / "grid.txt")])
    assert code == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    values = [float(r["value"]) for r in rows]
    assert values[0] <= 0.05 and values[1] >= 0.5


def test_lab_ao(capsys):
    code = main(["lab", "ao", str(DATA / "diagonal.ideal"), str(DATA / "antidiagonal.ideal"), "--max-degree", "12"])
    assert code == 0
    rows = list(csv.DictReader(capsys.readouterr().out.splitlines()))
    assert rows[0]["ideal"] == "diagonal|antidiagonal"
    for r in rows:
        assert float(r["value"]) <= 1.1 / (int(r["parameter"]) + 1)
