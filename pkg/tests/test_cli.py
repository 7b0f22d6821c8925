import json
from fractions import Fraction

import jsonschema
import pytest

from nilcomplex.classify import REAL_ALGEBRAS
from nilcomplex.classify import AlgebraClass
from nilcomplex.classify import ThreeStepTriple
from nilcomplex.classify import TwoStepTriple
from nilcomplex.classify import equations_of
from nilcomplex.cli import build_report
from nilcomplex.cli import load_schema
from nilcomplex.cli import main
from nilcomplex.cli import parse_grid
from nilcomplex.cli import parse_metric
from nilcomplex.cli import parse_triple
from nilcomplex.errors import ParseError
from nilcomplex.exterior import I
from nilcomplex.hermitian import HermitianParams

from .corpus import E3_LATE
from .corpus import E3_TWICE

H15_TWICE = ("--family", "three-step", "--rho", "0", "--B", "1", "--c", "1/4")
SG_ONLY = ("--family", "two-step", "--rho", "1", "--lambda", "0", "--D", "1")


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_value_parsers():
    assert parse_grid("-1:1:1/2") == [-1, Fraction(-1, 2), 0, Fraction(1, 2), 1]
    assert parse_triple("1,1/2,5/16") == TwoStepTriple(1, Fraction(1, 2), Fraction(5, 16))
    assert parse_metric("1,2,3") == HermitianParams(1, 2, 3)
    assert parse_metric("1,2,3,i,0,1") == HermitianParams(1, 2, 3, I, 0, 1)


@pytest.mark.parametrize("text", ["0:1", "0:1:0", "0:i:1"])
def test_bad_grid(text):
    with pytest.raises(ParseError):
        parse_grid(text)


@pytest.mark.parametrize("parse, text", [
    (parse_triple, "1,1/2"),
    (parse_triple, "1/2,0,0"),
    (parse_metric, "1,2"),
    (parse_metric, "1,2,3,4"),
])
def test_bad_values(parse, text):
    with pytest.raises(ParseError):
        parse(text)


def test_report_matches_schema(h15_twice):
    schema = load_schema()
    report = build_report(h15_twice, ThreeStepTriple(0, 1, Fraction(1, 4)))
    jsonschema.validate(report, schema)
    assert report["metrics"] is None

    report = build_report(equations_of(TwoStepTriple(1, 0, 1)), TwoStepTriple(1, 0, 1), with_metrics=True)
    jsonschema.validate(report, schema)


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--family", "three-step", "--rho", "1", "--B", "1+1i", "--c", "1")
    assert code == 0
    assert out.splitlines()[0] == "h12"
    assert "canonical: (1, 1+i, 1)" in out


def test_classify_json(capsys):
    code, out, _ = run(capsys, "classify", *H15_TWICE, "--format", "json")
    assert code == 0
    record = json.loads(out)
    assert record["algebra_class"] == "h15"
    assert record["triple"] == "(0, 1, 1/4)"


def test_frolicher_json(capsys):
    code, out, _ = run(capsys, "frolicher", *H15_TWICE, "--format", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    assert report["behaviour"] == E3_TWICE
    assert report["degeneration_step"] == 3
    assert report["frolicher"]["E2"][0][2] == 3
    assert report["frolicher"]["E3"][0][2] == 2


def test_frolicher_text(capsys):
    code, out, _ = run(capsys, "frolicher", *H15_TWICE)
    assert code == 0
    assert "algebra: h15" in out
    assert E3_TWICE in out
    assert "E4^{p,q}" in out


def test_metrics(capsys):
    code, out, _ = run(capsys, "metrics", *SG_ONLY, "--format", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, load_schema())
    assert report["metrics"]["sg_exists"] is True
    assert report["metrics"]["balanced_exists"] is False
    assert report["metrics"]["witness"] is not None


def test_metrics_of_given_metric(capsys):
    code, out, _ = run(capsys, "metrics", *SG_ONLY, "--metric", "1,1,1", "--format", "json")
    assert code == 0
    metrics = json.loads(out)["metrics"]
    assert metrics["balanced"] is False
    assert metrics["sg"] is True
    assert metrics["gauduchon"] is True


def test_equiv(capsys):
    code, out, _ = run(capsys, "equiv", "--first", "1,1/2,5/16", "--second", "1,0,3/16+1/4i")
    assert code == 0
    assert out.startswith("equivalent\n")
    assert "witness:" in out

    code, out, _ = run(capsys, "equiv", "--first", "1,1,0", "--second", "1,1,1")
    assert code == 0
    assert out == "not equivalent\n"


def test_sweep_json(capsys):
    code, out, _ = run(capsys, "sweep", "h15-sine", "--values=-1,0", "--format", "json")
    assert code == 0
    records = json.loads(out)
    assert [r["param"] for r in records] == ["-1", "0"]
    assert all(r["error"] is None for r in records)


def test_sweep_csv(capsys):
    code, out, _ = run(capsys, "sweep", "h15-sine", "--grid=-1:1:1", "--format", "csv", "--workers", "1")
    assert code == 0
    lines = out.splitlines()
    header = lines[0].split(",")
    assert header[:3] == ["param", "triple", "algebra_class"]
    assert "E1_00" in header
    assert len(lines) == 4


def test_sweep_needs_parameters(capsys):
    code, _, err = run(capsys, "sweep", "h15-sine")
    assert code == 3
    assert "DomainError" in err


def test_semicont(capsys):
    code, out, _ = run(
        capsys, "semicont", "h5-drift", "--lambda", "1/2", "--center", "0",
        "--nearby", "1/8,1/4", "--format", "json",
    )
    assert code == 0
    record = json.loads(out)
    assert record["center_step"] == 2
    assert record["nearby_steps"] == [1, 1]
    assert record["step_jump"] == "upper"


@pytest.mark.parametrize("argv, code", [
    (["sweep", "h5-drift", "--lambda=-1", "--values", "0"], 3),
    (["classify", "--family", "two-step", "--D", "1+x"], 2),
    (["classify"], 3),
    (["explode"], 1),
    (["classify", "--family", "mystery"], 1),
])
def test_exit_codes(capsys, argv, code):
    assert run(capsys, *argv)[0] == code


def test_salamon_input(capsys, tmp_path):
    path = tmp_path / "h5.txt"
    path.write_text(REAL_ALGEBRAS[AlgebraClass.H5] + "\n", encoding="utf-8")

    code, out, _ = run(capsys, "classify", "--input", str(path))
    assert code == 0
    assert out == "h5\n"

    code, _, err = run(capsys, "cohomology", "--input", str(path))
    assert code == 3
    assert "complex structure equations" in err


def test_complex_input(capsys, tmp_path):
    path = tmp_path / "h15.txt"
    path.write_text("dw1=0\ndw2=w1^w1b\ndw3=w1^w2 + 4*w1^w2b + (1/2)*w2^w1b\n", encoding="utf-8")
    code, out, _ = run(capsys, "frolicher", "--input", str(path))
    assert code == 0
    assert E3_LATE in out


def test_missing_input_file(capsys, tmp_path):
    code, _, err = run(capsys, "classify", "--input", str(tmp_path / "absent.txt"))
    assert code == 1
    assert err.startswith("nilcomplex:")


def test_output_file(capsys, tmp_path):
    path = tmp_path / "hodge.txt"
    code, out, _ = run(capsys, "cohomology", *H15_TWICE, "--output", str(path))
    assert code == 0
    assert out == ""
    assert "Hodge numbers" in path.read_text(encoding="utf-8")

    path = tmp_path / "frolicher.csv"
    code, _, _ = run(capsys, "frolicher", *H15_TWICE, "--format", "csv", "--output", str(path))
    assert code == 0
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == "table,p,q,value"
    assert len(lines) == 1 + 5 * 16
