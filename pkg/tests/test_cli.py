import io
import json
import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from qcert.cli import (
    ParseError,
    main,
    parse_bivariate,
    parse_eta_expr,
    parse_rational,
    parse_series,
)
from qcert.etaforms import EtaQuotient

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "schema" / "report.schema.json"


class TestParsers:
    def test_eta_basic(self):
        q, warning = parse_eta_expr("eta(1)^24")
        assert q == EtaQuotient(((1, 24),)) and warning is None

    def test_eta_sorting(self):
        q, _ = parse_eta_expr("eta(2)*eta(1)")
        assert q.terms == ((1, 1), (2, 1))

    def test_eta_merge_to_unit(self):
        q, warning = parse_eta_expr("eta(1)^2*eta(1)^-2")
        assert q.terms == () and "unit" in warning

    def test_eta_negative_exponent(self):
        q, _ = parse_eta_expr("eta(1)^2 * eta(2)^-1")
        assert q.terms == ((1, 2), (2, -1))

    def test_eta_errors(self):
        with pytest.raises(ParseError):
            parse_eta_expr("eta(0)")
        with pytest.raises(ParseError):
            parse_eta_expr("eta(1)^0")
        with pytest.raises(ParseError):
            parse_eta_expr("eta(1) + eta(2)")
        with pytest.raises(ParseError):
            parse_eta_expr("tau(1)")

    def test_rational(self):
        assert parse_rational("3/2") == F(3, 2)
        assert parse_rational("-7") == -7
        with pytest.raises(ParseError):
            parse_rational("3/2/5")

    def test_series(self):
        f = parse_series("1 + 1/2*q^2 - q^-1")
        assert f.coefficient(0) == 1
        assert f.coefficient(2) == F(1, 2)
        assert f.coefficient(-1) == -1

    def test_series_fractional_exponent(self):
        f = parse_series("q^(1/2) + q")
        assert f.w == 2 and f.valuation == F(1, 2)

    def test_series_errors_carry_position(self):
        with pytest.raises(ParseError) as info:
            parse_series("1 + * q")
        assert "position" in str(info.value)

    def test_bivariate(self):
        g = parse_bivariate("x^2 - 1 - q")
        assert g.x_degree == 2
        assert g.coefficients[0].coefficient(0) == -1
        g2 = parse_bivariate("2*x*q^-3")
        assert g2.coefficients[1].valuation == -3

    def test_bivariate_rejects_fractional_x(self):
        with pytest.raises(ParseError):
            parse_bivariate("x^(1/2) - q")


class TestDispatch:
    def test_count_groups(self, capsys):
        assert main(["count", "groups", "--cusps", "3", "--p", "2", "--e", "1"]) == 0
        assert capsys.readouterr().out.strip() == "3"

    def test_ubd_certify_golden(self, capsys):
        code = main(["ubd", "certify", "--eta", "eta(1)^2*eta(2)", "--p", "3", "--e", "1"])
        out = capsys.readouterr().out
        assert code == 0
        assert "position 1" in out and "2/3" in out

    def test_ubd_certify_quotient_exit_code(self, capsys):
        code = main(["ubd", "certify", "--eta", "eta(1)^24", "--p", "2"])
        assert code == 2
        assert "eta(1)^12" in capsys.readouterr().out

    def test_series_root_golden(self, capsys):
        code = main(["series", "root", "--input", "1+q", "--n", "2", "--T", "8"])
        out = capsys.readouterr().out
        assert code == 0
        assert "(1/2)*q" in out and "(-1/8)*q^2" in out

    def test_unknown_subcommand(self, capsys):
        assert main(["frobnicate"]) == 1

    def test_missing_flag(self, capsys):
        assert main(["count", "groups", "--cusps", "3"]) == 1

    def test_malformed_eta(self, capsys):
        assert main(["ubd", "certify", "--eta", "eta(-1)", "--p", "3"]) == 1
        assert "position" in capsys.readouterr().err

    def test_newton_no_witness_exit(self, capsys):
        assert main(["ec", "newton", "--input", "x^2 + 3", "--p", "3"]) == 2

    def test_stdin_input(self, capsys, monkeypatch):
        monkeypatch.setattr("sys.stdin", io.StringIO("1 - q"))
        code = main(["series", "invert", "--input", "-", "--T", "5"])
        out = capsys.readouterr().out
        assert code == 0 and "q^4" in out

    def test_env_default_truncation(self, capsys, monkeypatch):
        monkeypatch.setenv("QCERT_DEFAULT_T", "7")
        main(["eta", "expand", "--expr", "eta(1)^24", "--json"])
        rep = json.loads(capsys.readouterr().out)
        assert rep["inputs"]["T"] == 7

    def test_puiseux_solve(self, capsys):
        code = main(["puiseux", "solve", "--input", "x^2 - 1 - q", "--T", "6"])
        out = capsys.readouterr().out
        assert code == 0 and "2 branch(es)" in out and "residuals vanish: True" in out


@pytest.fixture(scope="module")
def validator():
    jsonschema = pytest.importorskip("jsonschema")
    schema = json.loads(SCHEMA_PATH.read_text())
    return lambda doc: jsonschema.validate(doc, schema)


class TestJsonReports:
    @pytest.mark.parametrize(
        "argv",
        [
            ["count", "groups", "--cusps", "4", "--p", "3", "--e", "1", "--json"],
            ["eta", "expand", "--expr", "eta(1)^24", "--T", "8", "--json"],
            ["series", "root", "--input", "1+q", "--n", "2", "--T", "6", "--json"],
            ["series", "product-form", "--input", "1 - q", "--T", "6", "--json"],
            ["ubd", "certify", "--eta", "eta(1)*eta(2)", "--p", "2", "--json"],
            ["ubd", "profile", "--eta", "eta(1)*eta(2)", "--root", "2", "--p", "2",
             "--T", "20", "--json"],
            ["puiseux", "solve", "--input", "x^2 - 1 - q", "--T", "5", "--json"],
            ["ec", "divpoly", "--A", "-1", "--B", "1", "--p", "3", "--json"],
            ["ec", "newton", "--input", "3*x^2 + x + 3", "--p", "3", "--json"],
            ["ec", "screen", "--A", "-1", "--B", "1", "--pmax", "5", "--json"],
            ["eta", "recognize", "--input", "1 - q", "--T", "8", "--json"],
        ],
    )
    def test_reports_validate(self, argv, capsys, validator):
        code = main(argv)
        assert code in (0, 2)
        report = json.loads(capsys.readouterr().out)
        validator(report)

    def test_text_and_json_agree(self, capsys):
        main(["count", "groups", "--cusps", "5", "--p", "2", "--e", "2"])
        text_value = int(capsys.readouterr().out.strip())
        main(["count", "groups", "--cusps", "5", "--p", "2", "--e", "2", "--json"])
        rep = json.loads(capsys.readouterr().out)
        assert rep["result"]["count"] == text_value


class TestFuzzing:
    def test_random_argv_never_raises(self, capsys):
        pool = [
            "eta", "series", "ubd", "puiseux", "ec", "count", "expand", "root",
            "certify", "solve", "screen", "groups", "--expr", "--input", "--p",
            "--e", "--n", "--T", "--cusps", "--A", "--B", "--pmax", "eta(1)^2",
            "1+q", "x^2-q", "3", "-1", "2/3", "q^(1/2)", "--json", "*", "eta(",
        ]
        rng = random.Random(1234)
        for _ in range(300):
            argv = [rng.choice(pool) for _ in range(rng.randint(0, 6))]
            code = main(argv)
            capsys.readouterr()
            assert code in (0, 1, 2), argv
