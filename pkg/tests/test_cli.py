import io
import json
import random
from fractions import Fraction

import pytest

from src import main_app
from src.errors import InputError
from src.external.files import isometry_to_document, read_document, write_document
from src.main_app import SalemToolkitApp, main, parse_tolerance
from src.surfaces.torus import wedge_gram
from src.ui.poly_text import format_coefficients, format_poly, parse_poly

from .samples import GOLDEN, LEHMER, poly


def run(*argv):
    out = io.StringIO()
    code = SalemToolkitApp(stdout=out).run(list(argv))
    return code, out.getvalue()


def run_json(*argv):
    code, text = run(*argv, "--json")
    return code, json.loads(text)


class TestParsing:
    @pytest.mark.parametrize("text", ["1,-3,1", "t^2-3t+1", "t**2 - 3*t + 1", "x^2 - 3x + 1", " 1, -3, 1 "])
    def test_forms_agree(self, text):
        assert parse_poly(text) == GOLDEN

    def test_lehmer_symbolic(self):
        assert parse_poly("t^10+t^9-t^7-t^6-t^5-t^4-t^3+t+1") == LEHMER

    def test_expanded_product(self):
        assert parse_poly("(t^2+1)(t^2-3t+1)") == poly(1, -3, 2, -3, 1)

    @pytest.mark.parametrize("text", [
        "", "1,0.5,1", "t^2 - y", "t^2 + x", "t^2/2 + 1", "1,,2", "import os", "t^2 -- 3t", "t^2 + -3t + 1",
    ])
    def test_malformed(self, text):
        with pytest.raises(InputError):
            parse_poly(text)

    def test_format_round_trip(self):
        rng = random.Random(5)
        for _ in range(1000):
            degree = rng.randint(0, 8)
            p = poly(*([rng.choice([-3, -2, -1, 1, 2, 3])] + [rng.randint(-12, 12) for _ in range(degree)]))
            assert parse_poly(format_poly(p)) == p
            assert parse_poly(format_coefficients(p)) == p

    @pytest.mark.parametrize("text, value", [
        ("1/10^12", Fraction(1, 10 ** 12)),
        ("1e-6", Fraction(1, 10 ** 6)),
        ("1/1000", Fraction(1, 1000)),
        ("10^-3", Fraction(1, 1000)),
    ])
    def test_tolerance(self, text, value):
        assert parse_tolerance(text) == value

    @pytest.mark.parametrize("text", ["0", "-1/10", "abc", "1/0", "10^-1.5", "0^-1"])
    def test_bad_tolerance(self, text):
        with pytest.raises(InputError):
            parse_tolerance(text)


class TestCommands:
    def test_classify_text(self):
        code, text = run("classify", "t^2-3t+1")
        assert code == 0
        assert "Salem, degree 2" in text
        assert "2.618033988750" in text
        assert "0.962423650119" in text

    def test_classify_json(self):
        code, doc = run_json("classify", "1,-3,1")
        assert code == 0
        result = doc["result"]
        assert doc["command"] == "classify"
        assert result["is_salem"]
        assert result["lambda"]["approx"] == "2.618033988750"
        assert Fraction(result["lambda"]["lo"]) <= Fraction(result["lambda"]["hi"])

    def test_classify_negative(self):
        code, doc = run_json("classify", "t^2+3t+1")
        assert code == 2
        assert doc["result"]["reason"] == "negative real roots off the unit circle"

    def test_json_is_deterministic(self):
        _, first = run_json("k3", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
        _, second = run_json("k3", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
        first.pop("timing")
        second.pop("timing")
        assert first == second

    def test_entropy(self):
        code, text = run("entropy", "t^2-t+1")
        assert code == 0
        assert "0 (cyclotomic)" in text

    def test_entropy_not_salem(self):
        assert run("entropy", "t^4+3t^2+1")[0] == 2

    def test_trace(self):
        code, text = run("trace", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
        assert code == 0
        assert "t^5 + t^4 - 5t^3 - 5t^2 + 4t + 3" in text

    def test_trace_not_reciprocal(self):
        assert run("trace", "1,-3,2")[0] == 1

    def test_torus_negative(self):
        code, text = run("torus", "1,-1,-1,-1,-1,-1,1")
        assert code == 2
        assert "Q(1) = -3" in text

    def test_torus_json(self):
        code, doc = run_json("torus", "t^4-t^3-t^2-t+1")
        assert code == 0
        result = doc["result"]
        assert result["case"] == "deg4a"
        assert result["witness"]["P"] == [1, 1, -1, -1, 1]
        assert result["verification"]["passed"]
        assert "zeta_3" in result["projective"]["projective_example"]

    def test_k3_lehmer(self):
        code, doc = run_json("k3", "t^10+t^9-t^7-t^6-t^5-t^4-t^3+t+1")
        assert code == 0
        assert doc["result"]["verdict"] == "unknown"
        assert doc["result"]["gm_applicable"]

    def test_enumerate(self):
        code, doc = run_json("enumerate", "--degree", "10", "--bound", "1", "--workers", "2")
        assert code == 0
        first = doc["result"]["polynomials"][0]
        assert first["polynomial"]["coefficients"] == LEHMER.descending()
        assert first["lambda"]["approx"] == "1.176280818260"

    def test_tolerance_option(self):
        code, doc = run_json("classify", "t^2-3t+1", "--tol", "1/10^6")
        assert code == 0
        lam = doc["result"]["lambda"]
        assert Fraction(lam["hi"]) - Fraction(lam["lo"]) <= Fraction(1, 10 ** 6)


class TestExitCodes:
    @pytest.mark.parametrize("argv, code", [
        (["classify", "1,-3,1"], 0),
        (["classify", "1,3,1"], 2),
        (["classify", "1,0.5,1"], 1),
        (["classify", "t^2-3t+1", "--tol", "0"], 1),
        (["torus", "1,-3,1"], 0),
        (["torus", "1,-1,-1,1,-1,-1,1"], 0),
        (["torus", "1,-1,-1,-1,-1,-1,1"], 2),
        (["torus", "1,3,1"], 2),
        (["k3", "1,-3,1"], 0),
        (["entropy", "1,1,0,-1,-1,-1,-1,-1,0,1,1"], 0),
        (["enumerate", "--degree", "5", "--bound", "1"], 1),
        (["enumerate", "--degree", "4"], 1),
        (["verify", "/nonexistent/witness.json"], 1),
        ([], 1),
        (["frobnicate"], 1),
    ])
    def test_golden_invocations(self, argv, code):
        assert run(*argv)[0] == code

    def test_main_entry_point(self, capsys):
        assert main(["classify", "t^2-3t+1"]) == 0
        assert "Salem, degree 2" in capsys.readouterr().out

    def test_unexpected_error_is_negative(self, monkeypatch):
        def broken(S, tol=None):
            raise ArithmeticError("bisection stalled")

        monkeypatch.setattr(main_app, "classify_salem", broken)
        assert run("classify", "t^2-3t+1") == (2, "")


class TestDocuments:
    def test_witness_round_trip(self, tmp_path):
        path = tmp_path / "witness.json"
        code, _ = run("torus", "1,-1,-1,1,-1,-1,1", "--out", str(path))
        assert code == 0
        doc = read_document(path)
        assert doc["case"] == "deg6"
        assert doc["wedge_basis"] == "e1^e2,e1^e3,e1^e4,e2^e3,e2^e4,e3^e4"
        code, text = run("verify", str(path))
        assert code == 0
        assert "all checks pass" in text

    def test_tampered_witness(self, tmp_path):
        path = tmp_path / "witness.json"
        run("torus", "t^2-3t+1", "--out", str(path))
        doc = read_document(path)
        doc["F2"][0][0] += 1
        write_document(doc, path)
        code, doc = run_json("verify", str(path))
        assert code == 2
        assert not doc["result"]["verification"]["checks"]["F2 preserves J"]

    def test_unknown_case(self, tmp_path):
        path = tmp_path / "witness.json"
        write_document({"case": "deg8"}, path)
        assert run("verify", str(path))[0] == 1

    def test_not_json(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json", encoding="utf-8")
        assert run("verify", str(path))[0] == 1

    def test_isometry_document(self, tmp_path, sextic_witness):
        path = tmp_path / "isometry.json"
        write_document(isometry_to_document(wedge_gram(), sextic_witness.F2, name="sextic"), path)
        code, doc = run_json("verify", str(path))
        assert code == 0
        result = doc["result"]
        assert result["is_isometry"]
        assert result["even"] and result["unimodular"]
        assert result["signature"] == {"pos": 3, "neg": 3, "zero": 0}
        assert result["extension"]["passed"]
        assert result["extension"]["ambient_signature"] == {"pos": 3, "neg": 11, "zero": 0}

    def test_isometry_document_not_isometry(self, tmp_path):
        path = tmp_path / "isometry.json"
        write_document(isometry_to_document([[1, 0], [0, 1]], [[1, 1], [0, 1]]), path)
        code, doc = run_json("verify", str(path))
        assert code == 2
        assert not doc["result"]["is_isometry"]

    def test_report_out(self, tmp_path):
        path = tmp_path / "report.json"
        code, _ = run("classify", "t^2-3t+1", "--out", str(path))
        assert code == 0
        doc = read_document(path)
        assert doc["command"] == "classify"
        assert doc["schema"] == "salem-entropy/1"
