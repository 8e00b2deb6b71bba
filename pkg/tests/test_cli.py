"""JSON encodings and the command-line surface, including exit codes."""

import json
import random
from fractions import Fraction

import pytest

from structura.cli import main
from structura.errors import ParseError
from structura.qpoly import ONE, X, Poly, RatFn
from structura.polymat import PolyMatrix
from structura.extract import RationalMatrix
from structura.feasibility import Prescription
from structura.jsonio import (
    fraction_from_json,
    fraction_to_json,
    matrix_from_json,
    poly_from_json,
    poly_to_json,
    polymatrix_to_json,
    prescription_from_json,
    prescription_to_json,
    rationalmatrix_to_json,
)

S = X
M = PolyMatrix.from_scalar_rows

WORKED_PRESCRIPTION = {
    "variant": "P2_span_indices",
    "m": 3,
    "n": 3,
    "r": 2,
    "d": 7,
    "alpha": [[1], [1, 0, 2, 0, 1]],
    "f": [0, 0],
    "k": [5, 0],
    "l": [4, 1],
}


class TestJson:
    def test_fraction_codec(self):
        assert fraction_to_json(Fraction(3)) == "3"
        assert fraction_to_json(Fraction(-2, 7)) == "-2/7"
        assert fraction_from_json("-2/7") == Fraction(-2, 7)
        assert fraction_from_json(5) == Fraction(5)
        with pytest.raises(ParseError):
            fraction_from_json("x")
        with pytest.raises(ParseError):
            fraction_from_json("1/0")

    def test_poly_round_trip(self):
        p = Poly([Fraction(1, 2), 0, -3])
        assert poly_from_json(poly_to_json(p)) == p
        assert poly_to_json(Poly()) == []

    def test_matrix_round_trip(self):
        P = M([[S, 1], [0, S * S]])
        assert matrix_from_json(polymatrix_to_json(P)) == P

    def test_rational_matrix_round_trip(self):
        R = RationalMatrix([[RatFn(ONE, S), RatFn(S + ONE)]])
        back = matrix_from_json(rationalmatrix_to_json(R))
        assert isinstance(back, RationalMatrix) and back == R

    def test_entry_count_checked(self):
        with pytest.raises(ParseError):
            matrix_from_json({"m": 2, "n": 2, "entries": [[1]]})

    def test_prescription_round_trip(self):
        p = prescription_from_json(WORKED_PRESCRIPTION)
        assert p.alpha[1] == Poly([1, 0, 2, 0, 1])
        again = prescription_from_json(prescription_to_json(p))
        assert again == p

    def test_factored_alpha_accepted(self):
        doc = dict(WORKED_PRESCRIPTION)
        doc["alpha"] = [
            [1],
            {"leading": "1", "factors": [], "cofactor": [1, 0, 2, 0, 1]},
        ]
        p = prescription_from_json(doc)
        assert p.alpha[1] == Poly([1, 0, 2, 0, 1])

    def test_prescription_with_bases(self):
        from structura.synthesis import build_minimal_basis

        p = Prescription(
            variant="P1_spans",
            m=3,
            n=3,
            r=2,
            d=1,
            alpha=(ONE, ONE),
            f=(0, 0),
            K=build_minimal_basis((1, 0), 3),
            Lt=build_minimal_basis((1, 0), 3),
        )
        again = prescription_from_json(prescription_to_json(p))
        assert again.K == p.K and again.Lt == p.Lt


def write(tmp_path, name, doc):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


def test_walkthrough_demo_runs():
    import pathlib
    import subprocess
    import sys

    root = pathlib.Path(__file__).resolve().parent.parent
    proc = subprocess.run(
        [sys.executable, str(root / "demos" / "walkthrough.py")],
        capture_output=True,
        text=True,
        timeout=120,
    )
    assert proc.returncode == 0, proc.stderr
    assert "feasible: True" in proc.stdout
    assert "construction refused" in proc.stdout
    assert "passed=True" in proc.stdout


class TestCli:
    def test_check_feasible_exit_zero(self, tmp_path, capsys):
        path = write(tmp_path, "p.json", WORKED_PRESCRIPTION)
        assert main(["check", path]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["verdict"] == "FEASIBLE"
        assert doc["g_sequence"] == [6, 4]
        labels = {c["label"] for c in doc["conditions"].values()}
        assert {"eqf1", "eqprec", "eqx>0", "eqy>0"} <= labels
        for key in ("eqf1", "eqprec", "eqx0", "eqy0"):
            assert doc["conditions"][key]["status"] == "pass"

    def test_check_infeasible_exit_one(self, tmp_path, capsys):
        doc = dict(WORKED_PRESCRIPTION)
        doc["d"] = 6
        path = write(tmp_path, "p.json", doc)
        assert main(["check", path]) == 1
        out = json.loads(capsys.readouterr().out)
        assert out["conditions"]["eqprec"]["status"] == "fail"

    def test_check_malformed_exit_two(self, tmp_path):
        doc = dict(WORKED_PRESCRIPTION)
        doc["k"] = [0, 5]
        path = write(tmp_path, "p.json", doc)
        assert main(["check", path]) == 2

    def test_construct_not_split_exit_three(self, tmp_path, capsys):
        path = write(tmp_path, "p.json", WORKED_PRESCRIPTION)
        assert main(["construct", path]) == 3
        err = capsys.readouterr().err
        assert "algebraically closed" in err

    def test_construct_infeasible_exit_one(self, tmp_path):
        doc = dict(WORKED_PRESCRIPTION)
        doc["d"] = 6
        path = write(tmp_path, "p.json", doc)
        assert main(["construct", path]) == 1

    def test_construct_and_round_trip(self, tmp_path, capsys):
        doc = {
            "variant": "P3_full",
            "m": 3,
            "n": 3,
            "r": 2,
            "d": 1,
            "alpha": [[1], [1]],
            "f": [0, 0],
            "k": [1, 0],
            "l": [1, 0],
            "right": [1],
            "left": [1],
        }
        path = write(tmp_path, "p.json", doc)
        out_path = str(tmp_path / "result.json")
        assert main(["construct", path, "-o", out_path, "--seed", "5"]) == 0
        result = json.loads(open(out_path).read())
        assert result["verification"]["verdict"] == "pass"
        assert result["seed"] == 5
        # analyzing the constructed matrix reproduces the prescription
        mat_path = write(tmp_path, "m.json", result["matrix"])
        assert main(["analyze", mat_path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["rank"] == 2 and report["degree"] == 1
        assert report["colspan"]["indices"] == [1, 0]
        assert report["rowspan"]["indices"] == [1, 0]
        assert report["right_null"]["indices"] == [1]
        assert report["left_null"]["indices"] == [1]
        assert all(v == "pass" for v in report["identities"].values())

    def test_construct_deterministic(self, tmp_path):
        doc = {
            "variant": "P2_span_indices",
            "m": 2,
            "n": 2,
            "r": 2,
            "d": 2,
            "alpha": [[1], [-1, 1]],
            "f": [0, 3],
            "k": [0, 0],
            "l": [0, 0],
        }
        path = write(tmp_path, "p.json", doc)
        out1 = str(tmp_path / "r1.json")
        out2 = str(tmp_path / "r2.json")
        assert main(["construct", path, "-o", out1]) == 0
        assert main(["construct", path, "-o", out2]) == 0
        assert open(out1).read() == open(out2).read()

    def test_construct_with_explicit_bases(self, tmp_path):
        from structura.jsonio import polymatrix_to_json as mat_json
        from structura.synthesis import build_minimal_basis

        doc = {
            "variant": "P1_spans",
            "m": 3,
            "n": 3,
            "r": 2,
            "d": 1,
            "alpha": [[1], [1]],
            "f": [0, 0],
            "K": mat_json(build_minimal_basis((1, 0), 3)),
            "Lt": mat_json(build_minimal_basis((1, 0), 3)),
        }
        path = write(tmp_path, "p1.json", doc)
        out = str(tmp_path / "out.json")
        assert main(["construct", path, "-o", out]) == 0
        result = json.loads(open(out).read())
        assert result["verification"]["verdict"] == "pass"

    def test_construct_rational_round_trip(self, tmp_path, capsys):
        doc = {
            "variant": "R2_span_indices",
            "m": 2,
            "n": 2,
            "r": 1,
            "epsilon": [[1]],
            "psi": [[0, 1]],
            "q": [1],
            "k": [0],
            "l": [0],
        }
        path = write(tmp_path, "p.json", doc)
        out_path = str(tmp_path / "r.json")
        assert main(["construct", path, "-o", out_path]) == 0
        result = json.loads(open(out_path).read())
        assert result["verification"]["verdict"] == "pass"
        mat_path = write(tmp_path, "m.json", result["matrix"])
        assert main(["analyze", mat_path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["kind"] == "rational"
        assert report["inf_orders"] == [1]

    def test_analyze_rational(self, tmp_path, capsys):
        doc = {"m": 1, "n": 1, "entries": [{"num": [1], "den": [0, 1]}]}
        path = write(tmp_path, "r.json", doc)
        assert main(["analyze", path]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["kind"] == "rational"
        assert report["inf_orders"] == [1]
        assert report["denominators"] == [["0", "1"]]

    def test_analyze_zero_matrix_exit_two(self, tmp_path):
        doc = {"m": 1, "n": 1, "entries": [[]]}
        path = write(tmp_path, "z.json", doc)
        assert main(["analyze", path]) == 2

    def test_analyze_bad_json_exit_two(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        assert main(["analyze", str(path)]) == 2

    def test_verify_pass_and_fail(self, tmp_path, capsys):
        mat = {"m": 2, "n": 2, "entries": [[0, 1], [1], [], [0, 1]]}
        good = {
            "variant": "P2_span_indices",
            "m": 2,
            "n": 2,
            "r": 2,
            "d": 1,
            "alpha": [[1], [0, 0, 1]],
            "f": [0, 0],
            "k": [0, 0],
            "l": [0, 0],
        }
        mp = write(tmp_path, "m.json", mat)
        gp = write(tmp_path, "good.json", good)
        assert main(["verify", mp, gp]) == 0
        bad = dict(good)
        bad["alpha"] = [[0, 1], [0, 1]]
        bp = write(tmp_path, "bad.json", bad)
        assert main(["verify", mp, bp]) == 1
        out = capsys.readouterr().out
        assert "invariant_factors" in out

    def test_minor_select_with_brute(self, tmp_path, capsys):
        rng = random.Random(3)
        from conftest import random_poly
        from structura.polymat import det

        while True:
            E = PolyMatrix(
                [[random_poly(rng, 1, -2, 2) for _ in range(4)] for _ in range(4)],
                n=4,
            )
            if not det(E).is_zero:
                break
        path = write(tmp_path, "e.json", polymatrix_to_json(E))
        assert main(["minor-select", path, "--z", "1,3", "--brute"]) == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["minor"] != "0"
        assert {"I": doc["I"], "J": doc["J"]} in doc["admissible_pairs"]

    def test_minor_select_singular_exit_two(self, tmp_path):
        doc = {"m": 2, "n": 2, "entries": [[0, 1], [0, 1], [0, 1], [0, 1]]}
        path = write(tmp_path, "s.json", doc)
        assert main(["minor-select", path, "--z", "1"]) == 2

    def test_unwritable_output_exit_two(self, tmp_path):
        mat = {"m": 1, "n": 1, "entries": [[1]]}
        path = write(tmp_path, "m.json", mat)
        assert main(["analyze", path, "-o", str(tmp_path / "no" / "dir.json")]) == 2

    def test_search_budget_env(self, tmp_path, monkeypatch):
        doc = {
            "variant": "P2_span_indices",
            "m": 2,
            "n": 2,
            "r": 2,
            "d": 1,
            "alpha": [[0, 1], [0, 1]],
            "f": [0, 0],
            "k": [0, 0],
            "l": [0, 0],
        }
        path = write(tmp_path, "p.json", doc)
        monkeypatch.setenv("STRUCTURA_MAX_SEARCH", "0")
        assert main(["construct", path]) == 4
        monkeypatch.delenv("STRUCTURA_MAX_SEARCH")
        assert main(["construct", path, "-o", str(tmp_path / "out.json")]) == 0
