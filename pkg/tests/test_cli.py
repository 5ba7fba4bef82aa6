import json
from fractions import Fraction

import pytest

from matprops import Matrix, compound, mat_pow
from matprops.cli import ParseError, main, matrix_to_json, parse_matrix

EX1_CSV = "10,2,2\n3,2,1\n7,4,6\n"
EX3_JSON = json.dumps({
    "rows": [
        ["5.6", "1.2", "0.7", "0.5"],
        ["6.6", "6.2", "4.1", "8.1"],
        ["4.4", "4.4", "3.5", "8"],
        ["1", "3.8", "3.4", "9"],
    ]
})


@pytest.fixture
def ex1_csv(tmp_path):
    path = tmp_path / "ex1.csv"
    path.write_text(EX1_CSV)
    return path


@pytest.fixture
def ex3_json(tmp_path):
    path = tmp_path / "ex3.json"
    path.write_text(EX3_JSON)
    return path


class TestParseMatrix:
    def test_csv_exact(self, ex1_csv, estp3):
        assert parse_matrix(ex1_csv, "exact") == estp3

    def test_json_decimal_strings_exact(self, ex3_json, stjs4):
        parsed = parse_matrix(ex3_json, "exact")
        assert parsed == stjs4
        assert parsed[0, 0] == Fraction(28, 5)

    def test_ragged_csv(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3\n")
        with pytest.raises(ParseError, match="ragged"):
            parse_matrix(path, "exact")

    def test_non_square(self, tmp_path):
        path = tmp_path / "rect.csv"
        path.write_text("1,2\n")
        with pytest.raises(ParseError, match="square"):
            parse_matrix(path, "exact")

    def test_unparseable_token_names_position(self, tmp_path):
        path = tmp_path / "tok.csv"
        path.write_text("1,2\n3,zebra\n")
        with pytest.raises(ParseError, match="row 2, column 2"):
            parse_matrix(path, "exact")

    def test_bare_json_float_rejected_in_exact_mode(self, tmp_path):
        path = tmp_path / "float.json"
        path.write_text('{"rows": [[5.6, 1.0], [1.0, 2.0]]}')
        with pytest.raises(ParseError, match="exact"):
            parse_matrix(path, "exact")
        parsed = parse_matrix(path, "float")
        assert parsed.backend == "float"

    def test_rational_strings_accepted(self, tmp_path):
        path = tmp_path / "rat.json"
        path.write_text('{"rows": [["28/5", "1"], ["0", "2"]]}')
        parsed = parse_matrix(path, "exact")
        assert parsed[0, 0] == Fraction(28, 5)


class TestRoundTrip:
    def test_compound_emit_then_reparse_is_bit_exact(self, tmp_path, estp3):
        doc = matrix_to_json(compound(estp3, 2))
        path = tmp_path / "comp.json"
        path.write_text(json.dumps(doc))
        assert parse_matrix(path, "exact") == compound(estp3, 2)

    def test_decimal_compound_round_trip(self, tmp_path, stjs4):
        c3 = compound(stjs4, 3)
        path = tmp_path / "c3.json"
        path.write_text(json.dumps(matrix_to_json(c3)))
        assert parse_matrix(path, "exact") == c3


class TestMainCommand:
    def run(self, tmp_path, *argv):
        out = tmp_path / "out.json"
        code = main([*argv, "--out", str(out)])
        return code, (json.loads(out.read_text()) if out.exists() else None)

    def test_classify_estp_fixture(self, tmp_path, ex1_csv):
        code, doc = self.run(tmp_path, str(ex1_csv), "--backend", "exact")
        assert code == 0
        assert doc["verdicts"]["ESTP"]["status"] == "yes"
        assert doc["verdicts"]["ESTP"]["power_index"] == 3
        assert doc["verdicts"]["EP"]["status"] == "yes"

    def test_classify_identity_ep_no(self, tmp_path):
        path = tmp_path / "id.csv"
        path.write_text("1,0\n0,1\n")
        code, doc = self.run(tmp_path, str(path), "--backend", "float")
        assert code == 0
        assert doc["verdicts"]["EP"]["status"] == "no"

    def test_compound_command_emits_matrix(self, tmp_path, ex1_csv):
        code, doc = self.run(tmp_path, str(ex1_csv), "--backend", "exact",
                             "--cmd", "compound 2")
        assert code == 0
        assert doc["rows"] == [["14", "4", "-2"], ["26", "46", "4"], ["-2", "11", "8"]]

    def test_spectrum_command(self, tmp_path, ex3_json):
        code, doc = self.run(tmp_path, str(ex3_json), "--backend", "exact",
                             "--cmd", "spectrum")
        assert code == 0
        product = 1.0
        for v in doc["eigenvalues"]:
            product *= v
        assert abs(product - 3.3928) <= 1e-6 * 3.3928

    def test_power_index_command(self, tmp_path):
        path = tmp_path / "ep.csv"
        path.write_text("8,4,1\n4,10,3\n-3,5,9\n")
        code, doc = self.run(tmp_path, str(path), "--backend", "exact",
                             "--cmd", "power-index EP")
        assert code == 0
        assert doc["power_index"] == 5

    def test_multiple_commands(self, tmp_path, ex1_csv):
        code, doc = self.run(tmp_path, str(ex1_csv), "--backend", "exact",
                             "--cmd", "compound 2", "--cmd", "spectrum")
        assert code == 0
        assert len(doc["results"]) == 2

    def test_exit_2_on_parse_error(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("1,2\n3\n")
        assert main([str(path)]) == 2

    def test_exit_2_on_config_error(self, tmp_path, ex1_csv):
        assert main([str(ex1_csv), "--kmax", "1"]) == 2
        assert main([str(ex1_csv), "--tol", "0"]) == 2
        assert main([str(ex1_csv), "--cmd", "compound nine"]) == 2

    def test_exit_2_on_missing_file(self, tmp_path):
        assert main([str(tmp_path / "absent.csv")]) == 2

    def test_exit_3_on_unknown_verdict(self, tmp_path):
        path = tmp_path / "jordan.csv"
        path.write_text("1,-1\n0,1\n")
        out = tmp_path / "out.json"
        code = main([str(path), "--backend", "float", "--out", str(out)])
        assert code == 3
        doc = json.loads(out.read_text())
        assert doc["verdicts"]["EN"]["status"] == "unknown"

    def test_exit_3_on_spectrum_failure(self, tmp_path):
        path = tmp_path / "perm.csv"
        path.write_text("0,1\n1,0\n")
        assert main([str(path), "--cmd", "spectrum", "--out",
                     str(tmp_path / "o.json")]) == 3

    def test_stdout_output(self, tmp_path, ex1_csv, capsys):
        code = main([str(ex1_csv), "--backend", "exact", "--cmd", "compound 3"])
        assert code == 0
        doc = json.loads(capsys.readouterr().out)
        assert doc["rows"] == [["54"]]
