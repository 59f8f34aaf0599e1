import json

import pytest

from fricke.cli import main
from fricke.series import QSeries


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestBasicCommands:
    def test_classnumber(self, capsys):
        code, out, _ = run(capsys, "classnumber", "--disc", "12")
        assert code == 0 and "4/3" in out

    def test_hauptmodul_json_roundtrip(self, capsys):
        code, out, _ = run(capsys, "hauptmodul", "--level", "2", "--terms", "6", "--json")
        assert code == 0
        data = json.loads(out)
        s = QSeries.from_json(data)
        assert s.coeff(1) == 4372
        assert data["coeffs"][0] == [-1, "1/1"]

    def test_faber(self, capsys):
        code, out, _ = run(capsys, "faber", "--level", "1", "--n", "2", "--terms", "6")
        assert code == 0 and "coefficients" in out

    def test_hecke(self, capsys):
        code, out, _ = run(capsys, "hecke", "--level", "2", "--m", "2", "--terms", "8", "--json")
        assert code == 0
        QSeries.from_json(json.loads(out))

    def test_forms(self, capsys):
        code, out, _ = run(capsys, "forms", "--disc", "4", "--level", "2", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["classes"][0]["weight"] == "1/2"
        assert data["heegner"] is False

    def test_fd(self, capsys):
        code, out, _ = run(capsys, "fd", "--level", "2", "--disc", "4",
                           "--terms", "10", "--json")
        assert code == 0
        s = QSeries.from_json(json.loads(out))
        assert s.coeff(1) == -52

    def test_gd(self, capsys):
        code, out, _ = run(capsys, "gd", "--level", "1", "--disc", "1",
                           "--terms", "9", "--json")
        assert code == 0
        s = QSeries.from_json(json.loads(out))
        assert s.coeff(0) == -2

    def test_trace(self, capsys):
        code, out, _ = run(capsys, "trace", "--level", "2", "--disc", "4", "--m", "1")
        assert code == 0 and "-52" in out


class TestProductCommand:
    def test_match_exit_zero(self, capsys):
        code, out, _ = run(capsys, "product", "--level", "2", "--disc", "4",
                           "--terms", "8", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["status"] == "match" and data["delta"] == 2

    def test_level4_usage_error(self, capsys):
        with pytest.raises(SystemExit) as exc:
            run(capsys, "product", "--level", "4", "--disc", "3")
        assert exc.value.code == 2

    def test_unknown_disc_is_error(self, capsys):
        code, _, err = run(capsys, "product", "--level", "2", "--disc", "3")
        assert code == 1 and "error" in err


class TestRecursionCommand:
    def test_from_c(self, capsys):
        code, out, _ = run(capsys, "recursion", "--level", "2", "--disc", "4",
                           "--from-c", "104,4372,96256", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["a_star"] == ["-52", "544", "-8244"]

    def test_forward(self, capsys):
        code, out, _ = run(capsys, "recursion", "--level", "2", "--disc", "4",
                           "--upto", "4", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["c"][:3] == ["104", "4372", "96256"]


class TestVerifyCommand:
    def test_single_suite(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "classnumbers")
        assert code == 0
        assert "[ok]" in out and "FAIL" not in out

    def test_json_output(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "recursion", "--json")
        assert code == 0
        data = json.loads(out)
        assert data[0]["suite"] == "recursion" and data[0]["ok"]

    def test_replication_with_level_filter(self, capsys):
        code, out, _ = run(capsys, "verify", "--suite", "replication",
                           "--level", "2", "--max-m", "4")
        assert code == 0


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["hauptmodul", "--level", "9"])
    assert exc.value.code == 2
