import json

import pytest

from qdouble.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


class TestPair:
    def test_sl2_power(self, capsys):
        code, out = run(capsys, "pair", "E:1 1", "F:1 1", "--preset", "A1")
        assert code == 0
        # q <2>_q! = v^8 - v^4 - 1 + v^-4
        assert out.strip() == "1*v^8 - 1*v^4 - 1 + 1*v^-4"

    def test_order_agnostic(self, capsys):
        code1, out1 = run(capsys, "pair", "E:1", "F:1", "--preset", "A2")
        code2, out2 = run(capsys, "pair", "F:1", "E:1", "--preset", "A2")
        assert code1 == code2 == 0 and out1 == out2

    def test_usage_error(self, capsys):
        code = main(["pair", "E:1", "E:1", "--preset", "A1"])
        assert code == 2


class TestBasis:
    def test_sl2_height0(self, capsys):
        code, out = run(capsys, "basis", "--preset", "A1", "--height", "0")
        assert code == 0
        rows = json.loads(out)
        assert len(rows) == 1 and rows[0]["b_minus"] == "1"

    def test_deterministic_across_widths(self, capsys):
        _, out1 = run(capsys, "basis", "--preset", "A1", "--height", "2", "--width", "1")
        _, out4 = run(capsys, "basis", "--preset", "A1", "--height", "2", "--width", "4")
        assert out1 == out4

    def test_biparabolic_filter(self, capsys):
        code, out = run(
            capsys, "basis", "--preset", "A2", "--height", "1", "--j-minus", "", "--j-plus", "1,2"
        )
        assert code == 0
        rows = json.loads(out)
        assert all(r["b_minus"] == "1" for r in rows)

    def test_unknown_preset(self, capsys):
        assert main(["basis", "--preset", "Z9", "--height", "1"]) == 2

    def test_cache_dir(self, capsys, tmp_path, monkeypatch):
        monkeypatch.setenv("QDOUBLE_CACHE_DIR", str(tmp_path))
        _, out1 = run(capsys, "basis", "--preset", "A1", "--height", "1")
        assert list(tmp_path.glob("basis-*.json"))
        _, out2 = run(capsys, "basis", "--preset", "A1", "--height", "1")
        assert out1 == out2


class TestBraidCmd:
    def test_t1_on_e2(self, capsys):
        code, out = run(capsys, "braid", "--preset", "A2", "--word", "1", "--element", "E:2")
        assert code == 0
        rows = json.loads(out)
        assert {r["E"] for r in rows} == {"1 2", "2 1"}

    def test_inverse_roundtrip(self, capsys):
        code, out = run(
            capsys, "braid", "--preset", "A2", "--word", "1 1^-1", "--element", "E:2"
        )
        rows = json.loads(out)
        assert len(rows) == 1 and rows[0]["E"] == "2" and rows[0]["c"] == "1"


class TestStrconst:
    def test_sl2_fe(self, capsys):
        code, out = run(capsys, "strconst", "F:1", "E:1", "--preset", "A1")
        assert code == 0
        payload = json.loads(out)
        assert payload["positive"] is True
        assert len(payload["coefficients"]) == 3


class TestVerify:
    def test_sl2_suite(self, capsys):
        code, out = run(capsys, "verify", "sl2")
        assert code == 0
        assert "checks passed" in out
        assert "FAIL" not in out

    def test_unknown_suite(self, capsys):
        assert main(["verify", "nope"]) == 2
