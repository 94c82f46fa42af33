import csv
import io
import json
import math

import pytest

from oblivious_ic.cli import (UsageError, build_config, case_rng, main, parse_grid, render_csv, run)


def rows_of(text):
    return list(csv.DictReader(io.StringIO(text)))


def cfg(command, **flags):
    return build_config(command, flags)


class TestParsing:
    def test_grid_forms(self):
        assert parse_grid("0:2:0.5") == [0.0, 0.5, 1.0, 1.5, 2.0]
        assert parse_grid(["0", "60", "1"]) == parse_grid("0:60:1")
        assert len(parse_grid("0:60:1")) == 61
        assert parse_grid("1.2,1.5") == [1.2, 1.5]
        assert parse_grid("4/3") == [4 / 3]
        assert len(parse_grid("0:3:0.01")) == 301

    @pytest.mark.parametrize("bad", ["1:0:1", "0:1:0", "0:1", "x", "1/0"])
    def test_grid_errors(self, bad):
        with pytest.raises(UsageError):
            parse_grid(bad)

    def test_config_validation(self):
        with pytest.raises(UsageError):
            cfg("gdof-region", beta_step="0.5")
        with pytest.raises(UsageError):
            cfg("region", n="0")

    def test_csv_format(self):
        text = render_csv(["a", "b", "c", "d"], [[1 / 3, math.nan, True, 7]])
        assert text == "a,b,c,d\n0.333333333333,nan,true,7\n"

    def test_rng_is_keyed(self):
        a = case_rng(7, 3).random(4)
        assert (a == case_rng(7, 3).random(4)).all()
        assert not (a == case_rng(7, 4).random(4)).all()
        assert not (a == case_rng(8, 3).random(4)).all()


class TestPrecedence:
    def test_config_file_then_flags(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"alpha": "2.5", "snr_db": "20:40:10"}))
        c = build_config("gap-sweep", {}, str(path))
        assert c.alpha == (2.5,) and c.snr_db == (20.0, 30.0, 40.0)
        c = build_config("gap-sweep", {"alpha": "1.5"}, str(path))
        assert c.alpha == (1.5,) and c.snr_db == (20.0, 30.0, 40.0)

    def test_defaults(self):
        assert cfg("ptp-sweep").snr_db == tuple(float(x) for x in range(61))

    def test_bad_config(self, tmp_path):
        path = tmp_path / "c.json"
        path.write_text(json.dumps({"colour": "blue"}))
        with pytest.raises(UsageError):
            build_config("wcurve", {}, str(path))
        path.write_text("{")
        with pytest.raises(UsageError):
            build_config("wcurve", {}, str(path))


class TestPtpSweep:
    def test_rows(self):
        text, failed = run(cfg("ptp-sweep", snr_db=["0", "60", "1"]))
        rows = rows_of(text)
        assert failed == 0 and len(rows) == 61
        for r in rows:
            gap = float(r["capacity_bits"]) - float(r["rate_adaptive_n"])
            assert gap <= float(r["gap_bound"]) + 1e-9
        assert float(rows[60]["rate_fixed_n2"]) <= 1.0
        assert float(rows[50]["gap_bound"]) == pytest.approx(2.69146, abs=1e-5)


class TestGdofRegion:
    def test_four_thirds(self):
        rows = rows_of(run(cfg("gdof-region"))[0])
        icor = [(float(r["d1"]), float(r["d2"])) for r in rows if r["series"] == "icor"]
        assert max(d2 for _, d2 in icor) == 1.0
        assert max(a + b for a, b in icor) == pytest.approx(4 / 3, abs=2e-3)
        assert any(r["series"] == "classic" for r in rows)

    def test_alpha_zero(self):
        rows = rows_of(run(cfg("gdof-region", alpha="0"))[0])
        icor = [(float(r["d1"]), float(r["d2"])) for r in rows if r["series"] == "icor"]
        assert icor == [(0.0, 0.999), (0.999, 0.0)]

    def test_alpha_three(self):
        rows = rows_of(run(cfg("gdof-region", alpha="3"))[0])
        sums = [float(r["d1"]) + float(r["d2"]) for r in rows if r["series"] == "icor"]
        assert max(sums) == pytest.approx(2.0, abs=2e-3)

    def test_needs_scalar(self):
        with pytest.raises(UsageError):
            run(cfg("gdof-region", alpha="1,2"))


class TestWcurve:
    def test_rows(self):
        rows = {round(float(r["alpha"]), 2): r for r in rows_of(run(cfg("wcurve"))[0])}
        assert len(rows) == 301
        assert rows[0.5]["icor_sum"] == "0.99" and rows[0.5]["tin_sum"] == "1"
        assert rows[2.0]["classic_sum"] == "2"
        assert rows[1.0]["icor_sum"] == "nan"
        for a, r in rows.items():
            if a > 1.0:
                assert float(r["icor_sum"]) == pytest.approx(float(r["classic_sum"]) - 0.01,
                                                             abs=1e-11)


class TestGapSweep:
    def test_zero_violations(self):
        text, failed = run(cfg("gap-sweep", alpha="1.2,1.5,2.5"))
        rows = rows_of(text)
        assert failed == 0
        assert all(r["status"] in ("ok", "outside-proof-domain") for r in rows)
        very = [r for r in rows if r["regime"] == "very_strong"]
        assert very and all(r["r2_gap_bound"] == "1.22134752044" for r in very)

    def test_weak_rows(self):
        rows = rows_of(run(cfg("gap-sweep", alpha="0.5"))[0])
        assert all(r["regime"] == "weak" and r["status"] == "unsupported" for r in rows)


class TestRegion:
    def test_rows(self):
        rows = rows_of(run(cfg("region", snr_db="20,40", alpha="1.5", n="4"))[0])
        assert [r["n_used"] for r in rows] == ["4", "4"]
        assert all(float(r["max_sum_rate"]) <= float(r["sum_max"]) for r in rows)


class TestVerifySandwich:
    def test_small_run(self, capsys):
        text, failed = run(cfg("verify-sandwich", cases="12", seed="3",
                               include_edge_cases=True))
        rows = rows_of(text)
        assert failed == 0
        assert rows[0]["status"] == "skipped"
        close = [r for r in rows if r["case"] == "edge-near-coincident"]
        assert len(close) == 15
        assert all(float(r["lower"]) < 1e-6 for r in close)
        assert "0 violations" in capsys.readouterr().err


class TestMain:
    def test_determinism(self, tmp_path):
        outs = []
        for k in range(2):
            path = tmp_path / f"s{k}.csv"
            assert main(["verify-sandwich", "--cases", "6", "--seed", "11",
                         "--out", str(path)]) == 0
            outs.append(path.read_bytes())
        assert outs[0] == outs[1]

    def test_stdout(self, capsys):
        assert main(["wcurve", "--alpha", "0.5"]) == 0
        assert capsys.readouterr().out == "alpha,icor_sum,classic_sum,tin_sum\n0.5,0.99,1,1\n"

    def test_usage_error(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["ptp-sweep", "--snr-db", "10:0:1"])
        assert info.value.code == 2

    def test_unwritable(self, tmp_path):
        assert main(["wcurve", "--out", str(tmp_path / "no" / "such" / "f.csv")]) == 2

    def test_violation_exit(self, monkeypatch):
        import oblivious_ic.cli as cli
        monkeypatch.setitem(cli.RUNNERS, "wcurve", lambda c: ("x\n", 3))
        assert main(["wcurve", "--out", "/dev/null"]) == 1
