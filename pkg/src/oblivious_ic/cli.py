"""Command-line sweeps that emit CSV.

Examples::

    oblivious-ic ptp-sweep --snr-db 0 60 1 --out ptp.csv
    oblivious-ic gdof-region --alpha 4/3 --beta-step 1e-3
    oblivious-ic wcurve --alpha 0:3:0.01 --eps 0.01
    oblivious-ic gap-sweep --snr-db 20:120:5 --alpha 1.2,1.5,2.5
    oblivious-ic verify-sandwich --seed 7 --cases 500

Exit status: 0 on success, 1 if a checked inequality fails, 2 on usage errors.
SNR values are given in dB here and converted to linear scale before any
library call.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .bounds import Constellation, id_lower, ig, mi_bounds, pam
from .channel import (ChannelParams, Regime, achievable_region, classify_regime,
                      design_n, gap_report)
from .gdof import (beta_grid, classic_region_vertices, gdof_closure, sum_gdof_classic,
                   sum_gdof_icor, sum_gdof_tin)
from .oracle import OracleConvergenceError, mi_exact
from .ptp import choose_eps, choose_n, ptp_gap_bound, ptp_rate_lower

COMMANDS = ("ptp-sweep", "region", "gdof-region", "wcurve", "gap-sweep", "verify-sandwich")
SANDWICH_TOL = 1e-6
FIXED_N = (2, 4, 8)


class UsageError(ValueError):
    pass


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def parse_number(tok: str) -> float:
    try:
        return float(Fraction(tok.strip()))
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a number: {tok!r}") from exc


def parse_grid(spec) -> list[float]:
    """``"a:b:step"`` (inclusive), ``"a,b,c"``, a single number, or a list of those tokens."""
    if isinstance(spec, (int, float)):
        return [float(spec)]
    if isinstance(spec, (list, tuple)):
        if len(spec) == 3 and not any(":" in str(t) or "," in str(t) for t in spec):
            return parse_grid(":".join(str(t) for t in spec))
        if len(spec) == 1:
            return parse_grid(spec[0])
        raise UsageError(f"cannot parse grid {spec!r}")
    text = str(spec).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise UsageError(f"range must be start:stop:step, got {text!r}")
        start, stop, step = (parse_number(p) for p in parts)
        if not step > 0.0 or start > stop:
            raise UsageError("range needs step > 0 and start <= stop")
        k = int(math.floor((stop - start) / step + 1e-9))
        return [round(start + i * step, 12) for i in range(k + 1)]
    return [parse_number(t) for t in text.split(",") if t.strip()]


@dataclass(frozen=True)
class SweepConfig:
    command: str
    snr_db: tuple[float, ...] = ()
    alpha: tuple[float, ...] = ()
    eps: float | str = "auto"
    n: int | str = "auto"
    beta_step: float = 1e-3
    out: str | None = None
    seed: int = 0
    cases: int = 500
    include_edge_cases: bool = False

    def validate(self):
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if not 0.0 < self.beta_step <= 0.1:
            raise UsageError("beta_step must lie in (0, 0.1]")
        if self.eps != "auto" and not isinstance(self.eps, float):
            raise UsageError("eps must be a number or 'auto'")
        if self.n != "auto" and (not isinstance(self.n, int) or self.n < 1):
            raise UsageError("n must be a positive integer or 'auto'")
        if self.cases < 0:
            raise UsageError("cases must be >= 0")
        return self


DEFAULTS = {
    "ptp-sweep": dict(snr_db="0:60:1"),
    "region": dict(snr_db="0:60:5", alpha="1.5"),
    "gdof-region": dict(alpha="4/3"),
    "wcurve": dict(alpha="0:3:0.01", eps="0.01"),
    "gap-sweep": dict(snr_db="20:120:5", alpha="1.1,1.3,1.5,1.8,2.2,3.0"),
    "verify-sandwich": dict(snr_db="-10:60:5"),
}


def _coerce(key, value):
    if value is None:
        return None
    if key in ("snr_db", "alpha"):
        return tuple(parse_grid(value))
    if key == "eps":
        return "auto" if str(value) == "auto" else parse_number(str(value))
    if key == "n":
        if str(value) == "auto":
            return "auto"
        try:
            return int(value)
        except ValueError as exc:
            raise UsageError(f"n must be an integer or 'auto', got {value!r}") from exc
    if key == "beta_step":
        return parse_number(str(value))
    if key in ("seed", "cases"):
        return int(value)
    if key == "include_edge_cases":
        return bool(value)
    return value


def build_config(command: str, flags: dict, config_path: str | None = None) -> SweepConfig:
    """Merge command defaults < config file < explicit flags."""
    merged = dict(DEFAULTS[command])
    if config_path:
        try:
            data = json.loads(Path(config_path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {config_path!r}: {exc}") from exc
        if not isinstance(data, dict):
            raise UsageError("config file must hold a JSON object")
        known = {f.name for f in fields(SweepConfig)} - {"command"}
        unknown = set(data) - known
        if unknown:
            raise UsageError(f"unknown config keys: {sorted(unknown)}")
        merged.update(data)
    merged.update({k: v for k, v in flags.items() if v is not None})
    kwargs = {k: _coerce(k, v) for k, v in merged.items()}
    return replace(SweepConfig(command), **kwargs).validate()


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        if math.isnan(x):
            return "nan"
        return f"{float(x):.12g}"
    if x is None:
        return "nan"
    return str(x)


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([_fmt(v) for v in row])
    return buf.getvalue()


# -- sweeps -----------------------------------------------------------------

def run_ptp_sweep(cfg: SweepConfig) -> tuple[str, int]:
    header = ["snr_db", "capacity_bits"] + [f"rate_fixed_n{n}" for n in FIXED_N] + [
        "rate_adaptive_n", "gap_bound", "n_used", "eps_used"]
    rows, violations = [], 0
    for db in cfg.snr_db:
        snr = db_to_linear(db)
        eps = choose_eps(snr) if cfg.eps == "auto" else cfg.eps
        n = choose_n(snr, eps)
        cap = ig(snr)
        rate = ptp_rate_lower(snr, eps)
        bound = ptp_gap_bound(snr)
        if cfg.eps == "auto" and cap - rate > bound + 1e-9:
            violations += 1
        fixed = [mi_bounds(pam(k), snr).lower for k in FIXED_N]
        rows.append([db, cap, *fixed, rate, bound, n, eps])
    return render_csv(header, rows), violations


def run_region(cfg: SweepConfig) -> tuple[str, int]:
    header = ["snr_db", "alpha", "inr_db", "regime", "n_used", "r1_max", "r2_max",
              "sum_max", "max_sum_rate"]
    rows = []
    for a in cfg.alpha:
        for db in cfg.snr_db:
            p = ChannelParams.from_alpha(db_to_linear(db), a)
            n = design_n(p)[1] if cfg.n == "auto" else cfg.n
            reg = achievable_region(p, n)
            rows.append([db, a, a * db, classify_regime(p).value, n, reg.r1_max, reg.r2_max,
                         reg.sum_max, reg.max_sum_rate])
    return render_csv(header, rows), 0


def run_gdof_region(cfg: SweepConfig) -> tuple[str, int]:
    if len(cfg.alpha) != 1:
        raise UsageError("gdof-region takes a single alpha")
    alpha = cfg.alpha[0]
    poly = gdof_closure(alpha, beta_grid(cfg.beta_step))
    rows = [["icor", alpha, d1, d2] for d1, d2 in poly.vertices]
    rows += [["classic", alpha, d1, d2] for d1, d2 in classic_region_vertices(alpha)]
    return render_csv(["series", "alpha", "d1", "d2"], rows), 0


def run_wcurve(cfg: SweepConfig) -> tuple[str, int]:
    if cfg.eps == "auto":
        raise UsageError("wcurve needs a numeric --eps")
    rows = []
    for a in cfg.alpha:
        try:
            icor = sum_gdof_icor(a, cfg.eps)
        except ValueError:
            icor = math.nan
        rows.append([a, icor, sum_gdof_classic(a), sum_gdof_tin(a)])
    return render_csv(["alpha", "icor_sum", "classic_sum", "tin_sum"], rows), 0


def run_gap_sweep(cfg: SweepConfig) -> tuple[str, int]:
    header = ["snr_db", "alpha", "regime", "achievable_sum", "classic_sum", "realized_gap",
              "analytic_bound", "r2_gap_bound", "n_used", "eps_used", "in_proof_domain",
              "status"]
    rows, violations = [], 0
    for a in cfg.alpha:
        for db in cfg.snr_db:
            p = ChannelParams.from_alpha(db_to_linear(db), a)
            regime = classify_regime(p)
            if regime is Regime.WEAK:
                rows.append([db, a, regime.value] + [math.nan] * 7 + [False, "unsupported"])
                continue
            r = gap_report(p)
            if not r.in_proof_domain:
                status = "outside-proof-domain"
            elif 0.0 <= r.realized_gap and r.within_bound:
                status = "ok"
            else:
                status = "violation"
                violations += 1
            rows.append([db, a, regime.value, r.achievable_sum, r.classic_sum, r.realized_gap,
                         r.analytic_gap_bound, r.r2_gap_bound, r.n_used, r.eps_used,
                         r.in_proof_domain, status])
    return render_csv(header, rows), violations


def case_rng(seed: int, case: int) -> np.random.Generator:
    """Counter-based stream for one sandwich case, independent of evaluation order."""
    key = np.array([seed & 0xFFFFFFFFFFFFFFFF, case], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def random_constellation(rng: np.random.Generator) -> tuple[Constellation, str]:
    n = int(rng.integers(2, 17))
    while True:
        pts = rng.uniform(-3.0, 3.0, n)
        if np.min(np.diff(np.sort(pts))) > 1e-9:
            break
    if rng.random() < 0.5:
        return Constellation.from_points(pts, unit_energy=True), "uniform"
    return Constellation.from_points(pts, rng.uniform(0.1, 1.0, n), unit_energy=True), "random"


def sandwich_cases(cfg: SweepConfig):
    """Yield ``(label, constellation or None, masses_kind, note)``."""
    if cfg.include_edge_cases:
        yield "edge-single-point", None, "uniform", "single point carries no information"
        close = Constellation.from_points([-1.2, 0.0, 1e-6, 1.2], unit_energy=True)
        yield "edge-near-coincident", close, "uniform", ""
    for i in range(cfg.cases):
        c, kind = random_constellation(case_rng(cfg.seed, i))
        yield str(i), c, kind, ""


def run_verify_sandwich(cfg: SweepConfig, log=None) -> tuple[str, int]:
    log = log or sys.stderr
    header = ["case", "n_points", "masses", "snr_db", "lower", "mi_exact", "upper", "slack",
              "lower_mass_agnostic", "status"]
    rows, violations, failures, checks = [], 0, 0, 0
    agnostic_over = 0
    min_slack = math.inf
    for label, c, kind, note in sandwich_cases(cfg):
        if c is None:
            rows.append([label, 1, kind] + [math.nan] * 6 + ["skipped"])
            print(f"case {label}: skipped ({note})", file=log)
            continue
        for db in cfg.snr_db:
            snr = db_to_linear(db)
            b = mi_bounds(c, snr)
            agnostic = id_lower(c, snr)
            try:
                mi = mi_exact(c, snr)
            except OracleConvergenceError as exc:
                failures += 1
                rows.append([label, c.size, kind, db, b.lower, math.nan, b.upper, math.nan,
                             agnostic, "no-convergence"])
                print(f"case {label} at {db} dB: {exc}", file=log)
                continue
            checks += 1
            slack = min(mi - b.lower, b.upper - mi)
            min_slack = min(min_slack, slack)
            ok = slack >= -SANDWICH_TOL
            violations += not ok
            # informational: the mass-agnostic form is not a bound for skewed masses
            agnostic_over += agnostic > mi + SANDWICH_TOL
            rows.append([label, c.size, kind, db, b.lower, mi, b.upper, slack, agnostic,
                         "ok" if ok else "violation"])
    print(f"sandwich: {checks} checks, {violations} violations, {failures} oracle failures, "
          f"min slack {min_slack:.3e} bits; mass-agnostic lower form exceeded I in "
          f"{agnostic_over} checks", file=log)
    return render_csv(header, rows), violations + failures


RUNNERS = {
    "ptp-sweep": run_ptp_sweep,
    "region": run_region,
    "gdof-region": run_gdof_region,
    "wcurve": run_wcurve,
    "gap-sweep": run_gap_sweep,
    "verify-sandwich": run_verify_sandwich,
}


def run(cfg: SweepConfig) -> tuple[str, int]:
    """Run one configured sweep; returns ``(csv_text, number_of_failed_checks)``."""
    return RUNNERS[cfg.command](cfg)


def make_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="oblivious-ic", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--snr-db", nargs="+", default=None, metavar="DB",
                        help="START STOP STEP, or start:stop:step, or a comma list")
        sp.add_argument("--alpha", default=None, help="value, comma list or start:stop:step")
        sp.add_argument("--eps", default=None, help="number or 'auto'")
        sp.add_argument("--n", default=None, help="integer or 'auto'")
        sp.add_argument("--beta-step", default=None)
        sp.add_argument("--out", default=None, help="CSV path (default: stdout)")
        sp.add_argument("--seed", type=int, default=None)
        sp.add_argument("--cases", type=int, default=None)
        sp.add_argument("--include-edge-cases", action="store_true", default=None)
        sp.add_argument("--config", default=None, help="JSON file with the same keys")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = make_parser()
    args = ap.parse_args(argv)
    flags = {k: getattr(args, k) for k in ("snr_db", "alpha", "eps", "n", "beta_step", "out",
                                          "seed", "cases", "include_edge_cases")}
    try:
        cfg = build_config(args.command, flags, args.config)
        text, failed = run(cfg)
    except UsageError as exc:
        ap.error(str(exc))
    if cfg.out:
        try:
            Path(cfg.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            print(f"cannot write {cfg.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.write(text)
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())
