"""Batch experiment runner.

Configs are JSON files with a tagged ``potential`` union, a ``beta_grid``,
an optional ``perturbation`` block and a list of requested ``reports``.
Numeric fields may be given as decimal strings.  Runs are fully
deterministic: identical config bytes produce identical CSV bytes, and every
CSV carries a comment line with the sha256 digest of the config it came from.

Exit codes: 0 success, 2 malformed config or arguments, 3 numerical failure.
Set ZEROTEMP_THREADS to fan the beta grid out over a process pool.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import math
import os
import sys
from multiprocessing import Pool

import mpmath

from .asymptotics import _entropy_mp, estimate_subaction, limit_measure_estimate
from .aubry import EmptyAubrySetError, PositiveCycleError, decompose_aubry, word_graph
from .maxplus import NoEigenvalueError, mp_eigenvalue
from .spectral import LocallyConstantPotential, PerronError, perron
from .symbolic import Sft, enumerate_words
from .verify import SUITE_NAMES, format_result, run_suite
from .walters import (
    BracketError,
    FirstCoordPerturbation,
    SeriesDivergenceError,
    WaltersPotential,
    appendix_example,
    classify_regime,
    perturbation_stability_experiment,
    walters_cylinder_ratio,
    walters_gamma,
    walters_pressure,
)

EXIT_OK = 0
EXIT_SCHEMA = 2
EXIT_NUMERICAL = 3

NUMERICAL_ERRORS = (
    PerronError,
    BracketError,
    SeriesDivergenceError,
    NoEigenvalueError,
    PositiveCycleError,
    EmptyAubrySetError,
)


class ConfigError(ValueError):
    pass


def _num(x, field: str) -> float:
    if isinstance(x, bool) or not isinstance(x, (int, float, str)):
        raise ConfigError(f"{field} must be a number or decimal string")
    try:
        return float(x)
    except ValueError:
        raise ConfigError(f"{field} is not a valid number: {x!r}")


def _fmt(x) -> str:
    if isinstance(x, float):
        if x == -math.inf:
            return "-inf"
        if x == math.inf:
            return "inf"
        return format(x, ".17g")
    return str(x)


def _word_str(word) -> str:
    return "".join(str(s) for s in word)


def _load_config(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}")
    try:
        cfg = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"config is not valid JSON: {exc}")
    if not isinstance(cfg, dict):
        raise ConfigError("config root must be an object")
    digest = hashlib.sha256(raw).hexdigest()
    return cfg, digest


def _parse_potential(cfg: dict):
    pot_cfg = cfg.get("potential")
    if not isinstance(pot_cfg, dict):
        raise ConfigError("missing or malformed 'potential' object")
    kind = pot_cfg.get("kind")
    if kind == "locally-constant":
        n = pot_cfg.get("alphabet_size", 2)
        if not isinstance(n, int) or n < 1:
            raise ConfigError("alphabet_size must be a positive integer")
        trans = pot_cfg.get("transitions")
        if trans is None:
            rows = tuple(tuple(True for _ in range(n)) for _ in range(n))
        else:
            if (
                not isinstance(trans, list)
                or len(trans) != n
                or any(not isinstance(r, list) or len(r) != n for r in trans)
            ):
                raise ConfigError("transitions must be an n x n 0/1 matrix")
            rows = tuple(tuple(bool(v) for v in r) for r in trans)
        theta = _num(pot_cfg.get("theta", 0.5), "theta")
        table = pot_cfg.get("table")
        if not isinstance(table, dict) or not table:
            raise ConfigError("locally-constant potential needs a 'table' object")
        conv = {}
        for key, val in table.items():
            if not isinstance(key, str) or not key or not key.isdigit():
                raise ConfigError(f"table key {key!r} must be a word of digits")
            conv[key] = _num(val, f"table[{key}]")
        try:
            sft = Sft(n, rows, theta)
            return kind, LocallyConstantPotential.from_table(sft, conv)
        except ValueError as exc:
            raise ConfigError(str(exc))
    if kind == "walters":
        try:
            return kind, WaltersPotential(
                b=_num(pot_cfg.get("b"), "b"),
                d=_num(pot_cfg.get("d"), "d"),
                a=_num(pot_cfg.get("a"), "a"),
                c=_num(pot_cfg.get("c"), "c"),
                rho=_num(pot_cfg.get("rho", 0.5), "rho"),
                theta=_num(pot_cfg.get("theta", 0.5), "theta"),
                relaxed=bool(pot_cfg.get("relaxed", False)),
            )
        except ValueError as exc:
            raise ConfigError(str(exc))
    if kind == "appendix":
        gamma_p = _num(pot_cfg.get("gamma"), "gamma")
        eta = _num(pot_cfg.get("eta"), "eta")
        if not (gamma_p < eta < 0):
            raise ConfigError("appendix parameters must satisfy gamma < eta < 0")
        return kind, (gamma_p, eta)
    raise ConfigError(
        "potential.kind must be one of locally-constant, walters, appendix"
    )


_REPORTS_BY_KIND = {
    "locally-constant": ("gamma", "subaction", "measure"),
    "walters": ("pressure", "regime", "measure", "stability"),
    "appendix": ("appendix",),
}


def _parse_config(cfg: dict):
    kind, pot = _parse_potential(cfg)
    grid_cfg = cfg.get("beta_grid")
    if not isinstance(grid_cfg, list) or not grid_cfg:
        raise ConfigError("beta_grid must be a non-empty list")
    grid = tuple(_num(b, "beta_grid entry") for b in grid_cfg)
    if any(b <= 0 for b in grid) or any(
        b2 <= b1 for b1, b2 in zip(grid, grid[1:])
    ):
        raise ConfigError("beta_grid must be positive and strictly increasing")
    reports = cfg.get("reports")
    if not isinstance(reports, list) or not reports:
        raise ConfigError("reports must be a non-empty list")
    allowed = _REPORTS_BY_KIND[kind]
    for r in reports:
        if r not in allowed:
            raise ConfigError(
                f"report {r!r} not available for kind {kind!r}; allowed: {allowed}"
            )
    pert = None
    pert_cfg = cfg.get("perturbation")
    if pert_cfg is not None:
        if not isinstance(pert_cfg, dict):
            raise ConfigError("perturbation must be an object")
        p_kind = pert_cfg.get("kind", "first-coord")
        if p_kind != "first-coord":
            raise ConfigError("perturbation.kind must be 'first-coord'")
        sign_raw = pert_cfg.get("sign", "+")
        if sign_raw in ("+", 1, 1.0):
            sign = 1.0
        elif sign_raw in ("-", -1, -1.0):
            sign = -1.0
        else:
            raise ConfigError("perturbation.sign must be '+' or '-'")
        pert = {"delta": _num(pert_cfg.get("delta"), "delta"), "sign": sign}
    if "stability" in reports and pert is None:
        raise ConfigError("the stability report needs a 'perturbation' block")
    return kind, pot, grid, tuple(reports), pert


def _thread_count() -> int:
    raw = os.environ.get("ZEROTEMP_THREADS", "")
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(n, 1)


def _grid_map(fn, args_list):
    """Evaluate independent grid points, optionally on a process pool.

    Results come back in submission order either way.
    """
    workers = _thread_count()
    if workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with Pool(min(workers, len(args_list))) as pool:
        return pool.map(fn, args_list)


def _lc_gamma_point(args):
    pot, beta, h_str = args
    p = perron(pot, beta)
    with mpmath.workdps(600):
        excess_log = p.pressure_excess_log(mpmath.mpf(h_str))
    return beta, p.log_lambda, excess_log / beta


def _walters_pressure_point(args):
    w, beta = args
    p = walters_pressure(w, beta)
    return beta, p, math.log(p) / beta


def _report_lc_gamma(pot, grid):
    decomp = decompose_aubry(word_graph(pot))
    h_mp = _entropy_mp(decomp, dps=600)
    with mpmath.workdps(600):
        h_str = mpmath.nstr(h_mp, 500)
    rows = _grid_map(_lc_gamma_point, [(pot, b, h_str) for b in grid])
    gamma_mp = float(mp_eigenvalue(decomp.maximal_cost()))
    csv_rows = [(b, p, g, gamma_mp, float(h_mp)) for (b, p, g) in rows]
    header = ["beta", "pressure", "gamma_hat", "gamma_maxplus", "h"]
    summary = (
        f"gamma: gamma_hat({grid[-1]:g}) = {rows[-1][2]:.6f}, "
        f"max-plus prediction {gamma_mp:.6f}, h = {float(h_mp):.6f}"
    )
    return header, csv_rows, summary


def _report_lc_subaction(pot, grid):
    header = ["beta", "node", "v_hat", "v_rec", "calibration_residual"]
    csv_rows = []
    last = None
    for beta in grid:
        se = estimate_subaction(pot, beta)
        for i, node in enumerate(se.nodes):
            csv_rows.append(
                (beta, _word_str(node), se.v_hat[i], se.v_rec[i], se.calibration_residual)
            )
        last = se
    summary = (
        f"subaction: residual({grid[-1]:g}) = {last.calibration_residual:.3e}, "
        f"eigenspace dimension {last.eigenspace_dim}"
    )
    return header, csv_rows, summary


def _report_lc_measure(pot, grid):
    k = pot.word_length
    words = enumerate_words(pot.sft, 1)
    if k > 1:
        words = words + enumerate_words(pot.sft, k)
    header = ["beta", "word", "mass"]
    csv_rows = []
    for beta in grid:
        masses = limit_measure_estimate(pot, beta, words)
        for w in words:
            csv_rows.append((beta, _word_str(w), masses[tuple(w)]))
    tail = ", ".join(
        f"[{_word_str(w)}]={masses[tuple(w)]:.6f}" for w in enumerate_words(pot.sft, 1)
    )
    summary = f"measure: at beta {grid[-1]:g}: {tail}"
    return header, csv_rows, summary


def _report_walters_pressure(w, grid):
    rows = _grid_map(_walters_pressure_point, [(w, b) for b in grid])
    gamma = walters_gamma(w)
    header = ["beta", "pressure", "rate", "gamma"]
    csv_rows = [(b, p, r, gamma) for (b, p, r) in rows]
    summary = (
        f"pressure: rate({grid[-1]:g}) = {rows[-1][2]:.6f}, gamma = {gamma:.6f}"
    )
    return header, csv_rows, summary


def _report_walters_regime(w, grid):
    rep = classify_regime(w)
    header = ["gamma", "regime", "mirrored", "limit_mass_0", "l_limit"]
    csv_rows = [
        (
            rep.gamma,
            rep.regime,
            int(rep.mirrored),
            rep.limit_mass_0,
            rep.l_limit if rep.l_limit is not None else "",
        )
    ]
    summary = f"regime: {rep.regime}, mass {rep.limit_mass_0:.7f}"
    if rep.l_limit is not None:
        summary += f", l_limit {rep.l_limit:.7f}"
    return header, csv_rows, summary


def _report_walters_measure(w, grid):
    header = ["beta", "pressure", "ratio", "mu_0"]
    csv_rows = []
    for beta in grid:
        p = walters_pressure(w, beta)
        ratio, mu0 = walters_cylinder_ratio(w, FirstCoordPerturbation.none(), beta, p)
        csv_rows.append((beta, p, ratio, mu0))
    summary = f"measure: mu([0]) at beta {grid[-1]:g} = {csv_rows[-1][3]:.7f}"
    return header, csv_rows, summary


def _report_walters_stability(w, grid, pert):
    rep = perturbation_stability_experiment(w, pert["delta"], grid, sign=pert["sign"])
    header = [
        "beta",
        "pressure",
        "a_beta",
        "mu0_pert",
        "mu0_unpert",
        "vhat1_pert",
        "vhat1_unpert",
    ]
    csv_rows = [
        (r.beta, r.pressure, r.a_beta, r.mu0_pert, r.mu0_unpert, r.vhat1_pert, r.vhat1_unpert)
        for r in rep.rows
    ]
    summary = (
        f"stability: tail gaps mu {rep.mu_gap_tail:.3e}, "
        f"subaction {rep.vhat_gap_tail:.3e}, shrinking {rep.gaps_shrink}"
    )
    return header, csv_rows, summary


def _report_appendix(params, grid):
    gamma_p, eta = params
    header = [
        "beta",
        "lambda_tilde",
        "h1_pert",
        "p0",
        "p_unpert",
        "mu0_unpert",
        "max_rel_err",
    ]
    csv_rows = []
    for beta in grid:
        ex = appendix_example(gamma_p, eta, beta)
        csv_rows.append(
            (beta, ex.lambda_tilde, ex.h1_pert, ex.p0, ex.p_unpert, ex.mu0_unpert, ex.max_rel_err)
        )
    last = csv_rows[-1]
    summary = (
        f"appendix: p0({grid[-1]:g}) = {last[3]:.3e}, "
        f"closed-form agreement {last[6]:.3e}"
    )
    return header, csv_rows, summary


def _compute_reports(kind, pot, grid, reports, pert):
    table = {}
    summaries = []
    for name in reports:
        if kind == "locally-constant":
            fn = {
                "gamma": _report_lc_gamma,
                "subaction": _report_lc_subaction,
                "measure": _report_lc_measure,
            }[name]
            header, rows, summary = fn(pot, grid)
        elif kind == "walters":
            if name == "stability":
                header, rows, summary = _report_walters_stability(pot, grid, pert)
            else:
                fn = {
                    "pressure": _report_walters_pressure,
                    "regime": _report_walters_regime,
                    "measure": _report_walters_measure,
                }[name]
                header, rows, summary = fn(pot, grid)
        else:
            header, rows, summary = _report_appendix(pot, grid)
        table[name] = (header, rows)
        summaries.append(summary)
    return table, summaries


def _render_csv(header, rows, digest: str) -> str:
    buf = io.StringIO()
    buf.write(f"# config-sha256={digest}\n")
    buf.write(",".join(header) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(x) for x in row) + "\n")
    return buf.getvalue()


def _cmd_run(config_path: str, output_dir: str | None) -> int:
    try:
        cfg, digest = _load_config(config_path)
        kind, pot, grid, reports, pert = _parse_config(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        table, summaries = _compute_reports(kind, pot, grid, reports, pert)
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure in reports {reports}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    # all computation done; only now touch the filesystem
    base = output_dir
    if base is None:
        stem = os.path.splitext(os.path.basename(config_path))[0]
        base = os.path.join(os.path.dirname(os.path.abspath(config_path)), stem + "_out")
    os.makedirs(base, exist_ok=True)
    for name in reports:
        header, rows = table[name]
        path = os.path.join(base, f"{name}.csv")
        with open(path, "w", newline="") as fh:
            fh.write(_render_csv(header, rows, digest))
    summary_text = "\n".join(summaries) + "\n"
    with open(os.path.join(base, "summary.txt"), "w") as fh:
        fh.write(f"# config-sha256={digest}\n")
        fh.write(summary_text)
    print(summary_text, end="")
    return EXIT_OK


def _cmd_single_report(config_path: str, wanted_kind: str, report: str) -> int:
    try:
        cfg, digest = _load_config(config_path)
        kind, pot, grid, reports, pert = _parse_config(cfg)
        if kind != wanted_kind:
            raise ConfigError(
                f"this verb needs a {wanted_kind!r} potential, config has {kind!r}"
            )
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    try:
        table, summaries = _compute_reports(kind, pot, grid, (report,), pert)
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure in report {report!r}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    header, rows = table[report]
    sys.stdout.write(_render_csv(header, rows, digest))
    return EXIT_OK


def _cmd_walters(config_path: str) -> int:
    try:
        cfg, digest = _load_config(config_path)
        kind, pot, grid, reports, pert = _parse_config(cfg)
        if kind != "walters":
            raise ConfigError(f"the walters verb needs a walters potential, got {kind!r}")
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    wanted = tuple(r for r in reports if r in ("pressure", "regime", "measure", "stability"))
    try:
        table, summaries = _compute_reports(kind, pot, grid, wanted, pert)
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure in reports {wanted}: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    for name in wanted:
        header, rows = table[name]
        sys.stdout.write(_render_csv(header, rows, digest))
    for s in summaries:
        print(s)
    return EXIT_OK


def _cmd_verify(suite: str) -> int:
    try:
        results = run_suite(suite)
    except KeyError as exc:
        print(f"argument error: {exc.args[0]}", file=sys.stderr)
        return EXIT_SCHEMA
    failed = 0
    for r in results:
        print(format_result(r))
        if not r.passed:
            failed += 1
    print(f"{len(results) - failed}/{len(results)} checks passed in suite {suite!r}")
    return EXIT_OK if failed == 0 else EXIT_NUMERICAL


def _cmd_appendix(gamma_p: float, eta: float, beta_max: float) -> int:
    if not (gamma_p < eta < 0):
        print("argument error: need gamma < eta < 0", file=sys.stderr)
        return EXIT_SCHEMA
    if beta_max < 2:
        print("argument error: beta-max must be at least 2", file=sys.stderr)
        return EXIT_SCHEMA
    grid = []
    b = 2.0
    while b < beta_max:
        grid.append(b)
        b *= 2.0
    grid.append(beta_max)
    try:
        header, rows, summary = _report_appendix((gamma_p, eta), tuple(grid))
    except NUMERICAL_ERRORS as exc:
        print(f"numerical failure in report 'appendix': {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    digest = hashlib.sha256(
        f"appendix gamma={gamma_p!r} eta={eta!r} beta_max={beta_max!r}".encode()
    ).hexdigest()
    sys.stdout.write(_render_csv(header, rows, digest))
    print(summary)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="zerotemp",
        description="Zero-temperature asymptotics of Gibbs equilibrium states",
    )
    sub = parser.add_subparsers(dest="verb", required=True)
    p_run = sub.add_parser("run", help="run all requested reports from a config")
    p_run.add_argument("config")
    p_run.add_argument("--output-dir", default=None)
    p_verify = sub.add_parser("verify", help="run a named verification suite")
    p_verify.add_argument("suite", help=f"one of: {', '.join(SUITE_NAMES)}")
    p_gamma = sub.add_parser("gamma", help="gamma sweep for a locally constant config")
    p_gamma.add_argument("config")
    p_walters = sub.add_parser("walters", help="reports for a walters config")
    p_walters.add_argument("config")
    p_app = sub.add_parser("appendix", help="selection-flip example sweep")
    p_app.add_argument("--gamma", required=True)
    p_app.add_argument("--eta", required=True)
    p_app.add_argument("--beta-max", required=True)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "run":
        return _cmd_run(args.config, args.output_dir)
    if args.verb == "verify":
        return _cmd_verify(args.suite)
    if args.verb == "gamma":
        return _cmd_single_report(args.config, "locally-constant", "gamma")
    if args.verb == "walters":
        return _cmd_walters(args.config)
    try:
        gamma_p = float(args.gamma)
        eta = float(args.eta)
        beta_max = float(args.beta_max)
    except ValueError:
        print("argument error: gamma, eta, beta-max must be numbers", file=sys.stderr)
        return EXIT_SCHEMA
    return _cmd_appendix(gamma_p, eta, beta_max)


if __name__ == "__main__":
    sys.exit(main())
