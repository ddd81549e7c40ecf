"""Command line: ``ptsmatrix {smatrix,verify,recover,selftest} CONFIG [options]``.

Exit codes: 0 success, 2 config error, 3 relation over tolerance,
4 degenerate metric fit.
"""
import argparse
import logging
from pathlib import Path
import sys

import numpy as np

from . import acceptance
from .exceptions import ConfigError, DegenerateFit
from .inverse import c_operator, general_metric_diagnostic, metric_from_chi, recover_metric
from .io import complex_matrix, dumps, load_config, parse_grid, samples_to_csv, samples_to_json
from .smatrix import Route, smatrix_grid
from .verify import RELATIONS, pair_samples, symmetrized_grid, verify_potential

EXIT_OK, EXIT_CONFIG, EXIT_RELATION, EXIT_DEGENERATE = 0, 2, 3, 4

log = logging.getLogger("ptsmatrix")


def _add_common(p):
    p.add_argument("config", help="JSON config file")
    p.add_argument("--grid", nargs=6, metavar=("RE_MIN", "RE_MAX", "N", "IM_MIN", "IM_MAX", "M"),
                   help="override the k-grid")
    p.add_argument("--route", choices=[r.value for r in Route], help="override the assembly route")
    p.add_argument("--out", help="output path (default: config output.path, else stdout)")
    p.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE",
                   help="override a tolerance, repeatable")
    p.add_argument("--jobs", type=int, default=None, help="worker processes for grid sweeps")


def build_parser():
    ap = argparse.ArgumentParser(prog="ptsmatrix", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("smatrix", help="tabulate S(k) over a grid")
    _add_common(p)
    p.add_argument("--format", choices=("csv", "json"), help="override output.format")

    p = sub.add_parser("verify", help="check symmetry relations over a symmetrized grid")
    _add_common(p)
    p.add_argument("--relations", nargs="+", choices=RELATIONS, help="relations to check")
    p.add_argument("--chi", help="metric parameter for the 'metric' relation, or 'recover'")

    p = sub.add_parser("recover", help="fit the metric exp(chi sigma2) from S-matrix samples")
    _add_common(p)
    p.add_argument("--diagnostic", action="store_true", help="also fit an unconstrained Hermitian metric")

    sub.add_parser("selftest", help="run the acceptance criteria")
    return ap


def _resolve(args):
    cfg = load_config(args.config)
    if args.grid:
        g = args.grid
        try:
            cfg.grid = parse_grid({"re": [float(g[0]), float(g[1]), int(g[2])],
                                   "im": [float(g[3]), float(g[4]), int(g[5])]}, where="--grid")
        except ValueError as exc:
            raise ConfigError(f"--grid: {exc}") from None
    if args.route:
        cfg.route = Route(args.route)
    if args.out:
        cfg.output_path = args.out
    for item in args.tol:
        name, sep, value = item.partition("=")
        try:
            if not sep:
                raise ValueError
            cfg.tolerances[name] = float(value)
        except ValueError:
            raise ConfigError(f"--tol: expected NAME=VALUE, got {item!r}") from None
    return cfg


def _write(text, path):
    if path:
        Path(path).write_text(text, encoding="utf-8")
        log.info("wrote %s", path)
    else:
        sys.stdout.write(text)


def _recovery_pairs(cfg):
    re, im = symmetrized_grid(cfg.grid)
    sk, sm = [], []
    for _, a, b in pair_samples(cfg.potential, re, im, cfg.route, cfg.steps):
        if a.ok and b.ok:
            sk.append(a.S)
            sm.append(b.S)
    return sk, sm


def estimate_to_dict(est):
    eq, c, text = c_operator(est.chi)
    return {
        "chi": est.chi,
        "tanh_chi": float(np.tanh(est.chi)),
        "beta_implied": est.beta_implied,
        "fit_residual": est.fit_residual,
        "eQ": complex_matrix(eq),
        "C": complex_matrix(c),
        "C_description": text,
    }


def cmd_smatrix(args):
    cfg = _resolve(args)
    fmt = args.format or cfg.output_format
    samples = smatrix_grid(cfg.potential, cfg.grid, cfg.route, cfg.steps, args.jobs)
    _write(samples_to_csv(samples) if fmt == "csv" else samples_to_json(samples), cfg.output_path)
    return EXIT_OK


def cmd_verify(args):
    cfg = _resolve(args)
    relations = tuple(args.relations or cfg.relations)
    chi = cfg.chi if args.chi is None else args.chi
    eq = None
    report_extra = {}
    if "metric" in relations:
        if chi is None:
            raise ConfigError("chi: required for relation 'metric' (a number or \"recover\")")
        if chi == "recover":
            est = recover_metric(*_recovery_pairs(cfg))
            report_extra["metric"] = estimate_to_dict(est)
            eq = est.eQ
        else:
            try:
                chi = float(chi)
            except ValueError:
                raise ConfigError(f"--chi: expected a number or 'recover', got {chi!r}") from None
            report_extra["metric"] = {"chi": chi}
            eq = metric_from_chi(chi)
    try:
        report = verify_potential(cfg.potential, cfg.grid, relations, eq, cfg.route, cfg.tolerances, cfg.steps)
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    report.update(report_extra)
    _write(dumps(report), cfg.output_path)
    for rel, entry in report["summary"].items():
        log.info("%s: max %s (tol %g) %s", rel, entry["max"], entry["tolerance"],
                 "pass" if entry["passed"] else "FAIL")
    return EXIT_OK if report["passed"] else EXIT_RELATION


def cmd_recover(args):
    cfg = _resolve(args)
    sk, sm = _recovery_pairs(cfg)
    if not sk:
        raise ConfigError("grid: no usable (k, -conj k) sample pairs")
    est = recover_metric(sk, sm)
    out = estimate_to_dict(est)
    out["n_samples"] = len(sk)
    if args.diagnostic:
        diag = general_metric_diagnostic(sk, sm)
        diag["metric"] = complex_matrix(diag["metric"])
        out["diagnostic"] = diag
    _write(dumps(out), cfg.output_path)
    return EXIT_OK


def cmd_selftest(args):
    ok = True
    for res in acceptance.run_all():
        print(res.line())
        ok = ok and res.passed
    return EXIT_OK if ok else EXIT_RELATION


COMMANDS = {"smatrix": cmd_smatrix, "verify": cmd_verify, "recover": cmd_recover, "selftest": cmd_selftest}


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s")
    try:
        return COMMANDS[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateFit as exc:
        print(f"degenerate fit: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    raise SystemExit(main())
