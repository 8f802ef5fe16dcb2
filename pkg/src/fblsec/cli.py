"""Command-line front end: metric queries, data sweeps, and both simulators.

Every data file is written next to a ``<file>.manifest`` capturing the
fully resolved parameter set; running the same command with
``--config <manifest>`` reproduces the data file byte for byte. SNRs are
given in dB and angles in degrees on the command line and converted once
at this boundary; all internal math is linear/radians.

Exit codes: 0 success, 2 invalid arguments or config parse error,
3 unsatisfiable scenario, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import math
import sys
from datetime import datetime, timezone

import numpy as np

from . import __version__, fb_coding
from .channels import ReciprocityError
from .cipc import CipcConfig, optimize_q, run_cipc
from .fb_coding import ApproximationConfig, FbPoint, db_to_linear, linear_to_db
from .lob import LobConfig, optimize_an_fraction, run_lob
from .numerics import RngSeed, UnsatisfiableError
from .secrecy import ConstraintPair, min_blocklength, rate_interval, security_gap

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_UNSATISFIABLE = 3
EXIT_IO = 4

# Config keys whose values expand to several command-line tokens.
_LIST_KEYS = {"n_list", "q_grid", "phi_grid"}
# Informational manifest keys that are not flags and are skipped on replay.
_NON_REPLAY_KEYS = {"version", "timestamp", "channel_model"}


class _ConfigError(Exception):
    pass


# ----------------------------------------------------------------------
# flat key = value config files (also the manifest format)
# ----------------------------------------------------------------------

def _parse_kv_file(path: str) -> list[tuple[int, str, str]]:
    try:
        with open(path, "r") as f:
            raw_lines = f.readlines()
    except OSError as e:
        raise _ConfigError(f"cannot read config file {path!r}: {e}") from e
    entries = []
    for lineno, raw in enumerate(raw_lines, 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        key, sep, value = line.partition("=")
        key = key.strip()
        value = value.strip()
        if not sep or not key:
            raise _ConfigError(f"{path}:{lineno}: expected 'key = value', got {line!r}")
        entries.append((lineno, key, value))
    return entries


def _config_to_flags(path: str, command: str) -> list[str]:
    flags: list[str] = []
    for lineno, key, value in _parse_kv_file(path):
        if key in _NON_REPLAY_KEYS:
            continue
        if key == "command":
            if value != command:
                raise _ConfigError(
                    f"{path}:{lineno}: config is for command {value!r}, "
                    f"not {command!r}"
                )
            continue
        flags.append("--" + key.replace("_", "-"))
        if key in _LIST_KEYS:
            flags.extend(value.split())
        else:
            flags.append(value)
    return flags


def _expand_config(argv: list[str]) -> list[str]:
    """Inject config-file entries as flags ahead of the explicit ones."""
    if not argv or argv[0].startswith("-"):
        return argv
    command, rest = argv[0], argv[1:]
    paths = []
    i = 0
    while i < len(rest):
        tok = rest[i]
        if tok == "--config" and i + 1 < len(rest):
            paths.append(rest[i + 1])
            i += 2
        elif tok.startswith("--config="):
            paths.append(tok.split("=", 1)[1])
            i += 1
        else:
            i += 1
    injected: list[str] = []
    for path in paths:
        injected.extend(_config_to_flags(path, command))
    return [command] + injected + rest


# ----------------------------------------------------------------------
# output helpers
# ----------------------------------------------------------------------

def _sci(x: float) -> str:
    return f"{float(x):.12e}"


def _db_or_neg_inf(linear: float) -> str:
    return _sci(linear_to_db(linear)) if linear > 0.0 else "-inf"


def _bool_str(flag: bool) -> str:
    return "true" if flag else "false"


def _fmt_param(value) -> str:
    if isinstance(value, bool):
        return _bool_str(value)
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return " ".join(_fmt_param(v) for v in value)
    return str(value)


def _collect_params(args: argparse.Namespace, overrides: dict | None = None) -> dict:
    params = {
        k: v
        for k, v in vars(args).items()
        if k not in ("handler", "config", "command") and v is not None
    }
    if overrides:
        params.update(overrides)
    return params


def _manifest_lines(command: str, params: dict) -> list[str]:
    lines = [
        "# fblsec run manifest; replay with: fblsec "
        f"{command} --config <this file>",
        f"command = {command}",
        f"version = {__version__}",
        f"timestamp = {datetime.now(timezone.utc).isoformat()}",
        "channel_model = complex-awgn-normal-approximation",
    ]
    for key in sorted(params):
        lines.append(f"{key} = {_fmt_param(params[key])}")
    return lines


def _write_manifest(out_path: str, command: str, params: dict) -> None:
    with open(out_path + ".manifest", "w", newline="") as f:
        f.write("\n".join(_manifest_lines(command, params)) + "\n")


def _print_manifest(command: str, params: dict) -> None:
    for line in _manifest_lines(command, params):
        print(line)


def _write_csv(path: str, header: list[str], rows) -> int:
    count = 0
    with open(path, "w", newline="") as f:
        f.write(",".join(header) + "\n")
        for row in rows:
            f.write(",".join(row) + "\n")
            count += 1
    return count


def _maybe_svg(path: str | None, draw) -> None:
    if path is None:
        return
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except Exception as e:  # plotting is best effort, CSV is the contract
        print(f"warning: skipping SVG output ({e})", file=sys.stderr)
        return
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    draw(ax)
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    print(f"wrote plot to {path}")


# ----------------------------------------------------------------------
# argument types
# ----------------------------------------------------------------------

def _u64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text!r} is not an unsigned 64-bit integer")
    return value


def _u32(text: str) -> int:
    value = int(text)
    if not 1 <= value < 2**32:
        raise argparse.ArgumentTypeError(f"{text!r} is not a positive 32-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be >= 1")
    return value


def _parse_bool(text: str) -> bool:
    lowered = text.strip().lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected true/false, got {text!r}")


# ----------------------------------------------------------------------
# subcommand handlers
# ----------------------------------------------------------------------

def _approx(args) -> ApproximationConfig:
    return ApproximationConfig(include_log_term=args.log_term)


def _constraints(args) -> ConstraintPair:
    return ConstraintPair(beta_b=args.beta_b, beta_e=args.beta_e)


def _cmd_fig2(args) -> int:
    if args.steps < 2:
        raise ValueError("--steps must be >= 2 for a rate grid")
    gamma = db_to_linear(args.snr_db)
    cap = fb_coding.capacity(gamma)
    rate_min = 0.1 * cap if args.rate_min is None else args.rate_min
    rate_max = 1.2 * cap if args.rate_max is None else args.rate_max
    if not rate_min < rate_max:
        raise ValueError("rate range is empty: rate_min must be below rate_max")
    cfg = _approx(args)
    rates = np.linspace(rate_min, rate_max, args.steps)
    points = [
        FbPoint(n, float(r), fb_coding.error_probability(n, float(r), gamma, cfg))
        for n in args.n_list
        for r in rates
    ]
    rows = [(str(p.n), _sci(p.rate), _sci(p.epsilon)) for p in points]
    count = _write_csv(args.out, ["n", "rate", "epsilon"], rows)
    _write_manifest(
        args.out, "fig2", _collect_params(args, {"rate_min": rate_min, "rate_max": rate_max})
    )
    print(f"wrote {count} rows to {args.out}")

    def draw(ax):
        for n in args.n_list:
            curve = [p.epsilon for p in points if p.n == n]
            ax.semilogy(rates, curve, label=f"n = {n}")
        ax.set_xlabel("coding rate [bits/channel use]")
        ax.set_ylabel("error probability")
        ax.legend()
        ax.grid(True, which="both", alpha=0.4)

    _maybe_svg(args.svg, draw)
    return EXIT_OK


def _log_spaced_ints(lo: int, hi: int, count: int) -> list[int]:
    if lo > hi:
        raise ValueError("--n-min must not exceed --n-max")
    grid = np.unique(np.rint(np.geomspace(lo, hi, count)).astype(int))
    return [int(n) for n in grid if lo <= n <= hi]


def _cmd_fig3(args) -> int:
    n_grid = _log_spaced_ints(args.n_min, args.n_max, args.n_count)
    gamma_b = db_to_linear(args.snr_b_db)
    gamma_e = db_to_linear(args.snr_e_db)
    constraints = _constraints(args)
    cfg = _approx(args)
    assessments = [
        rate_interval(n, gamma_b, gamma_e, constraints, cfg) for n in n_grid
    ]
    rows = [
        (str(n), _sci(a.r_sup), _sci(a.r_inf), _sci(a.delta_r), _bool_str(a.feasible))
        for n, a in zip(n_grid, assessments)
    ]
    count = _write_csv(
        args.out, ["n", "r_b_eps", "r_e_eps", "delta_r", "feasible"], rows
    )
    _write_manifest(args.out, "fig3", _collect_params(args))
    print(f"wrote {count} rows to {args.out}")

    def draw(ax):
        ax.semilogx(n_grid, [a.r_sup for a in assessments], label="main-channel rate ceiling")
        ax.semilogx(n_grid, [a.r_inf for a in assessments], label="eavesdropper rate floor")
        ax.set_xlabel("blocklength [channel uses]")
        ax.set_ylabel("coding rate [bits/channel use]")
        ax.legend()
        ax.grid(True, which="both", alpha=0.4)

    _maybe_svg(args.svg, draw)
    return EXIT_OK


def _cmd_gap(args) -> int:
    result = security_gap(args.n, args.rate, _constraints(args), _approx(args))
    _print_manifest("gap", _collect_params(args))
    print(f"snr_b_min_db = {linear_to_db(result.snr_b_min):.6f}")
    print(f"snr_e_max_db = {linear_to_db(result.snr_e_max):.6f}")
    print(f"gap_db = {result.gap_db:.6f}")
    print(f"gap_linear = {result.gap_linear:.9g}")
    if args.out:
        _write_csv(
            args.out,
            ["snr_b_min_db", "snr_e_max_db", "gap_db", "gap_linear"],
            [(
                _sci(linear_to_db(result.snr_b_min)),
                _sci(linear_to_db(result.snr_e_max)),
                _sci(result.gap_db),
                _sci(result.gap_linear),
            )],
        )
        _write_manifest(args.out, "gap", _collect_params(args))
        print(f"wrote 1 row to {args.out}")
    return EXIT_OK


def _cmd_interval(args) -> int:
    assessment = rate_interval(
        args.n,
        db_to_linear(args.snr_b_db),
        db_to_linear(args.snr_e_db),
        _constraints(args),
        _approx(args),
    )
    _print_manifest("interval", _collect_params(args))
    print(f"r_sup = {assessment.r_sup:.9g}")
    print(f"r_inf = {assessment.r_inf:.9g}")
    print(f"delta_r = {assessment.delta_r:.9g}")
    print(f"feasible = {_bool_str(assessment.feasible)}")
    if args.out:
        _write_csv(
            args.out,
            ["n", "r_sup", "r_inf", "delta_r", "feasible"],
            [(
                str(args.n),
                _sci(assessment.r_sup),
                _sci(assessment.r_inf),
                _sci(assessment.delta_r),
                _bool_str(assessment.feasible),
            )],
        )
        _write_manifest(args.out, "interval", _collect_params(args))
        print(f"wrote 1 row to {args.out}")
    return EXIT_OK


def _cmd_minblock(args) -> int:
    n_star = min_blocklength(
        db_to_linear(args.snr_b_db),
        db_to_linear(args.snr_e_db),
        _constraints(args),
        _approx(args),
        n_max=args.n_max,
    )
    _print_manifest("minblock", _collect_params(args))
    if n_star is None:
        print("n_star = infeasible")
        print(
            f"error: no blocklength up to {args.n_max} satisfies both "
            "constraints",
            file=sys.stderr,
        )
        return EXIT_UNSATISFIABLE
    print(f"n_star = {n_star}")
    if args.out:
        _write_csv(args.out, ["n_star"], [(str(n_star),)])
        _write_manifest(args.out, "minblock", _collect_params(args))
        print(f"wrote 1 row to {args.out}")
    return EXIT_OK


def _cipc_config(args, q_target: float) -> CipcConfig:
    return CipcConfig(
        q_target=q_target,
        p_max=args.p_max,
        n_antennas_tx=args.antennas,
        noise_power_bob=args.noise_b,
        noise_power_eve=args.noise_e,
        blocklength=args.blocklength,
        constraints=_constraints(args),
        reciprocity=ReciprocityError(args.sigma_delta),
        trials=args.trials,
        seed=RngSeed(args.seed),
        approx=_approx(args),
    )


def _print_cipc_summary(summary) -> None:
    print(f"trials = {summary.trials}")
    print(f"suspension_prob = {summary.suspension_prob:.6f}")
    print(f"feasibility_prob = {summary.feasibility_prob:.6f}")
    print(f"mean_delta_r = {summary.mean_delta_r:.9g}")
    print(f"mean_gamma_e = {summary.mean_gamma_e:.9g}")


def _cmd_cipc(args) -> int:
    result = run_cipc(_cipc_config(args, args.q_target))
    _print_manifest("cipc", _collect_params(args))
    _print_cipc_summary(result.summary)
    if args.out:
        rows = []
        for rec in result.records:
            if rec.suspended:
                rows.append((str(rec.trial_id), "suspended", "", "", "", "", "", "false"))
            else:
                a = rec.assessment
                rows.append(
                    (
                        str(rec.trial_id),
                        _sci(rec.p_t),
                        _sci(linear_to_db(rec.gamma_b)),
                        _sci(linear_to_db(rec.gamma_e)),
                        _sci(a.r_sup),
                        _sci(a.r_inf),
                        _sci(a.delta_r),
                        _bool_str(a.feasible),
                    )
                )
        count = _write_csv(
            args.out,
            ["trial_id", "p_t", "gamma_b_db", "gamma_e_db", "r_sup", "r_inf", "delta_r", "feasible"],
            rows,
        )
        _write_manifest(args.out, "cipc", _collect_params(args))
        print(f"wrote {count} rows to {args.out}")
    return EXIT_OK


def _lob_config(args, an_fraction: float) -> LobConfig:
    return LobConfig(
        n_antennas=args.antennas,
        theta_bob=math.radians(args.theta_bob_deg),
        theta_eve=math.radians(args.theta_eve_deg),
        location_error_std=math.radians(args.loc_error_deg),
        k_factor_bob=args.k_bob,
        k_factor_eve=args.k_eve,
        total_power=args.power,
        an_fraction=an_fraction,
        noise_power_bob=args.noise_b,
        noise_power_eve=args.noise_e,
        blocklength=args.blocklength,
        constraints=_constraints(args),
        trials=args.trials,
        seed=RngSeed(args.seed),
        approx=_approx(args),
    )


def _cmd_lob(args) -> int:
    result = run_lob(_lob_config(args, args.an_fraction))
    summary = result.summary
    _print_manifest("lob", _collect_params(args))
    print(f"trials = {summary.trials}")
    print(f"mean_sinr_bob = {summary.mean_sinr_bob:.9g}")
    print(f"mean_sinr_eve = {summary.mean_sinr_eve:.9g}")
    print(f"feasibility_prob = {summary.feasibility_prob:.6f}")
    print(f"mean_delta_r = {summary.mean_delta_r:.9g}")
    if args.out:
        rows = [
            (
                str(rec.trial_id),
                _sci(rec.theta_hat),
                _db_or_neg_inf(rec.sinr_bob),
                _db_or_neg_inf(rec.sinr_eve),
                _sci(rec.assessment.r_sup),
                _sci(rec.assessment.r_inf),
                _sci(rec.assessment.delta_r),
                _bool_str(rec.assessment.feasible),
            )
            for rec in result.records
        ]
        count = _write_csv(
            args.out,
            ["trial_id", "theta_hat", "sinr_bob_db", "sinr_eve_db", "r_sup", "r_inf", "delta_r", "feasible"],
            rows,
        )
        _write_manifest(args.out, "lob", _collect_params(args))
        print(f"wrote {count} rows to {args.out}")
    return EXIT_OK


def _cmd_optimize_q(args) -> int:
    result = optimize_q(_cipc_config(args, args.q_grid[0]), args.q_grid)
    _print_manifest("optimize-q", _collect_params(args))
    print(f"q_star = {result.q_star:.9g}")
    for q, objective in result.objective_curve:
        print(f"objective[q={q:.9g}] = {objective:.6f}")
    if args.out:
        rows = [(_sci(q), _sci(obj)) for q, obj in result.objective_curve]
        count = _write_csv(args.out, ["q", "objective"], rows)
        _write_manifest(args.out, "optimize-q", _collect_params(args))
        print(f"wrote {count} rows to {args.out}")
    return EXIT_OK


def _cmd_optimize_an(args) -> int:
    result = optimize_an_fraction(_lob_config(args, args.phi_grid[0]), args.phi_grid)
    _print_manifest("optimize-an", _collect_params(args))
    print(f"phi_star = {result.phi_star:.9g}")
    for phi, objective in result.objective_curve:
        print(f"objective[phi={phi:.9g}] = {objective:.6f}")
    if args.out:
        rows = [(_sci(phi), _sci(obj)) for phi, obj in result.objective_curve]
        count = _write_csv(args.out, ["phi", "objective"], rows)
        _write_manifest(args.out, "optimize-an", _collect_params(args))
        print(f"wrote {count} rows to {args.out}")
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser, out_required: bool = False) -> None:
    p.add_argument("--config", help="key = value file supplying defaults (a manifest replays a run)")
    p.add_argument("--out", required=out_required, help="output CSV path")
    p.add_argument("--log-term", type=_parse_bool, default=False, metavar="BOOL",
                   help="include the (log2 n)/(2n) rate correction (default false)")


def _add_constraints(p: argparse.ArgumentParser) -> None:
    p.add_argument("--beta-b", type=float, default=1e-6,
                   help="max decoding-error probability at Bob (default 1e-6)")
    p.add_argument("--beta-e", type=float, default=0.5,
                   help="min decoding-error probability at Eve (default 0.5)")


def _add_sim_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--seed", type=_u64, default=12345, help="master RNG seed (default 12345)")
    p.add_argument("--trials", type=_u32, default=1000, help="Monte Carlo trials (default 1000)")
    p.add_argument("--blocklength", type=_positive_int, default=500,
                   help="blocklength in channel uses (default 500)")
    _add_constraints(p)


def _add_cipc_flags(p: argparse.ArgumentParser, with_q: bool) -> None:
    if with_q:
        p.add_argument("--q-target", type=float, default=1.0,
                       help="received-power constant Q, linear (default 1.0)")
    p.add_argument("--p-max", type=float, default=10.0,
                   help="maximum transmit power, linear (default 10.0)")
    p.add_argument("--antennas", type=_positive_int, default=1,
                   help="transmit antennas (default 1)")
    p.add_argument("--noise-b", type=float, default=0.01,
                   help="noise power at Bob, linear (default 0.01)")
    p.add_argument("--noise-e", type=float, default=0.1,
                   help="noise power at Eve, linear (default 0.1)")
    p.add_argument("--sigma-delta", type=float, default=0.0,
                   help="reciprocity error std per coefficient (default 0)")
    _add_sim_common(p)


def _add_lob_flags(p: argparse.ArgumentParser, with_phi: bool) -> None:
    p.add_argument("--antennas", type=_positive_int, default=4,
                   help="transmit antennas (default 4)")
    p.add_argument("--theta-bob-deg", type=float, default=0.0,
                   help="Bob bearing in degrees (default 0)")
    p.add_argument("--theta-eve-deg", type=float, default=20.0,
                   help="Eve bearing in degrees (default 20)")
    p.add_argument("--loc-error-deg", type=float, default=0.0,
                   help="bearing error std in degrees (default 0)")
    p.add_argument("--k-bob", type=float, default=10.0,
                   help="Rician K factor of Bob's channel (default 10, inf = pure LOS)")
    p.add_argument("--k-eve", type=float, default=1.0,
                   help="Rician K factor of Eve's channel (default 1)")
    p.add_argument("--power", type=float, default=1.0,
                   help="total transmit power, linear (default 1.0)")
    if with_phi:
        p.add_argument("--an-fraction", type=float, default=0.3,
                       help="power share spent on artificial noise (default 0.3)")
    p.add_argument("--noise-b", type=float, default=0.01,
                   help="noise power at Bob, linear (default 0.01)")
    p.add_argument("--noise-e", type=float, default=0.01,
                   help="noise power at Eve, linear (default 0.01)")
    _add_sim_common(p)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fblsec",
        description="Finite-blocklength physical-layer security toolkit",
    )
    parser.add_argument("--version", action="version", version=f"fblsec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fig2", help="error probability vs coding rate sweep")
    _add_common(p, out_required=True)
    p.add_argument("--n-list", type=_positive_int, nargs="+",
                   default=[100, 200, 500, 1000, 2000],
                   help="blocklengths to sweep (default 100 200 500 1000 2000)")
    p.add_argument("--snr-db", type=float, default=10.0, help="channel SNR in dB (default 10)")
    p.add_argument("--rate-min", type=float, default=None,
                   help="lowest rate (default 0.1 x capacity)")
    p.add_argument("--rate-max", type=float, default=None,
                   help="highest rate (default 1.2 x capacity)")
    p.add_argument("--steps", type=_positive_int, default=200,
                   help="points in the rate grid (default 200)")
    p.add_argument("--svg", default=None, help="optional SVG plot path")
    p.set_defaults(handler=_cmd_fig2)

    p = sub.add_parser("fig3", help="rate ceiling/floor vs blocklength sweep")
    _add_common(p, out_required=True)
    p.add_argument("--n-min", type=_positive_int, default=10, help="smallest blocklength (default 10)")
    p.add_argument("--n-max", type=_positive_int, default=10000, help="largest blocklength (default 10000)")
    p.add_argument("--n-count", type=_positive_int, default=40,
                   help="points in the log-spaced blocklength grid (default 40)")
    p.add_argument("--snr-b-db", type=float, default=10.0, help="Bob SNR in dB (default 10)")
    p.add_argument("--snr-e-db", type=float, default=0.0, help="Eve SNR in dB (default 0)")
    _add_constraints(p)
    p.add_argument("--svg", default=None, help="optional SVG plot path")
    p.set_defaults(handler=_cmd_fig3)

    p = sub.add_parser("gap", help="security gap at a fixed rate and blocklength")
    _add_common(p)
    p.add_argument("--n", type=_positive_int, required=True, help="blocklength in channel uses")
    p.add_argument("--rate", type=float, required=True, help="coding rate in bits per channel use")
    _add_constraints(p)
    p.set_defaults(handler=_cmd_gap)

    p = sub.add_parser("interval", help="rate interval of one scenario")
    _add_common(p)
    p.add_argument("--n", type=_positive_int, required=True, help="blocklength in channel uses")
    p.add_argument("--snr-b-db", type=float, default=10.0, help="Bob SNR in dB (default 10)")
    p.add_argument("--snr-e-db", type=float, default=0.0, help="Eve SNR in dB (default 0)")
    _add_constraints(p)
    p.set_defaults(handler=_cmd_interval)

    p = sub.add_parser("minblock", help="smallest feasible blocklength")
    _add_common(p)
    p.add_argument("--snr-b-db", type=float, default=10.0, help="Bob SNR in dB (default 10)")
    p.add_argument("--snr-e-db", type=float, default=0.0, help="Eve SNR in dB (default 0)")
    p.add_argument("--n-max", type=_positive_int, default=10**6,
                   help="largest blocklength to consider (default 1e6)")
    _add_constraints(p)
    p.set_defaults(handler=_cmd_minblock)

    p = sub.add_parser("cipc", help="channel-inversion power control Monte Carlo")
    _add_common(p)
    _add_cipc_flags(p, with_q=True)
    p.set_defaults(handler=_cmd_cipc)

    p = sub.add_parser("lob", help="location-based beamforming Monte Carlo")
    _add_common(p)
    _add_lob_flags(p, with_phi=True)
    p.set_defaults(handler=_cmd_lob)

    p = sub.add_parser("optimize-q", help="grid search of the received-power constant")
    _add_common(p)
    p.add_argument("--q-grid", type=float, nargs="+", required=True,
                   help="Q values to evaluate")
    _add_cipc_flags(p, with_q=False)
    p.set_defaults(handler=_cmd_optimize_q)

    p = sub.add_parser("optimize-an", help="grid search of the artificial-noise share")
    _add_common(p)
    p.add_argument("--phi-grid", type=float, nargs="+", required=True,
                   help="artificial-noise power shares in [0, 1)")
    _add_lob_flags(p, with_phi=False)
    p.set_defaults(handler=_cmd_optimize_an)

    return parser


def main(argv: list[str] | None = None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    try:
        argv = _expand_config(list(argv))
    except _ConfigError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.handler(args)
    except UnsatisfiableError as e:
        print(f"error: unsatisfiable scenario: {e}", file=sys.stderr)
        return EXIT_UNSATISFIABLE
    except ValueError as e:
        print(f"error: invalid arguments: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: I/O failure: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
