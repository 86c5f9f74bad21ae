"""Command-line front end.

    combent exact    --k pi/2 --p 2 --L 100
    combent coeffs   --k pi/6 --p 2 [--e2]
    combent sweep-k  --p 1,2,3,4 [--grid-points 257]
    combent sweep-p  --ell 3 --p-max 20 [--p-step 0.01]
    combent sweep-e2 --p 2-40 [--k pi/3 | --grid-points 257]
    combent fit      --k pi/2 --p 3 [--L-min 10 --L-max 320 --L-count 11]
    combent verify   [--quick]

Exit status: 0 success, 1 failed verification, 2 invalid input,
3 numerical or divergence error.  Errors are reported as a single line
``combent: error[<kind>]: <reason>`` on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import shlex
import sys
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import __version__
from .asymptotics import asymptotic_coeffs, e1_coefficient, single_spin_entropy
from .exceptions import CombentError, NumericalError, ValidationError
from .spectral import exact_entropy
from .sweep import (
    DEFAULT_GRID_POINTS,
    DEFAULT_L_SCHEDULE,
    default_k_grid,
    fit_scaling,
    sweep_e1_vs_k,
    sweep_e1_vs_p,
    sweep_e2,
)
from .asymptotics import e2_with_diagnostics
from .symbol import ChainParams, CombSpec
from .validation import check_positive_int, check_spacing, is_integral, parse_angle
from .verify import format_report, run_verification

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_VALIDATION = 2
EXIT_NUMERICAL = 3

COMMANDS = ("exact", "coeffs", "sweep-k", "sweep-p", "sweep-e2", "fit", "verify")

CSV_COLUMNS = {
    "exact": ("L", "p", "k", "h", "entropy_bits", "eigenvalue_count"),
    "coeffs": ("p", "k", "h", "e1", "e2", "theta_star", "g_at_0", "g_at_pi", "s",
               "single_spin", "series_terms", "tail_bound"),
    "sweep-k": ("k", "h", "p", "e1"),
    "sweep-p": ("p", "e1", "is_integer_p"),
    "sweep-e2": ("k", "p", "e2", "terms", "tail_bound"),
    "fit": ("p", "k", "coeff_linear", "coeff_log", "coeff_const", "residual_rms",
            "e1_ref", "e2_ref"),
}


@dataclass
class RunConfig:
    """Validated command-line request."""

    command: str
    k: float | None = None
    p: float | None = None
    p_list: list[int] = field(default_factory=list)
    L: int | None = None
    L_values: tuple[int, ...] = DEFAULT_L_SCHEDULE
    ell: int | None = None
    p_max: float | None = None
    p_step: float = 0.01
    grid_points: int = DEFAULT_GRID_POINTS
    want_e2: bool = False
    quick: bool = False
    fmt: str = "json"
    output: str | None = None
    threads: int = 1
    argv: tuple[str, ...] = ()


def _parse_p_list(text: str) -> list[int]:
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        if "-" in part[1:]:
            lo, hi = part.split("-", 1)
            lo_i, hi_i = check_positive_int("p", lo), check_positive_int("p", hi)
            if hi_i < lo_i:
                raise ValidationError(f"empty p range {part!r}")
            out.extend(range(lo_i, hi_i + 1))
        else:
            out.append(check_positive_int("p", part))
    if not out:
        raise ValidationError("no spacings given")
    return out


def _geometric_L(L_min: int, L_max: int, count: int) -> tuple[int, ...]:
    vals = np.unique(np.round(np.geomspace(L_min, L_max, count)).astype(int))
    return tuple(int(v) for v in vals)


def _angle_from(ns) -> float | None:
    if getattr(ns, "k", None) is not None:
        return ChainParams(parse_angle(ns.k)).k
    if getattr(ns, "h", None) is not None:
        return ChainParams.from_field(float(ns.h)).k
    return None


def build_config(ns: argparse.Namespace, argv: Sequence[str]) -> RunConfig:
    """Turn parsed arguments into a :class:`RunConfig`, validating per command."""
    cfg = RunConfig(command=ns.command, fmt=getattr(ns, "format", "json") or "json",
                    output=getattr(ns, "output", None), argv=tuple(argv))
    cfg.threads = check_positive_int("threads", getattr(ns, "threads", 1) or 1)
    cfg.k = _angle_from(ns)
    cmd = ns.command
    if cmd in ("exact", "coeffs", "fit") and cfg.k is None:
        raise ValidationError(f"{cmd} needs --k or --h")
    if cmd == "exact":
        cfg.p = check_spacing(ns.p)
        cfg.L = check_positive_int("L", ns.L)
    elif cmd == "coeffs":
        cfg.p = check_spacing(ns.p, allow_real=True)
        cfg.want_e2 = bool(ns.e2)
    elif cmd == "fit":
        cfg.p = check_spacing(ns.p)
        if ns.L_min is not None or ns.L_max is not None or ns.L_count is not None:
            L_min = check_positive_int("L-min", ns.L_min if ns.L_min is not None else 10)
            L_max = check_positive_int("L-max", ns.L_max if ns.L_max is not None else 320)
            count = check_positive_int("L-count", ns.L_count if ns.L_count is not None else 11)
            if L_max <= L_min:
                raise ValidationError("L-max must exceed L-min")
            cfg.L_values = _geometric_L(L_min, L_max, count)
    elif cmd in ("sweep-k", "sweep-e2"):
        cfg.p_list = _parse_p_list(ns.p)
        cfg.grid_points = check_positive_int("grid-points", ns.grid_points)
    elif cmd == "sweep-p":
        cfg.ell = check_positive_int("ell", ns.ell, minimum=2)
        cfg.p_max = float(ns.p_max)
        cfg.p_step = float(ns.p_step)
    elif cmd == "verify":
        cfg.quick = bool(ns.quick)
    return cfg


def _fmt_value(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    if isinstance(v, (float, np.floating)):
        return format(float(v), ".17g")
    return str(v)


def render_csv(rows: list[dict], columns: Sequence[str], meta: dict[str, str]) -> str:
    buf = io.StringIO()
    for key, val in meta.items():
        buf.write(f"# {key}: {val}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for r in rows:
        writer.writerow([_fmt_value(r.get(c)) for c in columns])
    return buf.getvalue()


def render_json(payload) -> str:
    return json.dumps(payload, indent=2, sort_keys=False, allow_nan=False) + "\n"


def _emit(cfg: RunConfig, rows: list[dict], meta: dict[str, str], single: bool = False) -> None:
    if cfg.fmt == "csv":
        text = render_csv(rows, CSV_COLUMNS[cfg.command], meta)
    else:
        text = render_json(rows[0] if single else {"meta": meta, "rows": rows})
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _meta(cfg: RunConfig, **extra) -> dict[str, str]:
    meta = {"version": f"combent {__version__}",
            "command": "combent " + shlex.join(cfg.argv)}
    meta.update({k: str(v) for k, v in extra.items()})
    return meta


def _run_exact(cfg: RunConfig) -> int:
    params = ChainParams(cfg.k)
    res = exact_entropy(CombSpec(cfg.L, int(cfg.p)), params)
    row = {"L": cfg.L, "p": int(cfg.p), "k": params.k, "h": params.h,
           "entropy_bits": res.entropy_bits, "eigenvalue_count": int(res.eigenvalues.size)}
    _emit(cfg, [row], _meta(cfg), single=True)
    return EXIT_OK


def _run_coeffs(cfg: RunConfig) -> int:
    params = ChainParams(cfg.k)
    p = cfg.p
    integer_p = is_integral(p)
    status = EXIT_OK
    row = {"p": p, "k": params.k, "h": params.h}
    br_coeffs = asymptotic_coeffs(p, params, with_e2=False)
    br = br_coeffs.branches
    row.update(e1=br_coeffs.e1, theta_star=br.theta_star, g_at_0=br.g_at_0,
               g_at_pi=br.g_at_pi, s=br.s, single_spin=single_spin_entropy(params))
    if integer_p and int(p) == 1:
        row.update(e2="divergent (p=1)", series_terms=None, tail_bound=None)
        if cfg.want_e2:
            _emit(cfg, [row], _meta(cfg), single=True)
            _report("divergence", "E2 series diverges at p=1 (block case)")
            return EXIT_NUMERICAL
    elif not integer_p:
        if cfg.want_e2:
            raise ValidationError("E2 needs an integer spacing p >= 2")
        row.update(e2="unavailable (non-integer p)", series_terms=None, tail_bound=None)
    else:
        e2, terms, tail = e2_with_diagnostics(int(p), params)
        row.update(e2=e2, series_terms=terms, tail_bound=tail)
    _emit(cfg, [row], _meta(cfg), single=True)
    return status


def _run_sweep_k(cfg: RunConfig) -> int:
    grid = default_k_grid(cfg.grid_points)
    rows = sweep_e1_vs_k(cfg.p_list, grid, n_jobs=cfg.threads)
    cols = CSV_COLUMNS["sweep-k"]
    meta = _meta(cfg, grid=f"k = pi*i/{cfg.grid_points + 1}, i = 1..{cfg.grid_points}",
                 p_list=",".join(map(str, cfg.p_list)))
    _emit(cfg, [r.as_dict(cols) for r in rows], meta)
    return EXIT_OK


def _run_sweep_p(cfg: RunConfig) -> int:
    rows = sweep_e1_vs_p(cfg.ell, cfg.p_max, cfg.p_step, n_jobs=cfg.threads)
    cols = CSV_COLUMNS["sweep-p"]
    meta = _meta(cfg, grid=f"p in [1, {cfg.p_max:g}] step <= {cfg.p_step:g}",
                 k=f"pi/{cfg.ell}",
                 single_spin=format(single_spin_entropy(ChainParams(math.pi / cfg.ell)), ".17g"))
    _emit(cfg, [r.as_dict(cols) for r in rows], meta)
    return EXIT_OK


def _run_sweep_e2(cfg: RunConfig) -> int:
    if cfg.k is not None:
        grid, desc = np.array([cfg.k]), f"k = {cfg.k!r}"
    else:
        grid = default_k_grid(cfg.grid_points)
        desc = f"k = pi*i/{cfg.grid_points + 1}, i = 1..{cfg.grid_points}"
    rows = sweep_e2(cfg.p_list, grid, n_jobs=cfg.threads)
    cols = CSV_COLUMNS["sweep-e2"]
    meta = _meta(cfg, grid=desc, p_list=",".join(map(str, cfg.p_list)))
    _emit(cfg, [r.as_dict(cols) for r in rows], meta)
    return EXIT_OK


def _run_fit(cfg: RunConfig) -> int:
    params = ChainParams(cfg.k)
    p = int(cfg.p)
    fit = fit_scaling(p, params, cfg.L_values, n_jobs=cfg.threads)
    e2_ref = None if p == 1 else e2_with_diagnostics(p, params)[0]
    row = {"p": p, "k": params.k, "coeff_linear": fit.coeff_linear, "coeff_log": fit.coeff_log,
           "coeff_const": fit.coeff_const, "residual_rms": fit.residual_rms,
           "e1_ref": e1_coefficient(p, params), "e2_ref": e2_ref}
    meta = _meta(cfg, L_values=",".join(map(str, fit.L_values)), basis="L, ln L, 1")
    if cfg.fmt == "csv":
        _emit(cfg, [row], meta)
    else:
        _emit(cfg, [dict(row, L_values=list(fit.L_values))], meta, single=True)
    return EXIT_OK


def _run_verify(cfg: RunConfig) -> int:
    results = run_verification(quick=cfg.quick)
    report = format_report(results)
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8") as fh:
            fh.write(report + "\n")
    print(report)
    return EXIT_OK if all(r.passed for r in results) else EXIT_VERIFY_FAILED


_DISPATCH = {
    "exact": _run_exact,
    "coeffs": _run_coeffs,
    "sweep-k": _run_sweep_k,
    "sweep-p": _run_sweep_p,
    "sweep-e2": _run_sweep_e2,
    "fit": _run_fit,
    "verify": _run_verify,
}


def run(cfg: RunConfig) -> int:
    """Execute a validated configuration and return the exit status."""
    return _DISPATCH[cfg.command](cfg)


def _add_angle(sp: argparse.ArgumentParser, required: bool) -> None:
    g = sp.add_mutually_exclusive_group(required=required)
    g.add_argument("--k", help="Fermi angle in [0, pi]; decimal or pi/N, M*pi/N")
    g.add_argument("--h", help="magnetic field h = cos k, |h| <= 1")


def _add_output(sp: argparse.ArgumentParser, default_fmt: str) -> None:
    sp.add_argument("--format", choices=("csv", "json"), default=default_fmt)
    sp.add_argument("--output", metavar="PATH", help="write to PATH instead of stdout")
    sp.add_argument("--threads", type=int, default=1, metavar="N",
                    help="worker threads for independent grid points")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="combent",
        description="Entanglement entropy of a comb of spins in the critical XX chain.",
    )
    parser.add_argument("--version", action="version", version=f"combent {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("exact", help="exact entropy from the Toeplitz spectrum")
    _add_angle(sp, True)
    sp.add_argument("--p", required=True, help="integer spacing")
    sp.add_argument("--L", required=True, help="number of comb teeth")
    _add_output(sp, "json")

    sp = sub.add_parser("coeffs", help="asymptotic coefficients E1, E2")
    _add_angle(sp, True)
    sp.add_argument("--p", required=True, help="spacing (real values allowed for E1)")
    sp.add_argument("--e2", action="store_true", help="fail with status 3 if E2 is unavailable")
    _add_output(sp, "json")

    sp = sub.add_parser("sweep-k", help="E1 versus k for several spacings")
    sp.add_argument("--p", required=True, help="spacings, e.g. 1,2,3 or 2-8")
    sp.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    _add_output(sp, "csv")

    sp = sub.add_parser("sweep-p", help="E1 versus real spacing at k = pi/ell")
    sp.add_argument("--ell", required=True, type=int)
    sp.add_argument("--p-max", required=True, type=float)
    sp.add_argument("--p-step", type=float, default=0.01, help="real-p resolution (<= 0.05)")
    _add_output(sp, "csv")

    sp = sub.add_parser("sweep-e2", help="E2 on a (p, k) grid")
    _add_angle(sp, False)
    sp.add_argument("--p", required=True, help="spacings >= 2, e.g. 2-40")
    sp.add_argument("--grid-points", type=int, default=DEFAULT_GRID_POINTS)
    _add_output(sp, "csv")

    sp = sub.add_parser("fit", help="fit exact entropies to a L + b ln L + c")
    _add_angle(sp, True)
    sp.add_argument("--p", required=True)
    sp.add_argument("--L-min", type=int)
    sp.add_argument("--L-max", type=int)
    sp.add_argument("--L-count", type=int)
    _add_output(sp, "csv")

    sp = sub.add_parser("verify", help="run the oracle suite")
    sp.add_argument("--quick", action="store_true", help="reduced grids (L <= 4, p <= 3)")
    sp.add_argument("--output", metavar="PATH")
    return parser


def _report(kind: str, reason: str) -> None:
    print(f"combent: error[{kind}]: {' '.join(str(reason).split())}", file=sys.stderr)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ns = build_parser().parse_args(argv)
    try:
        cfg = build_config(ns, argv)
        return run(cfg)
    except (ValidationError, ValueError) as exc:
        _report("validation", exc)
        return EXIT_VALIDATION
    except (NumericalError, ArithmeticError) as exc:
        _report("numerical", exc)
        return EXIT_NUMERICAL
    except CombentError as exc:
        _report("resource", exc)
        return EXIT_NUMERICAL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
