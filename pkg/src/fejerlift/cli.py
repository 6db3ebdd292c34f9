"""Command-line front end: verification runs with JSON/CSV reports and scan-grid export.

Every subcommand except ``scan-grid`` writes a report envelope

    {schema, tool_version, timestamp, command, config, context, results, summary}

whose ``summary`` counts pass/fail/withheld verdicts over ``results``.  The
exit status is 0 exactly when no result failed.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from datetime import datetime, timezone
from fractions import Fraction
from pathlib import Path
from typing import Callable, Iterable, Optional

import numpy as np

from . import __version__
from .arith import is_prime, primes_up_to, two_adic_valuation
from .budget import TruncationBudget
from .indicator import RegimeQ, indicator_grid, indicator_integer
from .lift import WeightSpec
from .special import DirichletCharacter
from .spectral import (
    explicit_formula_psi,
    load_zeros,
    reconstruct_zeta,
    verify_eta_paths,
    verify_lerch_bridge,
    verify_lerch_characters,
    verify_lerch_deformation,
    verify_lift_factorization,
    verify_polylog_zeta,
    verify_qminus1,
    verify_qnegQ,
    verify_zeta_zeta_prime,
)
from .windows import compute_constants, find_companion, threshold_P0, verify_window

SCHEMA_VERSION = 1
MAX_GRID_POINTS = 10_000_000
GRID_HEADER = ("re", "im", "abs", "arg", "re_value", "im_value")


class CliError(Exception):
    """A user-facing error reported as JSON on stderr with exit status 2."""


# ------------------------------------------------------------------ parsing helpers


def parse_range(text: str) -> tuple[int, int]:
    """'lo..hi' (inclusive) into a nonempty integer range."""
    try:
        lo, hi = (int(part) for part in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected lo..hi") from None
    if lo > hi:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: lo > hi")
    return lo, hi


def parse_float_range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(part) for part in text.split(".."))
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected lo..hi") from None
    if not lo <= hi:
        raise argparse.ArgumentTypeError(f"bad range {text!r}: lo > hi")
    return lo, hi


def parse_exact(text: str):
    """A real number kept exact when possible: '2' -> 2, '1.5' -> Fraction(3, 2)."""
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a real number: {text!r}") from None
    return int(v) if v.denominator == 1 else v


def parse_complex(text: str) -> complex:
    try:
        return complex(text.replace(" ", "").replace("i", "j"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_float_list(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from None


def parse_int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad list {text!r}") from None


def read_config_file(path: str) -> dict[str, str]:
    """Flat key=value file; blank lines and '#' comments are ignored."""
    out: dict[str, str] = {}
    try:
        lines = Path(path).read_text().splitlines()
    except OSError as exc:
        raise CliError(f"cannot read config file {path}: {exc.strerror}") from exc
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise CliError(f"{path}:{lineno}: expected key=value, got {raw.strip()!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        out[key.replace("_", "-")] = value
    return out


def _truthy(value: str) -> bool:
    v = value.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise CliError(f"expected a boolean, got {value!r}")


# ------------------------------------------------------------------ q handling


def resolve_q(args, default=None):
    """q from --q or --q-re/--q-im; complex input with zero imaginary part becomes real."""
    if getattr(args, "q_re", None) is not None or getattr(args, "q_im", None) is not None:
        re = args.q_re if args.q_re is not None else 0.0
        im = args.q_im if args.q_im is not None else 0.0
        if im == 0:
            return parse_exact(repr(float(re)))
        return complex(re, im)
    q = getattr(args, "q", None)
    if q is None:
        if default is None:
            raise CliError("q is required (--q or --q-re/--q-im)")
        return default
    return q


def _q_float(q) -> complex | float:
    return complex(q) if isinstance(q, complex) else float(q)


def _real_q_gt1(q) -> float:
    if isinstance(q, complex) or not q > 1:
        raise CliError(f"this command needs real q > 1, got {q}")
    return float(q)


def _q_echo(q) -> dict:
    qc = complex(_q_float(q))
    rq = RegimeQ.from_q(qc if qc.imag else qc.real, abel_r=None)
    return {"q_re": qc.real, "q_im": qc.imag, "regime": rq.regime}


# ------------------------------------------------------------------ output


def _to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_to_jsonable(v) for v in obj]
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return obj.item()
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def make_envelope(command: str, config: dict, results: list[dict], context: Optional[dict] = None) -> dict:
    counts = {"pass": 0, "fail": 0, "withheld": 0}
    for r in results:
        counts[r["verdict_class"]] += 1
    return _to_jsonable({
        "schema": SCHEMA_VERSION,
        "tool_version": __version__,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "command": command,
        "config": config,
        "context": context or {},
        "results": results,
        "summary": counts,
    })


def _flatten(d: dict, prefix: str = "") -> dict:
    out = {}
    for k, v in d.items():
        key = f"{prefix}{k}"
        if isinstance(v, dict):
            out.update(_flatten(v, key + "."))
        elif isinstance(v, list):
            out[key] = json.dumps(v, sort_keys=True)
        else:
            out[key] = v
    return out


def _csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return repr(v)
    if v is None:
        return ""
    return str(v)


def results_to_csv(results: list[dict]) -> str:
    rows = [_flatten(r) for r in results]
    header: list[str] = []
    for r in rows:
        for k in r:
            if k not in header:
                header.append(k)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([_csv_cell(r.get(k)) for k in header])
    return buf.getvalue()


def load_csv(path_or_text, from_text: bool = False) -> list[dict]:
    """Read a CSV written by this tool back into dicts with numbers and booleans restored."""
    text = path_or_text if from_text else Path(path_or_text).read_text()
    rows = []
    for row in csv.DictReader(io.StringIO(text)):
        rows.append({k: _parse_cell(v) for k, v in row.items()})
    return rows


def _parse_cell(v: str):
    if v == "":
        return None
    if v in ("true", "false"):
        return v == "true"
    try:
        return int(v)
    except ValueError:
        pass
    try:
        return float(v)
    except ValueError:
        return v


def emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ------------------------------------------------------------------ budget / config echo


def _budget(args) -> TruncationBudget:
    return TruncationBudget(M=args.trunc_M, tail_tol=args.tail_tol, digits=args.digits)


def _config_echo(args) -> dict:
    skip = {"func", "config"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _pmap(fn: Callable, items: Iterable, jobs: int) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items))


# ------------------------------------------------------------------ commands


def cmd_anchors(args) -> tuple[dict, Optional[str]]:
    q = resolve_q(args)
    lo, hi = args.n
    if lo < 2:
        raise CliError("anchor range must start at n >= 2")
    echo = _q_echo(q)
    regime = echo["regime"]
    results = []
    for n in range(lo, hi + 1):
        prime = is_prime(n)
        if args.composites_only and prime:
            continue
        v = indicator_integer(n, q, exact=True)
        is_zero = v == 0
        vc = complex(v)
        row = {"type": "anchor", "n": n, "is_prime": prime, "value": vc, "zero": bool(is_zero)}
        if isinstance(v, Fraction):
            row["exact"] = str(v)
        if regime == "real_gt1":
            ok = is_zero if prime else vc.real > 0
            row["expected"] = "zero" if prime else "positive"
        elif regime == "alternating_minus1":
            v2 = two_adic_valuation(n)
            row["v2"] = v2
            expect_zero = prime or v2 == 1
            ok = is_zero == expect_zero
            row["expected"] = "zero" if expect_zero else "nonzero"
        else:
            ok = is_zero if prime else True
            row["expected"] = "zero" if prime else "recorded"
        row["verdict"] = "pass" if ok else "fail"
        row["verdict_class"] = row["verdict"]
        results.append(row)
    zeros = [r["n"] for r in results if r["zero"]]
    context = {"q": echo, "zero_count": len(zeros), "zeros": zeros}
    return make_envelope("anchors", _config_echo(args), results, context), None


def _window_job(job):
    p, q, step = job
    return verify_window(p, q, grid_step=step)


def _window_primes(lo: int, hi: int) -> list[int]:
    return [p for p in primes_up_to(hi) if p >= max(lo, 5)]


def cmd_windows(args) -> tuple[dict, Optional[str]]:
    q = _real_q_gt1(resolve_q(args))
    c = compute_constants(q)
    primes = _window_primes(*args.primes)
    results = []
    for r in _pmap(_window_job, [(p, q, args.grid_step) for p in primes], args.jobs):
        d = r.to_dict()
        d["verdict_class"] = r.outcome
        results.append(d)
    context = {"constants": c.to_dict(), "skipped_below_5": [p for p in primes_up_to(args.primes[1])
                                                              if args.primes[0] <= p < 5]}
    return make_envelope("windows", _config_echo(args), results, context), None


def _companion_job(job):
    p, q, digits = job
    return find_companion(p, q, digits)


def cmd_companion(args) -> tuple[dict, Optional[str]]:
    q = _real_q_gt1(resolve_q(args))
    c = compute_constants(q)
    lam = math.log(q)
    primes = _window_primes(*args.primes)
    zs = _pmap(_companion_job, [(p, q, args.digits if args.digits > 15 else None) for p in primes], args.jobs)
    results = []
    for z in zs:
        d = z.to_dict()
        band = z.Delta * q**z.p / lam
        d["band"] = {"value": band, "lower": 1 / c.CdblprimeSin, "upper": 1 / c.CprimeSin,
                     "inside": 1 / c.CdblprimeSin <= band <= 1 / c.CprimeSin}
        refined = z.residual < 10.0 ** (-z.digits + 8) * z.scale
        ok = refined and z.zero_count_on_grid == 1
        d["verdict"] = "pass" if ok else "fail"
        d["verdict_class"] = d["verdict"]
        results.append(d)
    context = {"constants": c.to_dict()}
    if len(zs) >= 2:
        slope = float(np.polyfit([z.p for z in zs], [z.log_Delta for z in zs], 1)[0])
        context["slope_fit"] = {"slope": slope, "expected": -lam, "relative_error": abs(slope / -lam - 1)}
    csv_text = None
    if args.csv:
        rows = [{"p": z.p, "Delta": z.Delta, "log_Delta": z.log_Delta} for z in zs]
        csv_text = results_to_csv(rows)
    return make_envelope("companion", _config_echo(args), results, context), csv_text


IDENTITIES = ("polylog-zeta", "polylog-zeta-S", "reconstruction", "qminus1", "qnegQ", "lerch",
              "lerch-deformation", "zeta-zeta-prime", "lift", "eta-paths", "all")


def _spectral_checks(args) -> list:
    s = args.s
    N = args.N
    b = _budget(args)
    ident = args.identity
    out = []
    if ident in ("polylog-zeta", "all"):
        out.append(verify_polylog_zeta(_q_float(resolve_q(args, default=2)), s, N, b))
    if ident in ("polylog-zeta-S", "all"):
        out.append(verify_polylog_zeta(_q_float(resolve_q(args, default=2)), s, N, b, variant="S"))
    if ident in ("reconstruction", "all"):
        out.append(reconstruct_zeta(_q_float(resolve_q(args, default=2)), s, N, b))
    if ident in ("qminus1", "all"):
        out.append(verify_qminus1(s, N, b))
    if ident in ("qnegQ", "all"):
        out.append(verify_qnegQ(args.Q, s, N, b))
    if ident in ("lerch", "all"):
        bb = TruncationBudget(M=max(args.trunc_M, 20_000), tail_tol=max(args.tail_tol, 1e-2))
        out.append(verify_lerch_bridge(args.m, args.a, s, bb))
        out.append(verify_lerch_characters(args.m, args.a, s, bb))
    if ident in ("lerch-deformation", "all"):
        out.append(verify_lerch_deformation(args.R, args.m, args.a, s, b))
    if ident in ("zeta-zeta-prime", "all"):
        out.append(verify_zeta_zeta_prime(s, N, b))
    if ident in ("lift", "all"):
        chi4 = DirichletCharacter.chi4()
        for w in (WeightSpec.geometric(1.5), WeightSpec.geometric(3), WeightSpec.power(2),
                  WeightSpec.character_power(chi4, 2)):
            out.append(verify_lift_factorization(w, s, N, b))
    if ident in ("eta-paths", "all"):
        out.append(verify_eta_paths(s))
    return out


def cmd_spectral(args) -> tuple[dict, Optional[str]]:
    if not complex(args.s).real > 1:
        raise CliError(f"identity checks run only for Re s > 1, got s={args.s}")
    results = []
    for chk in _spectral_checks(args):
        d = chk.to_dict()
        d["verdict_class"] = chk.outcome
        results.append(d)
    return make_envelope("spectral", _config_echo(args), results), None


def grid_axes(re_range, im_range, step: float) -> tuple[np.ndarray, np.ndarray]:
    if not step > 0:
        raise CliError("grid step must be positive")
    nx = int(round((re_range[1] - re_range[0]) / step)) + 1
    ny = int(round((im_range[1] - im_range[0]) / step)) + 1
    if nx * ny > MAX_GRID_POINTS:
        raise CliError(f"grid too large: {nx} x {ny} = {nx * ny} points exceeds {MAX_GRID_POINTS}")
    xs = np.round(re_range[0] + step * np.arange(nx), 12)
    ys = np.round(im_range[0] + step * np.arange(ny), 12)
    return xs, ys


def cmd_scan_grid(args) -> tuple[None, str]:
    q = resolve_q(args)
    qv = _q_float(q)
    rq = RegimeQ.from_q(qv, abel_r=args.abel_r)
    xs, ys = grid_axes(args.re_range, args.im_range, args.step)
    X, Y = np.meshgrid(xs, ys, indexing="ij")
    z = (X + 1j * Y).ravel()
    vals, _ = indicator_grid(z, rq, args.trunc_M, sharp=args.indicator == "Fsharp")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(GRID_HEADER)
    for zz, v in zip(z, vals):
        w.writerow([repr(float(zz.real)), repr(float(zz.imag)), repr(float(abs(v))),
                    repr(float(np.angle(v))), repr(float(v.real)), repr(float(v.imag))])
    return None, buf.getvalue()


def cmd_explicit_formula(args) -> tuple[dict, Optional[str]]:
    if not args.zeros_file:
        raise CliError("zeros required: pass --zeros-file PATH (or 'bundled' for the packaged first 100 zeros)")
    try:
        table = load_zeros(None if args.zeros_file == "bundled" else args.zeros_file)
    except ValueError as exc:
        raise CliError(str(exc)) from exc
    counts = sorted(set(args.zero_counts))
    if counts and counts[-1] > table.count:
        raise CliError(f"zeros file holds {table.count} zeros, asked for {counts[-1]}")
    results = []
    for x in args.x:
        rows = [explicit_formula_psi(x, table.head(k), allow_empty=True).to_dict() for k in counts]
        res = [r["residual"] for r in rows]
        decreasing = all(b < a for a, b in zip(res, res[1:]))
        results.append({
            "type": "explicit_formula_trend",
            "x": x,
            "rows": rows,
            "residuals": res,
            "verdict": "pass" if decreasing else "fail",
            "verdict_class": "pass" if decreasing else "fail",
        })
    return make_envelope("explicit-formula", _config_echo(args), results, {"zeros_source": table.source}), None


def cmd_constants(args) -> tuple[dict, Optional[str]]:
    q = _real_q_gt1(resolve_q(args))
    c = compute_constants(q)
    d = c.to_dict()
    d["type"] = "constants"
    if args.alpha is not None:
        d["P0_user_alpha"] = {"alpha": args.alpha, "P0": threshold_P0(q, args.alpha)}
    ok = c.CprimeSin > 0 and c.P0 >= 5
    d["verdict"] = "pass" if ok else "fail"
    d["verdict_class"] = d["verdict"]
    return make_envelope("constants", _config_echo(args), [d]), None


# ------------------------------------------------------------------ parser


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--trunc-M", dest="trunc_M", type=int, default=2000, help="series cutoff M")
    p.add_argument("--tail-tol", type=float, default=1e-3, help="largest acceptable tail bound")
    p.add_argument("--digits", type=int, default=15, help="decimal working precision (>= 15)")
    p.add_argument("--output", choices=("json", "csv"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--config", help="flat key=value file overriding command-line flags")


def _add_q(p: argparse.ArgumentParser) -> None:
    p.add_argument("--q", type=parse_exact, help="real parameter q (exact decimals allowed)")
    p.add_argument("--q-re", type=float, help="real part of a complex q")
    p.add_argument("--q-im", type=float, help="imaginary part of a complex q")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fejerlift", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("anchors", help="integer values of the indicator and their zero classification")
    _add_q(p)
    p.add_argument("--n", type=parse_range, default=(2, 100), help="integer range lo..hi")
    p.add_argument("--composites-only", action="store_true")
    _add_common(p)
    p.set_defaults(func=cmd_anchors)

    p = sub.add_parser("windows", help="zero-free verification of the tangent-matched indicator")
    _add_q(p)
    p.add_argument("--primes", type=parse_range, default=(17, 200))
    p.add_argument("--grid-step", type=float, default=1e-3)
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_windows)

    p = sub.add_parser("companion", help="companion zeros left of each prime")
    _add_q(p)
    p.add_argument("--primes", type=parse_range, default=(11, 31))
    p.add_argument("--csv", action="store_true", help="also emit p,Delta,log_Delta as CSV")
    p.add_argument("--csv-out", help="path for the --csv table (default: stdout after the report)")
    p.add_argument("--jobs", type=int, default=1)
    _add_common(p)
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("spectral", help="Dirichlet-series identity checks")
    p.add_argument("--identity", choices=IDENTITIES, default="all")
    _add_q(p)
    p.add_argument("--Q", type=float, default=2.0)
    p.add_argument("--m", type=int, default=4)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--R", type=float, default=2.0)
    p.add_argument("--s", type=parse_complex, default=2.0)
    p.add_argument("--N", type=int, default=10_000, help="Dirichlet-series cutoff")
    _add_common(p)
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("scan-grid", help="indicator values on a complex grid (CSV)")
    _add_q(p)
    p.add_argument("--indicator", choices=("F", "Fsharp"), default="F")
    p.add_argument("--re-range", type=parse_float_range, default=(0.0, 30.0))
    p.add_argument("--im-range", type=parse_float_range, default=(-2.0, 2.0))
    p.add_argument("--step", type=float, default=0.05)
    p.add_argument("--abel-r", type=float, default=None, help="damping r at q = -1 (default 0.999)")
    _add_common(p)
    p.set_defaults(func=cmd_scan_grid, trunc_M=200)

    p = sub.add_parser("explicit-formula", help="psi(x) against the truncated zero sum")
    p.add_argument("--zeros-file", help="zeros file path, or 'bundled'")
    p.add_argument("--x", type=parse_float_list, default=[100.5])
    p.add_argument("--zero-counts", type=parse_int_list, default=[10, 30, 100])
    _add_common(p)
    p.set_defaults(func=cmd_explicit_formula)

    p = sub.add_parser("constants", help="explicit constants of the window argument")
    _add_q(p)
    p.add_argument("--alpha", type=float, default=None, help="also report P0 for this alpha")
    _add_common(p)
    p.set_defaults(func=cmd_constants)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: list[str], args) -> argparse.Namespace:
    """Re-parse with the config file's pairs appended so they override the flags."""
    pairs = read_config_file(args.config)
    sub = next(a for a in parser._subparsers._group_actions[0].choices.values()  # noqa: SLF001
               if a.get_default("func") is args.func)
    flags = {opt: act for act in sub._actions for opt in act.option_strings}  # noqa: SLF001
    extra: list[str] = []
    booleans: dict[str, bool] = {}
    for key, value in pairs.items():
        opt = f"--{key}"
        if opt not in flags or opt == "--config":
            raise CliError(f"unknown config key {key!r}")
        act = flags[opt]
        if isinstance(act, argparse._StoreTrueAction):  # noqa: SLF001
            booleans[act.dest] = _truthy(value)
        else:
            extra += [opt, value]
    new = parser.parse_args(argv + extra)
    for dest, val in booleans.items():
        setattr(new, dest, val)
    return new


def _join_negative_values(argv: list[str]) -> list[str]:
    """'--im-range -2..2' -> '--im-range=-2..2' so values starting with '-' are not read as flags."""
    out: list[str] = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        nxt = argv[i + 1] if i + 1 < len(argv) else ""
        if tok.startswith("--") and "=" not in tok and len(nxt) > 1 and nxt[0] == "-" and (nxt[1].isdigit() or nxt[1] == "."):
            out.append(f"{tok}={nxt}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: Optional[list[str]] = None) -> int:
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            args = _apply_config(parser, argv, args)
        if args.digits < 15:
            raise CliError("--digits must be at least 15")
        envelope, extra_csv = args.func(args)
    except (CliError, ValueError, ArithmeticError) as exc:
        sys.stderr.write(json.dumps({"error": str(exc), "command": args.command}) + "\n")
        return 2
    if envelope is None:
        emit(extra_csv, args.out)
        return 0
    if args.output == "csv":
        text = results_to_csv(envelope["results"])
    else:
        text = json.dumps(envelope, sort_keys=True, indent=2) + "\n"
    emit(text, args.out)
    if extra_csv is not None:
        if getattr(args, "csv_out", None):
            Path(args.csv_out).write_text(extra_csv)
        else:
            sys.stdout.write(extra_csv)
    return 0 if envelope["summary"]["fail"] == 0 else 1


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
