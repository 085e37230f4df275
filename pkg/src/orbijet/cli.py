"""Command-line front end: ``orbijet {check,constants,sweep,verify,dims}``.

Spec files are JSON or TOML::

    n = 2
    k = 2                 # default n
    r = 2                 # default n
    gamma_V = 2           # default 2 (projective space)
    lambda_V = -3         # default -n-1
    tau = 0
    gamma_mode = "exact"  # or "coarse", "pn-preset"
    components = [{d = 50, rho = 25}, {d = 50, rho = "inf"}]

Instead of ``components``, ``N``/``d``/``rho`` describe ``N`` equal
components.  Rationals may be given as ``"p/q"`` strings; infinite
ramification is ``"inf"``.

Exit codes: ``check`` returns 0 if some criterion holds and 1 if none does;
``verify`` returns 0 iff no check fails; input errors give 2.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from pathlib import Path

from . import __version__
from ._rational import as_ramification, as_rational, fmt_rational, is_inf
from .criteria import (
    MAX_REFINED_COMPONENTS,
    MAX_REFINED_DIM,
    CriterionReport,
    OrbifoldSpec,
    check_27N,
    check_29_prime,
    check_29N,
    check_compact,
    check_criterion_716,
    check_example_718,
    check_log_pn,
    check_thm08_a,
    check_thm08_a_prime,
    check_thm08_b,
    check_thm08_b_prime,
    cn,
    cn_asymptotic,
    cn_ratio_bound,
)
from .jetcombi import graded_dim, jet_space_dim
from .mcverify import SUITES, run_suite

try:  # Python >= 3.11
    import tomllib
except ModuleNotFoundError:  # pragma: no cover
    import tomli as tomllib

EXIT_OK, EXIT_NONE, EXIT_INPUT = 0, 1, 2

LOWER_VARIANTS = ("7.10", "7.12", "7.12-1")
UPPER_VARIANTS = ("7.14-1", "7.14-2")


class SpecError(ValueError):
    """Invalid spec; ``errors`` holds one ``"field: message"`` string per problem."""

    def __init__(self, errors):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass
class RunManifest:
    command: str
    input_path: str | None
    seed: int | None
    output_format: str
    timestamp: str


# -- spec parsing -------------------------------------------------------------

_KNOWN = {"n", "r", "k", "gamma_V", "lambda_V", "tau", "gamma_mode", "components", "N", "d", "rho"}


def read_spec_file(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise SpecError([f"spec: cannot read {path}: {e.strerror}"]) from None
    if path.suffix.lower() == ".toml":
        loaders = (tomllib.loads,)
    elif path.suffix.lower() == ".json":
        loaders = (json.loads,)
    else:
        loaders = (json.loads, tomllib.loads)
    for load in loaders:
        try:
            data = load(text)
            break
        except (json.JSONDecodeError, tomllib.TOMLDecodeError) as e:
            err = e
    else:
        raise SpecError([f"spec: cannot parse {path.name}: {err}"])
    if not isinstance(data, dict):
        raise SpecError(["spec: top level must be a table/object"])
    return data


def _int_field(data, key, errors, default=None, minimum=1):
    v = data.get(key, default)
    if v is None:
        errors.append(f"{key}: required")
        return None
    if isinstance(v, bool) or not isinstance(v, int):
        errors.append(f"{key}: must be an integer, got {v!r}")
        return None
    if v < minimum:
        errors.append(f"{key}: must be >= {minimum}, got {v}")
        return None
    return v


def _rat_field(value, name, errors, allow_inf=False):
    try:
        return as_ramification(value) if allow_inf else as_rational(value)
    except (TypeError, ValueError, ZeroDivisionError):
        errors.append(f"{name}: not a rational{' or inf' if allow_inf else ''}: {value!r}")
        return None


def parse_spec(data: dict) -> OrbifoldSpec:
    """Validate a spec mapping, collecting every field-level problem."""
    errors: list[str] = []
    for key in sorted(set(data) - _KNOWN):
        errors.append(f"{key}: unknown field")
    n = _int_field(data, "n", errors)
    dflt = n if n is not None else 1
    k = _int_field(data, "k", errors, default=dflt)
    r = _int_field(data, "r", errors, default=dflt)

    comps = []
    if "components" in data:
        if any(key in data for key in ("N", "d", "rho")):
            errors.append("components: give either components or N/d/rho, not both")
        raw = data["components"]
        if not isinstance(raw, list):
            errors.append("components: must be a list")
            raw = []
        for j, c in enumerate(raw):
            if not isinstance(c, dict) or set(c) - {"d", "rho"} or "d" not in c or "rho" not in c:
                errors.append(f"components[{j}]: must be a table with keys d and rho")
                continue
            d = _rat_field(c["d"], f"components[{j}].d", errors)
            rho = _rat_field(c["rho"], f"components[{j}].rho", errors, allow_inf=True)
            if d is not None and d < 0:
                errors.append(f"components[{j}].d: must be >= 0, got {fmt_rational(d)}")
            if rho is not None and not rho > 1:
                errors.append(f"components[{j}].rho: must be > 1, got {fmt_rational(rho)}")
            comps.append((d, rho))
    elif any(key in data for key in ("N", "d", "rho")):
        N = _int_field(data, "N", errors, minimum=0)
        d = rho = None
        if "d" in data:
            d = _rat_field(data["d"], "d", errors)
        else:
            errors.append("d: required with N")
        if "rho" in data:
            rho = _rat_field(data["rho"], "rho", errors, allow_inf=True)
        else:
            errors.append("rho: required with N")
        if d is not None and d < 0:
            errors.append(f"d: must be >= 0, got {fmt_rational(d)}")
        if rho is not None and not rho > 1:
            errors.append(f"rho: must be > 1, got {fmt_rational(rho)}")
        if N is not None:
            comps = [(d, rho)] * N

    nn = n if n is not None else 1
    gamma_V = _rat_field(data.get("gamma_V", 2), "gamma_V", errors)
    lambda_V = _rat_field(data.get("lambda_V", -nn - 1), "lambda_V", errors)
    tau = _rat_field(data.get("tau", 0), "tau", errors)
    if gamma_V is not None and gamma_V < 0:
        errors.append("gamma_V: must be >= 0")
    if tau is not None and tau < 0:
        errors.append("tau: must be >= 0")
    mode = data.get("gamma_mode", "exact")
    if mode not in ("exact", "coarse", "pn-preset"):
        errors.append(f"gamma_mode: must be exact, coarse or pn-preset, got {mode!r}")
    if errors:
        raise SpecError(errors)
    return OrbifoldSpec(n=n, r=r, k=k, components=tuple(comps), gamma_V=gamma_V,
                        lambda_V=lambda_V, tau=tau, gamma_mode=mode)


def load_spec(path) -> OrbifoldSpec:
    return parse_spec(read_spec_file(path))


# -- criterion dispatch -------------------------------------------------------

def _equal_components(spec: OrbifoldSpec):
    if spec.N and all(c == spec.components[0] for c in spec.components):
        return spec.components[0]
    return None


def applicable_criteria(spec: OrbifoldSpec, variant: str | None = None) -> list[CriterionReport]:
    """Every criterion whose hypotheses ``spec`` meets, in a fixed order."""
    n, k, N = spec.n, spec.k, spec.N
    lowers = [v for v in LOWER_VARIANTS if variant in (None, v) or variant in UPPER_VARIANTS]
    uppers = [v for v in UPPER_VARIANTS if variant in (None, v) or variant in LOWER_VARIANTS]
    out = []
    for lo in lowers:
        if lo == "7.10" and k < n:
            continue
        if lo == "7.12" and (N > MAX_REFINED_COMPONENTS or n > MAX_REFINED_DIM):
            continue
        if lo == "7.12-1" and (k != 1 or N < n):
            continue
        for up in uppers:
            out.append(check_criterion_716(spec, lo, up))
    if N == 0 and k >= n:
        out.append(check_compact(n, spec.r, k, spec.gamma_V, spec.lambda_V))
    if not spec.is_projective:
        return out
    rhos = [rho for _, rho in spec.components]
    if N >= 1 and k >= n and min(rhos) > n:
        out.append(check_thm08_a(spec))
    if N >= 1 and k >= n and all(is_inf(rho) for rho in rhos):
        out.append(check_log_pn(n, k, sum((d for d, _ in spec.components), Fraction(0))))
    if N >= n:
        out.append(check_thm08_b(spec))
    eq = _equal_components(spec)
    if eq is not None:
        d, rho = eq
        if k >= n and rho > n:
            out.append(check_thm08_a_prime(n, k, N, d, rho))
            out.append(check_27N(n, k, N, d, rho))
        if N >= n:
            out.append(check_29_prime(n, N, d, rho))
            out.append(check_29N(n, N, d, rho))
            out.append(check_thm08_b_prime(n, N, d, rho))
    return out


# -- sweep --------------------------------------------------------------------

# criterion -> parameters in which it is monotone (larger value helps)
MONOTONE = {
    "7.17": ("lambda_V",),
    "7.18": ("d",),
    "7.21": ("d",),
    "7.27N": ("N", "d", "rho"),
    "0.8a'": ("N", "d", "rho"),
    "7.29N": ("N", "d", "rho"),
    "0.8b'": ("N", "d", "rho"),
    "7.29'": ("d", "rho"),
}


def _sweep_eval(criterion: str, spec: OrbifoldSpec, param: str, value) -> bool:
    n, k = spec.n, spec.k
    eq = _equal_components(spec) or (None, None)
    vals = {"N": spec.N, "d": eq[0], "rho": eq[1], "lambda_V": spec.lambda_V}
    vals[param] = value
    if criterion == "7.17":
        return check_compact(n, spec.r, k, spec.gamma_V, vals["lambda_V"]).satisfied
    if criterion == "7.18":
        return check_example_718(n, k, value).satisfied
    if criterion == "7.21":
        return check_log_pn(n, k, value).satisfied
    N, d, rho = int(vals["N"]), vals["d"], vals["rho"]
    if d is None:
        raise SpecError([f"{param}: criterion {criterion} needs equal components (N/d/rho)"])
    try:
        if criterion == "7.27N":
            return check_27N(n, k, N, d, rho).satisfied
        if criterion == "0.8a'":
            return check_thm08_a_prime(n, k, N, d, rho).satisfied
        if criterion == "7.29N":
            return check_29N(n, N, d, rho).satisfied
        if criterion == "0.8b'":
            return check_thm08_b_prime(n, N, d, rho).satisfied
        if criterion == "7.29'":
            return check_29_prime(n, N, d, rho).satisfied
    except ValueError:
        # outside the hypotheses (rho <= n, N < n): treated as not satisfied
        return False
    raise AssertionError(criterion)


def parse_range(text: str, integer: bool):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise SpecError([f"range: expected LO:HI[:STEP], got {text!r}"])
    try:
        lo, hi = as_rational(parts[0]), as_rational(parts[1])
        step = as_rational(parts[2]) if len(parts) == 3 else Fraction(1)
    except (ValueError, ZeroDivisionError):
        raise SpecError([f"range: not rational bounds: {text!r}"]) from None
    if step <= 0:
        raise SpecError(["range: step must be > 0"])
    if integer and (lo.denominator != 1 or hi.denominator != 1 or step.denominator != 1):
        raise SpecError(["range: N takes integer values only"])
    return lo, hi, step


def sweep(criterion: str, spec: OrbifoldSpec, param: str, lo, hi, step=Fraction(1)) -> dict:
    """Smallest grid value ``lo + i step <= hi`` at which ``criterion`` holds.

    Bisection over the grid; only parameters listed in :data:`MONOTONE`
    are accepted.
    """
    if criterion not in MONOTONE:
        raise SpecError([f"criterion: {criterion} is not supported by sweep (known: {', '.join(MONOTONE)})"])
    if param not in MONOTONE[criterion]:
        raise SpecError([f"param: {criterion} is not monotone in {param!r}; allowed: {', '.join(MONOTONE[criterion])}"])
    report = {"criterion": criterion, "param": param, "lo": fmt_rational(lo), "hi": fmt_rational(hi),
              "step": fmt_rational(step), "threshold": None, "evaluations": 0}
    if hi < lo:
        report["status"] = "empty-range"
        return report
    count = int((hi - lo) // step) + 1
    grid = lambda i: lo + i * step
    cast = (lambda v: int(v)) if param == "N" else (lambda v: v)

    def holds(i):
        report["evaluations"] += 1
        return _sweep_eval(criterion, spec, param, cast(grid(i)))

    if not holds(count - 1):
        report["status"] = "no-flip-in-range"
        return report
    left, right = -1, count - 1  # holds(right) is True, holds(left) treated as False
    while right - left > 1:
        mid = (left + right) // 2
        if holds(mid):
            right = mid
        else:
            left = mid
    report["threshold"] = fmt_rational(grid(right))
    report["status"] = "flip"
    return report


# -- output -------------------------------------------------------------------

def _emit(rows: list[dict], fmt: str, payload: dict, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
        return
    if not rows:
        out.write("(no rows)\n" if fmt == "table" else "")
        return
    cols = list(dict.fromkeys(key for row in rows for key in row))
    flat = [{c: _cell(row.get(c)) for c in cols} for row in rows]
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
        out.write(buf.getvalue())
        return
    widths = {c: max(len(c), *(len(r[c]) for r in flat)) for c in cols}
    out.write("  ".join(c.ljust(widths[c]) for c in cols).rstrip() + "\n")
    out.write("  ".join("-" * widths[c] for c in cols) + "\n")
    for r in flat:
        out.write("  ".join(r[c].ljust(widths[c]) for c in cols).rstrip() + "\n")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (list, tuple)):
        return "; ".join(map(str, v))
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _write_manifest(args, seed=None):
    if not getattr(args, "manifest", None):
        return
    m = RunManifest(args.command, getattr(args, "spec", None), seed, args.format,
                    time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime()))
    Path(args.manifest).write_text(json.dumps(asdict(m), indent=2) + "\n", encoding="utf-8")


# -- verbs --------------------------------------------------------------------

def cmd_check(args, out) -> int:
    spec = load_spec(args.spec)
    if args.tau is not None:
        tau = as_rational(args.tau)
        if tau < 0:
            raise SpecError(["tau: must be >= 0"])
        spec = OrbifoldSpec(spec.n, spec.r, spec.k, spec.components, spec.gamma_V,
                            spec.lambda_V, tau, spec.gamma_mode)
    reports = applicable_criteria(spec, args.variant)
    rows = [r.to_dict() for r in reports]
    any_ok = any(r.satisfied for r in reports)
    _emit(rows, args.format, {"command": "check", "spec": _spec_summary(spec),
                              "any_satisfied": any_ok, "reports": rows}, out)
    _write_manifest(args)
    return EXIT_OK if any_ok else EXIT_NONE


def _spec_summary(spec: OrbifoldSpec) -> dict:
    return {"n": spec.n, "r": spec.r, "k": spec.k,
            "components": [{"d": fmt_rational(d), "rho": fmt_rational(rho)} for d, rho in spec.components],
            "gamma_V": fmt_rational(spec.gamma_V), "lambda_V": fmt_rational(spec.lambda_V),
            "tau": fmt_rational(spec.tau), "gamma_mode": spec.gamma_mode}


def cmd_constants(args, out) -> int:
    if not 1 <= args.n_max <= 64:
        raise SpecError([f"n_max: must be in 1..64, got {args.n_max}"])
    rows = []
    for n in range(1, args.n_max + 1):
        c = cn(n)
        asym = cn_asymptotic(n)
        rows.append({"n": n, "cn": fmt_rational(c), "cn_float": float(c), "asymptotic": asym,
                     "ratio": float(c) / asym, "ratio_bound": cn_ratio_bound(n) if n >= 3 else None})
    _emit(rows, args.format, {"command": "constants", "rows": rows}, out)
    _write_manifest(args)
    return EXIT_OK


def cmd_sweep(args, out) -> int:
    spec = load_spec(args.spec)
    lo, hi, step = parse_range(args.range, integer=args.param == "N")
    if args.param == "rho" and args.range.split(":")[1].strip().lower() in ("inf", "oo"):
        raise SpecError(["range: upper bound must be finite"])
    rep = sweep(args.criterion, spec, args.param, lo, hi, step)
    _emit([rep], args.format, {"command": "sweep", **rep}, out)
    _write_manifest(args)
    return EXIT_NONE if rep["status"] == "no-flip-in-range" else EXIT_OK


def cmd_verify(args, out, err) -> int:
    names = [s.strip() for s in args.suite.split(",") if s.strip()] if args.suite is not None else list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise SpecError([f"suite: unknown check {u!r}; known: {', '.join(SUITES)}" for u in unknown])
    if not 0 <= args.seed < 2**64:
        raise SpecError(["seed: must be an unsigned 64-bit integer"])
    if args.samples < 1:
        raise SpecError(["samples: must be >= 1"])
    records = []
    for name in names:
        records.extend(run_suite(name, args.seed, args.samples))
    rows = [r.to_dict() for r in records]
    counts = {v: sum(r.verdict == v for r in records) for v in ("pass", "fail", "inconclusive")}
    _emit(rows, args.format, {"command": "verify", "seed": args.seed, "samples": args.samples,
                              "suites": names, "summary": counts, "records": rows}, out)
    if counts["inconclusive"]:
        err.write(f"warning: {counts['inconclusive']} inconclusive check(s)\n")
    _write_manifest(args, args.seed)
    return EXIT_NONE if counts["fail"] else EXIT_OK


def cmd_dims(args, out) -> int:
    for name in ("n", "r", "k"):
        if getattr(args, name) < 1:
            raise SpecError([f"{name}: must be >= 1"])
    if args.m_max < 0:
        raise SpecError(["m_max: must be >= 0"])
    jd = jet_space_dim(args.n, args.r, args.k)
    rows = [{"m": m, "graded_dim": graded_dim(args.k, m, args.r), "jet_space_dim": jd}
            for m in range(args.m_max + 1)]
    _emit(rows, args.format, {"command": "dims", "n": args.n, "r": args.r, "k": args.k,
                              "jet_space_dim": jd, "rows": rows}, out)
    _write_manifest(args)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default="table")
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest (with timestamp) here")

    p = argparse.ArgumentParser(prog="orbijet", description="Orbifold jet-differential existence criteria.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="run every applicable criterion on a spec")
    c.add_argument("--spec", required=True, metavar="PATH")
    c.add_argument("--variant", choices=LOWER_VARIANTS + UPPER_VARIANTS,
                   help="restrict the Morse-bound criterion to one lower or upper bound")
    c.add_argument("--tau", metavar="RATIONAL", help="override tau from the spec file")

    k = sub.add_parser("constants", parents=[common], help="table of c_n and its asymptotics")
    k.add_argument("n_max", type=int)

    s = sub.add_parser("sweep", parents=[common], help="find where a criterion starts to hold")
    s.add_argument("--spec", required=True, metavar="PATH")
    s.add_argument("--criterion", required=True, choices=sorted(MONOTONE))
    s.add_argument("--param", required=True, choices=("N", "d", "rho", "lambda_V"))
    s.add_argument("--range", required=True, metavar="LO:HI[:STEP]")

    v = sub.add_parser("verify", parents=[common], help="run Monte-Carlo/exact verification suites")
    v.add_argument("--suite", metavar="NAMES", help=f"comma-separated subset of: {', '.join(SUITES)} (default all)")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--samples", type=int, default=100_000)

    d = sub.add_parser("dims", parents=[common], help="graded dimensions of jet differentials")
    d.add_argument("--n", type=int, required=True)
    d.add_argument("--r", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--m-max", dest="m_max", type=int, required=True)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code not in (0, None) else EXIT_OK
    try:
        if args.command == "check":
            return cmd_check(args, out)
        if args.command == "constants":
            return cmd_constants(args, out)
        if args.command == "sweep":
            return cmd_sweep(args, out)
        if args.command == "verify":
            return cmd_verify(args, out, err)
        if args.command == "dims":
            return cmd_dims(args, out)
    except SpecError as e:
        for line in e.errors:
            err.write(f"error: {line}\n")
        return EXIT_INPUT
    except ValueError as e:
        err.write(f"error: {e}\n")
        return EXIT_INPUT
    raise AssertionError(args.command)  # pragma: no cover


def main_exit() -> None:
    """Console-script entry point."""
    sys.exit(main())


if __name__ == "__main__":  # pragma: no cover
    main_exit()
