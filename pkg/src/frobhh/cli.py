"""``frobhh`` command line.

Every subcommand prints one JSON report (or a plain-text table with
``--table``) and exits 0 when all checks pass, 1 when a check fails and 2 on
bad input or unmet hypotheses.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
import traceback
from pathlib import Path

from . import errors
from .algebra import construct, group_hopf, load_algebra, taft_hopf
from .exactla import DEFAULT_DENSITY_THRESHOLD, PrimeField
from .frobenius import DEFAULT_ORDER_CAP, is_automorphism
from .hochschild import DEFAULT_MAX_DEGREE, memory_budget_mb

SUBCOMMANDS = ("analyze", "hh", "theorem-a", "theorem-b", "props", "hopf-check")
PROPS_DEFAULT_DEGREE = 2
DEFAULT_P = 13

_CONSTRUCTORS = {
    "taft": "taft",
    "matrix": "matrix",
    "truncated": "truncated_poly",
    "truncated_poly": "truncated_poly",
    "cyclic": "cyclic",
    "diagonal": "diagonal",
}

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def parse_constructor(spec: str, p: int):
    """``taft:N[:w]``, ``matrix:n``, ``truncated:N``, ``cyclic:N``, ``diagonal:n``."""
    parts = spec.split(":")
    name = _CONSTRUCTORS.get(parts[0])
    if name is None:
        raise errors.ParseError(f"unknown constructor {parts[0]!r}; expected one of {sorted(set(_CONSTRUCTORS))}")
    try:
        args = [int(x) for x in parts[1:]]
    except ValueError:
        raise errors.ParseError(f"constructor arguments must be integers: {spec!r}") from None
    want = (1, 2) if name == "taft" else (1,)
    if len(args) not in want:
        raise errors.ParseError(f"constructor {parts[0]!r} takes {' or '.join(map(str, want))} integer argument(s)")
    return construct(name, PrimeField(p), *args)


def load_input(cfg) -> object:
    if cfg.input:
        try:
            text = Path(cfg.input).read_text()
        except OSError as exc:
            raise errors.ParseError(f"cannot read {cfg.input}: {exc.strerror}") from None
        return load_algebra(text)
    if cfg.constructor:
        return parse_constructor(cfg.constructor, cfg.p)
    raise errors.ParseError("need --input or --constructor")


def config_echo(cfg) -> dict:
    return {
        "subcommand": cfg.command,
        "input": cfg.input,
        "constructor": cfg.constructor,
        "p": cfg.p,
        "seed": cfg.seed,
        "max_degree": cfg.max_degree,
        "normalized": cfg.normalized,
        "density_threshold": cfg.density_threshold,
        "order_cap": cfg.order_cap,
        "mem_budget_mb": memory_budget_mb(),
    }


# -- subcommands -------------------------------------------------------------


def cmd_analyze(cfg) -> dict:
    from .pipeline import analyze, summary

    A = load_input(cfg)
    an = analyze(A, cfg.seed, cfg.order_cap)
    rep = summary(an)
    rep["checks"] = {
        "rho_is_automorphism": is_automorphism(A, an.nak.rho),
        "grading_spans_algebra": sum(an.grading.dims) == A.dim,
    }
    return rep


def cmd_hh(cfg) -> dict:
    from .pipeline import hh_report

    A = load_input(cfg)
    return hh_report(A, cfg.max_degree, cfg.normalized, cfg.density_threshold)


def cmd_theorem_a(cfg) -> dict:
    from .pipeline import analyze, run_theorem_a, summary

    an = analyze(load_input(cfg), cfg.seed, cfg.order_cap)
    rep = run_theorem_a(an, cfg.max_degree, cfg.normalized, cfg.density_threshold)
    rep["analysis"] = summary(an)
    rep["checks"] = {f"degree_{r['n']}": r["pass"] for r in rep["per_degree"]}
    return rep


def cmd_theorem_b(cfg) -> dict:
    from .pipeline import analyze, run_theorem_b, summary

    an = analyze(load_input(cfg), cfg.seed, cfg.order_cap)
    rep = run_theorem_b(an, cfg.max_degree)
    rep["analysis"] = summary(an)
    checks = {f"degree_{r['n']}": r["pass"] for r in rep["per_degree"]}
    checks.update({f"degree_{r['n']}_class_{r['i']}": r["pass"] for r in rep["refined"]})
    checks["action_well_defined"] = rep["action_checks"]
    rep["checks"] = checks
    return rep


def cmd_props(cfg) -> dict:
    from .pipeline import analyze, run_props, summary

    an = analyze(load_input(cfg), cfg.seed, cfg.order_cap)
    rep = run_props(an, cfg.max_degree)
    rep["analysis"] = summary(an)
    return rep


def cmd_hopf_check(cfg) -> dict:
    from .action import taft_action_formula_check
    from .hopf import hopf_check, taft_example_values

    A = load_input(cfg)
    kind = A.constructor[0] if A.constructor else None
    if kind == "taft":
        _, N, w = A.constructor
        H = taft_hopf(N, A.field, w, algebra=A)
    elif kind == "cyclic":
        H = group_hopf(A)
    else:
        raise errors.InputError("hopf-check needs a Hopf structure: use a taft or cyclic constructor")
    rep = {"algebra": A.name, "p": A.p, "hopf": hopf_check(H)}
    checks = {f"hopf_{k}": v for k, v in rep["hopf"]["checks"].items()}
    if kind == "taft":
        ex = taft_example_values(H)
        rep["example_values"] = ex
        checks.update({f"example_{k}": v for k, v in ex["checks"].items()})
        act = taft_action_formula_check(N, A.field, w, min(cfg.max_degree, 2))
        rep["action_formula"] = act
        checks.update({f"action_formula_n{r['n']}": r["equal"] for r in act["rows"]})
    rep["checks"] = checks
    return rep


COMMANDS = {
    "analyze": cmd_analyze,
    "hh": cmd_hh,
    "theorem-a": cmd_theorem_a,
    "theorem-b": cmd_theorem_b,
    "props": cmd_props,
    "hopf-check": cmd_hopf_check,
}


# -- report plumbing ---------------------------------------------------------


def overall_pass(rep: dict) -> bool:
    checks = rep.get("checks", {})
    ok = all(bool(v) for v in checks.values())
    if "pass" in rep:
        ok = ok and bool(rep["pass"])
    return ok


def _provenance(exc: BaseException) -> str:
    """Innermost package module on the traceback."""
    module = "cli"
    for frame in traceback.extract_tb(exc.__traceback__):
        path = Path(frame.filename)
        if path.parent.name == "frobhh":
            module = path.stem
    return module


def error_report(exc: BaseException) -> dict:
    return {"type": type(exc).__name__, "module": _provenance(exc), "message": str(exc)}


def _is_input_error(exc: BaseException) -> bool:
    return isinstance(
        exc,
        (
            errors.InputError,
            errors.HypothesisFailure,
            errors.DegreeTooLarge,
            errors.NotFrobeniusWithinAttempts,
            errors.CapExceeded,
        ),
    )


def render_table(rep: dict) -> str:
    lines = []
    cfg = rep.get("config", {})
    lines.append(" ".join(f"{k}={v}" for k, v in cfg.items() if v is not None))
    for key in ("algebra", "p", "m", "w"):
        if key in rep:
            lines.append(f"{key}: {rep[key]}")
    body = rep.get("report", rep)
    if "dims" in body:
        n = len(body["dims"])
        lines.append("n        " + " ".join(f"{k:>5}" for k in range(n)))
        lines.append("HH^n     " + " ".join(f"{x:>5}" for x in body["dims"]))
        if len(body.get("graded_dims", [])) > 1:
            for i, row in enumerate(body["graded_dims"]):
                lines.append(f"HH_{i}^n".ljust(9) + " ".join(f"{x:>5}" for x in row))
    for key in ("per_degree", "refined"):
        rows = rep.get(key)
        if rows:
            cols = list(rows[0])
            lines.append(key)
            lines.append("  " + "  ".join(f"{c:>14}" for c in cols))
            for r in rows:
                lines.append("  " + "  ".join(f"{str(r[c]):>14}" for c in cols))
    for name, ok in rep.get("checks", {}).items():
        lines.append(f"{'PASS' if ok else 'FAIL'}  {name}")
    if "error" in rep:
        e = rep["error"]
        lines.append(f"ERROR {e['type']} in {e['module']}: {e['message']}")
    else:
        lines.append(f"overall: {'PASS' if rep.get('pass') else 'FAIL'}")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="frobhh", description="Hochschild cohomology of Frobenius algebras over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in SUBCOMMANDS:
        sp = sub.add_parser(name)
        src = sp.add_mutually_exclusive_group(required=True)
        src.add_argument("--input", help="algebra spec JSON file")
        src.add_argument("--constructor", help="taft:N[:w] | matrix:n | truncated:N | cyclic:N | diagonal:n")
        sp.add_argument("--p", type=int, default=DEFAULT_P, help="field characteristic for --constructor")
        sp.add_argument("--seed", type=int, default=0)
        default_deg = PROPS_DEFAULT_DEGREE if name == "props" else DEFAULT_MAX_DEGREE
        sp.add_argument("--max-degree", type=int, default=default_deg)
        sp.add_argument("--no-normalized", dest="normalized", action="store_false")
        sp.add_argument("--density-threshold", type=float, default=DEFAULT_DENSITY_THRESHOLD)
        sp.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
        sp.add_argument("--out", help="write the JSON report here instead of stdout")
        sp.add_argument("--table", action="store_true", help="plain-text table instead of JSON")
        sp.add_argument("--timings", action="store_true", help="add wall-clock timings (breaks byte-identity)")
    return ap


def run(argv=None):
    cfg = build_parser().parse_args(argv)
    rep = {"config": config_echo(cfg)}
    t0 = time.perf_counter()
    try:
        if cfg.max_degree < 0:
            raise errors.InputError("--max-degree must be >= 0")
        body = COMMANDS[cfg.command](cfg)
        rep.update(body)
        rep["pass"] = overall_pass(body)
        code = EXIT_OK if rep["pass"] else EXIT_FAIL
    except errors.FrobHHError as exc:
        rep["error"] = error_report(exc)
        rep["pass"] = False
        code = EXIT_INPUT if _is_input_error(exc) else EXIT_FAIL
    if cfg.timings:
        rep["timings_ms"] = {"total": round((time.perf_counter() - t0) * 1000, 1)}
    return rep, code, cfg


def main(argv=None) -> int:
    rep, code, cfg = run(argv)
    text = render_table(rep) if cfg.table else json.dumps(rep, indent=2, sort_keys=True) + "\n"
    if cfg.out:
        Path(cfg.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
