"""Command-line front end: ``sl2graded <command> --lambda L ...``.

Exit codes: 0 success or pass, 1 property violation, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .enveloping import format_cartan, grade_components_z, grade_components_z2sq, normalize_cartan, normalize_pauli
from .errors import DomainError, InternalInconsistencyError, ParameterMismatchError
from .module import act_nf, z2sq_split
from .parser import ParseError, lower, parse_element, parse_expr, parse_scalar
from .scalars import GaussianRational
from .submodules import SubmoduleId, classify_generated, compute_r, membership, quotient_dim
from .verify import SUITES, applicable_suites, run_suite

SCHEMA = 1
EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


@dataclass
class CommandConfig:
    command: str
    lam: GaussianRational
    basis: str = "pauli"
    fmt: str = "text"
    deg: int | None = None
    suite: str | None = None
    which: str | None = None
    payloads: list = field(default_factory=list)


@dataclass
class Report:
    exit_code: int
    text: str
    data: dict

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return json.dumps({"schema": SCHEMA, **self.data}, sort_keys=True, ensure_ascii=False, indent=2)
        return self.text


class UsageError(ValueError):
    pass


def _need(cfg: CommandConfig, count: int | None = None) -> list[str]:
    if count is not None and len(cfg.payloads) != count:
        raise UsageError(f"{cfg.command} takes {count} argument(s), got {len(cfg.payloads)}")
    if not cfg.payloads:
        raise UsageError(f"{cfg.command} needs at least one argument")
    return cfg.payloads


def _normal_form(cfg: CommandConfig, src: str):
    expr = lower(parse_expr(src))
    if cfg.basis == "cartan":
        u = normalize_cartan(expr, cfg.lam)
        return u, format_cartan(u)
    u = normalize_pauli(expr, cfg.lam)
    return u, str(u)


def cmd_normalize(cfg: CommandConfig) -> Report:
    (src,) = _need(cfg, 1)
    u, text = _normal_form(cfg, src)
    return Report(EXIT_OK, text, {"basis": cfg.basis, "normal_form": text, "terms": u.to_json()})


def cmd_act(cfg: CommandConfig) -> Report:
    src, elem_src = _need(cfg, 2)
    u = normalize_pauli(lower(parse_expr(src)), cfg.lam)
    m = parse_element(elem_src, cfg.lam)
    out = act_nf(u, m)
    return Report(EXIT_OK, str(out), {"operator": str(u), "element": str(m), "result": str(out), "value": out.to_json()})


def cmd_grade(cfg: CommandConfig) -> Report:
    (src,) = _need(cfg, 1)
    if ";" in src:
        parts = z2sq_split(parse_element(src, cfg.lam))
        kind = "module"
    elif cfg.basis == "cartan":
        parts = grade_components_z(normalize_cartan(lower(parse_expr(src)), cfg.lam))
        kind = "cartan"
    else:
        parts = grade_components_z2sq(normalize_pauli(lower(parse_expr(src)), cfg.lam))
        kind = "pauli"
    fmt = format_cartan if kind == "cartan" else str
    rows = [(str(label), fmt(part)) for label, part in sorted(parts.items())]
    text = "\n".join(f"{label}: {body}" for label, body in rows) or "0"
    return Report(EXIT_OK, text, {"grading": kind, "components": [{"label": l, "part": b} for l, b in rows]})


def cmd_r_poly(cfg: CommandConfig) -> Report:
    info = compute_r(cfg.lam)
    data = {"n": info.n, "r": str(info.r), "rstar": str(info.rstar), "c_r_factor": info.c_r_factor.to_json()}
    return Report(EXIT_OK, str(info), data)


def cmd_classify(cfg: CommandConfig) -> Report:
    gens = [parse_element(src, cfg.lam) for src in _need(cfg)]
    verdict, cert = classify_generated(cfg.lam, gens)
    valid = cert.is_valid()
    lines = [f"verdict: {verdict}", f"branch: {cert.branch}", f"start: {cert.start}"]
    for k, step in enumerate(cert.steps, 1):
        lines.append(f"  {k}. [{step.description}] {step.op}")
        lines.append(f"     -> {step.element}")
    lines.append(f"terminal: {cert.terminal}")
    lines.append(f"certificate replays: {'yes' if valid else 'NO'}")
    data = {
        "verdict": str(verdict),
        "branch": cert.branch,
        "start": str(cert.start),
        "terminal": str(cert.terminal),
        "certificate": cert.to_json(),
        "checks": [{"name": "certificate replays", "pass": valid}],
    }
    return Report(EXIT_OK if valid else EXIT_VIOLATION, "\n".join(lines), data)


def cmd_member(cfg: CommandConfig) -> Report:
    (src,) = _need(cfg, 1)
    try:
        which = SubmoduleId(cfg.which or "N")
    except ValueError:
        raise UsageError(f"--which must be N, P or Q (got {cfg.which})") from None
    m = parse_element(src, cfg.lam)
    ok = membership(cfg.lam, m, which)
    return Report(EXIT_OK, "true" if ok else "false", {"element": str(m), "which": str(which), "member": ok})


def cmd_qdim(cfg: CommandConfig) -> Report:
    d = quotient_dim(cfg.lam)
    return Report(EXIT_OK, str(d), {"quotient_dim": d, "n": compute_r(cfg.lam).n})


def cmd_verify(cfg: CommandConfig) -> Report:
    if cfg.payloads:
        raise UsageError("verify takes no positional arguments")
    name = cfg.suite or "all"
    names = applicable_suites(cfg.lam) if name == "all" else [name]
    if any(n not in SUITES for n in names):
        raise UsageError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    reports = [run_suite(n, cfg.lam, cfg.deg) for n in names]
    lines, suites = [], []
    for rep in reports:
        for c in rep.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {rep.suite}: {c.name}" + (f"  ({c.detail})" if c.detail else ""))
        suites.append({
            "suite": rep.suite,
            "degree": rep.degree,
            "pass": rep.passed,
            "checks": [c.to_json() for c in rep.checks],
        })
    passed = all(r.passed for r in reports)
    lines.append(f"{'pass' if passed else 'FAIL'}: {', '.join(names)} at lambda = {cfg.lam}")
    return Report(EXIT_OK if passed else EXIT_VIOLATION, "\n".join(lines), {"pass": passed, "suites": suites})


COMMANDS = {
    "normalize": cmd_normalize,
    "act": cmd_act,
    "grade": cmd_grade,
    "r-poly": cmd_r_poly,
    "classify": cmd_classify,
    "member": cmd_member,
    "qdim": cmd_qdim,
    "verify": cmd_verify,
}


def run_command(cfg: CommandConfig) -> Report:
    """Dispatch one command; algebra errors propagate to the caller."""
    report = COMMANDS[cfg.command](cfg)
    report.data = {"command": cfg.command, "lambda": cfg.lam.to_json(), **report.data}
    return report


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--lambda", dest="lam", required=True, metavar="SCALAR", help="parameter, e.g. 2, -4, 1/2, i")
    common.add_argument("--format", dest="fmt", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="sl2graded", description="Exact computations in U(sl2)/(c - (lambda+1)^2) and its rank-2 module.")
    sub = p.add_subparsers(dest="command", required=True)
    helps = {
        "normalize": "normal form of an expression",
        "act": "act by an expression on a module element 'f ; g'",
        "grade": "graded components of an expression or of a module element",
        "r-poly": "r(h) and r*(h) for lambda in 2Z",
        "classify": "classify the submodule generated by module elements",
        "member": "decide membership in N, P or Q",
        "qdim": "dimension of M/N for lambda in 2Z",
        "verify": "run a named verification suite",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, parents=[common], help=text)
        if name in ("normalize", "grade"):
            sp.add_argument("--basis", choices=("pauli", "cartan"), default="pauli")
        if name == "member":
            sp.add_argument("--which", choices=("N", "P", "Q"), default="N")
        if name == "verify":
            sp.add_argument("--suite", default="all", help=f"all, {', '.join(SUITES)}")
            sp.add_argument("--deg", type=int, default=None, help="degree bound for samples")
        nargs = {"normalize": 1, "act": 2, "grade": 1, "classify": "+", "member": 1}.get(name)
        if nargs is not None:
            sp.add_argument("payloads", nargs=nargs, metavar="INPUT")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = args.fmt
    try:
        cfg = CommandConfig(
            command=args.command,
            lam=parse_scalar(args.lam),
            basis=getattr(args, "basis", "pauli"),
            fmt=fmt,
            deg=getattr(args, "deg", None),
            suite=getattr(args, "suite", None),
            which=getattr(args, "which", None),
            payloads=list(getattr(args, "payloads", []) or []),
        )
        report = run_command(cfg)
    except InternalInconsistencyError as exc:
        print(f"violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except (ParseError, DomainError, ParameterMismatchError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(report.render(fmt))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
