"""Command-line interface.

Exit codes: 0 verified, 1 a mathematical check failed, 2 usage error,
3 relation budget exhausted.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .algebra.fields import FieldError, finite_field
from .algebra.groups import GroupSpecSyntaxError, is_isomorphic
from .curve_ring import parse_closed_point
from .elliptic import (
    CurveSyntaxError,
    SingularCurveError,
    e0_curve,
    group_structure,
    hasse_interval,
    parse_curve,
    point_count,
)
from .forge import (
    REPLETE,
    CertificateFormatError,
    GroupSpec,
    realize,
    repleteness_check,
    verify_certificate,
    weak_repleteness_check,
)
from .ideal_class import BudgetExhausted, PicardConfig, picard_bruteforce
from .overring import OverringSpec, overring_report
from .tower import (
    decompose,
    e0_descriptor,
    ff_mul,
    function_field,
    generic_point,
    generic_point_has_infinite_order,
    multiplication_degrees,
    tower_group,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class CommandConfig:
    command: str
    curve: str | None = None
    q: int | None = None
    D: int | None = None
    B: int | None = None
    max_norm_degree: int | None = None
    M: int = 4
    q_max: int | None = None
    remove: list[str] = field(default_factory=list)
    group: str | None = None
    out: str | None = None
    path: str | None = None
    oracle: str = "both"
    height: int = 1
    algebraically_closed: bool = False
    format: str = "text"

    def __post_init__(self):
        for name in ("D", "B", "q_max", "max_norm_degree"):
            v = getattr(self, name)
            if v is not None and v <= 0:
                raise UsageError(f"--{name} must be positive")
        if self.M <= 0:
            raise UsageError("--M must be positive")
        if self.height < 0:
            raise UsageError("--height must be non-negative")


def parse_group_spec(s: str) -> GroupSpec:
    return GroupSpec.parse(s)


# -- rendering ------------------------------------------------------------------


def _render_text(obj, indent=0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.extend(_render_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _scalar(v) -> str:
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{}"
    if isinstance(v, bool):
        return "true" if v else "false"
    return "-" if v is None else str(v)


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2)
    return "\n".join(_render_text(report))


# -- subcommands -----------------------------------------------------------------


def _curve(cfg: CommandConfig):
    if cfg.curve is None or cfg.q is None:
        raise UsageError("--curve and --q are required")
    try:
        return parse_curve(cfg.curve, finite_field(cfg.q))
    except (FieldError, CurveSyntaxError, SingularCurveError) as exc:
        raise UsageError(str(exc)) from exc


def _config(cfg):
    base = PicardConfig()
    return PicardConfig(
        degree_bound=cfg.D or base.degree_bound,
        relation_budget=cfg.B or base.relation_budget,
        max_norm_degree=cfg.max_norm_degree or base.max_norm_degree,
    )


def cmd_mw(cfg):
    E = _curve(cfg)
    mw = group_structure(E)
    n = point_count(E)
    lo, hi = hasse_interval(cfg.q)
    ok = lo <= n <= hi
    return ok, {
        "curve": cfg.curve,
        "q": cfg.q,
        "points": n,
        "group": str(mw.group),
        "invariants": list(mw.group.invariants),
        "generators": [repr(P) for P in mw.generators],
        "hasse_bound": ok,
    }


def cmd_picard(cfg):
    E = _curve(cfg)
    report = {"curve": cfg.curve, "q": cfg.q}
    mw = group_structure(E) if cfg.oracle in ("points", "both") else None
    res = picard_bruteforce(E, config=_config(cfg)) if cfg.oracle in ("ideal", "both") else None
    if mw is not None:
        report["points_oracle"] = str(mw.group)
    if res is not None:
        report["ideal_oracle"] = str(res.group)
        report["generators"] = len(res.generators)
        report["relations"] = len(res.relations)
        report["final_budget"] = res.final_budget
        report["candidates"] = res.candidates
    ok = True
    if mw is not None and res is not None:
        ok = is_isomorphic(mw.group, res.group)
        report["verdict"] = "ISOMORPHIC" if ok else "MISMATCH"
    return ok, report


def cmd_overring(cfg):
    E = _curve(cfg)
    try:
        W = tuple(parse_closed_point(E, s) for s in cfg.remove if s.strip())
        spec = OverringSpec(E, W)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    cap = _config(cfg) if cfg.max_norm_degree else None
    rep = overring_report(spec, D=cfg.D, B=cfg.B, config=cap)
    ok = rep.isomorphic and rep.order_identity and rep.kernel_matches
    out = {"curve": cfg.curve, "q": cfg.q, "removed": [P.to_str() for P in spec.W]}
    out.update(rep.to_json())
    out["quotient"], out["direct"] = str(rep.quotient), str(rep.direct)
    out["verdict"] = "ISOMORPHIC" if rep.isomorphic else "MISMATCH"
    return ok, out


def cmd_replete(cfg):
    E = _curve(cfg)
    D = cfg.D or 2
    weak = weak_repleteness_check(E)
    v = repleteness_check(E, D, cfg.algebraically_closed)
    out = {"curve": cfg.curve, "q": cfg.q, "D": D, "weakly_replete": weak.passed}
    out.update(v.to_json())
    return weak.passed and v.verdict == REPLETE, out


def cmd_tower(cfg):
    n = cfg.height
    out = {"base": e0_descriptor()}
    if cfg.curve is not None or cfg.q is not None:
        E = _curve(cfg)
        if cfg.q % 2 == 0:
            raise UsageError("function-field arithmetic needs odd q")
        out = {"curve": cfg.curve, "q": cfg.q}
    else:
        E = e0_curve()
        pres = tower_group(e0_descriptor(), n)
        out["height"] = n
        out["group"] = str(pres.group)
        out["generators"] = pres.generator_names
    K = function_field(E)
    G = generic_point(E)
    checks = []
    ok = True
    for m in range(1, cfg.M + 1):
        P = ff_mul(E, m, G)
        num, den = multiplication_degrees(E, m)
        dec = decompose(E, P, cfg.M)
        row = {
            "m": m,
            "x_num_deg": P.x.a.deg,
            "x_den_deg": P.x.c.deg,
            "division_poly_degrees": [num, den],
            "decompose": [repr(dec[0]), dec[1]],
            "map_degree": K.degree(P.x),
        }
        good = (P.x.a.deg, P.x.c.deg) == (num, den) == (m * m, m * m - 1) and dec[0].is_infinity and dec[1] == m
        row["ok"] = good
        ok &= good
        checks.append(row)
    out["multiples"] = checks
    out["infinite_order"] = generic_point_has_infinite_order(E, cfg.M)
    return ok and out["infinite_order"], out


def cmd_realize(cfg):
    if not cfg.group:
        raise UsageError("--group is required")
    try:
        spec = parse_group_spec(cfg.group)
    except (GroupSpecSyntaxError, ValueError) as exc:
        raise UsageError(str(exc)) from exc
    cert = realize(spec, demo_q_max=cfg.q_max)
    rep = verify_certificate(cert)
    if cfg.out:
        Path(cfg.out).write_text(json.dumps(cert, indent=2) + "\n", encoding="utf-8")
    out = {
        "group": str(spec.group),
        "tower_height": cert["tower_height"],
        "kill_generators": cert["kill_generators"],
        "removed_points": [p["name"] for p in cert["removed_points"]],
        "demo": "demo" in cert,
        "verified": rep.passed,
        "out": cfg.out,
    }
    if cfg.q_max is not None and "demo" not in cert and spec.is_finite:
        out["demo_note"] = f"no finite-field instance with q <= {cfg.q_max}"
    return rep.passed, out


def cmd_verify(cfg):
    p = Path(cfg.path)
    if not p.is_file():
        raise UsageError(f"no such certificate file: {cfg.path}")
    try:
        cert = json.loads(p.read_text(encoding="utf-8"))
        rep = verify_certificate(cert)
    except (json.JSONDecodeError, CertificateFormatError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed certificate: {exc}") from exc
    out = rep.to_json()
    return rep.passed, out


COMMANDS = {
    "mw": cmd_mw,
    "picard": cmd_picard,
    "overring": cmd_overring,
    "replete": cmd_replete,
    "tower": cmd_tower,
    "realize": cmd_realize,
    "verify": cmd_verify,
}


def run(cfg: CommandConfig, stream=None) -> int:
    stream = stream or sys.stdout
    try:
        ok, report = COMMANDS[cfg.command](cfg)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExhausted as exc:
        print(f"budget exhausted: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    print(render(report, cfg.format), file=stream)
    return EXIT_OK if ok else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="classforge", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, curve=True):
        p.add_argument("--format", choices=("text", "json"), default="text")
        if curve:
            p.add_argument("--curve", help='"y^2=x^3+Ax+B" or "a1=..,a2=..,a3=..,a4=..,a6=.."')
            p.add_argument("--q", type=int, help="field order")

    p = sub.add_parser("mw", help="group structure of E(F_q) by point enumeration")
    common(p)
    p = sub.add_parser("picard", help="Pic(F_q[E]) from ideals, points, or both")
    common(p)
    p.add_argument("--oracle", choices=("ideal", "points", "both"), default="both")
    p.add_argument("--D", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--max-norm-degree", type=int, dest="max_norm_degree", help="harvest cap (exit 3 when hit)")
    p = sub.add_parser("overring", help="Pic of the overring with the primes in W inverted")
    common(p)
    p.add_argument("--remove", default="", help='closed points separated by ";", e.g. "(2,1);[x^2+2; y=3x+1]"')
    p.add_argument("--D", type=int)
    p.add_argument("--B", type=int)
    p.add_argument("--max-norm-degree", type=int, dest="max_norm_degree", help="harvest cap (exit 3 when hit)")
    p = sub.add_parser("replete", help="weak repleteness and prime representatives of every class")
    common(p)
    p.add_argument("--D", type=int, help="closed-point degree bound (default 2)")
    p.add_argument("--algebraically-closed", action="store_true")
    p = sub.add_parser("tower", help="points over the function field and the tower group")
    common(p)
    p.add_argument("--height", type=int, default=1)
    p.add_argument("--M", type=int, default=4)
    p = sub.add_parser("realize", help="realization certificate for a group")
    common(p, curve=False)
    p.add_argument("--group", required=True, help='e.g. "Z^2+Z/4+Z/12"')
    p.add_argument("--out")
    p.add_argument("--q-max", type=int, dest="q_max", help="also search a finite-field instance up to this q")
    p = sub.add_parser("verify", help="verify a certificate file")
    common(p, curve=False)
    p.add_argument("path")
    return ap


def _split_remove(s: str) -> list[str]:
    # ";" also appears inside [minpoly; y=...], so split only outside brackets
    parts, depth, cur = [], 0, ""
    for ch in s:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == ";" and depth == 0:
            parts.append(cur)
            cur = ""
        else:
            cur += ch
    parts.append(cur)
    return [p.strip() for p in parts if p.strip()]


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    kw = {k: v for k, v in vars(args).items() if v is not None}
    if "remove" in kw:
        kw["remove"] = _split_remove(kw["remove"])
    try:
        cfg = CommandConfig(**kw)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
