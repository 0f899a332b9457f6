"""Command-line front end.

Exit codes: 0 all selected checks pass, 1 a check failed, 2 bad config or
input, 3 the rewriting iteration cap was hit.
"""

from __future__ import annotations

import argparse
import configparser
from dataclasses import dataclass, field, replace
import sys

from . import ncalg
from .coeff import ParameterContext, ParameterDecl, PoleError, UndeclaredParameter, default_context
from .lorentz import CaseError, FAMILIES, LorentzCase, catalog, make_case
from .matalg import Matrix
from .ncalg import IterationCapExceeded, NonConfluentError, OrientationError
from .parse import ParseError, parse_coefficient, parse_matrix
from .report import (
    CHECKS, constraints_report, failing, frt_report, hecke_report, lorentz_report,
    minkowski_report, projector_report, r_matrix, to_json, to_markdown, ybe_report,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_CAP = 0, 1, 2, 3

TRACE_CENTRAL_FAMILIES = ("A1", "A3")


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    params: ParameterContext = field(default_factory=default_context)
    cases: list = field(default_factory=list)
    checks: tuple = CHECKS
    format: str = "json"
    max_steps: int | None = None
    samples: int = 3
    seed: int = 7


def _parse_decl(name: str, text: str) -> ParameterDecl:
    parts = [p.strip() for p in text.split(";") if p.strip()]
    if not parts:
        raise ConfigError(f"empty declaration for {name}")
    try:
        return ParameterDecl(name, parts[0], tuple(parts[1:]))
    except (ValueError, UndeclaredParameter) as e:
        raise ConfigError(str(e)) from None


def parse_bindings(items, ctx: ParameterContext) -> dict:
    """``name=expr`` strings to coefficients; parameters must be declared."""
    out = {}
    for item in items:
        if "=" not in item:
            raise ConfigError(f"binding {item!r} is not of the form name=value")
        name, expr = (s.strip() for s in item.split("=", 1))
        if name not in ("q", "h", "r", "t"):
            raise ConfigError(f"cannot bind {name!r}; only q, h, r, t are case parameters")
        out[name] = parse_coefficient(expr, ctx)
    return out


def bind(case: LorentzCase, values: dict, case_id: str | None = None) -> LorentzCase:
    merged = dict(case.bindings)
    merged.update(values)
    return replace(case, id=case_id or case.id, bindings=tuple(sorted(merged.items())))


def load_config(path: str) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None, inline_comment_prefixes=("#",))
    cp.optionxform = str
    try:
        with open(path, encoding="utf-8") as fh:
            cp.read_file(fh)
    except (OSError, configparser.Error) as e:
        raise ConfigError(f"cannot read config {path}: {e}") from None
    cfg = RunConfig()
    if cp.has_section("parameters"):
        ctx = cfg.params
        for name, text in cp.items("parameters"):
            ctx = ctx.with_decl(_parse_decl(name, text))
        cfg.params = ctx
    known = catalog()
    for section in cp.sections():
        if not section.startswith("case "):
            continue
        cid = section[5:].strip()
        sec = dict(cp.items(section))
        family = sec.pop("family", None)
        if family is None:
            raise ConfigError(f"[{section}] needs a family")
        mode = sec.pop("mode", None)
        try:
            case = make_case(family, mode, cid)
        except (CaseError, KeyError) as e:
            raise ConfigError(f"[{section}]: {e}") from None
        known[cid] = bind(case, parse_bindings([f"{k}={v}" for k, v in sec.items()], cfg.params))
    run = dict(cp.items("run")) if cp.has_section("run") else {}
    names = [s.strip() for s in run.get("cases", "").split(",") if s.strip()] or list(catalog())
    for n in names:
        if n not in known:
            raise ConfigError(f"unknown case {n!r}")
    cfg.cases = [known[n] for n in names]
    checks = run.get("checks", "all").strip()
    if checks != "all":
        cfg.checks = tuple(c.strip() for c in checks.split(","))
        bad = [c for c in cfg.checks if c not in CHECKS]
        if bad:
            raise ConfigError(f"unknown checks {bad}")
    cfg.format = run.get("format", "json")
    if cfg.format not in ("json", "markdown"):
        raise ConfigError(f"unknown format {cfg.format!r}")
    try:
        if "max_steps" in run:
            cfg.max_steps = int(run["max_steps"])
        cfg.samples = int(run.get("samples", cfg.samples))
        cfg.seed = int(run.get("seed", cfg.seed))
    except ValueError as e:
        raise ConfigError(str(e)) from None
    return cfg


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=("json", "markdown"), default=None)
    p.add_argument("--config", help="INI run configuration")
    p.add_argument("--max-steps", type=int, help="rewriting iteration cap")
    p.add_argument("--output", "-o", help="write the report to a file")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qmink", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="R-matrix and Lorentz-level identities")
    v.add_argument("what", choices=("ybe", "hecke", "projectors", "reality", "mixed-ybe", "blocks", "lorentz"))
    v.add_argument("--R", dest="r_literal", help="R-matrix literal for ybe")
    v.add_argument("--deformation", choices=("q", "h"), help="default: both")
    v.add_argument("--case", action="append", help="case id (repeatable)")
    v.add_argument("--family", action="append", choices=FAMILIES)
    v.add_argument("--all", action="store_true")
    _add_common(v)

    d = sub.add_parser("derive", help="derived algebras and tensors")
    d.add_argument("what", choices=("frt", "minkowski", "length", "metric", "constraints"))
    d.add_argument("--deformation", choices=("q", "h"))
    d.add_argument("--case", action="append")
    d.add_argument("--set", action="append", default=[], metavar="NAME=EXPR")
    _add_common(d)

    c = sub.add_parser("check", help="run the check battery on one case")
    c.add_argument("--case", required=True)
    c.add_argument("--all", action="store_true", help="full battery with the expected trace pattern")
    for name in CHECKS:
        c.add_argument(f"--{name}", action="store_true", dest="flag_" + name.replace("-", "_"))
    c.add_argument("--set", action="append", default=[], metavar="NAME=EXPR")
    _add_common(c)

    r = sub.add_parser("report", help="full report over the catalog or a config")
    r.add_argument("--all", action="store_true")
    _add_common(r)
    return parser


def _resolve_case(cid: str, cfg: RunConfig, sets) -> LorentzCase:
    known = {c.id: c for c in cfg.cases}
    for k, v in catalog().items():
        known.setdefault(k, v)
    if cid not in known:
        raise ConfigError(f"unknown case {cid!r}; known: {', '.join(sorted(known))}")
    case = known[cid]
    if sets:
        case = bind(case, parse_bindings(sets, cfg.params), f"{cid}[{','.join(sets)}]")
    return case


def _emit(obj, cfg: RunConfig, args, title: str) -> None:
    text = to_json(obj) if cfg.format == "json" else to_markdown(obj, title)
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _deformations(args):
    return [args.deformation] if args.deformation else ["q", "h"]


def _lorentz_cases(args, cfg):
    if args.case:
        return [_resolve_case(c, cfg, []) for c in args.case]
    cases = cfg.cases or list(catalog().values())
    if args.family:
        cases = [c for c in cases if c.family in args.family]
    return cases


def _cmd_verify(args, cfg):
    what = args.what
    if what == "ybe":
        if args.r_literal:
            r = parse_matrix(args.r_literal, ctx=cfg.params)
            if not isinstance(r, Matrix) or r.n != 4:
                raise ConfigError("--R must be a 4x4 matrix literal")
            items = [ybe_report(r, args.r_literal)]
        else:
            items = [ybe_report(r_matrix(d), f"R_{d}") for d in _deformations(args)]
    elif what == "hecke":
        items = [hecke_report(d) for d in _deformations(args)]
    elif what == "projectors":
        items = [projector_report(d) for d in _deformations(args)]
    else:
        key = {"reality": "reality", "mixed-ybe": "mixed_ybe", "blocks": "block_rep"}.get(what)
        items = []
        for case in _lorentz_cases(args, cfg):
            rep = lorentz_report(case)
            if key:
                rep = {"case": rep["case"], "check": what, "pass": rep["checks"][key]}
            items.append(rep)
    fails = [f"{i.get('case') or i.get('deformation') or i.get('matrix')}:{what}" for i in items if not i["pass"]]
    return items, fails


def _cmd_derive(args, cfg):
    what = args.what
    if what in ("frt", "constraints"):
        fn = frt_report if what == "frt" else constraints_report
        items = [fn(d) for d in _deformations(args)]
        return items, [f"{i['deformation']}:{what}" for i in items if not i["pass"]]
    ids = args.case or [c.id for c in cfg.cases] or list(catalog())
    items = []
    for cid in ids:
        case = _resolve_case(cid, cfg, args.set)
        rep = minkowski_report(case, ("relations",))
        if what == "length":
            rep = {"case": rep["case"], "length": rep["length"], "checks": rep["checks"]}
        elif what == "metric":
            rep = {"case": rep["case"], "metric": rep["metric"], "covariant_vector": rep["covariant_vector"]}
        items.append(rep)
    return items, [f"{i['case']}:{k}" for i in items for k in failing(i)]


def _expected(case: LorentzCase) -> dict:
    return {"trace_central": case.family in TRACE_CENTRAL_FAMILIES}


def _cmd_check(args, cfg):
    case = _resolve_case(args.case, cfg, args.set)
    named = tuple(n for n in CHECKS if getattr(args, "flag_" + n.replace("-", "_")))
    if args.all or not named:
        selected, expected = CHECKS, _expected(case)
    else:
        selected, expected = named, {}
    rep = minkowski_report(case, selected, cfg.samples, cfg.seed)
    return rep, [f"{case.id}:{k}" for k in failing(rep, expected)]


def _cmd_report(args, cfg):
    items, fails = [], []
    for case in cfg.cases or list(catalog().values()):
        rep = minkowski_report(case, cfg.checks, cfg.samples, cfg.seed)
        items.append(rep)
        fails += [f"{case.id}:{k}" for k in failing(rep, _expected(case))]
    for d in ("q", "h"):
        for fn in (hecke_report, projector_report, frt_report, constraints_report):
            rep = fn(d)
            items.append(rep)
            if not rep["pass"]:
                fails.append(f"{d}:{rep.get('check', 'constraints')}")
    return items, fails


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else RunConfig(cases=list(catalog().values()))
        if args.format:
            cfg.format = args.format
        if args.max_steps is not None:
            cfg.max_steps = args.max_steps
        ncalg.set_iteration_cap(cfg.max_steps)
        handler = {"verify": _cmd_verify, "derive": _cmd_derive, "check": _cmd_check,
                   "report": _cmd_report}[args.command]
        obj, fails = handler(args, cfg)
    except IterationCapExceeded as e:
        print(f"qmink: resource cap: {e}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, ParseError, CaseError, UndeclaredParameter, PoleError) as e:
        print(f"qmink: {e}", file=sys.stderr)
        return EXIT_CONFIG
    except (OrientationError, NonConfluentError) as e:
        print(f"qmink: check failed: {e}", file=sys.stderr)
        return EXIT_FAIL
    finally:
        ncalg.set_iteration_cap(None)
    _emit(obj, cfg, args, f"qmink {args.command}")
    if fails:
        print("failing checks: " + ", ".join(fails), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
