"""Command line front end: ``generate``, ``verify`` and ``explore``.

Exit codes: 0 everything passed, 1 some identity failed, 2 bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .instances import (
    Instance,
    ModuleSpec,
    default_ratio_grid,
    find_antiautomorphism,
    instance_from_spec,
    scan_irreducibility,
)
from .linalg import FieldConfig
from .suite import Perturbation, run_suite

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    pass


def rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def field_config(q: Fraction) -> FieldConfig:
    try:
        return FieldConfig(q)
    except ValueError as exc:
        raise InputError(str(exc))


def parse_factors(text: str, wildcard: bool = False) -> list[tuple[int, Fraction | None]]:
    """``"1:1,2:3/2"`` -> ``[(1, 1), (2, 3/2)]``; with ``wildcard`` a ``?`` parameter becomes ``None``."""
    out = []
    for item in text.split(","):
        d, sep, t = item.strip().partition(":")
        if not sep:
            raise InputError(f"factor {item!r} must look like d:t")
        try:
            dv = int(d)
        except ValueError:
            raise InputError(f"factor {item!r}: d must be an integer")
        if wildcard and t.strip() == "?":
            out.append((dv, None))
            continue
        try:
            out.append((dv, Fraction(t)))
        except (ValueError, ZeroDivisionError):
            raise InputError(f"factor {item!r}: t must be rational")
    return out


def _spec(factors, cfg: FieldConfig) -> ModuleSpec:
    try:
        return ModuleSpec(tuple(factors), cfg)
    except ValueError as exc:
        raise InputError(str(exc))


def _write(text: str, path: str | None) -> None:
    if path:
        Path(path).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def load_instance(path: str) -> Instance:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}")
    try:
        return Instance.from_json(obj)
    except (ValueError, TypeError, KeyError, ZeroDivisionError) as exc:
        raise InputError(f"{path}: {exc}")


# ---------------------------------------------------------------------------


def cmd_generate(args) -> int:
    cfg = field_config(args.q)
    if args.kind == "eval":
        spec = _spec([(args.d, args.t)], cfg)
    else:
        if not args.factors:
            raise InputError("--factors is required for --kind tensor")
        spec = _spec(parse_factors(args.factors), cfg)
    try:
        inst, rep = instance_from_spec(spec, args.a, args.astar, args.variant)
    except ValueError as exc:
        raise InputError(str(exc))
    if not rep.ok:
        print("warning: generated matrices are not a tridiagonal pair: " + "; ".join(rep.failures), file=sys.stderr)
    _write(_dump(inst.to_json()), args.output)
    return EXIT_PASS


def cmd_verify(args) -> int:
    try:
        perturb = Perturbation.parse(args.perturb) if args.perturb else None
    except ValueError as exc:
        raise InputError(str(exc))
    inst = load_instance(args.instance)
    if args.q is not None:
        inst.cfg = field_config(args.q)
    if args.b == 0 or args.bstar == 0:
        raise InputError("b and b* must be nonzero")
    if inst.a == 0 or inst.astar == 0:
        raise InputError("a and a* must be nonzero")
    rep = run_suite(inst, args.b, args.bstar, instance_id=Path(args.instance).name, perturb=perturb)
    if args.report:
        Path(args.report).write_text(_dump(rep.to_json()))
    if args.json:
        sys.stdout.write(_dump(rep.to_json()))
    else:
        print(rep.render())
    return EXIT_PASS if rep.passed else EXIT_FAIL


def _grid_values(text: str, cfg: FieldConfig) -> list[Fraction]:
    if text == "default":
        return default_ratio_grid(cfg)
    if not text.strip():
        return []
    try:
        return [Fraction(x) for x in text.split(",")]
    except (ValueError, ZeroDivisionError):
        raise InputError(f"grid {text!r} must be 'default' or comma-separated rationals")


def cmd_explore(args) -> int:
    records = []
    if args.what == "irreducibility":
        cfg = field_config(args.q)
        template = parse_factors(args.factors, wildcard=True)
        if any(t is None for _, t in template):
            values = _grid_values(args.grid, cfg)
            specs = [_spec([(d, v if t is None else t) for d, t in template], cfg) for v in values if v != 0]
        else:
            specs = [_spec(template, cfg)]
        try:
            records = scan_irreducibility(specs, args.a, args.astar, args.variant)
        except ValueError as exc:
            raise InputError(str(exc))
    else:
        if not args.instances:
            raise InputError("explore antiaut needs at least one instance file")
        for path in args.instances:
            inst = load_instance(path)
            res = find_antiautomorphism(inst.A, inst.Astar)
            records.append({"instance": Path(path).name, **res.to_json()})
    _write("".join(json.dumps(r, ensure_ascii=False) + "\n" for r in records), args.report)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tdpairs", description="Exact verification of q-geometric tridiagonal pairs")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="build an instance file from evaluation modules")
    g.add_argument("--kind", choices=["eval", "tensor"], required=True)
    g.add_argument("--d", type=int, default=1, help="diameter of the evaluation module (eval)")
    g.add_argument("--t", type=rational, default=Fraction(1), help="evaluation parameter (eval)")
    g.add_argument("--factors", help="tensor factors as d:t pairs, e.g. 1:1,1:3")
    g.add_argument("--q", type=rational, default=Fraction(2))
    g.add_argument("--a", type=rational, default=Fraction(1))
    g.add_argument("--astar", type=rational, default=Fraction(1))
    g.add_argument("--variant", choices=["minus", "plus"], default="minus")
    g.add_argument("-o", "--output", help="output path (default: stdout)")
    g.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="run the full verification suite on an instance file")
    v.add_argument("instance")
    v.add_argument("--b", type=rational, default=Fraction(1))
    v.add_argument("--bstar", type=rational, default=Fraction(1))
    v.add_argument("--q", type=rational, default=None, help="override q from the instance file")
    v.add_argument("--report", help="write the JSON report here")
    v.add_argument("--json", action="store_true", help="print the JSON report instead of the summary")
    v.add_argument("--perturb", metavar="VARIANT:GEN",
                   help="negative control: scale one generator by 2 before its relation sweep")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("explore", help="empirical scans, written as JSON lines")
    esub = e.add_subparsers(dest="what", required=True)
    ei = esub.add_parser("irreducibility", help="Burnside test over a grid of tensor products")
    ei.add_argument("--factors", default="1:1,1:?", help="factors; '?' takes each grid value")
    ei.add_argument("--grid", default="default", help="'default' or comma-separated rationals")
    ei.add_argument("--q", type=rational, default=Fraction(2))
    ei.add_argument("--a", type=rational, default=Fraction(1))
    ei.add_argument("--astar", type=rational, default=Fraction(1))
    ei.add_argument("--variant", choices=["minus", "plus"], default="minus")
    ei.add_argument("--report", help="output path (default: stdout)")
    ea = esub.add_parser("antiaut", help="search X -> S X^T S^-1 fixing A and A*")
    ea.add_argument("instances", nargs="*")
    ea.add_argument("--report", help="output path (default: stdout)")
    for sp in (ei, ea):
        sp.set_defaults(func=cmd_explore)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        report = getattr(args, "report", None)
        if args.command == "verify" and report:
            Path(report).write_text(_dump({"instance": args.instance, "error": str(exc)}))
        return EXIT_USAGE
