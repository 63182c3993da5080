"""germcrit command line: critical loci, towers, classification and jet tools for germ files."""

from __future__ import annotations

import argparse
import sys
import time
from typing import Any, Dict, List, Optional, Tuple

from .classify import classify
from .crit import CoveringError, crit_via_covering, critical_locus, critical_tower, discriminant
from .gb import DEFAULT_RADICAL_BOUND, krull_dimension
from .germ import embedding_notes, image_ideal, is_dominant
from .germfile import GermFile, GermFileError, parse_germ_file
from .jetlab import (
    DEFAULT_JET_ORDER,
    EquivalenceResult,
    JetAutomorphism,
    JetContext,
    JetDerivation,
    JetError,
    determinacy_probe,
    exp_derivation,
    lift_automorphism,
    log_automorphism,
    lr_solver,
    right_solver,
)
from .modops import DEFAULT_MINOR_GUARD, MinorGuardError
from .report import ideal_payload, make_report, render_json, render_text
from .ring import ContextError, ParseError

COMMANDS = ("crit", "disc", "tower", "classify", "image", "requiv", "lrequiv", "lift", "exp", "probe")

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_GUARD = 3


class InputError(ValueError):
    pass


def _need_map(gf: GermFile, key: str = "map"):
    f = getattr(gf, key)
    if f is None:
        raise InputError(f"this command needs a '{key}' line in the germ file")
    return f


def _powers(text: Optional[str], default: List[int]) -> List[int]:
    if text is None:
        return default
    try:
        out = [int(s) for s in text.split(",") if s.strip()]
    except ValueError:
        raise InputError(f"--power expects integers separated by commas, got {text!r}") from None
    if not out or any(n < 1 for n in out):
        raise InputError("--power values must be positive")
    return out


def _tower_payload(tower) -> Dict[str, Any]:
    levels = []
    for lv in tower.levels:
        levels.append(
            {
                "level": lv.index,
                "crit": ideal_payload(lv.crit),
                "disc": ideal_payload(lv.disc),
                "certificate": lv.certificate,
                "module_generators": lv.module_rank(),
            }
        )
    return {"levels": levels, "termination": tower.termination}


def _equivalence_payload(res: EquivalenceResult, left: bool) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "status": res.label(),
        "success": res.success,
        "message": res.message,
        "iterations": res.iterations,
        "phi_X": res.phi_X.to_strings() if res.phi_X is not None else None,
    }
    if left:
        out["phi_Y"] = res.phi_Y.to_strings() if res.phi_Y is not None else None
    if not res.success:
        out["degree"] = res.degree
        out["residual"] = [str(p) for p in res.residual]
    return out


def run_command(command: str, gf: GermFile, args) -> Tuple[Dict[str, Any], List[str], List[str]]:
    """Dispatch one command; returns (result payload, flags, figure file names)."""
    flags: List[str] = embedding_notes(gf.map) if gf.map is not None else []
    figures: List[str] = []
    bound, guard, depth = args.radical_bound, args.minor_guard, args.max_depth
    reduce = not args.unreduced
    K = args.jet_order
    if command in ("crit", "disc"):
        f = _need_map(gf)
        res = critical_locus(f, reduce, bound, guard)
        flags += res.flags
        result: Dict[str, Any] = {
            "crit": ideal_payload(res.ideal),
            "unreduced": ideal_payload(res.unreduced),
            "certificate": res.certificate,
            "target": ideal_payload(res.target_ideal),
            "dimension": krull_dimension(res.ideal),
        }
        if command == "disc":
            result["discriminant"] = ideal_payload(discriminant(f, res.ideal))
        if args.project:
            keep = [s.strip() for s in args.project.split(",") if s.strip()]
            cov = crit_via_covering(f, keep, bound, guard)
            result["covering"] = {
                "projection": keep,
                "crit": ideal_payload(cov.crit),
                "projected_crit": ideal_payload(cov.projected_crit),
                "equal": cov.equal,
                "hypothesis_certified": cov.certified,
                "conclusion": cov.conclusion,
                "ramification": ideal_payload(cov.ramification),
                "preimage": ideal_payload(cov.preimage),
                "reasons": cov.reasons,
            }
        return result, flags, figures
    if command == "tower":
        f = _need_map(gf)
        tower = critical_tower(f, depth, reduce, bound, guard)
        flags.append("image-is-closure")
        if args.figures:
            from .plotting import plot_tower

            figures.append(
                plot_tower(
                    [krull_dimension(lv.crit) for lv in tower.levels],
                    [krull_dimension(lv.disc) for lv in tower.levels],
                    tower.termination,
                    args.figures,
                )
            )
        return _tower_payload(tower), flags, figures
    if command == "classify":
        f = _need_map(gf)
        rep = classify(f, depth, reduce, bound, guard)
        flags.append("image-is-closure")
        result = {
            "verdict": rep.label(),
            "type": rep.verdict,
            "r": rep.r,
            "reason": rep.reason,
            "proven": rep.proven,
            "fibre_dimensions": [str(d) for d in rep.dimensions],
            "tower": _tower_payload(rep.tower),
        }
        if args.figures:
            from .plotting import plot_staircase, plot_tower

            tower = rep.tower
            figures.append(
                plot_tower(
                    [krull_dimension(lv.crit) for lv in tower.levels],
                    [krull_dimension(lv.disc) for lv in tower.levels],
                    tower.termination,
                    args.figures,
                )
            )
            level = rep.r if rep.r is not None else len(tower.levels) - 1
            fibre = f.J_X + f.components
            if level:
                fibre = fibre + tower.levels[level].crit
            name = plot_staircase(fibre.leading_exponents(), f.source.names, f"fibre at level {level}", args.figures)
            if name:
                figures.append(name)
        return result, flags, figures
    if command == "image":
        f = _need_map(gf)
        img = image_ideal(f)
        dom = is_dominant(f, bound)
        flags += img.flags
        result = {
            "image": ideal_payload(img.ideal),
            "dominant": dom.dominant,
            "dimension": krull_dimension(img.ideal),
        }
        if dom.reverse is not None:
            result["reverse_inclusion"] = str(dom.reverse)
        return result, flags, figures
    if command in ("requiv", "lrequiv"):
        f = _need_map(gf)
        ft = _need_map(gf, "map2")
        ctx = JetContext(f.source, K)
        res = (lr_solver if command == "lrequiv" else right_solver)(f, ft, ctx)
        flags.append(f"jets-mod-degree>{K}")
        return _equivalence_payload(res, command == "lrequiv"), flags, figures
    if command == "lift":
        if gf.automorphism is None or gf.lift_ideal is None:
            raise InputError("lift needs 'automorphism' and 'lift_ideal' lines")
        ctx = JetContext(gf.source, K)
        powers = _powers(args.power, [3])
        if len(powers) != 1:
            raise InputError("lift takes a single --power N")
        phibar = JetAutomorphism(ctx, gf.automorphism)
        res = lift_automorphism(gf.J_X, gf.lift_ideal, powers[0], phibar, ctx)
        flags.append(f"jets-mod-degree>{K}")
        result = {
            "success": res.success,
            "message": res.message,
            "phi": res.phi.to_strings() if res.phi is not None else None,
            "exponent": res.exponent,
            "drops": res.drops,
            "checks": res.checks,
            "generator": str(res.generator) if res.generator is not None else None,
        }
        return result, flags, figures
    if command == "exp":
        ctx = JetContext(gf.source, K)
        flags.append(f"jets-mod-degree>{K}")
        if gf.derivation is not None:
            xi = JetDerivation(ctx, gf.derivation)
            phi = exp_derivation(xi, ctx)
            back = log_automorphism(phi, ctx)
            return {"derivation": xi.to_string(), "automorphism": phi.to_strings(), "roundtrip": back == xi}, flags, figures
        if gf.automorphism is not None:
            phi = JetAutomorphism(ctx, gf.automorphism)
            xi = log_automorphism(phi, ctx)
            back = exp_derivation(xi, ctx)
            return {"automorphism": phi.to_strings(), "log": xi.to_string(), "roundtrip": back == phi}, flags, figures
        raise InputError("exp needs a 'derivation' or an 'automorphism' line")
    if command == "probe":
        f = _need_map(gf)
        ctx = JetContext(f.source, K)
        Ns = _powers(args.power, [3, 4, 5, 6])
        rows = determinacy_probe(f, Ns, args.trials, args.seed, ctx)
        flags.append(f"jets-mod-degree>{K}")
        table = [
            {"N": r.N, "trials": r.trials, "successes": r.successes, "rate": r.rate, "failure_degrees": r.failure_degrees}
            for r in rows
        ]
        if args.figures and rows:
            from .plotting import plot_probe

            figures.append(plot_probe(rows, args.figures))
        return {"table": table}, flags, figures
    raise InputError(f"unknown command {command!r}")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="germcrit", description=__doc__)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("file", help="germ description file ('-' for stdin)")
    p.add_argument("--max-depth", type=int, default=5, help="tower depth limit (default 5)")
    p.add_argument("--jet-order", type=int, default=DEFAULT_JET_ORDER, help="truncation order K (default 12)")
    p.add_argument("--radical-bound", type=int, default=DEFAULT_RADICAL_BOUND, help="power bound for radical tests (default 8)")
    p.add_argument("--minor-guard", type=int, default=DEFAULT_MINOR_GUARD, help="largest minor size for Fitting ideals (default 8)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--power", help="N for lift; comma-separated N values for probe (default 3,4,5,6)")
    p.add_argument("--project", help="crit/disc: also compare with the projection onto these target variables")
    p.add_argument("--unreduced", action="store_true", help="keep Fitting ideals unreduced")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
    p.add_argument("--timing", action="store_true", help="add wall time to the report (breaks byte-identical output)")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.file == "-":
            text = sys.stdin.read()
        else:
            with open(args.file, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as e:
        print(f"germcrit: cannot read {args.file}: {e.strerror}", file=sys.stderr)
        return EXIT_INPUT
    start = time.perf_counter()
    try:
        gf = parse_germ_file(text)
        result, flags, figures = run_command(args.command, gf, args)
    except (GermFileError, InputError, ParseError, ContextError) as e:
        print(f"germcrit: input error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except MinorGuardError as e:
        print(f"germcrit: guard: {e}", file=sys.stderr)
        return EXIT_GUARD
    except (JetError, CoveringError) as e:
        print(f"germcrit: {e}", file=sys.stderr)
        return EXIT_GUARD
    config = {
        "field": str(gf.source.field),
        "orders": {"local": "negative degree reverse lexicographic", "elimination": "block degrevlex"},
        "max_depth": args.max_depth,
        "jet_order": args.jet_order,
        "radical_bound": args.radical_bound,
        "minor_guard": args.minor_guard,
        "seed": args.seed,
        "trials": args.trials,
        "reduced": not args.unreduced,
    }
    report = make_report(args.command, text, config, result, flags)
    if figures:
        report["figures"] = figures
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 3)
    out = render_json(report) if args.format == "json" else render_text(report)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
