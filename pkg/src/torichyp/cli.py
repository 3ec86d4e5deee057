"""Command line interface.

Exit codes: 0 when a report or verdict was produced (UNKNOWN and REFUTED
included), 2 for malformed input, 3 when a hypothesis needed for the
requested computation fails.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import (
    BoundaryCurve,
    CompleteIntersection,
    Config,
    boundary_genera,
    curve_dot,
    genus_lower_bound,
    triple_intersection,
)
from .errors import InputError, TorichypError, UnboundedError
from .hyperbolicity import CERTIFIED, REFUTED, certify_cell, family, sweep
from .io import load_config, load_divisor, load_fan
from .sections import alcoved_fan_check, has_connected_sections
from .toric import check_fan, class_group, divisor_class

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS = 0, 2, 3


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _divisor(ref: str):
    if ref.startswith("fixture:"):
        raise InputError("a divisor needs a divisor file, not a fixture name")
    return load_divisor(ref)


def _yes(b: bool) -> str:
    return "yes" if b else "no"


def cmd_fan_info(args) -> int:
    fan = load_fan(args.fanfile)
    rep = check_fan(fan)
    cl = class_group(fan)
    summary = ", ".join([
        "complete" if rep.complete else "not complete",
        "smooth" if rep.smooth else "not smooth",
        "Gorenstein" if rep.gorenstein else "not Gorenstein",
        f"Cl = {cl.describe()}",
    ])
    payload = rep.as_dict() | {
        "class_group": {"rank": cl.rank, "torsion": list(cl.torsion)},
        "alcoved": alcoved_fan_check(fan),
        "rays": len(fan.rays),
        "max_cones": len(fan.max_cones),
        "summary": summary,
    }
    lines = [
        summary,
        f"rays: {len(fan.rays)}, maximal cones: {len(fan.max_cones)}",
        f"complete: {_yes(rep.complete)}",
        f"simplicial: {_yes(rep.simplicial)}",
        f"smooth: {_yes(rep.smooth)}",
        f"gorenstein: {_yes(rep.gorenstein)}",
        f"alcoved: {_yes(payload['alcoved'])}",
        f"class group: {cl.describe()}",
    ]
    for key, w in sorted(rep.witnesses.items()):
        lines.append(f"witness ({key}): {json.dumps(w)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_intersect(args) -> int:
    Ds = [_divisor(r) for r in (args.D1, args.D2, args.D3)]
    val = triple_intersection(*Ds)
    _emit(args, {"intersection": val}, str(val))
    return EXIT_OK


def cmd_config_check(args) -> int:
    D, Es = load_config(args.configfile)
    rep = has_connected_sections(D, Es)
    d = rep.as_dict()
    lines = [
        f"connected sections: {_yes(rep.verdict)}",
        f"section graph: {rep.num_vertices} vertices, {rep.num_edges} edges, {rep.components} component(s)",
        f"span condition: {_yes(rep.span_holds)}",
    ]
    if d["disconnected_vertex"]:
        lines.append(f"witness (disconnected vertex): {json.dumps(d['disconnected_vertex'])}")
    if d["uncovered_point"]:
        lines.append(f"witness (uncovered point): {d['uncovered_point']}")
    _emit(args, d, "\n".join(lines))
    return EXIT_OK


def _parse_curve(spec: str, D):
    kind, _, rest = spec.partition(":")
    if kind == "boundary":
        try:
            return BoundaryCurve(int(rest))
        except ValueError:
            raise InputError(f"bad boundary curve {spec!r}; use boundary:<ray>") from None
    if kind == "ci":
        try:
            coeffs = [Fraction(x) for x in rest.split(",")]
        except ValueError:
            raise InputError(f"bad coefficients in {spec!r}") from None
        if len(coeffs) != D.fan.num_rays:
            raise InputError(f"ci: needs {D.fan.num_rays} coefficients (one per ray)")
        gens = [D.fan.ray_divisor(k) for k in range(D.fan.num_rays)]
        return CompleteIntersection.from_coords(D, gens, coeffs)
    raise InputError(f"unknown curve class {spec!r}; use boundary:<ray> or ci:<c1,...,cr>")


def cmd_genus_bound(args) -> int:
    D, Es = load_config(args.configfile)
    config = Config.build(D, Es)
    C = _parse_curve(args.curve, D)
    gb = genus_lower_bound(config, C)
    payload = {"curve": args.curve} | gb.as_dict()
    lines = [f"curve: {args.curve}"]
    if gb.kind == "boundary":
        lines.append(f"genus (boundary curve, exact): {gb.bound}")
    else:
        H = D.fan.ample()
        if H is not None:
            deg = curve_dot(C, H)
            payload["degree"] = str(deg)
            lines.append(f"degree (ample reference): {deg}")
        for i, v in enumerate(gb.values, 1):
            lines.append(f"C.(E{i}+K) = {v}")
        lines.append(f"genus >= {gb.bound}  (minimum at E{gb.index + 1})")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_boundary_genus(args) -> int:
    D = _divisor(args.divisor)
    genera = boundary_genera(D)
    payload = {"genera": {str(k): v for k, v in genera.items()}}
    lines = ["ray genus"] + [f"{k} {v}" for k, v in genera.items()]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _parse_params(text: str) -> dict[str, int]:
    out = {}
    for part in filter(None, text.split(",")):
        key, eq, val = part.partition("=")
        try:
            if not eq:
                raise ValueError
            out[key.strip()] = int(val)
        except ValueError:
            raise InputError(f"bad parameter {part!r}; use name=value") from None
    return out


def _parse_ranges(text: str) -> dict[str, range]:
    out = {}
    for part in filter(None, text.split(",")):
        key, eq, val = part.partition("=")
        lo, dots, hi = val.partition("..")
        try:
            if not eq or not dots:
                raise ValueError
            out[key.strip()] = range(int(lo), int(hi) + 1)
        except ValueError:
            raise InputError(f"bad range {part!r}; use name=lo..hi") from None
    return out


def cmd_certify(args) -> int:
    v = certify_cell(args.family, **_parse_params(args.params))
    lines = [f"verdict: {v.status}"]
    if v.status == CERTIFIED:
        lines.append(f"epsilon: {v.epsilon}")
    if v.status == REFUTED:
        lines.append(f"witness: boundary curve on ray {v.witness['ray']} of genus {v.witness['genus']}")
    if v.reasons:
        lines.append("reasons: " + "; ".join(v.reasons))
    if v.ledger:
        lines.append("kind label 2g-2 deg ratio")
        for r in v.ledger:
            lines.append(f"{r.kind} {r.label} {r.value} {r.degree} {'-' if r.ratio is None else r.ratio}")
    _emit(args, v.as_dict(), "\n".join(lines))
    return EXIT_OK


def cmd_sweep(args) -> int:
    family(args.family)
    report = sweep(args.family, _parse_ranges(args.range))
    text = report.to_csv()
    if args.csv:
        Path(args.csv).write_text(text)
    counts = {}
    for r in report.rows:
        counts[r.verdict.status] = counts.get(r.verdict.status, 0) + 1
    payload = {
        "family": args.family,
        "cells": len(report.rows),
        "counts": counts,
        "disagreements": [list(r.params) for r in report.disagreements()],
    }
    if args.json or args.csv:
        summary = f"{len(report.rows)} cells: " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items()))
        _emit(args, payload, summary)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="torichyp", description="Genus bounds and hyperbolicity for surfaces in toric threefolds.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--json", action="store_true", help="emit structured JSON")
    sub = p.add_subparsers(dest="command", required=True)

    fan = sub.add_parser("fan", help="fan reports")
    fsub = fan.add_subparsers(dest="fan_command", required=True)
    info = fsub.add_parser("info", help="completeness, smoothness, Gorenstein, class group")
    info.add_argument("fanfile", help="fan file or fixture:NAME")
    info.set_defaults(func=cmd_fan_info)

    inter = sub.add_parser("intersect", help="triple intersection number")
    for name in ("D1", "D2", "D3"):
        inter.add_argument(name, help="divisor file")
    inter.set_defaults(func=cmd_intersect)

    cfg = sub.add_parser("config", help="configuration checks")
    csub = cfg.add_subparsers(dest="config_command", required=True)
    chk = csub.add_parser("check", help="connected-sections verdict")
    chk.add_argument("configfile")
    chk.set_defaults(func=cmd_config_check)

    gb = sub.add_parser("genus-bound", help="genus lower bound for a curve class")
    gb.add_argument("configfile")
    gb.add_argument("--curve", required=True, help="boundary:<ray> or ci:<c1,...,cr> (rationals allowed)")
    gb.set_defaults(func=cmd_genus_bound)

    bg = sub.add_parser("boundary-genus", help="genera of boundary curves")
    bg.add_argument("divisor", help="divisor file")
    bg.set_defaults(func=cmd_boundary_genus)

    cert = sub.add_parser("certify", help="hyperbolicity verdict for one family member")
    cert.add_argument("family", help="P2xP1, P1cubed, BlP3 or WPS")
    cert.add_argument("--params", required=True, help="e.g. a=5,b=3")
    cert.set_defaults(func=cmd_certify)

    sw = sub.add_parser("sweep", help="verdicts over a parameter grid")
    sw.add_argument("family")
    sw.add_argument("--range", required=True, help="e.g. a=1..10,b=1..10")
    sw.add_argument("--csv", help="write the region CSV here")
    sw.set_defaults(func=cmd_sweep)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, UnboundedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except TorichypError as exc:
        print(f"hypothesis failure: {exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS


if __name__ == "__main__":
    raise SystemExit(main())
