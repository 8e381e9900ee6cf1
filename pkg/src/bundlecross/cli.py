"""``bundle`` command line."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Optional, Sequence

from .arrangement import InstanceError, build_planarization, parse_instance, split_components
from .bipartite import NotBipartiteError, bipartite_pipeline
from .generators import FAMILIES, GeneratorSpec, generate
from .harness import (
    InvalidDrawing,
    check_drawing,
    load_config,
    rectangulate,
    run_bundling,
    run_harness,
)
from .net import classify_vertices, detect_forbidden_patterns, detect_toothed_holes, net_from_arrangement
from .oracle import OracleTooLarge, brute_force_min_rectangulation, verify_inequalities
from .rectangulation import random_order, to_bundling
from .render import render_svg

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _read_instance(path: str):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    return parse_instance(text)


def _single_net(arr):
    comps = split_components(arr)
    if len(comps) != 1:
        raise InstanceError(f"expected a connected drawing, got {len(comps)} components")
    return comps[0], net_from_arrangement(comps[0])


def _emit(args, payload: dict, tsv_keys: Optional[Sequence[str]] = None) -> None:
    if args.format == "tsv":
        keys = list(tsv_keys or payload.keys())
        print("\t".join(keys))
        print("\t".join(_cell(payload[k]) for k in keys))
    else:
        print(json.dumps(payload, indent=None, separators=(",", ":")))


def _cell(v) -> str:
    if isinstance(v, bool):
        return str(int(v))
    if isinstance(v, (list, dict)):
        return json.dumps(v, separators=(",", ":"))
    return "" if v is None else str(v)


def _write_svg(path: Optional[str], arr, bundles=None, segments=None, net=None, title="") -> None:
    if not path:
        return
    arr = arr.without_uncrossed()
    p = build_planarization(arr)
    kw = {}
    if net is not None and segments is not None:
        kw = dict(segments=[s.darts for s in segments], cell_of_dart=net.dart_vertex, cells=net.rot)
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(render_svg(p, bundles=bundles, title=title, **kw))


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------


def cmd_gen(args) -> int:
    opts = {"bipartite": True} if args.bipartite else {}
    arr = generate(GeneratorSpec(args.family, tuple(args.size), args.seed, opts))
    text = arr.to_json() + "\n"
    if args.output and args.output != "-":
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_build_net(args) -> int:
    arr = _read_instance(args.instance)
    msgs = check_drawing(arr)
    _, n = _single_net(arr)
    vc = classify_vertices(n)
    payload = {
        "vertices": n.n_vertices,
        "edges": n.n_edges,
        "squares": n.n_squares,
        "H": n.n_holes,
        "H_odd": n.n_odd_holes,
        "t": detect_toothed_holes(n),
        "exponent": n.total_exponent,
        "regular": vc.count("regular"),
        "border": vc.count("border"),
        "vertex_holes": vc.count("vertex-hole"),
        "violations": msgs or detect_forbidden_patterns(n).messages(),
    }
    _emit(args, payload)
    return EXIT_OK if not payload["violations"] else EXIT_FAIL


def _bundle(args, method: str) -> int:
    arr = _read_instance(args.instance)
    res = run_bundling(arr, method, args.order, args.seed, args.oracle_cap)
    _emit(args, res.to_dict(), ("R", "S", "H", "t", "bundles"))
    segs = res.components[0].rect.segments if len(res.components) == 1 else None
    net = res.components[0].net if len(res.components) == 1 else None
    _write_svg(args.svg, arr, res.bundles, segs, net, title=f"{method}: {len(res.bundles)} bundles")
    return EXIT_OK


def cmd_greedy(args) -> int:
    return _bundle(args, "greedy")


def cmd_bipartite(args) -> int:
    arr = _read_instance(args.instance)
    msgs = check_drawing(arr)
    if msgs:
        raise InvalidDrawing("; ".join(msgs))
    comp, n = _single_net(arr)
    vorder = random_order(n, args.seed) if args.order == "random" else None
    res = bipartite_pipeline(n, vorder)
    t = detect_toothed_holes(n)
    b = to_bundling(comp, n, res.rect)
    payload = {
        "color": res.color,
        "gain": res.gain,
        "A": len(res.seed),
        "S": res.rect.S,
        "R": res.rect.R,
        "H": res.rect.H,
        "t": t,
        "bundles": [list(x) for x in b.bundles],
    }
    try:
        opt = brute_force_min_rectangulation(n, args.oracle_cap)
        g = rectangulate(n, "greedy", args.order, args.seed)
        rep = verify_inequalities(n, opt, g, None, res.rect)
        payload["S_opt"] = opt.S_opt
        payload["R_opt"] = opt.R_opt
        payload["S_A_ok"] = rep.by_name("S_A<=ceil(1.5S_opt)").holds
        payload["R_A_ok"] = rep.by_name("R_A<=4.5R_opt+t/2").holds
    except OracleTooLarge:
        payload.update(S_opt=None, R_opt=None, S_A_ok=None, R_A_ok=None)
    _emit(args, payload, ("color", "gain", "A", "S", "R", "H", "t", "S_opt", "R_opt", "S_A_ok", "R_A_ok"))
    _write_svg(args.svg, arr, payload["bundles"], res.rect.segments, n, title=f"bipartite ({res.color})")
    return EXIT_OK if payload["S_A_ok"] is not False and payload["R_A_ok"] is not False else EXIT_FAIL


def cmd_exact(args) -> int:
    arr = _read_instance(args.instance)
    comp, n = _single_net(arr)
    opt = brute_force_min_rectangulation(n, args.oracle_cap)
    payload = {
        "R_opt": opt.R_opt,
        "S_opt": opt.S_opt,
        "H": opt.H,
        "t": opt.t,
        "delta": opt.delta,
        "n_optimal": opt.n_optimal,
        "complete": opt.complete,
    }
    if opt.witnesses:
        payload["bundles"] = [list(x) for x in to_bundling(comp, n, opt.witness).bundles]
    _emit(args, payload, ("R_opt", "S_opt", "H", "t", "delta", "n_optimal", "complete"))
    if args.svg and opt.witnesses:
        _write_svg(args.svg, arr, payload["bundles"], opt.witness.segments, n, title="optimum")
    return EXIT_OK


def cmd_verify(args) -> int:
    arr = _read_instance(args.instance)
    msgs = check_drawing(arr)
    if msgs:
        raise InvalidDrawing("; ".join(msgs))
    comp, n = _single_net(arr)
    opt = brute_force_min_rectangulation(n, args.oracle_cap)
    g = rectangulate(n, "greedy", args.order, args.seed)
    nb = to_bundling(comp, n, g).count
    bip = None
    if arr.is_bipartite():
        bip = rectangulate(n, "bipartite", args.order, args.seed)
    rep = verify_inequalities(n, opt, g, nb, bip)
    if args.format == "json":
        print(json.dumps({"ok": rep.ok, "checks": [
            {"name": c.name, "lhs": c.lhs, "rhs": c.rhs, "applicable": c.applicable, "holds": c.holds}
            for c in rep.checks
        ]}))
    else:
        print(rep.tsv())
        fails = rep.failures()
        print(f"# R_opt={opt.R_opt} S_opt={opt.S_opt} H={opt.H} t={opt.t} R_greed={g.R} S_greed={g.S} "
              f"bundles={nb}: {'all bounds hold' if not fails else f'{len(fails)} violated'}", file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_render(args) -> int:
    arr = _read_instance(args.instance)
    svg = args.svg or "-"
    bundles = segs = net = None
    if args.method != "none":
        res = run_bundling(arr, args.method, args.order, args.seed, args.oracle_cap)
        bundles = res.bundles
        if len(res.components) == 1:
            segs, net = res.components[0].rect.segments, res.components[0].net
    if svg == "-":
        arr2 = arr.without_uncrossed()
        kw = {}
        if net is not None:
            kw = dict(segments=[s.darts for s in segs], cell_of_dart=net.dart_vertex, cells=net.rot)
        sys.stdout.write(render_svg(build_planarization(arr2), bundles=bundles, **kw))
    else:
        _write_svg(svg, arr, bundles, segs, net)
    return EXIT_OK


def cmd_harness(args) -> int:
    config = load_config(args.config) if args.config else {}
    if args.workers:
        config["workers"] = args.workers
    if args.oracle_cap is not None:
        config["oracle_cap"] = args.oracle_cap
    config.setdefault("order", args.order)
    rep = run_harness(config)
    if args.format == "json":
        print(json.dumps(rep.to_dict()))
    else:
        print(rep.tsv())
    print(rep.summary(), file=sys.stderr)
    return EXIT_OK if rep.ok else EXIT_FAIL


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--order", choices=("id", "random"), default="id", help="greedy vertex order")
    common.add_argument("--oracle-cap", type=int, default=None, help="max squares for the brute-force oracle")
    common.add_argument("--svg", metavar="PATH", default=None)
    common.add_argument("--format", choices=("json", "tsv"), default=None, help="default json (tsv for harness)")
    common.add_argument("-v", "--verbose", action="store_true")

    ap = argparse.ArgumentParser(prog="bundle", description="Bundled crossings of pseudosegment drawings.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="generate an instance")
    p.add_argument("family", choices=FAMILIES)
    p.add_argument("size", type=int, nargs="*")
    p.add_argument("--bipartite", action="store_true", help="circular: two-colored instances only")
    p.add_argument("-o", "--output", default="-")
    p.set_defaults(func=cmd_gen)

    for name, func, text in (
        ("build-net", cmd_build_net, "net statistics and pattern checks"),
        ("greedy", cmd_greedy, "greedy bundling"),
        ("bipartite", cmd_bipartite, "bipartite bundling"),
        ("exact", cmd_exact, "brute-force optimum"),
        ("verify", cmd_verify, "check every bound against the oracle"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("instance", help="instance JSON file or - for stdin")
        p.set_defaults(func=func)

    p = sub.add_parser("render", parents=[common], help="SVG drawing")
    p.add_argument("instance")
    p.add_argument("--method", choices=("greedy", "bipartite", "exact", "none"), default="greedy")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("harness", parents=[common], help="batch verification")
    p.add_argument("config", nargs="?", help="JSON config; default is 1000 circular drawings")
    p.add_argument("--workers", type=int, default=None)
    p.set_defaults(func=cmd_harness)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format is None:
        args.format = "tsv" if args.command == "harness" else "json"
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except (InstanceError, NotBipartiteError, OracleTooLarge, ValueError, OSError) as exc:
        print(f"bundle: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
