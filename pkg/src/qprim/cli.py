"""``qprim`` command line: inspect rings, their spectra, topology and sheaf, run the check suite."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .checks import report_json, run_suite, summarize
from .corpus import load_corpus
from .dot import closed_lattice_dot, specialization_dot
from .errors import CapExceeded, EmptySpectrum, RingSpecError
from .ideals import DEFAULT_IDEAL_CAP, all_ideals
from .rings import DEFAULT_ORDER_CAP, build_ring
from .sheaf import check_stalk, direct_image_check, sheaf_on
from .specs import ZMod, spec_from_json
from .topology import (Kind, chain_dimension, generic_points, irreducible_closed_sets,
                       irreducible_components, is_connected, spectrum)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _els(xs) -> str:
    return "{" + ",".join(map(str, xs)) + "}"


def _load_ring(args):
    if args.zmod is not None:
        spec = ZMod(args.zmod)
    elif args.ring is not None:
        try:
            data = json.loads(Path(args.ring).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise RingSpecError(f"cannot read ring spec {args.ring}: {exc}") from exc
        spec = spec_from_json(data)
    else:
        raise RingSpecError("supply a ring with --ring FILE or --zmod N")
    R = build_ring(spec, order_cap=args.order_cap)
    all_ideals(R, cap=args.ideal_cap)
    return R


def _spectrum(args):
    R = _load_ring(args)
    return R, spectrum(R, Kind(args.kind))


def cmd_inspect(args, out) -> int:
    R = _load_ring(args)
    lattice = all_ideals(R, cap=args.ideal_cap)
    print(f"ring: {R.label}", file=out)
    print(f"order: {R.order}", file=out)
    print(f"characteristic: {R.characteristic}", file=out)
    print(f"units: {_els(R.units)}", file=out)
    print(f"idempotents: {_els(R.idempotents)}", file=out)
    print(f"nilpotents: {_els(R.nilpotents)}", file=out)
    print(f"local: {'yes' if R.is_local() else 'no'}", file=out)
    print(f"ideals: {len(lattice)}", file=out)
    return EXIT_OK


def cmd_spectrum(args, out) -> int:
    R, sp = _spectrum(args)
    print(f"{sp.kind.value}({R.label}): {len(sp)} points", file=out)
    for Q in sp.points:
        print(f"{Q.label()}  radical {Q.radical.label()}", file=out)
    return EXIT_OK


def cmd_topology(args, out) -> int:
    R, sp = _spectrum(args)
    topo = sp.topology
    name = f"{sp.kind.value}({R.label})"

    def names(C) -> str:
        return "[" + "; ".join(Q.label() for Q in C.point_ideals()) + "]"

    print(f"{name}: {len(sp)} points, {len(topo.closed)} closed sets", file=out)
    print("closed sets:", file=out)
    for i, C in enumerate(topo.closed):
        print(f"  c{i} {names(C)}  = V({C.witness.label()})", file=out)
    print("containment: " + ", ".join(f"c{i}<c{j}" for i, j in topo.containment()), file=out)
    print("components:", file=out)
    for C in irreducible_components(sp):
        print(f"  {names(C)}", file=out)
    print(f"connected: {'yes' if is_connected(sp) else 'no'}", file=out)
    try:
        dim = chain_dimension(sp)
        print(f"dimension: {dim.krull} (longest chain of irreducible closed sets: {dim.terms})", file=out)
    except EmptySpectrum:
        print("dimension: -1 (empty space)", file=out)
    print("generic points:", file=out)
    for C in irreducible_closed_sets(sp):
        gens = "; ".join(Q.label() for Q in generic_points(C))
        print(f"  {names(C)}: {gens}", file=out)
    return EXIT_OK


def cmd_sheaf(args, out) -> int:
    R, sp = _spectrum(args)
    F = sheaf_on(R, sp.kind)
    print(f"sheaf on {sp.kind.value}({R.label})", file=out)
    print("sections:", file=out)
    for U in sorted(sp.topology.opens, key=lambda U: (len(U.points), sorted(U.points))):
        pts = "; ".join(sp.points[k].label() for k in sorted(U.points))
        print(f"  F([{pts}]) order {len(F.sections(U))}", file=out)
    print("stalks:", file=out)
    for k in range(len(sp)):
        rep = check_stalk(F, k)
        local = "local" if rep.local else "not local"
        match = "matches" if rep.matches_localization else "differs from"
        print(f"  {_els(rep.point)}: order {rep.order}, {local}, {match} localization at the radical", file=out)
    report = direct_image_check(R)
    verdict = "pass" if report.ok else "fail"
    print(f"direct image along Spec -> QPrim: {verdict} ({report.opens_checked} opens)", file=out)
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_verify(args, out) -> int:
    corpus = load_corpus(args.corpus)
    checks = args.checks.split(",") if args.checks else None
    try:
        verdicts = run_suite(corpus, checks, seed=args.seed, timing=args.timing,
                             order_cap=args.order_cap, ideal_cap=args.ideal_cap)
    except KeyError as exc:
        raise RingSpecError(exc.args[0]) from exc
    text = report_json(verdicts, seed=args.seed)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    counts = summarize(verdicts)
    print(f"{counts['pass']} pass, {counts['fail']} fail, {counts['skipped']} skipped", file=sys.stderr)
    for v in verdicts:
        if v.status == "fail":
            print(f"FAIL {v.check} on {v.label}: {json.dumps(v.counterexample)}", file=sys.stderr)
    return EXIT_FAIL if counts["fail"] else EXIT_OK


def cmd_export_dot(args, out) -> int:
    _, sp = _spectrum(args)
    target = Path(args.out)
    if target.is_dir() or args.out.endswith(("/", "\\")):
        target.mkdir(parents=True, exist_ok=True)
        spec_path, lat_path = target / "specialization.dot", target / "closed_lattice.dot"
    else:
        target.parent.mkdir(parents=True, exist_ok=True)
        spec_path = target.with_name(target.name + "_specialization.dot")
        lat_path = target.with_name(target.name + "_closed_lattice.dot")
    spec_path.write_text(specialization_dot(sp), encoding="utf-8")
    lat_path.write_text(closed_lattice_dot(sp), encoding="utf-8")
    print(spec_path, file=out)
    print(lat_path, file=out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    caps = argparse.ArgumentParser(add_help=False)
    caps.add_argument("--order-cap", type=int, default=DEFAULT_ORDER_CAP)
    caps.add_argument("--ideal-cap", type=int, default=DEFAULT_IDEAL_CAP)

    ring = argparse.ArgumentParser(add_help=False, parents=[caps])
    src = ring.add_mutually_exclusive_group()
    src.add_argument("--ring", metavar="FILE", help="JSON ring spec")
    src.add_argument("--zmod", type=int, metavar="N", help="shorthand for Z/N")
    ring.add_argument("--kind", choices=[k.value for k in Kind], default="qprim")

    parser = argparse.ArgumentParser(prog="qprim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("inspect", parents=[ring], help="order, units, idempotents, nilpotents").set_defaults(fn=cmd_inspect)
    sub.add_parser("spectrum", parents=[ring], help="points with radicals").set_defaults(fn=cmd_spectrum)
    sub.add_parser("topology", parents=[ring], help="closed sets, components, dimension").set_defaults(fn=cmd_topology)
    sub.add_parser("sheaf", parents=[ring], help="sections, stalks, direct image").set_defaults(fn=cmd_sheaf)

    verify = sub.add_parser("verify", parents=[caps], help="run the check suite over a corpus")
    verify.add_argument("--corpus", default="default", help="'default' or a JSON corpus file")
    verify.add_argument("--out", help="write the JSON report here instead of stdout")
    verify.add_argument("--checks", help="comma-separated check ids or prefixes, e.g. C09,C10")
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--timing", action="store_true", help="record per-check milliseconds")
    verify.set_defaults(fn=cmd_verify)

    dot = sub.add_parser("export-dot", parents=[ring], help="write Graphviz files")
    dot.add_argument("--out", default=".", help="directory, or a path prefix for the two files")
    dot.set_defaults(fn=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args, sys.stdout)
    except CapExceeded as exc:
        print(f"qprim: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except RingSpecError as exc:
        print(f"qprim: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
