"""Command-line front end.

Exit codes: 0 success, 1 invalid input, 2 a verification suite failed,
3 a resource cap was hit.  Results go to stdout or files, progress to stderr.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import __version__

EXIT_OK, EXIT_INPUT, EXIT_VERIFY, EXIT_LIMIT = 0, 1, 2, 3

# flags whose value may start with "-" (a seed or a negative curvature)
_VALUE_FLAGS = {"--seed", "--from", "--to", "--sign"}
HELP_WIDTH = 88


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def __init__(self, *a, **kw):
        kw.setdefault("formatter_class", _Formatter)
        super().__init__(*a, **kw)

    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


class _Formatter(argparse.HelpFormatter):
    def __init__(self, prog):
        super().__init__(prog, width=HELP_WIDTH, max_help_position=30)


def _ints(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(float(text)) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def _add_config(p, seed_required=True):
    p.add_argument("--kind", required=True, choices=["oct", "cube", "square", "tri"],
                   help="packing family")
    p.add_argument("--seed", required=seed_required, type=_ints, metavar="INTS",
                   help="seed curvatures, comma separated (cube seeds may be in any order)")
    p.add_argument("--sign", choices=["+", "-"], default="+",
                   help="root choice for grid seeds given by one face (default +)")


def _add_threads(p):
    p.add_argument("--threads", type=_positive, default=1, help="worker threads (default 1)")
    p.add_argument("--max-states", type=int, default=0, metavar="N",
                   help="abort with exit code 3 after N states (0: no cap)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="circlepack", description="Integral circle packings: types, invariants, curvatures.")
    ap.add_argument("--version", action="version", version=f"circlepack {__version__}")
    ap.add_argument("-q", "--quiet", action="store_true", help="no progress output on stderr")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    p = sub.add_parser("classify", help="modular type and chi2 of a packing",
                       description="Print the modular type and the chi2 invariant of the packing of a seed.")
    _add_config(p)
    p.add_argument("--rng-seed", type=int, default=0, help="seed for the sampled states (default 0)")
    p.add_argument("--json", metavar="PATH", help="also write the result as JSON")

    p = sub.add_parser("enumerate", help="write the presence file of curvatures <= N",
                       description="Enumerate every curvature <= N and write a presence file.")
    _add_config(p)
    p.add_argument("--max", required=True, type=_positive, metavar="N", help="curvature bound")
    p.add_argument("--out", required=True, metavar="PATH", help="presence file to write")
    _add_threads(p)

    p = sub.add_parser("sporadic", help="sporadic-integer report",
                       description="Admissible, unobstructed integers <= N that are not curvatures.")
    _add_config(p)
    p.add_argument("--max", required=True, type=_positive, metavar="N", help="curvature bound")
    p.add_argument("--json", metavar="PATH", help="write the report as JSON")
    p.add_argument("--csv", metavar="PATH", help="write the report summary as CSV")
    p.add_argument("--figure", metavar="PATH", help="write a figure of the report (PNG, PDF or SVG)")
    p.add_argument("--presence", metavar="PATH", help="reuse a presence file instead of enumerating")
    _add_threads(p)

    p = sub.add_parser("chi2", help="chi2 invariant with witnesses",
                       description="Compute chi2 with its rho witnesses on the seed circles.")
    _add_config(p)
    p.add_argument("--samples", type=int, default=64, help="random states sampled (default 64)")
    p.add_argument("--depth", type=int, default=10, help="maximum word length of samples (default 10)")
    p.add_argument("--rng-seed", type=int, default=0, help="seed for the sampled states (default 0)")

    p = sub.add_parser("ford", help="list Ford circles of a strip packing",
                       description="List the Ford circles with |x|, y <= bound in inversive coordinates.")
    p.add_argument("--kind", required=True, choices=["oct", "cube", "square", "tri"], help="packing family")
    p.add_argument("--bound", type=_positive, default=3, help="parameter bound (default 3)")
    p.add_argument("--check", action="store_true", help="also run the exact reflection checks")

    p = sub.add_parser("path", help="coprime chain between two curvatures",
                       description="A chain of tangent circles with coprime consecutive curvatures.")
    _add_config(p)
    p.add_argument("--from", dest="src", required=True, type=int, metavar="K", help="first curvature")
    p.add_argument("--to", dest="dst", required=True, type=int, metavar="K", help="last curvature")
    p.add_argument("--verify-bound", type=_positive, default=200, metavar="N",
                   help="search bound for inserted circles (default 200)")

    p = sub.add_parser("verify", help="run a verification suite",
                       description="Run a self-check suite; exit code 2 if it fails.")
    p.add_argument("--suite", required=True, choices=["ford", "node", "edge", "oracle", "modular", "obstruction"],
                   help="suite to run")
    p.add_argument("--bound", type=_positive, help="ford: parameter bound (20); oracle: N (2000)")
    p.add_argument("--verify-bound", type=_positive, metavar="N",
                   help="edge: pairs per packing (10000); modular: moves per family (100000); "
                        "obstruction: N cap (1000000); node: witnesses per circle (20)")
    p.add_argument("--rng-seed", type=int, default=0, help="seed for sampled states (default 0)")
    p.add_argument("--threads", type=_positive, default=1, help="worker threads (default 1)")
    p.add_argument("--json", metavar="PATH", help="write the result as JSON")

    p = sub.add_parser("render", help="draw a bounded packing as SVG",
                       description="Draw the circles of a bounded packing up to a curvature or depth.")
    _add_config(p)
    p.add_argument("--max", type=_positive, metavar="N", help="curvature bound")
    p.add_argument("--depth", type=int, help="generator word depth")
    p.add_argument("--out", required=True, metavar="PATH", help="SVG file to write")
    p.add_argument("--labels", action="store_true", help="print curvatures in large circles")
    p.add_argument("--colors", action="store_true", help="fill circles by colour class")
    p.add_argument("--size", type=_positive, default=800, help="picture size in pixels (default 800)")
    return ap


def _merge_values(argv):
    out = []
    i = 0
    while i < len(argv):
        a = argv[i]
        if a in _VALUE_FLAGS and i + 1 < len(argv):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


class _Progress:
    def __init__(self, quiet: bool):
        self.quiet = quiet
        self.t0 = time.monotonic()

    def __call__(self, msg: str) -> None:
        if not self.quiet:
            print(f"[{time.monotonic() - self.t0:7.1f}s] {msg}", file=sys.stderr, flush=True)


def _config(args):
    from .configs import validate_config

    return validate_config(args.kind, args.seed, sign=1 if args.sign == "+" else -1)


def _seed_text(args) -> str:
    return ",".join(str(v) for v in args.seed)


# ---- commands ------------------------------------------------------------------------------

def cmd_classify(args, progress):
    from .configs import modular_type
    from .invariants import chi2_packing

    cfg = _config(args)
    mt = modular_type(cfg)
    chi = chi2_packing(cfg, rng=random.Random(args.rng_seed))
    res = {"kind": args.kind, "seed": list(args.seed), "type": mt.label,
           "residues": sorted(mt.residues), "modulus": mt.modulus,
           "chi2": chi.value}
    print(f"kind      {args.kind}")
    print(f"seed      {','.join(map(str, args.seed))}")
    print(f"type      {mt.label}  (residues {sorted(mt.residues)} mod {mt.modulus})")
    print(f"chi2      {chi}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(res, fh, indent=2)
            fh.write("\n")
    return EXIT_OK


def _options(args):
    from .enumeration import EnumOptions

    return EnumOptions(threads=args.threads, max_states=args.max_states)


def cmd_enumerate(args, progress):
    from .enumeration import enumerate_curvatures

    cfg = _config(args)
    progress(f"enumerating {args.kind} {_seed_text(args)} up to {args.max}")
    p = enumerate_curvatures(cfg, args.max, _options(args))
    p.save(args.out)
    progress(f"{p.stats['states']} states, {p.stats['circles']} circles")
    print(f"N         {p.N}")
    print(f"distinct  {p.count}")
    print(f"states    {p.stats['states']}")
    print(f"written   {args.out}")
    return EXIT_OK


def cmd_sporadic(args, progress):
    from .enumeration import CurvaturePresence, enumerate_curvatures
    from .reporting import sporadic_figure, sporadic_report, write_csv, write_json

    cfg = _config(args)
    if args.presence:
        presence = CurvaturePresence.load(args.presence)
        if presence.N != args.max:
            raise UsageError(f"presence file has N = {presence.N}, not {args.max}")
    else:
        progress(f"enumerating {args.kind} {_seed_text(args)} up to {args.max}")
        presence = enumerate_curvatures(cfg, args.max, _options(args))
        progress(f"{presence.stats['states']} states")
    rep = sporadic_report(cfg, args.max, seed=args.seed, presence=presence)
    print(f"type      {rep.type}")
    print(f"chi2      {'n/a' if rep.chi2 is None else f'{rep.chi2:+d}'}")
    print(f"excluded  {rep.obstruction}")
    print(f"N         {rep.N}")
    print(f"sporadic  {rep.sporadic_count}")
    print(f"max       {rep.sporadic_max if rep.sporadic_max is not None else '-'}")
    if rep.sporadic_count <= 40:
        print(f"values    {' '.join(map(str, rep.sporadic))}")
    if args.json:
        write_json(rep, args.json)
    if args.csv:
        write_csv(rep, args.csv)
    if args.figure:
        sporadic_figure(rep, presence, args.figure)
    return EXIT_OK


def cmd_chi2(args, progress):
    from .configs import modular_type
    from .invariants import chi2_packing

    cfg = _config(args)
    chi = chi2_packing(cfg, samples=args.samples, rng=random.Random(args.rng_seed), max_depth=args.depth)
    print(f"type      {modular_type(cfg).label}")
    print(f"chi2      {chi}")
    for w in chi.witnesses:
        print(f"  circle {w.circle}: a = {w.a}, ({w.x},{w.y}) on {w.form or 'Q'} gives rho = {w.rho}")
    return EXIT_OK


def cmd_ford(args, progress):
    from .ford import check_ford, ford_circles

    for fc in ford_circles(args.kind, args.bound):
        c = fc.circle
        print(f"({fc.x:3d},{fc.y:3d}) {fc.form or '-':5s}  cocurv {c.cocurv}  curv {c.curv}  "
              f"h1 {c.h1}  h2 {c.h2}")
    if args.check:
        rep = check_ford(args.kind, args.bound)
        print(f"check     {'ok' if rep.ok else 'FAILED'} ({rep.checked} reflections)")
        if not rep.ok:
            return EXIT_VERIFY
    return EXIT_OK


def cmd_path(args, progress):
    from .enumeration import chain_between

    cfg = _config(args)
    ch = chain_between(cfg, args.src, args.dst, bound=args.verify_bound)
    print(" -> ".join(str(k) for k in ch.curvatures))
    print(f"length    {len(ch)}")
    return EXIT_OK


def cmd_verify(args, progress):
    from .verify import run_suite

    kw = {"progress": progress}
    rng = random.Random(args.rng_seed)
    s = args.suite
    if s == "ford":
        kw["bound"] = args.bound or 20
    elif s == "oracle":
        kw["N"] = args.bound or 2000
        kw["threads"] = args.threads
    elif s == "node":
        kw["rng"] = rng
        if args.verify_bound:
            kw["witnesses"] = args.verify_bound
    elif s == "edge":
        kw["rng"] = rng
        if args.verify_bound:
            kw["pairs"] = args.verify_bound
    elif s == "modular":
        kw["rng"] = rng
        if args.verify_bound:
            kw["moves"] = args.verify_bound
    elif s == "obstruction":
        kw["threads"] = args.threads
        if args.verify_bound:
            kw["N_cap"] = args.verify_bound
    res = run_suite(s, **kw)
    print(res.summary())
    for f in res.failures:
        print(f"  {f}")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump({"suite": s, "ok": res.ok, "checked": res.checked,
                       "failures": [repr(f) for f in res.failures]}, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if res.ok else EXIT_VERIFY


def cmd_render(args, progress):
    from .render import render_svg

    if args.max is None and args.depth is None:
        raise UsageError("render needs --max or --depth")
    cfg = _config(args)
    n = render_svg(cfg, args.out, bound=args.max, depth=args.depth, labels=args.labels,
                   colors=args.colors, size=args.size)
    print(f"circles   {n}")
    print(f"written   {args.out}")
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "enumerate": cmd_enumerate,
    "sporadic": cmd_sporadic,
    "chi2": cmd_chi2,
    "ford": cmd_ford,
    "path": cmd_path,
    "verify": cmd_verify,
    "render": cmd_render,
}


def run(argv=None) -> int:
    from .configs import ConfigError
    from .enumeration import MalformedPresence, ResourceLimit
    from .invariants import NotApplicable
    from .render import UnboundedRequest

    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_merge_values(argv))
    except UsageError as e:
        print(e, file=sys.stderr)
        return EXIT_INPUT
    except SystemExit as e:  # --help / --version
        return EXIT_OK if not e.code else EXIT_INPUT
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_INPUT
    progress = _Progress(args.quiet)
    try:
        return COMMANDS[args.command](args, progress)
    except ResourceLimit as e:
        print(f"circlepack: resource limit: {e}", file=sys.stderr)
        return EXIT_LIMIT
    except (UsageError, ConfigError, NotApplicable, UnboundedRequest, MalformedPresence,
            LookupError, ValueError, OSError) as e:
        print(f"circlepack: error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as e:
        print(f"circlepack: internal check failed: {e}", file=sys.stderr)
        return EXIT_VERIFY


def main() -> None:
    sys.exit(run())
