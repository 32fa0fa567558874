"""Command line interface.

    pd3 verify [--check ID]... [--all] [--max-length L]
               [--format text|json] [--out PATH] [--no-timing] [--jobs N]
    pd3 normalize --group s3|pi|z2|z3|pi_prime|free WORD
    pd3 fox --presentation FILE [--format text|json]
    pd3 homology --complex x|y|z|x-universal|y-double|z-double
    pd3 snf FILE [--out PATH]
    pd3 bar --group z2|z3|s3 --degree N

Exit codes: 0 = no FAIL, 1 = at least one FAIL, 2 = usage or input error.
All state comes from flags and the shipped catalog; no environment is read.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .errors import Pd3Error
from .groups import context, normalize
from .words import parse_word
from .complexes import format_gmatrix, push_to_integers, restrict_complex
from .homology import bar_homology, flatten_complex, homology
from .intlin import smith_normal_form
from . import checks as checks_mod
from . import corpus as corpus_mod


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pd3",
        description="Exact verification of the self-dual complexes over "
                    "Z[S3] and Z[S3 *_{Z/2} S3].")
    parser.add_argument("--version", action="version", version=f"pd3 {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run the named verification checks")
    p_verify.add_argument("--check", action="append", default=[],
                          help="check id or glob (repeatable), e.g. X2 or 'Y*'")
    p_verify.add_argument("--all", action="store_true",
                          help="run every check (default when --check is absent)")
    p_verify.add_argument("--max-length", type=int, default=5, metavar="L",
                          help="ball radius for the bounded certificates (default 5)")
    p_verify.add_argument("--format", choices=("text", "json"), default="text")
    p_verify.add_argument("--out", metavar="PATH", help="write the report here")
    p_verify.add_argument("--no-timing", action="store_true",
                          help="omit wall times (byte-stable output)")
    p_verify.add_argument("--jobs", type=int, default=1,
                          help="run checks concurrently (results stay ordered)")

    p_norm = sub.add_parser("normalize", help="normal form of a word")
    p_norm.add_argument("--group", required=True)
    p_norm.add_argument("word")

    p_fox = sub.add_parser("fox", help="differentials of a shipped presentation")
    p_fox.add_argument("--presentation", required=True, metavar="FILE",
                       help="JSON file with 'generators' and 'relators'")
    p_fox.add_argument("--format", choices=("text", "json"), default="text")

    p_hom = sub.add_parser("homology", help="homology of a named complex")
    p_hom.add_argument("--complex", required=True, dest="which",
                       choices=("x", "y", "z", "x-universal", "y-double", "z-double"))

    p_snf = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    p_snf.add_argument("file", metavar="FILE",
                       help="JSON file with a 'rows' field (list of integer lists)")
    p_snf.add_argument("--out", metavar="PATH",
                       help="write the full decomposition (U, D, V) as JSON")

    p_bar = sub.add_parser("bar", help="group homology from the bar resolution")
    p_bar.add_argument("--group", required=True, choices=("z2", "z3", "s3"))
    p_bar.add_argument("--degree", required=True, type=int)
    return parser


def cmd_verify(args) -> int:
    patterns = args.check if args.check and not args.all else None
    report = checks_mod.run_suite(patterns, max_length=args.max_length,
                                  jobs=max(1, args.jobs))
    include_timing = not args.no_timing
    text = (report.to_json(include_timing) if args.format == "json"
            else report.to_text(include_timing))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return report.exit_code


def cmd_normalize(args) -> int:
    ctx = context(args.group)
    print(normalize(ctx, parse_word(args.word)))
    return 0


def cmd_fox(args) -> int:
    with open(args.presentation) as fh:
        data = json.load(fh)
    cat = corpus_mod.default_catalog()
    match = None
    for name in ("s3", "pi", "z2", "z3", "pi_prime"):
        shipped = cat.get(f"presentations:{name}")
        if (list(data.get("generators", [])) == shipped["generators"]
                and list(data.get("relators", [])) == shipped["relators"]):
            match = name
            break
    if match is None:
        print("pd3 fox: the presentation must structurally equal a shipped one "
              "(s3, pi, z2, z3, pi_prime); general completion is out of scope",
              file=sys.stderr)
        return 2
    cx = corpus_mod.presentation_complex(cat, match)
    payload = {"group": match,
               "d1": format_gmatrix(cx.diffs[1]),
               "d2": format_gmatrix(cx.diffs[2])}
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(f"group: {match}")
        for key in ("d1", "d2"):
            print(f"{key}:")
            for row in payload[key]:
                print("  [" + ", ".join(row) + "]")
    return 0


def cmd_homology(args) -> int:
    cat = corpus_mod.default_catalog()
    which = args.which
    if which == "x-universal":
        cx = flatten_complex(corpus_mod.standard_complex(cat, "x"))
    elif which in ("y-double", "z-double"):
        cx = push_to_integers(restrict_complex(
            corpus_mod.standard_complex(cat, which[0])))
    else:
        cx = push_to_integers(corpus_mod.standard_complex(cat, which))
    for degree, desc in enumerate(homology(cx)):
        print(f"H_{degree} = {desc}")
    return 0


def cmd_snf(args) -> int:
    with open(args.file) as fh:
        data = json.load(fh)
    rows = data["rows"]
    if not rows or not all(isinstance(x, int) for row in rows for x in row):
        print("pd3 snf: 'rows' must be a nonempty list of integer lists",
              file=sys.stderr)
        return 2
    snf = smith_normal_form(rows)
    if not snf.verify(rows):
        raise Pd3Error("internal error: decomposition failed verification")
    print("diagonal:", snf.diagonal())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump({"D": snf.D, "U": snf.U, "V": snf.V}, fh, indent=2)
        print(f"decomposition written to {args.out}")
    return 0


def cmd_bar(args) -> int:
    ctx = context(args.group)
    print(f"H_{args.degree}({args.group}) = {bar_homology(ctx, args.degree)}")
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "normalize": cmd_normalize,
    "fox": cmd_fox,
    "homology": cmd_homology,
    "snf": cmd_snf,
    "bar": cmd_bar,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except FileNotFoundError as exc:
        print(f"pd3: {exc}", file=sys.stderr)
        return 2
    except (Pd3Error, ValueError, KeyError) as exc:
        print(f"pd3: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
