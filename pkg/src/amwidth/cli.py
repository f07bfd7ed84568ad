"""Command-line interface.

Subcommands: info, validate, width, nice, convert, tutte, mso, glue.
Output is canonical JSON on stdout (``--pretty`` adds a human rendering
on top); identical inputs produce byte-identical output.  Exit codes:
0 success, 1 domain or validation error, 2 resource bound exceeded,
3 usage error.  The only recognized environment variable is
AMALGAM_MAX_ELEMENTS, which overrides the rank-table cap.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import files
from .branch import branch_width_of, from_branch_decomposition
from .errors import DomainError, ResourceError
from .mso import formulas as mso_formulas
from .mso.compiled import compiled_state_counts, eval_decomposition
from .mso.naive import eval_naive
from .mso.parser import parse as parse_formula
from .tutte import tutte_bruteforce, tutte_decomposition


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _Usage(message)


def _emit(obj, pretty_lines=None, pretty=False):
    sys.stdout.write(files.dumps(obj))
    if pretty and pretty_lines:
        for line in pretty_lines:
            sys.stdout.write(f"# {line}\n")


def _cmd_info(args):
    m = files.load_matroid(args.matroid)
    out = {
        "elements": sorted(m.elements),
        "size": m.size,
        "rank": m.rank() if m.size else 0,
        "loops": sorted(m.loops()),
        "coloops": sorted(m.coloops()),
    }
    try:
        out["circuits"] = sorted(sorted(c) for c in m.circuits())
    except ResourceError:
        out["circuits"] = None
    flats = {}
    for mask in m.flat_masks():
        flats[int(m.rank_mask(int(mask)))] = flats.get(int(m.rank_mask(int(mask))), 0) + 1
    out["flats_by_rank"] = {str(k): v for k, v in sorted(flats.items())}
    _emit(out, [f"rank {out['rank']}, {out['size']} elements"], args.pretty)
    return 0


def _cmd_validate(args):
    tree = files.load_decomposition(args.decomposition)
    report = tree.validate()
    out = {
        "valid": report.ok,
        "width": report.width,
        "violations": [
            {"node": v.node, "code": v.code, "message": v.message}
            for v in report.violations
        ],
    }
    _emit(out, [str(report)], args.pretty)
    return 0 if report.ok else 1


def _cmd_width(args):
    if args.decomposition:
        tree = files.load_decomposition(args.decomposition)
        out = {"width": tree.width()}
        _emit(out, [f"amalgam width {out['width']}"], args.pretty)
        return 0
    m = files.load_matroid(args.matroid)
    b = files.load_branch(args.branch)
    out = {"branch_width": branch_width_of(m, b)}
    _emit(out, [f"branch width {out['branch_width']}"], args.pretty)
    return 0


def _cmd_nice(args):
    tree = files.load_decomposition(args.decomposition)
    nice = tree.to_nice()
    obj = files.decomposition_to_obj(nice)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(files.dumps(obj))
        _emit({"written": args.output, "width": nice.width()}, None, False)
    else:
        _emit(obj)
    return 0


def _cmd_convert(args):
    m = files.load_matroid(args.matroid)
    b = files.load_branch(args.branch)
    tree = from_branch_decomposition(m, b)
    obj = files.decomposition_to_obj(tree)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(files.dumps(obj))
        _emit({"written": args.output, "width": tree.width()}, None, False)
    else:
        _emit(obj)
    return 0


def _poly_obj(poly):
    return {"coeffs": [[i, j, c] for i, j, c in poly.coeffs]}


def _cmd_tutte(args):
    want_brute = args.brute or not args.dp
    want_dp = args.dp or not args.brute
    tree = None
    matroid = None
    if args.decomposition:
        tree = files.load_decomposition(args.decomposition)
    if args.matroid:
        matroid = files.load_matroid(args.matroid)
    if tree is None and matroid is None:
        raise _Usage("tutte needs --matroid or --decomposition")
    results = {}
    tables = None
    if want_dp:
        if tree is None:
            raise _Usage("--dp needs a decomposition file")
        if args.dump_types:
            poly, tables = tutte_decomposition(tree, want_tables=True)
        else:
            poly = tutte_decomposition(tree)
        results["dp"] = poly
    if want_brute:
        m = matroid if matroid is not None else tree.realize()
        results["brute"] = tutte_bruteforce(m)
    if len(results) == 2 and results["dp"] != results["brute"]:
        _emit(
            {
                "error": "engines disagree",
                "dp": _poly_obj(results["dp"]),
                "brute": _poly_obj(results["brute"]),
            }
        )
        return 1
    poly = results.get("dp", results.get("brute"))
    out = _poly_obj(poly)
    out["text"] = str(poly)
    if args.eval:
        x, y = (Fraction(v) for v in args.eval)
        value = poly.evaluate(x, y)
        out["value"] = {
            "x": str(x),
            "y": str(y),
            "value": str(value),
        }
    if args.dump_types and tables is not None:
        dump = {}
        for nid, table in tables.items():
            rows = []
            for sig, cells in sorted(
                table.by_sig.items(), key=lambda kv: repr(kv[0])
            ):
                rows.append(
                    {
                        "boundary": list(sig.boundary),
                        "fmap": list(sig.base.fmap),
                        "trace": sig.trace,
                        "offsets": list(sig.offsets),
                        "counts": {f"{r},{s}": c for (r, s), c in sorted(cells.items())},
                    }
                )
            dump[nid] = rows
        with open(args.dump_types, "w") as fh:
            fh.write(files.dumps(dump))
    _emit(out, [str(poly)], args.pretty)
    return 0


def _read_formula(spec):
    if os.path.exists(spec):
        with open(spec) as fh:
            return parse_formula(fh.read())
    return parse_formula(spec)


def _read_assignment(spec):
    if not spec:
        return {}
    if os.path.exists(spec):
        with open(spec) as fh:
            raw = json.load(fh)
    else:
        raw = json.loads(spec)
    if not isinstance(raw, dict):
        raise DomainError("assignment must be a JSON object")
    return raw


def _cmd_mso(args):
    formula = _read_formula(args.formula)
    assignment = _read_assignment(args.assign)
    results = {}
    tree = None
    if args.decomposition:
        tree = files.load_decomposition(args.decomposition)
    if args.engine in ("naive", "both"):
        if args.matroid:
            m = files.load_matroid(args.matroid)
        elif tree is not None:
            m = tree.realize()
        else:
            raise _Usage("mso needs --matroid or --decomposition")
        results["naive"] = eval_naive(m, formula, assignment)
    if args.engine in ("dp", "both"):
        if tree is None:
            raise _Usage("--engine dp needs a decomposition file")
        results["dp"] = eval_decomposition(tree, formula, assignment)
        if args.dump_states:
            counts = compiled_state_counts(tree, formula, assignment)
            with open(args.dump_states, "w") as fh:
                fh.write(files.dumps(counts))
    if len(results) == 2 and results["naive"] != results["dp"]:
        _emit({"error": "engines disagree", "naive": results["naive"], "dp": results["dp"]})
        return 1
    verdict = next(iter(results.values()))
    out = {
        "result": "ACCEPT" if verdict else "REJECT",
        "engines": sorted(results),
        "formula": mso_formulas.to_text(formula),
    }
    _emit(out, [out["result"]], args.pretty)
    return 0


def _cmd_glue(args):
    from .amalgam import glue

    m1 = files.load_matroid(args.m1)
    m2 = files.load_matroid(args.m2)
    k = files.load_matroid(args.k)
    deletions = [int(x) for x in args.delete.split(",") if x] if args.delete else []
    result = glue(m1, m2, k, deletions)
    obj = files.matroid_to_obj(result)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(files.dumps(obj))
        _emit({"written": args.output, "size": result.size, "rank": result.rank()})
    else:
        _emit(obj)
    return 0


def _build_parser():
    top = _Parser(prog="amwidth", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--pretty", action="store_true", help="add a human summary")

    p = sub.add_parser("info", help="rank, circuits and flats of a matroid file")
    p.add_argument("--matroid", "-m", required=True)
    common(p)
    p.set_defaults(fn=_cmd_info)

    p = sub.add_parser("validate", help="validate a decomposition file")
    p.add_argument("--decomposition", "-d", required=True)
    common(p)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("width", help="amalgam width of a decomposition or branch width")
    p.add_argument("--decomposition", "-d")
    p.add_argument("--branch", "-b")
    p.add_argument("--matroid", "-m")
    common(p)
    p.set_defaults(fn=_cmd_width)

    p = sub.add_parser("nice", help="emit the nice transform of a decomposition")
    p.add_argument("--decomposition", "-d", required=True)
    p.add_argument("--output", "-o")
    common(p)
    p.set_defaults(fn=_cmd_nice)

    p = sub.add_parser(
        "convert", help="branch decomposition + linear matroid -> amalgam decomposition"
    )
    p.add_argument("--matroid", "-m", required=True)
    p.add_argument("--branch", "-b", required=True)
    p.add_argument("--output", "-o")
    common(p)
    p.set_defaults(fn=_cmd_convert)

    p = sub.add_parser("tutte", help="Tutte polynomial, brute force and/or DP")
    p.add_argument("--matroid", "-m")
    p.add_argument("--decomposition", "-d")
    p.add_argument("--brute", action="store_true")
    p.add_argument("--dp", action="store_true")
    p.add_argument("--eval", nargs=2, metavar=("X", "Y"))
    p.add_argument("--dump-types", metavar="FILE")
    common(p)
    p.set_defaults(fn=_cmd_tutte)

    p = sub.add_parser("mso", help="evaluate an MSO formula")
    p.add_argument("--formula", "-f", required=True, help="formula text or file")
    p.add_argument("--matroid", "-m")
    p.add_argument("--decomposition", "-d")
    p.add_argument("--assign", "-a", help="JSON assignment (inline or file)")
    p.add_argument("--engine", choices=("naive", "dp", "both"), default="both")
    p.add_argument("--dump-states", metavar="FILE")
    common(p)
    p.set_defaults(fn=_cmd_mso)

    p = sub.add_parser("glue", help="apply the glueing operation to three matroids")
    p.add_argument("m1")
    p.add_argument("m2")
    p.add_argument("k")
    p.add_argument("--delete", help="comma separated ids to delete")
    p.add_argument("--output", "-o")
    common(p)
    p.set_defaults(fn=_cmd_glue)

    return top


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _Usage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 3
    try:
        if args.command == "width" and not (
            args.decomposition or (args.branch and args.matroid)
        ):
            raise _Usage("width needs -d FILE, or --branch FILE with -m FILE")
        return args.fn(args)
    except _Usage as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return 3
    except ResourceError as exc:
        sys.stderr.write(f"resource error: {exc}\n")
        return 2
    except (DomainError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
