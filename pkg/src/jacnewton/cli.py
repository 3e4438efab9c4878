"""Command-line interface.

Every command reads a support (``--expr`` or ``--input``), computes one
invariant exactly and prints a versioned JSON envelope or plain text.
Exit status: 0 on success, 2 on bad input, 3 when an input asserted to be
Newton nondegenerate violates one of the inequalities such inputs satisfy.
"""

import argparse
import json
import sys
import time
from fractions import Fraction

from . import __version__
from .jacobian import aj, jacobian_polygon, lojasiewicz, property_report
from .kn import is_inf
from .newton import (
    DiagramError,
    NewtonDiagram,
    gamma_minus_region,
    milnor_number_kouchnirenko,
    newton_number_signed,
    newton_number_threshold,
    newton_number_unsigned,
)
from .parse import SCHEMA, InputError, parse_expression, read_input_file
from .render import render_svg
from .triangulate import (
    Triangulation,
    TriangulationError,
    aj_via_cap,
    bko_report,
    cap,
    cn,
    conjecture_reports,
    default_triangulation,
)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_VIOLATION = 3


class _Violation(Exception):
    pass


def _q(x):
    """Exact string for an extended rational."""
    if is_inf(x):
        return str(x)
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _polygon(A):
    out = {"polygon": str(A), "terms": A.to_records(), "degree": str(A.degree())}
    h, ell = A.height(), A.length()
    out["height"], out["length"] = _q(h), _q(ell)
    if not is_inf(h) and not is_inf(ell):
        out["virtual_vertices"] = [[_q(x), _q(y)] for x, y in A.virtual_vertices()]
    return out


def _alpha(text):
    try:
        a = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from None
    if a < 0:
        raise argparse.ArgumentTypeError("alpha must be nonnegative")
    return a


def _load_triangulation(diagram, path):
    if path is None:
        return default_triangulation(diagram)
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc.msg} (line {exc.lineno})") from None
    return Triangulation.from_json(diagram, data)


def _level(diagram, level):
    if level is None:
        return diagram.n
    if not 0 <= level <= diagram.n:
        raise InputError(f"--level must lie between 0 and {diagram.n}")
    return level


def _checked(diagram, spec, result):
    report = property_report(diagram)
    result["checks"] = report.to_json()
    if not report.ok and spec.nondegenerate:
        raise _Violation(result)
    return result


# -- commands ----------------------------------------------------------------


def cmd_diagram(diagram, spec, args):
    faces = []
    for f in diagram.faces:
        entry = f.to_json()
        entry["min_axial"] = _q(diagram.min_axial(f))
        faces.append(entry)
    out = {
        "dimension": diagram.dim,
        "convenient": diagram.is_convenient,
        "multiplicity": diagram.multiplicity,
        "faces": faces,
        "coordinate_facets": [f.to_json() for f in diagram.coordinate_facets],
    }
    if diagram.coordinate_facets:
        out["maximal_axial"] = _q(diagram.maximal_axial_diagram())
    return out


def cmd_aj(diagram, spec, args):
    d = _level(diagram, args.level)
    result = {"level": d, **_polygon(aj(diagram, d, method=args.method))}
    return _checked(diagram, spec, result)


def cmd_jac(diagram, spec, args):
    d = _level(diagram, args.level)
    result = {"level": d, **_polygon(jacobian_polygon(diagram, d))}
    return _checked(diagram, spec, result)


def cmd_loj(diagram, spec, args):
    return _checked(diagram, spec, lojasiewicz(diagram).to_json())


def cmd_nn(diagram, spec, args):
    faces = diagram.faces if args.alpha is None else diagram.s_alpha(args.alpha)
    region = gamma_minus_region(faces)
    if args.signed:
        value = newton_number_signed(region, diagram.n)
    else:
        value = newton_number_unsigned(region)
    out = {
        "flavor": "signed" if args.signed else "unsigned",
        "alpha": None if args.alpha is None else _q(args.alpha),
        "newton_number": _q(value),
        "pyramids": [
            {"coords": list(p.coords), "base": [list(v) for v in p.base], "volume": _q(p.normalized_volume())}
            for p in region.pyramids
        ],
    }
    if args.alpha is None and diagram.is_convenient:
        out["milnor_number"] = milnor_number_kouchnirenko(diagram)
    return out


def cmd_salpha(diagram, spec, args):
    faces = diagram.s_alpha(args.alpha)
    region = gamma_minus_region(faces)
    full = gamma_minus_region(diagram.faces)
    return {
        "alpha": _q(args.alpha),
        "faces": [f.to_json() for f in faces],
        "newton_number_unsigned": _q(newton_number_unsigned(region)),
        "newton_number_signed": _q(newton_number_signed(region, diagram.n)),
        "full_unsigned": _q(newton_number_unsigned(full)),
        "full_signed": _q(newton_number_signed(full, diagram.n)),
        "threshold_unsigned": _q(newton_number_threshold(diagram)),
        "threshold_signed": _q(newton_number_threshold(diagram, signed=True)),
    }


def cmd_tri(diagram, spec, args):
    T = _load_triangulation(diagram, args.file)
    cells = []
    for idx, S in enumerate(T.cells):
        entry = {"id": idx, "vertices": S.to_json(), "dim": S.dim, "cap": cap(S)}
        if S in T.coordinate:
            m, n = T.coordinate[S]
            entry.update(coordinate=True, m=m, n=n)
        else:
            entry["coordinate"] = False
        cells.append(entry)
    return {
        "source": "file" if args.file else "generated",
        "maximal": [S.to_json() for S in T.maximal],
        "cells": cells,
        "aj_via_cap": _polygon(aj_via_cap(T)),
    }


def cmd_cn(diagram, spec, args):
    T = _load_triangulation(diagram, args.triangulation)
    if args.cell is None:
        base = None
    else:
        if not 0 <= args.cell < len(T.cells):
            raise InputError(f"--cell must lie between 0 and {len(T.cells) - 1}; see the tri command")
        base = T.cells[args.cell]
    A = cn(T, base)
    return {
        "cell": None if base is None else base.to_json(),
        "cap": cap(base),
        **_polygon(A),
    }


def cmd_conjecture(diagram, spec, args):
    T = _load_triangulation(diagram, args.triangulation)
    return conjecture_reports(diagram, T).to_json()


def cmd_bko(diagram, spec, args):
    return bko_report(diagram).to_json()


def cmd_render(diagram, spec, args):
    d = _level(diagram, args.level)
    A = aj(diagram, d)
    if is_inf(A.height()) or is_inf(A.length()):
        raise InputError("the polygon has an infinite height or length")
    render_svg(A, args.out, title=f"AJ({d + 1}) = {A}")
    return {"level": d, "out": args.out, **_polygon(A)}


COMMANDS = {
    "diagram": (cmd_diagram, "faces, normals and maximal axial numbers"),
    "aj": (cmd_aj, "alternating Jacobian polygon"),
    "jac": (cmd_jac, "Jacobian polygon"),
    "loj": (cmd_loj, "Łojasiewicz exponent"),
    "nn": (cmd_nn, "Newton number of the diagram or of a subdiagram"),
    "salpha": (cmd_salpha, "subdiagram of faces with maximal axial number <= alpha"),
    "tri": (cmd_tri, "generate or validate a triangulation"),
    "cn": (cmd_cn, "relative combinatorial Newton polygon of a cell"),
    "conjecture": (cmd_conjecture, "evidence for the BKO conjecture and Conjecture A"),
    "bko": (cmd_bko, "BKO prediction against the computed exponent"),
    "render": (cmd_render, "draw the virtual vertices of AJ as SVG"),
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group(required=True)
    src.add_argument("--expr", help="polynomial expression, e.g. 'x^2 + y^3 + z^5'")
    src.add_argument("--input", metavar="FILE", help="JSON input file")
    common.add_argument("--variables", help="comma-separated variable order for --expr")
    common.add_argument("--format", choices=("json", "text"), default="json")
    common.add_argument("--require-coefficients", action="store_true", help=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(prog="jacnewton", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    subs = {}
    for name, (_, help_text) in COMMANDS.items():
        subs[name] = sub.add_parser(name, parents=[common], help=help_text, description=help_text)

    for name in ("aj", "jac", "render"):
        subs[name].add_argument("--level", type=int, help="section level d (default n)")
    subs["aj"].add_argument("--method", choices=("mixed", "volume"), default="mixed")
    flavor = subs["nn"].add_mutually_exclusive_group()
    flavor.add_argument("--signed", action="store_true")
    flavor.add_argument("--unsigned", action="store_true", help="(default)")
    subs["nn"].add_argument("--alpha", type=_alpha)
    subs["salpha"].add_argument("--alpha", type=_alpha, required=True)
    how = subs["tri"].add_mutually_exclusive_group()
    how.add_argument("--generate", action="store_true", help="placing triangulation (default)")
    how.add_argument("--file", help="triangulation JSON to validate")
    which = subs["cn"].add_mutually_exclusive_group()
    which.add_argument("--cell", type=int, help="cell id as listed by the tri command")
    which.add_argument("--empty", action="store_true", help="the empty cell (default)")
    subs["cn"].add_argument("--triangulation", metavar="FILE")
    subs["conjecture"].add_argument("--triangulation", metavar="FILE")
    subs["render"].add_argument("--out", required=True, metavar="FILE.svg")
    return parser


def _text(value, indent=0):
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
        return "\n".join(lines)
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, dict):
                lines.append(f"{pad}-")
                lines.append(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
        return "\n".join(lines)
    return pad + _scalar(value)


def _flat(v):
    if isinstance(v, dict):
        return False
    return all(not isinstance(x, (dict, list)) or (isinstance(x, list) and _flat(x)) for x in v)


def _scalar(v):
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_scalar(x)}" for k, x in v.items()) + "}"
    return str(v)


def _emit(envelope, fmt, out):
    if fmt == "json":
        out.write(json.dumps(envelope, indent=2, ensure_ascii=False) + "\n")
    else:
        out.write(f"{envelope['command']}: {envelope['status']}\n")
        if "error" in envelope:
            out.write(envelope["error"] + "\n")
        if "result" in envelope:
            out.write(_text(envelope["result"]) + "\n")


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    envelope = {"schema": SCHEMA, "version": __version__, "command": args.command}
    start = time.perf_counter_ns()
    code = EXIT_OK
    try:
        if args.require_coefficients:
            raise InputError(
                "--require-coefficients is not supported: coefficients are never "
                "used and Newton nondegeneracy is not checked"
            )
        if args.expr is not None:
            variables = args.variables.split(",") if args.variables else None
            spec = parse_expression(args.expr, [v.strip() for v in variables] if variables else None)
        else:
            if args.variables:
                raise InputError("--variables only applies to --expr")
            spec = read_input_file(args.input)
        envelope["input"] = spec.to_json()
        diagram = NewtonDiagram(spec.support)
        handler = COMMANDS[args.command][0]
        envelope["result"] = handler(diagram, spec, args)
        envelope["status"] = "ok"
    except _Violation as exc:
        envelope["result"] = exc.args[0]
        envelope["status"] = "property violation"
        code = EXIT_VIOLATION
    except (InputError, DiagramError, TriangulationError) as exc:
        envelope["status"] = "input error"
        envelope["error"] = str(exc)
        code = EXIT_INPUT
    except OSError as exc:
        envelope["status"] = "input error"
        envelope["error"] = str(exc)
        code = EXIT_INPUT
    envelope["elapsed_ms"] = (time.perf_counter_ns() - start) // 1_000_000
    _emit(envelope, args.format, out)
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
