"""Command-line front end.

Every presentation-consuming command reads a file argument or, when it is
omitted or ``-``, standard input, so commands chain in shell pipelines::

    fibercw cubic-example --r 3 | fibercw quotient --kill g1 | fibercw shape

Exit codes: 0 success, 1 user error, 2 internal defect.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .covers import (
    CoverDefect,
    cover_euler_check,
    kernel_presentation,
    orbifold_cover_invariants,
    parse_cyclic_hom,
)
from .fibration import cubic_pencil_spec, mapping_torus_presentation, parse_fibration_spec
from .homology import homology_profile
from .homotopy_type import profile_for_shape, wedge_type
from .presentation import (
    DEFAULT_BUDGET,
    Presentation,
    euler_characteristic,
    format_presentation,
    parse_presentation,
    parse_shape,
    presentation_to_json,
    quotient_by,
    recognize_shape,
    simplify,
)
from .words import ParseError


@dataclass
class CommandResult:
    exit_code: int
    output: str = ""
    error: str = ""


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _dump(data) -> str:
    return json.dumps(data, separators=(",", ":")) + "\n"


def _lines(pairs) -> str:
    return "".join(f"{k}: {v}\n" for k, v in pairs)


class _Inputs:
    def __init__(self, stdin: str | None):
        self._stdin = stdin

    def read(self, path: str | None) -> tuple[str, str]:
        if path in (None, "-"):
            if self._stdin is None:
                self._stdin = sys.stdin.read()
            return "<stdin>", self._stdin
        try:
            with open(path) as fh:
                return path, fh.read()
        except OSError as exc:
            raise UsageError(f"{path}: {exc.strerror}") from None


def _load(inputs: _Inputs, path: str | None, parse):
    name, text = inputs.read(path)
    try:
        return parse(text)
    except ParseError as exc:
        raise ParseError(f"{name}: {exc}") from None


def _emit_presentation(p: Presentation, as_json: bool, extra: dict | None = None) -> str:
    if as_json:
        data = presentation_to_json(p)
        if p.comments:
            data["comments"] = list(p.comments)
        data.update(extra or {})
        return _dump(data)
    return format_presentation(p)


def _cmd_homology(args, inputs):
    prof = homology_profile(_load(inputs, args.file, parse_presentation))
    if args.json:
        return _dump(prof.to_json())
    torsion = " ".join(map(str, prof.torsion_h1)) or "none"
    return _lines([("betti", " ".join(map(str, prof.betti))), ("torsion_h1", torsion), ("euler", prof.euler)])


def _cmd_euler(args, inputs):
    chi = euler_characteristic(_load(inputs, args.file, parse_presentation))
    return _dump({"euler": chi}) if args.json else f"{chi}\n"


def _cmd_simplify(args, inputs):
    p = _load(inputs, args.file, parse_presentation)
    q, log = simplify(p, args.budget)
    if args.json:
        return _emit_presentation(q, True, {"moves": log.moves, "exhausted": log.exhausted})
    notes = [f"move: {m}" for m in log.moves] if args.log else []
    if log.exhausted:
        notes.append("warning: move budget exhausted; result is only partially simplified")
    return _emit_presentation(q.with_comments(*notes), False)


def _cmd_quotient(args, inputs):
    p = _load(inputs, args.file, parse_presentation)
    return _emit_presentation(quotient_by(p, args.kill), args.json)


def _cmd_shape(args, inputs):
    shape = recognize_shape(_load(inputs, args.file, parse_presentation), args.budget)
    return _dump(shape.to_json()) if args.json else f"{shape}\n"


def _cmd_mapping_torus(args, inputs):
    spec = _load(inputs, args.file, parse_fibration_spec)
    return _emit_presentation(mapping_torus_presentation(spec), args.json)


def _cmd_cubic(args, inputs):
    return _emit_presentation(mapping_torus_presentation(cubic_pencil_spec(args.r)), args.json)


def _cmd_rs(args, inputs):
    p = _load(inputs, args.file, parse_presentation)
    h = _load(inputs, args.hom, parse_cyclic_hom)
    return _emit_presentation(kernel_presentation(p, h), args.json)


def _cmd_cover_chi(args, inputs):
    p = _load(inputs, args.file, parse_presentation)
    h = _load(inputs, args.hom, parse_cyclic_hom)
    base, cover = cover_euler_check(p, h)
    data = {"index": h.modulus, "chi_base": base, "chi_cover": cover}
    return _dump(data) if args.json else _lines(data.items())


def _cmd_wedge_type(args, inputs):
    w = wedge_type(parse_shape(args.group), args.chi_curve)
    if args.json:
        return _dump(w.to_json())
    pp = "none" if w.pseudo_plane_order is None else w.pseudo_plane_order
    return _lines([("circles", w.circles), ("pseudo_plane", pp), ("spheres", w.spheres),
                   ("type", w.describe())])


def _cmd_homotopy_groups(args, inputs):
    cover = profile_for_shape(parse_shape(args.group), args.chi_curve)
    return _dump(cover.to_json()) if args.json else _lines(cover.to_json().items())


def _cmd_orbifold(args, inputs):
    cover = orbifold_cover_invariants(args.r, args.p, args.q, args.chi)
    return _dump(cover.to_json()) if args.json else _lines(cover.to_json().items())


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fibercw", description=__doc__.split("\n")[0])
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, func, help, file=True):
        sp = sub.add_parser(name, help=help, parents=[common])
        if file:
            sp.add_argument("file", nargs="?", help="input file (default: stdin)")
        sp.set_defaults(func=func)
        return sp

    command("homology", _cmd_homology, "integral homology of the presentation complex")
    command("euler", _cmd_euler, "Euler characteristic 1 - #gens + #rels")
    sp = command("simplify", _cmd_simplify, "Euler-characteristic-preserving Tietze simplification")
    sp.add_argument("--log", action="store_true", help="list applied moves as comments")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = command("quotient", _cmd_quotient, "quotient by the normal closure of a generator")
    sp.add_argument("--kill", required=True, metavar="GEN")
    sp = command("shape", _cmd_shape, "recognize free groups and free products of cyclics")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    command("mapping-torus", _cmd_mapping_torus, "presentation of a fibration spec")
    sp = command("cubic-example", _cmd_cubic, "cubic pencil presentation", file=False)
    sp.add_argument("--r", type=int, required=True)
    for name, func, help in [
        ("rs", _cmd_rs, "Reidemeister-Schreier kernel presentation"),
        ("cover-chi", _cmd_cover_chi, "Euler characteristic of the cyclic cover"),
    ]:
        sp = command(name, func, help)
        sp.add_argument("--hom", required=True, metavar="HOMFILE")
    for name, func, help in [
        ("wedge-type", _cmd_wedge_type, "homotopy type for free or cyclic groups"),
        ("homotopy-groups", _cmd_homotopy_groups, "cover data for F_r * Z_p * Z_q"),
    ]:
        sp = command(name, func, help, file=False)
        sp.add_argument("--group", required=True, help="free:<r>, cyclic:<d> or fpc:<r>:<p>,<q>")
        sp.add_argument("--chi-curve", type=int, required=True)
    sp = command("orbifold", _cmd_orbifold, "invariants of the pq-fold free cover", file=False)
    for flag in ("--r", "--p", "--q", "--chi"):
        sp.add_argument(flag, type=int, required=True)
    return parser


def run(argv: list[str], stdin: str | None = None) -> CommandResult:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult(1, error=f"usage error: {exc}\n")
    except SystemExit as exc:  # --help
        return CommandResult(int(exc.code or 0))
    try:
        return CommandResult(0, args.func(args, _Inputs(stdin)))
    except (CoverDefect, AssertionError) as exc:
        return CommandResult(2, error=f"internal defect: {exc}\n")
    except (UsageError, ValueError) as exc:
        return CommandResult(1, error=f"error: {exc}\n")
    except Exception as exc:  # noqa: BLE001
        return CommandResult(2, error=f"internal defect: {type(exc).__name__}: {exc}\n")


def main(argv: list[str] | None = None) -> int:
    result = run(sys.argv[1:] if argv is None else argv)
    sys.stdout.write(result.output)
    sys.stderr.write(result.error)
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
