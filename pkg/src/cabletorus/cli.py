"""``cabletorus`` command line.

Exit status: 0 on success, 1 on domain errors (diagnostic on stderr),
2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from typing import Optional, Sequence

from . import cables, paths, ribbon
from .errors import CabletorusError
from .farey import TorusBoundary, parse_slope
from .render import dual_graph_dot, path_dot, to_svg

# argparse would take "-2/5" or "-inf" for an option flag
_SLOPE = r"-?(\d+(/\d+)?|inf|infinity|∞)"
# a negative slope, or a comma list starting with one
_NEG_SLOPE = re.compile(rf"^-(\d+(/\d+)?|inf|infinity|∞)(,{_SLOPE})*$", re.IGNORECASE)

_COLORS = {
    "UniversallyTight": "32",
    "VirtuallyOvertwisted": "33",
    "Overtwisted": "31",
    "REFUTED": "31",
    "CONSISTENT": "32",
}


def _use_color(stream) -> bool:
    mode = os.environ.get("CABLETORUS_COLOR", "auto").lower()
    if mode == "always":
        return True
    if mode == "never":
        return False
    return hasattr(stream, "isatty") and stream.isatty()


def _paint(word: str, on: bool) -> str:
    code = _COLORS.get(word)
    return f"\x1b[{code}m{word}\x1b[0m" if on and code else word


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False, ensure_ascii=False) + "\n"


def _read_json(source: Optional[str], stdin) -> object:
    if source in (None, "-"):
        text = stdin.read()
    else:
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise CabletorusError(f"cannot read {source}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CabletorusError(f"invalid JSON input: {exc}") from None


def _slopes(a, *names) -> None:
    # parsed here, not by argparse, so a malformed slope is a domain error (exit 1)
    for name in names:
        setattr(a, name, parse_slope(getattr(a, name)))


def _csv(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _add_format(p: argparse.ArgumentParser, dot: bool = True) -> None:
    g = p.add_mutually_exclusive_group()
    g.add_argument("--json", dest="fmt", action="store_const", const="json", help="JSON output")
    if dot:
        g.add_argument("--dot", dest="fmt", action="store_const", const="dot", help="Graphviz DOT output")
    p.set_defaults(fmt="text")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cabletorus",
        description="Farey-path classification of tight solid tori, Legendrian cable "
        "calculus, and ribbon-disk simplification.",
    )
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    p = sub.add_parser("farey-path", help="minimal clockwise path between two slopes")
    p.add_argument("start")
    p.add_argument("end")
    _add_format(p)

    p = sub.add_parser("classify", help="classify a decorated path")
    p.add_argument("file", nargs="?", help="path JSON (default: stdin unless --vertices given)")
    p.add_argument("--vertices", type=_csv, help="comma-separated slopes")
    p.add_argument("--signs", type=_csv, default=None, help="comma-separated +/- signs")
    p.add_argument("--truncated", action="store_true", help="first jump undecorated")
    _add_format(p)

    p = sub.add_parser("count-torus", help="tight structures on a solid torus")
    p.add_argument("--meridian", default="inf")
    p.add_argument("--slope", required=True)
    p.add_argument("--curves", type=int, default=2, help="number of dividing curves")
    p.add_argument("--list", action="store_true", help="list every class")
    _add_format(p, dot=False)

    p = sub.add_parser("count-t2xi", help="tight minimally twisting structures on T^2 x I")
    p.add_argument("--s1", required=True)
    p.add_argument("--s2", required=True)
    p.add_argument("--curves", type=int, default=2, help="number of dividing curves on each boundary")
    p.add_argument("--list", action="store_true", help="list every class")
    _add_format(p, dot=False)

    p = sub.add_parser("thicken", help="universally tight thickening to an integer slope")
    p.add_argument("slope")
    _add_format(p)

    p = sub.add_parser("cable", help="framing calculus for one Legendrian cable")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--tb", type=int, required=True)
    p.add_argument("--tb-max", type=int, default=None, help="maximal tb of the companion")
    _add_format(p, dot=False)

    p = sub.add_parser("yasui", help="the ribbon knots K^m and their large cables")
    p.add_argument("-m", type=int, required=True)
    _add_format(p, dot=False)

    p = sub.add_parser("ut-test", help="uniform thickness test for a knot profile")
    p.add_argument("file", nargs="?", help="profile JSON (default: stdin)")
    _add_format(p, dot=False)

    p = sub.add_parser("ribbon-simplify", help="cut / slide a ribbon presentation")
    p.add_argument("file", nargs="?", help="presentation JSON (default: stdin)")
    _add_format(p)

    p = sub.add_parser("render", help="DOT (or SVG) for a path, presentation or trace JSON")
    p.add_argument("file", nargs="?", help="JSON input (default: stdin)")
    p.add_argument("--svg", action="store_true", help="SVG via Graphviz when installed")
    return parser


# -- commands ------------------------------------------------------------


def _cmd_farey_path(a, out, stdin, color):
    _slopes(a, "start", "end")
    path = paths.minimal_path(a.start, a.end)
    if a.fmt == "dot":
        return path_dot(path)
    blocks = paths.cf_blocks(path).blocks if path.jumps else ()
    if a.fmt == "json":
        obj = path.to_json()
        obj["jumps"] = path.jumps
        obj["blocks"] = [list(b) for b in blocks]
        return _dump(obj)
    lines = [str(path), f"jumps: {path.jumps}"]
    if blocks:
        lines.append("blocks: " + " ".join(f"[{x}..{y})" for x, y in blocks))
    return "\n".join(lines) + "\n"


def _path_from_args(a, stdin) -> paths.DecoratedPath:
    if a.vertices:
        if a.file:
            raise CabletorusError("give either a JSON file or --vertices, not both")
        signs = a.signs if a.signs is not None else []
        return paths.DecoratedPath(tuple(a.vertices), tuple(signs), a.truncated)
    return paths.DecoratedPath.from_json(_read_json(a.file, stdin))


def _cmd_classify(a, out, stdin, color):
    d = _path_from_args(a, stdin)
    if d.signs is None:
        raise CabletorusError("classification needs a decorated path (give 'signs')")
    c = paths.classify(d)
    strict = paths.is_tight_strict(d)
    if a.fmt == "dot":
        return path_dot(c.canonical_witness or d)
    obj = c.to_json()
    obj["input"] = d.to_json()
    obj["strict_universal_tight"] = strict
    obj["modes_agree"] = strict == c.tight
    if a.fmt == "json":
        return _dump(obj)
    lines = [f"path:    {d}", f"verdict: {_paint(c.verdict.value, color)}"]
    if c.canonical_witness is not None:
        lines.append(f"witness: {c.canonical_witness}")
    lines.append(f"strict reading tight: {'yes' if strict else 'no'}")
    if strict != c.tight:
        lines.append("note: existential and strict shortening semantics disagree on this path")
    return "\n".join(lines) + "\n"


def _count_out(a, classes, path, color):
    summary = paths.count_classes(classes)
    if a.fmt == "json":
        if a.list:
            summary["classes"] = [c.to_json() for c in classes]
        return _dump(summary)
    lines = [f"minimal path: {path}", f"count: {summary['count']}", f"universally tight: {summary['universally_tight']}"]
    if a.list:
        for c in classes:
            lines.append(f"  {c.canonical_witness}  {_paint(c.verdict.value, color)}")
    return "\n".join(lines) + "\n"


def _cmd_count_torus(a, out, stdin, color):
    _slopes(a, "meridian", "slope")
    g = TorusBoundary(a.slope, a.curves)
    classes = paths.enumerate_tight_solid_torus(a.meridian, g)
    return _count_out(a, classes, paths.minimal_path(a.meridian, a.slope), color)


def _cmd_count_t2xi(a, out, stdin, color):
    _slopes(a, "s1", "s2")
    classes = paths.enumerate_tight_T2xI(TorusBoundary(a.s1, a.curves), TorusBoundary(a.s2, a.curves))
    return _count_out(a, classes, paths.minimal_path(a.s1, a.s2), color)


def _cmd_thicken(a, out, stdin, color):
    _slopes(a, "slope")
    target, path = paths.universally_tight_thickening(a.slope)
    if a.fmt == "dot":
        return path_dot(path.decorate([paths.PLUS] * path.jumps))
    if a.fmt == "json":
        return _dump({"slope": str(a.slope), "target": str(target), "path": path.to_json()})
    return f"target: {target}\npath:   {path}\n"


def _cmd_cable(a, out, stdin, color):
    r = cables.CableRecord(a.p, a.q, a.tb)
    obj = {
        "p": r.p,
        "q": r.q,
        "tb": r.tb,
        "slope": str(r.slope),
        "pq": r.p * r.q,
        "tw": cables.tw_from_tb(r.tb, r.p, r.q),
        "trivial": r.trivial,
        "large": None if r.trivial else cables.is_large(r),
    }
    if a.tb_max is not None:
        rep = cables.llc_report(cables.KnotProfile(a.tb_max, (r,)))
        obj["llc_report"] = rep.to_json()
    if a.fmt == "json":
        return _dump(obj)
    lines = [
        f"cable ({r.p},{r.q})  slope {r.slope}  tb {r.tb}  pq {r.p * r.q}  tw {obj['tw']}",
        "large: " + ("n/a (trivial cable, |p| = 1)" if r.trivial else ("yes" if obj["large"] else "no")),
    ]
    if a.tb_max is not None:
        lines.extend(_report_lines(rep, color))
    return "\n".join(lines) + "\n"


def _report_lines(rep: cables.LLCReport, color) -> list[str]:
    if not rep.llc:
        return ["no Legendrian large witness"] + [f"note: {n}" for n in rep.notes]
    lines = ["Legendrian large cables: " + ", ".join(f"({w.p},{w.q})" for w in rep.witnesses)]
    if rep.width is not None:
        lines.append(f"width >= {rep.width.lower_bound}  (w > tb_max = {rep.tb_max})")
    lines.append(
        "verdict: not uniformly thick; virtually overtwisted solid torus that does not "
        "thicken to a standard neighborhood"
    )
    lines.extend(f"note: {n}" for n in rep.notes)
    return lines


def _cmd_yasui(a, out, stdin, color):
    k = cables.yasui_family(a.m)
    rep = cables.llc_report(k)
    ut = cables.uniform_thickness_test(k)
    if a.fmt == "json":
        return _dump(
            {
                "m": a.m,
                "n_range": [c.p for c in k.cables],
                "profile": k.to_json(),
                "llc_report": rep.to_json(),
                "uniform_thickness": ut.to_json(),
            }
        )
    lines = [f"K^{a.m}: tb_max = {k.tb_max}", "  n   cable      tb   pq   tw  large  slope"]
    for c in k.cables:
        tw = cables.tw_from_tb(c.tb, c.p, c.q)
        large = "yes" if cables.is_large(c) else "no"
        lines.append(
            f"  {c.p:<3} {f'({c.p},{c.q})':<9} {c.tb:>3} {c.p * c.q:>4} {tw:>4}  {large:<5}  {c.slope}"
        )
    lines.extend(_report_lines(rep, color))
    lines.append(f"uniform thickness: {_paint(ut.verdict, color)}")
    return "\n".join(lines) + "\n"


def _cmd_ut_test(a, out, stdin, color):
    k = cables.KnotProfile.from_json(_read_json(a.file, stdin))
    ut = cables.uniform_thickness_test(k)
    rep = cables.llc_report(k)
    if a.fmt == "json":
        return _dump({"uniform_thickness": ut.to_json(), "llc_report": rep.to_json()})
    lines = [f"uniform thickness: {_paint(ut.verdict, color)}"]
    if ut.witnesses:
        lines.append("violations of tb <= pq: " + ", ".join(f"({w.p},{w.q}) tb {w.tb}" for w in ut.witnesses))
    if ut.note:
        lines.append(f"note: {ut.note}")
    lines.extend(_report_lines(rep, color))
    return "\n".join(lines) + "\n"


def _cmd_ribbon(a, out, stdin, color):
    r = ribbon.RibbonPresentation.from_json(_read_json(a.file, stdin))
    trace = ribbon.simplify(r)
    cert = ribbon.dual_graph_certificate(trace)
    summary = ribbon.handlebody_summary(trace, r.framings)
    if a.fmt == "dot":
        return dual_graph_dot(trace)
    if a.fmt == "json":
        obj = trace.to_json()
        obj["peel_order"] = list(cert.peel_order)
        obj["handlebody"] = summary.to_json()
        return _dump(obj)
    lines = [f"singularities: {r.n}  cuts: {trace.cuts}  pieces: {trace.pieces}"]
    for m in trace.moves:
        if isinstance(m, ribbon.Cut):
            lines.append(f"  cut c{m.cut_id} beside beta{m.singularity}: alphas {list(m.alphas)} -> piece {m.new_piece}")
        else:
            lines.append(f"  slide beta{m.singularity} across its {m.side} side")
    lines.append(f"dual graph: tree, chi = {cert.euler_characteristic}, peel order {list(cert.peel_order)}")
    lines.append(f"handle pairs: {summary.handle_pairs}  framings: {list(summary.framings)}")
    for adj in summary.parity_adjustments:
        lines.append(
            f"  h{adj.handle}: requested {adj.requested} half twists; "
            f"{adj.half_twists_inserted:+d} half twist inserted in a disk of K_cut"
        )
    lines.append(summary.note)
    return "\n".join(lines) + "\n"


def _cmd_render(a, out, stdin, color):
    obj = _read_json(a.file, stdin)
    if not isinstance(obj, dict):
        raise CabletorusError("render expects a JSON object")
    if "vertices" in obj:
        dot = path_dot(paths.DecoratedPath.from_json(obj))
    elif "moves" in obj:
        dot = dual_graph_dot(ribbon.SimplificationTrace.from_json(obj))
    elif "chords" in obj:
        dot = dual_graph_dot(ribbon.simplify(ribbon.RibbonPresentation.from_json(obj)))
    else:
        raise CabletorusError("render input is not a path, presentation, or trace")
    if a.svg:
        svg = to_svg(dot)
        if svg is not None:
            return svg
        print("note: Graphviz 'dot' not found; emitting DOT text", file=a.stderr)
    return dot


_COMMANDS = {
    "farey-path": _cmd_farey_path,
    "classify": _cmd_classify,
    "count-torus": _cmd_count_torus,
    "count-t2xi": _cmd_count_t2xi,
    "thicken": _cmd_thicken,
    "cable": _cmd_cable,
    "yasui": _cmd_yasui,
    "ut-test": _cmd_ut_test,
    "ribbon-simplify": _cmd_ribbon,
    "render": _cmd_render,
}


def run(argv: Optional[Sequence[str]] = None, stdout=None, stderr=None, stdin=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    stdin = stdin or sys.stdin
    argv = list(sys.argv[1:] if argv is None else argv)
    argv = [" " + t if _NEG_SLOPE.match(t) else t for t in argv]
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.stderr = stderr
    try:
        text = _COMMANDS[args.command](args, stdout, stdin, _use_color(stdout))
    except CabletorusError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    stdout.write(text)
    return 0


def main() -> None:
    sys.exit(run())
