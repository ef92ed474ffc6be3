"""Graphviz DOT text for paths and dual graphs.  Rendering to SVG is left
to an external ``dot`` binary when one is installed."""

from __future__ import annotations

import shutil
import subprocess

from .paths import DecoratedPath, cf_blocks
from .ribbon import Cut, SimplificationTrace, dual_graph_certificate


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def path_dot(path: DecoratedPath, name: str = "farey_path") -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];"]
    verts = path.vertices
    blocks = cf_blocks(path).blocks if path.jumps else ()
    signs = path.jump_signs() if path.signs is not None else (None,) * path.jumps
    for i, v in enumerate(verts):
        lines.append(f"  v{i} [label={_q(v)}];")
    for k, (a, b) in enumerate(blocks):
        lines.append(f"  subgraph cluster_block{k} {{")
        lines.append(f"    label={_q(f'block {k}')}; style=dashed;")
        # a node may sit in one cluster only: each block owns its jumps' tails
        lines.append("    " + " ".join(f"v{i};" for i in range(a, b)))
        lines.append("  }")
    for j in range(path.jumps):
        k = next(n for n, (a, b) in enumerate(blocks) if a <= j < b)
        s = signs[j]
        label = "" if s is None else s
        attrs = [f"label={_q(label)}", f"block={k}"]
        if s is None and path.signs is not None:
            attrs.append("style=dotted")
        lines.append(f"  v{j} -> v{j + 1} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dual_graph_dot(trace: SimplificationTrace, name: str = "dual_graph") -> str:
    cert = dual_graph_certificate(trace)
    lines = [f"graph {name} {{", "  node [shape=box];"]
    for v in cert.vertices:
        label = "piece 0 (main)" if v == 0 else f"piece {v}"
        lines.append(f"  p{v} [label={_q(label)}];")
    cut_ids = {(m.from_piece, m.new_piece): m for m in trace.moves if isinstance(m, Cut)}
    for a, b in cert.edges:
        m = cut_ids[(a, b)]
        lines.append(f"  p{a} -- p{b} [label={_q(f'c{m.cut_id} (beta {m.singularity})')}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_svg(dot_text: str) -> str | None:
    """SVG from an installed Graphviz, or None when ``dot`` is absent."""
    exe = shutil.which("dot")
    if exe is None:
        return None
    done = subprocess.run([exe, "-Tsvg"], input=dot_text, capture_output=True, text=True, check=True)
    return done.stdout
