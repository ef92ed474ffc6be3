"""Combinatorial ribbon disks and the cut / disk-slide simplification.

A ribbon disk with n singularities is recorded as a non-crossing perfect
matching of 2n boundary marks (the properly embedded arcs, one per
singularity) plus, for each singularity, the face of the chord arrangement
holding its interior arc.  Singularity ids run 1..n; chord k of ``chords``
carries id k + 1.

Faces are numbered by walking the boundary from mark 0: boundary arc k is
the segment ending at mark k, arcs are visited for k = 0, 1, ..., 2n - 1,
and each face takes the next id ``f<j>`` the first time one of its arcs is
seen.  Leaving a boundary arc at mark k and following the chord there to
its partner m, the face continues along arc m + 1.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Optional, Union

from .errors import CabletorusError


class RibbonError(CabletorusError):
    pass


class CertificateError(RuntimeError):
    """A simplification trace is not a tree.  Always an implementation bug."""


@dataclass(frozen=True)
class RibbonPresentation:
    n: int
    chords: tuple
    alpha: Mapping[int, str]
    framings: Mapping[int, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "chords", tuple(tuple(c) for c in self.chords))
        object.__setattr__(self, "alpha", dict(self.alpha))
        object.__setattr__(self, "framings", dict(self.framings or {}))

    def framing(self, sid: int) -> int:
        return self.framings.get(sid, 0)

    def to_json(self) -> dict:
        out = {
            "n": self.n,
            "chords": [list(c) for c in self.chords],
            "alpha": {str(k): v for k, v in sorted(self.alpha.items())},
        }
        if self.framings:
            out["framings"] = {str(k): v for k, v in sorted(self.framings.items())}
        return out

    @classmethod
    def from_json(cls, obj) -> "RibbonPresentation":
        if not isinstance(obj, dict):
            raise RibbonError("presentation JSON must be an object")
        try:
            n = obj["n"]
            chords = obj["chords"]
            alpha = obj["alpha"]
        except KeyError as exc:
            raise RibbonError(f"presentation JSON is missing {exc.args[0]!r}") from None
        if not isinstance(n, int) or isinstance(n, bool):
            raise RibbonError("'n' must be an integer")
        if not isinstance(chords, list) or not all(
            isinstance(c, list) and len(c) == 2 and all(isinstance(x, int) for x in c)
            for c in chords
        ):
            raise RibbonError("'chords' must be a list of [mark, mark] integer pairs")
        if not isinstance(alpha, dict):
            raise RibbonError("'alpha' must map singularity ids to face ids")
        framings = obj.get("framings", {}) or {}
        if not isinstance(framings, dict) or not all(
            isinstance(v, int) and not isinstance(v, bool) for v in framings.values()
        ):
            raise RibbonError("'framings' must map singularity ids to integers")
        return cls(
            n,
            tuple(tuple(c) for c in chords),
            {_sid(k): v for k, v in alpha.items()},
            {_sid(k): v for k, v in framings.items()},
        )


def _sid(key) -> int:
    try:
        return int(key)
    except (TypeError, ValueError):
        raise RibbonError(f"singularity id {key!r} is not an integer") from None


def _norm(c) -> tuple:
    a, b = c
    return (a, b) if a < b else (b, a)


def _cross(c, d) -> bool:
    a, b = _norm(c)
    x, y = _norm(d)
    return a < x < b < y or x < a < y < b


def faces(chords, n: int) -> list[tuple]:
    """Faces of the chord arrangement in canonical order, each given as
    the sorted tuple of boundary arcs it contains."""
    m = 2 * n
    partner = {}
    for a, b in chords:
        partner[a], partner[b] = b, a
    seen = set()
    out = []
    for k in range(m):
        if k in seen:
            continue
        orbit = []
        j = k
        while j not in seen:
            seen.add(j)
            orbit.append(j)
            j = (partner[j] + 1) % m
        out.append(tuple(sorted(orbit)))
    return out


def validate(r: RibbonPresentation) -> list[str]:
    """Every violated invariant, one diagnostic each; empty means valid."""
    out = []
    if not isinstance(r.n, int) or r.n < 1:
        return [f"n must be a positive integer, got {r.n!r}"]
    m = 2 * r.n
    if len(r.chords) != r.n:
        out.append(f"expected {r.n} chords, got {len(r.chords)}")
    used = {}
    marks_ok = True
    for k, c in enumerate(r.chords, start=1):
        if len(c) != 2 or c[0] == c[1]:
            out.append(f"chord {k} {list(c)} must join two distinct marks")
            marks_ok = False
            continue
        for x in c:
            if not 0 <= x < m:
                out.append(f"chord {k} uses mark {x} outside 0..{m - 1}")
                marks_ok = False
            elif x in used:
                out.append(f"mark {x} is used by chords {used[x]} and {k}")
                marks_ok = False
            else:
                used[x] = k
    if marks_ok and len(used) != m:
        missing = sorted(set(range(m)) - set(used))
        out.append(f"marks {missing} are not matched")
        marks_ok = False
    for i in range(len(r.chords)):
        for j in range(i + 1, len(r.chords)):
            ci, cj = r.chords[i], r.chords[j]
            if len(ci) == 2 and len(cj) == 2 and _cross(ci, cj):
                out.append(f"chords {i + 1} {list(ci)} and {j + 1} {list(cj)} cross")
                marks_ok = False
    ids = set(range(1, r.n + 1))
    for sid in sorted(ids - set(r.alpha)):
        out.append(f"singularity {sid} has no interior arc (alpha) placement")
    for sid in sorted(set(r.alpha) - ids):
        out.append(f"alpha {sid} refers to no singularity (ids are 1..{r.n})")
    for sid in sorted(set(r.framings) - ids):
        out.append(f"framing {sid} refers to no singularity (ids are 1..{r.n})")
    if marks_ok:
        nf = len(faces(r.chords, r.n))
        for sid, f in sorted(r.alpha.items()):
            if _face_index(f, nf) is None:
                out.append(f"alpha {sid} references missing face {f!r} (faces are f0..f{nf - 1})")
    return out


def _face_index(f, nf: int) -> Optional[int]:
    if isinstance(f, str) and f.startswith("f") and f[1:].isdigit():
        k = int(f[1:])
        if 0 <= k < nf:
            return k
    return None


def _require_valid(r: RibbonPresentation) -> None:
    problems = validate(r)
    if problems:
        raise RibbonError("invalid ribbon presentation: " + "; ".join(problems))


def _inside(chord, arc: int) -> bool:
    a, b = chord
    return a < arc <= b


def outermost_chords(r: RibbonPresentation) -> list[tuple]:
    """Chords whose inner side (the marks strictly between its ends) holds
    no other chord, with the face ids on that side.  Ascending smallest mark."""
    _require_valid(r)
    fs = faces(r.chords, r.n)
    chords = [_norm(c) for c in r.chords]
    out = []
    for k, c in sorted(enumerate(chords, start=1), key=lambda t: t[1][0]):
        if any(d != c and c[0] < d[0] < c[1] for d in chords):
            continue
        side = tuple(f"f{j}" for j, arcs in enumerate(fs) if _inside(c, arcs[0]))
        out.append((k, c, side))
    return out


# -- simplification ------------------------------------------------------


@dataclass(frozen=True)
class Cut:
    cut_id: int
    singularity: int
    from_piece: int
    new_piece: int
    alphas: tuple

    def to_json(self) -> dict:
        return {
            "move": "cut",
            "cut_id": self.cut_id,
            "singularity": self.singularity,
            "from_piece": self.from_piece,
            "new_piece": self.new_piece,
            "alphas": list(self.alphas),
        }


@dataclass(frozen=True)
class Slide:
    singularity: int
    piece: int
    side: str

    def to_json(self) -> dict:
        return {"move": "slide", "singularity": self.singularity, "piece": self.piece, "side": self.side}


Move = Union[Cut, Slide]


@dataclass(frozen=True)
class SimplificationTrace:
    n: int
    moves: tuple

    @property
    def cuts(self) -> int:
        return sum(isinstance(m, Cut) for m in self.moves)

    @property
    def pieces(self) -> int:
        return self.cuts + 1

    @property
    def dual_edges(self) -> tuple:
        return tuple((m.from_piece, m.new_piece) for m in self.moves if isinstance(m, Cut))

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "cuts": self.cuts,
            "pieces": self.pieces,
            "moves": [m.to_json() for m in self.moves],
            "dual_graph": {
                "vertices": list(range(self.pieces)),
                "edges": [list(e) for e in self.dual_edges],
            },
        }

    @classmethod
    def from_json(cls, obj) -> "SimplificationTrace":
        moves = []
        try:
            for m in obj["moves"]:
                if m["move"] == "cut":
                    moves.append(Cut(m["cut_id"], m["singularity"], m["from_piece"], m["new_piece"], tuple(m["alphas"])))
                elif m["move"] == "slide":
                    moves.append(Slide(m["singularity"], m["piece"], m["side"]))
                else:
                    raise RibbonError(f"unknown move {m['move']!r}")
            return cls(obj["n"], tuple(moves))
        except (KeyError, TypeError) as exc:
            raise RibbonError(f"malformed trace JSON: {exc}") from None


class _State:
    """Chords still present (all on piece 0) and where each surviving
    interior arc lives."""

    def __init__(self, r: RibbonPresentation):
        fs = faces(r.chords, r.n)
        self.chords = {k: _norm(c) for k, c in enumerate(r.chords, start=1)}
        # representative boundary arc of each alpha's face
        self.alpha_arc = {sid: fs[_face_index(f, len(fs))][0] for sid, f in r.alpha.items()}
        self.alpha_piece = {sid: 0 for sid in r.alpha}

    def order(self) -> list[int]:
        return sorted(self.chords, key=lambda k: self.chords[k][0])

    def inner_clear(self, k: int) -> bool:
        a, b = self.chords[k]
        return not any(a < c[0] < b for j, c in self.chords.items() if j != k)

    def outer_clear(self, k: int) -> bool:
        a, b = self.chords[k]
        return all(a < c[0] < b for j, c in self.chords.items() if j != k)

    def alphas_on(self, k: int, inner: bool) -> list[int]:
        c = self.chords[k]
        return sorted(
            sid
            for sid, arc in self.alpha_arc.items()
            if self.alpha_piece[sid] == 0 and _inside(c, arc) == inner
        )

    def free_side(self, k: int) -> Optional[str]:
        if self.inner_clear(k) and not self.alphas_on(k, True):
            return "inner"
        if self.outer_clear(k) and not self.alphas_on(k, False):
            return "outer"
        return None

    def remove(self, k: int) -> None:
        del self.chords[k]
        del self.alpha_arc[k]
        del self.alpha_piece[k]


def simplify(r: RibbonPresentation) -> SimplificationTrace:
    """Remove every singularity by disk slides, cutting only when no slide
    is available.

    Slides across a chord-free, alpha-free side are exhausted first (in
    ascending smallest-mark order).  Otherwise the first chord with a
    chord-free inner side is cut off: the interior arcs on that side move to
    a new piece, and the chord then slides.
    """
    _require_valid(r)
    st = _State(r)
    moves = []
    pieces = 1
    while st.chords:
        progressed = True
        while progressed and st.chords:
            progressed = False
            for k in st.order():
                side = st.free_side(k)
                if side is not None:
                    moves.append(Slide(k, 0, side))
                    st.remove(k)
                    progressed = True
                    break
        if not st.chords:
            break
        k = next(j for j in st.order() if st.inner_clear(j))
        moved = tuple(st.alphas_on(k, True))
        for sid in moved:
            st.alpha_piece[sid] = pieces
        moves.append(Cut(pieces, k, 0, pieces, moved))
        pieces += 1
        moves.append(Slide(k, 0, "inner"))
        st.remove(k)
    return SimplificationTrace(r.n, tuple(moves))


# -- certificates --------------------------------------------------------


@dataclass(frozen=True)
class TreeCertificate:
    vertices: tuple
    edges: tuple
    peel_order: tuple

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges)


def dual_graph_certificate(t: SimplificationTrace) -> TreeCertificate:
    """Check the pieces-and-cuts graph is a tree and return the order in
    which univalent vertices peel off (the main piece last)."""
    slid = [m.singularity for m in t.moves if isinstance(m, Slide)]
    if sorted(slid) != list(range(1, t.n + 1)):
        raise CertificateError(f"singularities slid {sorted(slid)} != 1..{t.n}")
    verts = tuple(range(t.pieces))
    edges = t.dual_edges
    if len(verts) != len(edges) + 1:
        raise CertificateError(f"{len(verts)} pieces but {len(edges)} cuts")
    adj = {v: set() for v in verts}
    for a, b in edges:
        if a not in adj or b not in adj or a == b or b in adj[a]:
            raise CertificateError(f"bad dual edge {(a, b)}")
        adj[a].add(b)
        adj[b].add(a)
    seen = {0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v] - seen:
            seen.add(w)
            queue.append(w)
    if len(seen) != len(verts):
        raise CertificateError("dual graph is disconnected")
    peel = []
    live = {v: set(ws) for v, ws in adj.items()}
    while len(live) > 1:
        leaf = min(v for v, ws in live.items() if len(ws) == 1 and v != 0)
        (other,) = live.pop(leaf)
        live[other].discard(leaf)
        peel.append(leaf)
    if peel:
        peel.append(next(iter(live)))
    return TreeCertificate(verts, edges, tuple(peel))


@dataclass(frozen=True)
class ParityAdjustment:
    handle: int
    singularity: int
    requested: int
    half_twists_inserted: int

    def to_json(self) -> dict:
        return {
            "handle": self.handle,
            "singularity": self.singularity,
            "requested": self.requested,
            "half_twists_inserted": self.half_twists_inserted,
        }


@dataclass(frozen=True)
class HandlebodySummary:
    handle_pairs: int
    framings: tuple
    parity_adjustments: tuple
    note: str

    def to_json(self) -> dict:
        return {
            "handle_pairs": self.handle_pairs,
            "framings": list(self.framings),
            "parity_adjustments": [a.to_json() for a in self.parity_adjustments],
            "note": self.note,
        }


def handlebody_summary(t: SimplificationTrace, framings: Optional[Mapping[int, int]] = None) -> HandlebodySummary:
    """One canceling 1-/2-handle pair per cut; 2-handle framings are made
    even, odd requests being absorbed by one half twist in a disk of the
    cut unlink."""
    framings = framings or {}
    out = []
    adjustments = []
    for m in t.moves:
        if not isinstance(m, Cut):
            continue
        f = framings.get(m.singularity, 0)
        if f % 2:
            even = f - 1 if f > 0 else f + 1
            adjustments.append(ParityAdjustment(m.cut_id, m.singularity, f, f - even))
            f = even
        out.append(f)
    if out:
        note = (
            f"K is an unknot in the boundary of the 1-subhandlebody after attaching "
            f"{len(out)} canceling 1-2 handle pair(s)"
        )
    else:
        note = "no handles: K is already an unknot bounding an embedded disk"
    return HandlebodySummary(len(out), tuple(out), tuple(adjustments), note)
