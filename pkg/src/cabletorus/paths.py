"""Decorated clockwise paths in the Farey tessellation and the tight
contact structures they describe on thickened tori and solid tori.

Jumps are indexed from 0: jump ``j`` runs from ``vertices[j]`` to
``vertices[j + 1]``.  A truncated path leaves jump 0 undecorated; its
``signs`` tuple then has one entry fewer than the number of jumps.
"""

from __future__ import annotations

import enum
import itertools
from math import gcd
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .errors import CabletorusError
from .farey import (
    INF,
    Slope,
    TorusBoundary,
    farthest_neighbor,
    in_clockwise_interval,
    is_edge,
    mediant,
    parse_slope,
)

PLUS = "+"
MINUS = "-"
SIGNS = (PLUS, MINUS)


class PathError(CabletorusError):
    pass


@dataclass(frozen=True)
class DecoratedPath:
    vertices: tuple
    signs: Optional[tuple] = None
    truncated: bool = False

    def __post_init__(self):
        verts = tuple(parse_slope(v) for v in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if not verts:
            raise PathError("a path needs at least one vertex")
        for i, (u, v) in enumerate(zip(verts, verts[1:])):
            if u == v:
                raise PathError(f"vertices {i} and {i + 1} coincide ({u})")
            if not is_edge(u, v):
                raise PathError(f"jump {i} from {u} to {v} is not a Farey edge")
        for i in range(1, len(verts) - 1):
            if not in_clockwise_interval(verts[i + 1], verts[i], verts[0]):
                raise PathError(
                    f"vertex {verts[i + 1]} does not continue clockwise from {verts[i]} "
                    f"before returning to {verts[0]}"
                )
        if self.truncated and len(verts) < 2:
            raise PathError("a truncated path needs at least one jump")
        if self.signs is not None:
            signs = tuple(self.signs)
            for s in signs:
                if s not in SIGNS:
                    raise PathError(f"sign must be '+' or '-', got {s!r}")
            want = self.decorated_jumps
            if len(signs) != want:
                raise PathError(
                    f"expected {want} signs for {self.jumps} jumps"
                    + (" (truncated)" if self.truncated else "")
                    + f", got {len(signs)}"
                )
            object.__setattr__(self, "signs", signs)

    @property
    def jumps(self) -> int:
        return len(self.vertices) - 1

    @property
    def decorated_jumps(self) -> int:
        return max(self.jumps - (1 if self.truncated else 0), 0)

    @property
    def is_skeleton(self) -> bool:
        return self.signs is None

    def jump_signs(self) -> tuple:
        """Per-jump signs, with ``None`` for the undecorated first jump."""
        if self.signs is None:
            raise PathError("path carries no decoration")
        if self.truncated:
            return (None,) + self.signs
        return self.signs

    def decorate(self, signs: Sequence[str], truncated: Optional[bool] = None) -> "DecoratedPath":
        t = self.truncated if truncated is None else truncated
        return DecoratedPath(self.vertices, tuple(signs), t)

    def skeleton(self) -> "DecoratedPath":
        return DecoratedPath(self.vertices, None, self.truncated)

    def to_json(self) -> dict:
        out = {"vertices": [str(v) for v in self.vertices]}
        if self.signs is not None:
            out["signs"] = list(self.signs)
        out["truncated"] = self.truncated
        return out

    @classmethod
    def from_json(cls, obj) -> "DecoratedPath":
        if not isinstance(obj, dict) or "vertices" not in obj:
            raise PathError("path JSON must be an object with a 'vertices' list")
        verts = obj["vertices"]
        if not isinstance(verts, list):
            raise PathError("'vertices' must be a list of slope strings")
        signs = obj.get("signs")
        if signs is not None and not isinstance(signs, list):
            raise PathError("'signs' must be a list of '+'/'-'")
        truncated = obj.get("truncated", False)
        if not isinstance(truncated, bool):
            raise PathError("'truncated' must be a boolean")
        return cls(tuple(verts), None if signs is None else tuple(signs), truncated)

    def __str__(self) -> str:
        if self.signs is None:
            return " -> ".join(map(str, self.vertices))
        parts = [str(self.vertices[0])]
        for s, v in zip(self.jump_signs(), self.vertices[1:]):
            parts.append(f"-({s or '.'})-> {v}")
        return " ".join(parts)


def _from_jump_signs(vertices: tuple, jsigns: tuple, truncated: bool) -> DecoratedPath:
    return DecoratedPath(vertices, jsigns[1:] if truncated else jsigns, truncated)


# -- minimal paths -------------------------------------------------------


@lru_cache(maxsize=65536)
def _greedy(a: Slope, b: Slope) -> tuple:
    verts = [a]
    x = a
    while x != b:
        x = farthest_neighbor(x, b, include_end=True)
        verts.append(x)
    return tuple(verts)


def minimal_path(a, b) -> DecoratedPath:
    """Shortest clockwise edge-path from ``a`` to ``b`` (unsigned).

    Built greedily: from each vertex jump to its clockwise-farthest Farey
    neighbor that does not pass ``b``.
    """
    a, b = parse_slope(a), parse_slope(b)
    return DecoratedPath(_greedy(a, b))


def clockwise_distance(a, b) -> int:
    a, b = parse_slope(a), parse_slope(b)
    return len(_greedy(a, b)) - 1


def shortening_sites(path: DecoratedPath) -> list[int]:
    """Interior vertices whose two neighbors on the path are Farey neighbors."""
    v = path.vertices
    return [i for i in range(1, len(v) - 1) if is_edge(v[i - 1], v[i + 1])]


def is_minimal(path: DecoratedPath) -> bool:
    if path.jumps == 0:
        return True
    return path.jumps == clockwise_distance(path.vertices[0], path.vertices[-1])


# -- continued fraction blocks ------------------------------------------


def half_maximal(p1, p2, p3) -> bool:
    """Whether the jump p2 -> p3 is half of the largest clockwise jump from
    p2 inside the open interval (p2, p1)."""
    p1, p2, p3 = parse_slope(p1), parse_slope(p2), parse_slope(p3)
    if not (is_edge(p1, p2) and is_edge(p2, p3)):
        raise PathError(f"{p1}, {p2}, {p3} are not joined by Farey edges")
    if p1 == p3 or not in_clockwise_interval(p3, p2, p1):
        raise PathError(f"{p1}, {p2}, {p3} is not a clockwise sequence")
    q_max = farthest_neighbor(p2, p1, include_end=False)
    return p3 == mediant(p2, q_max)


@dataclass(frozen=True)
class BlockDecomposition:
    """Maximal continued fraction blocks, as half-open jump-index ranges."""

    blocks: tuple

    @property
    def block_boundaries(self) -> tuple:
        return tuple(start for start, _ in self.blocks)

    def lengths(self) -> tuple:
        return tuple(stop - start for start, stop in self.blocks)

    def block_of(self, jump: int) -> int:
        for k, (start, stop) in enumerate(self.blocks):
            if start <= jump < stop:
                return k
        raise IndexError(jump)


@lru_cache(maxsize=65536)
def _blocks(vertices: tuple) -> tuple:
    n = len(vertices) - 1
    if n <= 0:
        return ()
    out = []
    start = 0
    for j in range(1, n):
        if not half_maximal(vertices[j - 1], vertices[j], vertices[j + 1]):
            out.append((start, j))
            start = j
    out.append((start, n))
    return tuple(out)


def cf_blocks(path: DecoratedPath) -> BlockDecomposition:
    if path.jumps < 1:
        raise PathError("block decomposition needs at least one jump")
    return BlockDecomposition(_blocks(path.vertices))


# -- shuffles ------------------------------------------------------------


def _block_multisets(vertices: tuple, jsigns: tuple) -> tuple:
    return tuple(
        tuple(sorted(s for s in jsigns[a:b] if s is not None))
        for a, b in _blocks(vertices)
    )


def shuffle_equivalent(d1: DecoratedPath, d2: DecoratedPath) -> bool:
    if d1.vertices != d2.vertices or d1.truncated != d2.truncated:
        return False
    if d1.signs is None or d2.signs is None:
        return d1.signs is None and d2.signs is None
    if d1.jumps == 0:
        return True
    return _block_multisets(d1.vertices, d1.jump_signs()) == _block_multisets(
        d2.vertices, d2.jump_signs()
    )


def _canon_jsigns(vertices: tuple, jsigns: tuple) -> tuple:
    out = list(jsigns)
    for a, b in _blocks(vertices):
        idx = [j for j in range(a, b) if out[j] is not None]
        plus = sum(1 for j in idx if out[j] == PLUS)
        for k, j in enumerate(idx):
            out[j] = PLUS if k < plus else MINUS
    return tuple(out)


def canonical_form(d: DecoratedPath) -> DecoratedPath:
    """Representative of the shuffle class: within every block all ``+``
    signs precede all ``-`` signs."""
    if d.signs is None or d.jumps == 0:
        return d
    return _from_jump_signs(d.vertices, _canon_jsigns(d.vertices, d.jump_signs()), d.truncated)


def _arrangements(vertices: tuple, jsigns: tuple) -> Iterable[tuple]:
    """Every sign arrangement shuffle-equivalent to ``jsigns``."""
    per_block = []
    for a, b in _blocks(vertices):
        idx = [j for j in range(a, b) if jsigns[j] is not None]
        plus = sum(1 for j in idx if jsigns[j] == PLUS)
        per_block.append([(idx, set(c)) for c in itertools.combinations(idx, plus)])
    for choice in itertools.product(*per_block):
        out = list(jsigns)
        for idx, plus_at in choice:
            for j in idx:
                out[j] = PLUS if j in plus_at else MINUS
        yield tuple(out)


# -- shortening ----------------------------------------------------------


@dataclass(frozen=True)
class ShortenResult:
    path: DecoratedPath
    consistent: bool
    # sign carried by the merged jump; kept even when truncation hides it
    merged_sign: Optional[str]


def _merge(s: Optional[str], t: Optional[str]) -> tuple:
    if s is None:
        return True, t
    if t is None:
        return True, s
    return s == t, s if s == t else None


def shorten(d: DecoratedPath, i: int) -> ShortenResult:
    """Delete interior vertex ``i``, merging jumps ``i - 1`` and ``i``."""
    v = d.vertices
    if not 1 <= i <= len(v) - 2:
        raise PathError(f"vertex {i} is not an interior vertex of a {d.jumps}-jump path")
    if not is_edge(v[i - 1], v[i + 1]):
        raise PathError(f"no shortening site at vertex {i}: {v[i - 1]} and {v[i + 1]} are not neighbors")
    verts = v[:i] + v[i + 1:]
    if d.signs is None:
        return ShortenResult(DecoratedPath(verts, None, d.truncated), True, None)
    js = d.jump_signs()
    consistent, sign = _merge(js[i - 1], js[i])
    # an inconsistent merge keeps the left sign; the path is overtwisted anyway
    merged = sign if consistent else js[i - 1]
    new_js = js[: i - 1] + (merged,) + js[i + 1:]
    if d.truncated and i == 1:
        new_js = (None,) + new_js[1:]
    return ShortenResult(_from_jump_signs(verts, new_js, d.truncated), consistent, sign)


# -- classification ------------------------------------------------------


class Verdict(enum.Enum):
    OVERTWISTED = "Overtwisted"
    UNIVERSALLY_TIGHT = "UniversallyTight"
    VIRTUALLY_OVERTWISTED = "VirtuallyOvertwisted"

    @property
    def tight(self) -> bool:
        return self is not Verdict.OVERTWISTED


@dataclass(frozen=True)
class ContactClass:
    verdict: Verdict
    canonical_witness: Optional[DecoratedPath] = None

    def __post_init__(self):
        if self.verdict is Verdict.OVERTWISTED:
            if self.canonical_witness is not None:
                raise PathError("an overtwisted class has no tight witness")
            return
        w = self.canonical_witness
        if w is None:
            raise PathError("a tight class needs a minimal witness")
        if _uniform(w) != (self.verdict is Verdict.UNIVERSALLY_TIGHT):
            raise PathError(f"verdict {self.verdict.value} does not match witness signs {w.signs}")

    @property
    def tight(self) -> bool:
        return self.verdict.tight

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "witness": None if self.canonical_witness is None else self.canonical_witness.to_json(),
        }


def _uniform(path: DecoratedPath) -> bool:
    return len(set(path.signs)) <= 1


def _state(d: DecoratedPath) -> tuple:
    if d.signs is None:
        raise PathError("classification needs a decorated path")
    js = d.jump_signs() if d.jumps else ()
    return (d.vertices, _canon_jsigns(d.vertices, js) if js else js)


@lru_cache(maxsize=65536)
def _moves(state: tuple) -> tuple:
    """(next_state or None, consistent) for every shortening of every
    shuffle arrangement; sites are tried left to right."""
    return tuple(_iter_moves(state))


def _iter_moves(state: tuple):
    verts, js = state
    sites = [i for i in range(1, len(verts) - 1) if is_edge(verts[i - 1], verts[i + 1])]
    if not sites:
        return
    for arr in _arrangements(verts, js):
        for i in sites:
            consistent, _ = _merge(arr[i - 1], arr[i])
            if not consistent:
                yield None, False
                continue
            merged = arr[i] if arr[i - 1] is None else arr[i - 1]
            new_js = arr[: i - 1] + (merged,) + arr[i + 1:]
            if arr[0] is None:
                new_js = (None,) + new_js[1:]
            new_verts = verts[:i] + verts[i + 1:]
            yield (new_verts, _canon_jsigns(new_verts, new_js)), True


def _state_minimal(state: tuple) -> bool:
    verts = state[0]
    return len(verts) == 1 or len(verts) - 1 == clockwise_distance(verts[0], verts[-1])


@lru_cache(maxsize=65536)
def _existential(state: tuple) -> Optional[tuple]:
    """Breadth-first search for a minimal state reachable by consistent
    shortenings; returns it or None."""
    seen = {state}
    queue = deque([state])
    while queue:
        s = queue.popleft()
        if _state_minimal(s):
            return s
        for nxt, ok in _moves(s):
            if ok and nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return None


@lru_cache(maxsize=65536)
def _universal(state: tuple) -> bool:
    seen = {state}
    queue = deque([state])
    while queue:
        s = queue.popleft()
        dead_end = True
        for nxt, ok in _moves(s):
            if not ok:
                return False
            dead_end = False
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
        if dead_end and not _state_minimal(s):
            return False
    return True


def _witness(state: tuple, truncated: bool) -> DecoratedPath:
    verts, js = state
    return _from_jump_signs(verts, js, truncated)


def classify(d: DecoratedPath) -> ContactClass:
    """Tight iff some interleaving of block shuffles and consistent
    shortenings reaches a minimal path; the minimal witness then decides
    universally tight (uniform signs) against virtually overtwisted."""
    found = _existential(_state(d))
    if found is None:
        return ContactClass(Verdict.OVERTWISTED)
    w = _witness(found, d.truncated)
    verdict = Verdict.UNIVERSALLY_TIGHT if _uniform(w) else Verdict.VIRTUALLY_OVERTWISTED
    return ContactClass(verdict, w)


def is_tight_strict(d: DecoratedPath) -> bool:
    """Universal reading: no reachable arrangement admits an inconsistent
    shortening and every reduction ends at a minimal path."""
    return _universal(_state(d))


# -- enumeration ---------------------------------------------------------


def _block_decorations(vertices: tuple, truncated: bool) -> list[tuple]:
    """Canonical per-jump signs, one per shuffle class."""
    blocks = _blocks(vertices)
    choices = []
    for a, b in blocks:
        free = [j for j in range(a, b) if not (truncated and j == 0)]
        choices.append([(free, plus) for plus in range(len(free), -1, -1)])
    out = []
    for combo in itertools.product(*choices):
        js = [None] * (len(vertices) - 1)
        for free, plus in combo:
            for k, j in enumerate(free):
                js[j] = PLUS if k < plus else MINUS
        out.append(tuple(js))
    return out


def _check_boundary(g) -> TorusBoundary:
    if not isinstance(g, TorusBoundary):
        g = TorusBoundary(parse_slope(g))
    if g.num_dividing_curves != 2:
        raise PathError(
            f"only two dividing curves are classified here, got {g.num_dividing_curves}"
        )
    return g


def enumerate_tight_T2xI(g1, g2) -> list[ContactClass]:
    """Tight minimally twisting structures on T^2 x I with the given
    boundary dividing sets, one per shuffle class of decorations of the
    minimal path from the first slope to the second."""
    g1, g2 = _check_boundary(g1), _check_boundary(g2)
    s1, s2 = g1.dividing_slope, g2.dividing_slope
    if s1 == s2:
        raise PathError(f"boundary slopes coincide ({s1}); only distinct slopes are classified")
    verts = minimal_path(s1, s2).vertices
    return [classify(_from_jump_signs(verts, js, False)) for js in _block_decorations(verts, False)]


def enumerate_tight_solid_torus(meridian, g) -> list[ContactClass]:
    """Tight structures on a solid torus with the given meridian slope and
    boundary dividing set, from truncated decorations of the minimal path."""
    meridian = parse_slope(meridian)
    g = _check_boundary(g)
    if g.dividing_slope == meridian:
        raise PathError(f"dividing slope equals the meridian slope ({meridian})")
    verts = minimal_path(meridian, g.dividing_slope).vertices
    return [classify(_from_jump_signs(verts, js, True)) for js in _block_decorations(verts, True)]


def count_classes(classes: Sequence[ContactClass]) -> dict:
    return {
        "count": len(classes),
        "universally_tight": sum(c.verdict is Verdict.UNIVERSALLY_TIGHT for c in classes),
    }


# -- thickening ----------------------------------------------------------


def universally_tight_thickening(s) -> tuple[Slope, DecoratedPath]:
    """Integer slope -ceil(r/s) + 1 reached from -r/s by a shortest path,
    for boundary slopes in [-inf, -1] with meridian inf."""
    s = parse_slope(s)
    if s.is_infinite:
        raise PathError("the meridional slope inf has no thickening; pick a finite boundary slope")
    if s.as_fraction() > -1:
        raise PathError(
            f"slope {s} is outside [-inf, -1]; shear-normalize it first (q/p -> (q + k p)/p)"
        )
    r, den = -s.num, s.den
    n = -(-r // den)
    target = Slope(-n + 1, 1)
    return target, minimal_path(s, target)


# -- shortening-semantics audit -----------------------------------------


def clockwise_paths(bound: int, max_jumps: int) -> Iterable[tuple]:
    """Every clockwise Farey edge-path with 1..max_jumps jumps whose vertices
    have |num|, |den| <= bound."""
    verts = sorted(
        Slope(q, p)
        for q in range(-bound, bound + 1)
        for p in range(0, bound + 1)
        if gcd(q, p) == 1 and not (p == 0 and q != 1)
    )
    nbrs = {v: [w for w in verts if is_edge(v, w)] for v in verts}

    def extend(path):
        if len(path) > 1:
            yield tuple(path)
        if len(path) - 1 == max_jumps:
            return
        last = path[-1]
        for w in nbrs[last]:
            if len(path) == 1 or in_clockwise_interval(w, last, path[0]):
                path.append(w)
                yield from extend(path)
                path.pop()

    for v in verts:
        yield from extend([v])


@dataclass(frozen=True)
class AuditReport:
    examined: int
    disagreements: tuple

    def to_json(self) -> dict:
        return {
            "examined": self.examined,
            "disagreements": [
                {"path": d.to_json(), "existential": e, "strict": s}
                for d, e, s in self.disagreements
            ],
        }


def shortening_audit(bound: int = 5, max_jumps: int = 5) -> AuditReport:
    """Compare existential and strict-universal tightness over every
    decorated clockwise path in the box."""
    examined = 0
    bad = []
    for verts in clockwise_paths(bound, max_jumps):
        verdicts = {}
        for signs in itertools.product(SIGNS, repeat=len(verts) - 1):
            examined += 1
            state = (verts, _canon_jsigns(verts, signs))
            if state not in verdicts:
                verdicts[state] = (_existential(state) is not None, _universal(state))
            e, s = verdicts[state]
            if e != s:
                bad.append((DecoratedPath(verts, signs), e, s))
    return AuditReport(examined, tuple(bad))
