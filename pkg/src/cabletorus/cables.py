"""Framing calculus for Legendrian cables.

Thurston-Bennequin numbers are caller-supplied facts; nothing here computes
tb from a diagram.  A cable (p, q) sits on the boundary torus with slope
q/p, and tw(L; torus) = tb(L) - p*q converts Seifert framing to torus
framing.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Optional

from .errors import CabletorusError
from .farey import Slope, det, parse_slope


class CableError(CabletorusError):
    pass


def _check_coprime(p: int, q: int) -> None:
    if gcd(p, q) != 1:
        raise CableError(f"(p, q) = ({p}, {q}) is not a coprime pair")


@dataclass(frozen=True)
class CableRecord:
    p: int
    q: int
    tb: int

    def __post_init__(self):
        _check_coprime(self.p, self.q)
        if self.p == 0:
            raise CableError("p = 0 is the meridian, not a cable of the knot")

    @property
    def trivial(self) -> bool:
        return abs(self.p) == 1

    @property
    def slope(self) -> Slope:
        return Slope(self.q, self.p)

    def to_json(self) -> dict:
        return {"p": self.p, "q": self.q, "tb": self.tb}

    @classmethod
    def from_json(cls, obj) -> "CableRecord":
        try:
            return cls(_int(obj["p"]), _int(obj["q"]), _int(obj["tb"]))
        except (KeyError, TypeError) as exc:
            raise CableError(f"cable record needs integer fields p, q, tb: {obj!r}") from exc


def _int(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise CableError(f"expected an integer, got {x!r}")
    return x


@dataclass(frozen=True)
class KnotProfile:
    tb_max: int
    cables: tuple = ()
    name: Optional[str] = None

    def __post_init__(self):
        object.__setattr__(self, "cables", tuple(self.cables))

    def to_json(self) -> dict:
        out = {"tb_max": self.tb_max, "cables": [c.to_json() for c in self.cables]}
        if self.name is not None:
            out["name"] = self.name
        return out

    @classmethod
    def from_json(cls, obj) -> "KnotProfile":
        if not isinstance(obj, dict) or "tb_max" not in obj:
            raise CableError("profile JSON must be an object with 'tb_max' and 'cables'")
        cables = obj.get("cables", [])
        if not isinstance(cables, list):
            raise CableError("'cables' must be a list")
        return cls(_int(obj["tb_max"]), tuple(CableRecord.from_json(c) for c in cables), obj.get("name"))


@dataclass(frozen=True)
class WidthEstimate:
    """Lower bound on the contact width, w >= lower_bound, with the strict
    inequality w > tb_max when the bound itself exceeds tb_max."""

    tb_max: int
    lower_bound: Slope
    strict_above_tbmax: bool

    def __post_init__(self):
        if self.lower_bound.is_infinite or self.lower_bound.as_fraction() > self.tb_max + 1:
            raise CableError(
                f"width bound {self.lower_bound} exceeds tb_max + 1 = {self.tb_max + 1}"
            )


@dataclass(frozen=True)
class YasuiParams:
    m: int
    n: int

    def __post_init__(self):
        if self.m > -5:
            raise CableError(f"m = {self.m} is outside the range m <= -5")
        top = (3 - self.m) // 4
        if not 1 < self.n <= top:
            raise CableError(f"n = {self.n} is not in 1 < n <= {top} for m = {self.m}")


def tw_from_tb(tb: int, p: int, q: int) -> int:
    _check_coprime(p, q)
    return tb - p * q


def tb_from_tw(tw: int, p: int, q: int) -> int:
    _check_coprime(p, q)
    return tw + p * q


def is_large(r: CableRecord) -> bool:
    if r.trivial:
        raise CableError(
            f"({r.p}, {r.q}) is a trivial cable (|p| = 1); largeness is vacuous there"
        )
    return r.tb > r.p * r.q


def stabilize(tb: int, times: int) -> int:
    if times < 0:
        raise CableError("cannot stabilize a negative number of times")
    return tb - times


def contacto_image(p: int, q: int, k: int) -> tuple:
    """Image of a (p, q) curve under the contactomorphism taking an
    integer-slope-k standard neighborhood to that of the tb = -1 unknot."""
    _check_coprime(p, q)
    return (p, q - p * (k + 1))


def twist_from_intersection(L, gamma) -> int:
    """Torus twisting of a Legendrian curve of slope ``L`` on a convex torus
    with two dividing curves of slope ``gamma``.

    Half the geometric intersection with the dividing set; two curves make
    that the single-curve intersection number.
    """
    return -abs(det(parse_slope(L), parse_slope(gamma)))


@dataclass(frozen=True)
class LLCReport:
    tb_max: int
    witnesses: tuple
    width: Optional[WidthEstimate]
    trivial_ignored: tuple = ()
    notes: tuple = field(default=())

    @property
    def llc(self) -> bool:
        return bool(self.witnesses)

    @property
    def not_uniformly_thick(self) -> bool:
        return self.llc

    @property
    def virtually_overtwisted_torus(self) -> bool:
        return self.llc

    def to_json(self) -> dict:
        return {
            "llc": self.llc,
            "witnesses": [w.to_json() for w in self.witnesses],
            "not_uniformly_thick": self.not_uniformly_thick,
            "virtually_overtwisted_torus": self.virtually_overtwisted_torus,
            "width_lower_bound": None if self.width is None else str(self.width.lower_bound),
            "width_exceeds_tb_max": False if self.width is None else self.width.strict_above_tbmax,
            "notes": list(self.notes),
        }


def llc_report(k: KnotProfile) -> LLCReport:
    """Legendrian-large witnesses and what they force.

    Any large non-trivial cable gives LLC, hence a virtually overtwisted
    solid torus that does not thicken to integer slope, hence failure of
    uniform thickness.  A large cable of slope q/p above tb_max pushes the
    contact width to at least q/p.
    """
    trivial = tuple(c for c in k.cables if c.trivial)
    witnesses = tuple(c for c in k.cables if not c.trivial and is_large(c))
    notes = []
    if trivial:
        notes.append("trivial cables (|p| = 1) carry no information and were skipped")
    tb = Slope(k.tb_max, 1)
    above = [c.slope for c in witnesses if c.slope > tb]
    below = [c for c in witnesses if c.slope < tb]
    if below:
        notes.append(
            "large cable with slope below tb_max: "
            + ", ".join(f"({c.p},{c.q})" for c in below)
        )
    width = None
    if above:
        best = max(above)
        width = WidthEstimate(k.tb_max, best, True)
    return LLCReport(k.tb_max, witnesses, width, trivial, tuple(notes))


REFUTED = "REFUTED"
CONSISTENT = "CONSISTENT"


@dataclass(frozen=True)
class ThicknessVerdict:
    verdict: str
    witnesses: tuple = ()
    note: Optional[str] = None

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "witnesses": [w.to_json() for w in self.witnesses],
            "note": self.note,
        }


def uniform_thickness_test(k: KnotProfile) -> ThicknessVerdict:
    """One-sided check of tb <= pq over the supplied non-trivial cables.

    Finitely many cables can refute uniform thickness but never prove it.
    """
    nontrivial = [c for c in k.cables if not c.trivial]
    bad = tuple(c for c in nontrivial if c.tb > c.p * c.q)
    if bad:
        return ThicknessVerdict(REFUTED, bad)
    if k.cables and not nontrivial:
        note = "only trivial cables (|p| = 1) supplied; they carry no information"
    else:
        note = "no violation of tb <= pq among supplied cables; uniform thickness not established"
    return ThicknessVerdict(CONSISTENT, (), note)


def yasui_family(m: int) -> KnotProfile:
    """The ribbon knots K^m (m <= -5) with tb_max = -1 and their Legendrian
    large cables (n, -1), tb = -1, for 2 <= n <= floor((3 - m) / 4)."""
    if m > -5:
        raise CableError(f"m = {m}: the family is only guaranteed for m <= -5")
    top = (3 - m) // 4
    cables = tuple(CableRecord(n, -1, -1) for n in range(2, top + 1))
    return KnotProfile(-1, cables, name=f"K^{m}")
