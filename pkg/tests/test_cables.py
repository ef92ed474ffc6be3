from math import gcd

import pytest
from hypothesis import given, strategies as st

from cabletorus.cables import (
    CONSISTENT,
    REFUTED,
    CableError,
    CableRecord,
    KnotProfile,
    WidthEstimate,
    YasuiParams,
    contacto_image,
    is_large,
    llc_report,
    stabilize,
    tb_from_tw,
    tw_from_tb,
    twist_from_intersection,
    uniform_thickness_test,
    yasui_family,
)
from cabletorus.farey import Slope, parse_slope

coprime = st.tuples(st.integers(-50, 50), st.integers(-50, 50)).filter(lambda t: gcd(*t) == 1 and t[0] != 0)


def test_tw_examples():
    assert tw_from_tb(-1, 2, -1) == 1
    assert tw_from_tb(-6, 2, -3) == 0
    with pytest.raises(CableError):
        tw_from_tb(0, 2, 4)


@given(coprime, st.integers(-10**6, 10**6))
def test_tw_tb_round_trip(pq, tb):
    p, q = pq
    assert tb_from_tw(tw_from_tb(tb, p, q), p, q) == tb
    assert tw_from_tb(p * q, p, q) == 0


def test_is_large_examples():
    assert is_large(CableRecord(2, -1, -1))
    assert not is_large(CableRecord(2, -1, -2))
    with pytest.raises(CableError):
        is_large(CableRecord(1, 5, 6))


@given(coprime, st.integers(-100, 100))
def test_large_iff_positive_twist(pq, tb):
    p, q = pq
    if abs(p) == 1:
        return
    assert is_large(CableRecord(p, q, tb)) == (tw_from_tb(tb, p, q) > 0)


def test_record_validation():
    with pytest.raises(CableError):
        CableRecord(2, 4, 0)
    with pytest.raises(CableError):
        CableRecord(0, 1, 0)
    with pytest.raises(CableError):
        CableRecord.from_json({"p": 2, "q": -1})
    with pytest.raises(CableError):
        CableRecord.from_json({"p": 2, "q": -1, "tb": "x"})


def test_llc_examples():
    rep = llc_report(KnotProfile(-1, (CableRecord(2, -1, -1),)))
    assert rep.llc and rep.not_uniformly_thick and rep.virtually_overtwisted_torus
    assert rep.width.lower_bound == parse_slope("-1/2") and rep.width.strict_above_tbmax
    assert rep.width.lower_bound > Slope(-1)
    assert not llc_report(KnotProfile(-1, (CableRecord(2, -3, -7),))).llc
    rep = llc_report(KnotProfile(-1, (CableRecord(3, -1, -1),)))
    assert rep.llc and str(rep.width.lower_bound) == "-1/3"


def test_llc_json_fields():
    obj = llc_report(yasui_family(-9)).to_json()
    assert obj["llc"] is True
    assert obj["width_lower_bound"] == "-1/3"
    assert obj["virtually_overtwisted_torus"] is True
    assert obj["witnesses"] == [{"p": 2, "q": -1, "tb": -1}, {"p": 3, "q": -1, "tb": -1}]


def test_llc_bound_below_tbmax_is_noted():
    rep = llc_report(KnotProfile(0, (CableRecord(2, -3, -5),)))
    assert rep.llc and rep.width is None
    assert any("below tb_max" in n for n in rep.notes)


@given(coprime, st.integers(-20, 20))
def test_llc_width_flag(pq, tb_max):
    p, q = pq
    if abs(p) == 1:
        return
    r = CableRecord(p, q, p * q + 1)
    s = r.slope
    if not s.is_infinite and s.as_fraction() > tb_max + 1:
        return
    rep = llc_report(KnotProfile(tb_max, (r,)))
    if s > Slope(tb_max):
        assert rep.width.lower_bound == s and rep.width.strict_above_tbmax
    else:
        assert rep.width is None


def test_contacto_examples():
    assert contacto_image(2, -1, 0) == (2, -3)
    assert contacto_image(3, 1, -2) == (3, 4)


@given(coprime, st.integers(-20, 20), st.integers(-20, 20))
def test_contacto_group_law(pq, k1, k2):
    p, q = pq
    assert contacto_image(p, q, -1) == (p, q)
    once = contacto_image(*contacto_image(p, q, k1), k2)
    assert once == contacto_image(p, q, k1 + k2 + 1)
    assert gcd(*once) == 1


def test_twist_examples():
    assert twist_from_intersection("-1/2", "-1/2") == 0
    assert twist_from_intersection("-1/2", "inf") == -2
    assert twist_from_intersection("0", "inf") == -1


@given(coprime, coprime)
def test_twist_zero_iff_equal(a, b):
    L, g = Slope(a[1], a[0]), Slope(b[1], b[0])
    assert (twist_from_intersection(L, g) == 0) == (L == g)


def test_stabilize():
    assert stabilize(-1, 1) == -2
    assert stabilize(4, 0) == 4
    assert stabilize(5, 7) == -2
    with pytest.raises(CableError):
        stabilize(0, -1)


@pytest.mark.parametrize("m,ns,bound", [(-5, [2], "-1/2"), (-9, [2, 3], "-1/3"), (-13, [2, 3, 4], "-1/4")])
def test_yasui_family(m, ns, bound):
    k = yasui_family(m)
    assert k.tb_max == -1
    assert [(c.p, c.q, c.tb) for c in k.cables] == [(n, -1, -1) for n in ns]
    assert str(llc_report(k).width.lower_bound) == bound
    v = uniform_thickness_test(k)
    assert v.verdict == REFUTED


def test_yasui_range():
    with pytest.raises(CableError):
        yasui_family(-4)


@given(st.integers(-400, -5), st.data())
def test_yasui_params_width(m, data):
    top = (3 - m) // 4
    n = data.draw(st.integers(2, top))
    YasuiParams(m, n)
    w = Slope(-1, n)
    assert Slope(-1) < w <= Slope(0)
    WidthEstimate(-1, w, True)
    with pytest.raises(CableError):
        YasuiParams(m, top + 1)


def test_width_estimate_bound():
    with pytest.raises(CableError):
        WidthEstimate(-1, Slope(1, 2), True)


def test_uniform_thickness():
    v = uniform_thickness_test(yasui_family(-5))
    assert v.verdict == REFUTED and [(c.p, c.q, c.tb) for c in v.witnesses] == [(2, -1, -1)]
    v = uniform_thickness_test(KnotProfile(-1, (CableRecord(2, -3, -6), CableRecord(3, 2, 6))))
    assert v.verdict == CONSISTENT and not v.witnesses
    v = uniform_thickness_test(KnotProfile(-1, (CableRecord(1, 5, 9),)))
    assert v.verdict == CONSISTENT and "trivial" in v.note


def test_profile_json_round_trip():
    k = yasui_family(-13)
    assert KnotProfile.from_json(k.to_json()) == k
    with pytest.raises(CableError):
        KnotProfile.from_json({"cables": []})
