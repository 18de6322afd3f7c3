import pytest
from hypothesis import HealthCheck, given, settings

from endspace.order import classes, is_tame, leq, maximal_classes, stable_neighborhood
from endspace.parser import parse_term, print_term

from strategies import terms

P = parse_term

relaxed = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


def by_label(poset, label):
    return next(c for c in poset if c.label == label)


def test_cantor_single_class():
    p = classes(P("cantor"))
    assert len(p) == 1
    assert p.maximal()[0].cardinality == "cantor"


def test_two_genus_points_one_class():
    (c,) = classes(P("sum(pt g, pt g)"))
    assert c.cardinality == "finite(2)"


def test_ordinal_tower():
    p = classes(P("ord(w,1,none)"))
    top, tower = by_label(p, "S[](w)"), by_label(p, "S[](d) for 0 <= d < w")
    assert top.cardinality == "finite(1)"
    assert tower.is_family and tower.cardinality == "countably_infinite"
    assert p.leq(tower, top) and not p.leq(top, tower)
    assert p.maximal() == [top]


def test_planar_and_genus_points_incomparable():
    p = classes(P("sum(pt g, pt)"))
    a, b = p
    assert not p.leq(a, b) and not p.leq(b, a)
    assert len(p.maximal()) == 2


def test_cacc_points_below_base():
    p = classes(P("cacc(pt)"))
    base, pts = by_label(p, "P[S[](0)]"), by_label(p, "S[](0)")
    assert p.leq(pts, base) and p.accumulation(pts, base)
    assert not p.leq(base, pts)


def test_ord_maximal_cardinality():
    (m,) = maximal_classes(P("ord(w^2,3,none)"))
    assert m.cardinality == "finite(3)"


def test_line_maximal_is_the_two_special_points():
    (m,) = maximal_classes(P("line(sum(cantor g, cantor), g, g)"))
    assert m.cardinality == "finite(2)"
    assert m.flag


def test_fan_top():
    (m,) = maximal_classes(P("fan(iter(pt), one)"))
    assert m.cardinality == "finite(1)"


@pytest.mark.parametrize(
    "src, germ",
    [("omega(pt)", "omega(pt)"), ("fan(iter(pt), one)", "ord(w,1,none)"), ("cacc(pt)", "cacc(pt)")],
)
def test_stable_germs(src, germ):
    (m,) = maximal_classes(P(src))
    assert print_term(stable_neighborhood(m)) == germ


def test_once_fan_predecessor_is_unstable():
    p = classes(P("line(fan(bloom(pt), one), !g, !g)"))
    (top,) = p.maximal()
    unstable = [c for c in p.immediate_predecessors(top) if stable_neighborhood(c) is None]
    assert [c.label for c in unstable] == ["Lall<D[S[](0)]00>"]


@pytest.mark.parametrize(
    "src, want",
    [
        ("ord(w,2,none)", "yes"),
        ("cantor", "yes"),
        ("line(sum(cantor g, cantor), g, g)", "yes"),
        ("line(fan(bloom(pt), one), !g, !g)", "no"),
        ("sum(omega(fan(bloom(pt), one)), omega(fan(bloom(pt), one)))", "no"),
    ],
)
def test_tameness(src, want):
    assert is_tame(P(src)) == want


def test_foreign_class_rejected():
    a = classes(P("cantor")).maximal()[0]
    b = classes(P("omega(pt)")).maximal()[0]
    with pytest.raises(ValueError):
        leq(classes(P("cantor")), a, b)


def test_dot_export():
    dot = classes(P("ord(w,1,none)")).to_dot()
    assert dot.startswith("digraph ends {")
    assert "c1 -> c0;" in dot


@relaxed
@given(terms())
def test_leq_is_a_preorder(t):
    p = classes(t)
    cs = list(p)
    for a in cs:
        assert p.leq(a, a)
        for b in cs:
            if not p.leq(a, b):
                continue
            for c in cs:
                if p.leq(b, c):
                    assert p.leq(a, c)


@relaxed
@given(terms())
def test_accumulation_implies_leq(t):
    p = classes(t)
    for a in p:
        for b in p:
            if p.accumulation(a, b):
                assert p.leq(a, b)


@relaxed
@given(terms())
def test_maximal_classes_exist_and_dominate(t):
    p = classes(t)
    top = p.maximal()
    assert top
    for c in top:
        assert c.cardinality == "cantor" or c.cardinality.startswith("finite(")
    for c in p:
        assert any(p.leq(c, m) for m in top)
