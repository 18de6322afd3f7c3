import dataclasses

import pytest
from hypothesis import HealthCheck, given, settings

from endspace.classify import (
    FiniteNonzeroGenus,
    LimitType,
    classify,
    has_infinite_rank,
    has_limit_type,
    is_self_similar,
    is_telescoping,
    nondisplaceable_certificate,
)
from endspace.parser import parse_surface, parse_term
from endspace.terms import INF, ScopeError, Surface, TermError, has_genus_end

from strategies import countable_terms, surfaces

S = parse_surface
relaxed = settings(max_examples=500, deadline=None, suppress_health_check=[HealthCheck.too_slow, HealthCheck.filter_too_much])


def verdicts(text):
    v = classify(S(text))
    return v.locally_cb, v.cb_generated, v.globally_cb


@pytest.mark.parametrize(
    "src, want",
    [
        ("cantor", "yes"),
        ("omega(pt)", "yes"),
        ("sum(pt, pt)", "no"),
        ("ord(w,2,none)", "no"),
        ("sum(cantor, pt)", "no"),
        ("omega(fan(bloom(pt), one))", "yes"),
    ],
)
def test_self_similarity(src, want):
    assert is_self_similar(parse_term(src)) == want


def test_self_similar_zero_genus_is_globally_cb():
    assert verdicts("surface genus=0 ends=ord(w^2,1,none)") == ("yes", "yes", "yes")


def test_finite_genus_certificate():
    v = classify(S("surface genus=3 ends=cantor"))
    assert v.globally_cb == "no"
    assert FiniteNonzeroGenus(3) in v.certificates
    assert nondisplaceable_certificate(S("surface genus=3 ends=cantor")) == FiniteNonzeroGenus(3)


def test_countable_finite_genus_not_local():
    assert verdicts("surface genus=1 ends=omega(omega(pt))") == ("no", "no", "no")


def test_limit_type_two_points():
    s = S("surface genus=0 ends=ord(w,2,none)")
    assert has_limit_type(s) == "yes"
    (lt,) = [c for c in classify(s).certificates if isinstance(c, LimitType)]
    assert lt.x == "S[](w)"


def test_successor_is_not_limit_type():
    assert has_limit_type(S("surface genus=0 ends=ord(w+1,2,none)")) == "no"


def test_infinite_rank_homomorphisms():
    s = S("surface genus=inf ends=fan(bloom(pt, g), two g g, repeated)")
    assert has_infinite_rank(s) == "yes"
    (ir,) = [c for c in classify(s).certificates if c.kind == "InfiniteRank"]
    assert len(set(ir.homomorphisms)) >= 3
    assert len(ir.targets) == 1


def test_infinite_rank_needs_repeated_copies():
    assert has_infinite_rank(S("surface genus=inf ends=fan(bloom(pt, g), two g g)")) == "no"


def test_witness_counts_punctures():
    w = classify(S("surface genus=0 ends=sum(cantor, pt, pt)")).witness
    assert (w.k_genus, w.k_boundary_count, w.k_punctures) == (0, 2, 2)


def test_witness_with_supplied_piece():
    w = classify(S("surface genus=2 ends=omega(sum(cantor, cacc(pt)))")).witness
    assert (w.k_genus, w.k_boundary_count) == (2, 2)
    assert len(w.A) == 1 and len(w.P) == 1


def test_missing_genus_blocks_local_cb():
    v = classify(S("surface genus=inf ends=line(sum(cacc(pt), cantor), g, !g)"))
    (nsc,) = [c for c in v.certificates if c.kind == "NoStabilizingComplement"]
    assert "genus" in nsc.missing


@pytest.mark.parametrize(
    "src, want",
    [
        ("surface genus=inf ends=line(sum(cantor g, cantor), g, g)", "yes"),
        ("surface genus=0 ends=cantor", "yes"),
        ("surface genus=inf ends=line(sum(cantor, cantor), g, !g)", "no"),
        ("surface genus=inf ends=line(sum(cantor, cantor), g, g)", "no"),
        ("surface genus=inf ends=line(sum(cacc(pt), cantor g), g, g)", "yes"),
        ("surface genus=inf ends=line(sum(pt, cantor g), g, g)", "no"),
        ("surface genus=2 ends=line(sum(cantor, cantor), !g, !g)", "no"),
    ],
)
def test_telescoping(src, want):
    assert is_telescoping(S(src)) == want


def test_non_tame_reports_reasons():
    v = classify(S("surface genus=0 ends=sum(omega(fan(bloom(pt), one)), omega(fan(bloom(pt), one)))"))
    reasons = dict(v.reasons)
    assert v.cb_generated == "unknown" and reasons["cb_generated"]
    assert v.globally_cb == "unknown" and "non-tame" in reasons["globally_cb"]


def test_trace_names_rules():
    v = classify(S("surface genus=inf ends=sum(pt g, pt g)"))
    assert [s.rule for s in v.explanation] == ["local.partition", "generated.tame", "global.complete"]
    assert all(s.citation for s in v.explanation)


def test_cacc_assumption_is_traced():
    v = classify(S("surface genus=0 ends=cacc(pt)"))
    assert v.explanation[0].rule == "model.cacc-attachment"


def test_scope_and_validity_errors():
    with pytest.raises(ScopeError):
        classify(Surface(0, parse_term("sum(pt, pt)")))
    with pytest.raises(TermError):
        classify(Surface(INF, parse_term("cantor")))


def test_verdict_is_frozen():
    v = classify(S("surface genus=0 ends=cantor"))
    with pytest.raises(dataclasses.FrozenInstanceError):
        v.globally_cb = "no"


@relaxed
@given(surfaces())
def test_verdicts_are_monotone(s):
    try:
        v = classify(s)
    except ScopeError:
        return
    v.check_monotone()
    for field in ("locally_cb", "cb_generated", "globally_cb"):
        value = getattr(v, field)
        assert value in ("yes", "no", "unknown")
        assert (value == "unknown") == (field in dict(v.reasons))


@relaxed
@given(countable_terms())
def test_countable_never_telescoping(t):
    assert is_telescoping(Surface(INF if has_genus_end(t) else 0, t)) == "no"
