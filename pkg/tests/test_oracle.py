import itertools

import pytest

from endspace.classify import is_self_similar
from endspace.normalize import is_homeomorphic
from endspace.oracle import (
    W,
    FiniteSpace,
    derivative_fingerprint,
    finite_homeo,
    finite_space_of,
    self_similar_bruteforce,
    stabilization_step,
)
from endspace.parser import parse_term
from endspace.terms import Pt, Sum


def space(flags):
    return FiniteSpace(tuple(flags))


def term(flags):
    return Pt(flags[0]) if len(flags) == 1 else Sum([Pt(f) for f in flags])


ALL_SMALL = [fl for n in range(1, 7) for fl in itertools.product([False, True], repeat=n)]


def test_finite_homeo_is_multiset_equality():
    assert finite_homeo(space([True, True]), space([True, True]))
    assert not finite_homeo(space([True, False]), space([True, True]))
    assert finite_homeo(space([True, False, False]), space([False, True, False]))


@pytest.mark.parametrize(
    "flags, want",
    [([False], True), ([True, True], False), ([True, False, True, False, False], False)],
)
def test_bruteforce_self_similarity(flags, want):
    assert self_similar_bruteforce(space(flags)) is want


def test_bruteforce_refuses_large_spaces():
    with pytest.raises(ValueError):
        self_similar_bruteforce(space([False] * 13))


def test_empty_space_rejected():
    with pytest.raises(ValueError):
        FiniteSpace(())


def test_finite_space_of_terms():
    assert finite_space_of(parse_term("sum(pt g, ord(0,2,none))")).flags == (True, False, False)
    with pytest.raises(ValueError):
        finite_space_of(parse_term("omega(pt)"))


def test_self_similarity_agrees_exhaustively():
    for fl in ALL_SMALL:
        assert self_similar_bruteforce(space(fl)) == (is_self_similar(term(fl)) == "yes"), fl


def test_homeomorphism_agrees_exhaustively():
    for a in ALL_SMALL:
        for b in ALL_SMALL:
            want = finite_homeo(space(a), space(b))
            assert (is_homeomorphic(term(a), term(b)) == "yes") == want, (a, b)
            assert (is_homeomorphic(term(a), term(b)) == "no") != want, (a, b)


def test_fingerprint_of_convergent_sequence():
    fp = derivative_fingerprint(parse_term("omega(pt)"), 3)
    assert fp == (((False, W),), ((False, 1),), ())


def test_fingerprint_of_cantor_is_empty():
    assert all(step == () for step in derivative_fingerprint(parse_term("cantor")))


def test_fingerprint_separates_cacc_from_cantor():
    assert derivative_fingerprint(parse_term("cacc(pt)"))[0] == ((False, W),)


def test_fingerprint_of_ordinals():
    fp = derivative_fingerprint(parse_term("ord(2,1,none)"), 4)
    assert fp == (((False, W),), ((False, W),), ((False, 1),), ())
    assert derivative_fingerprint(parse_term("omega(omega(pt))"), 4) == fp


def test_fingerprint_tracks_genus_flags():
    fp = derivative_fingerprint(parse_term("ord(1,1,ge(1))"), 2)
    assert fp == (((False, W),), ((True, 1),))


def test_stabilization_step():
    assert stabilization_step(parse_term("ord(3,2,none)")) == 3
    assert stabilization_step(parse_term("sum(pt, pt)")) == 0
    assert stabilization_step(parse_term("ord(w,1,none)"), depth=6) is None
