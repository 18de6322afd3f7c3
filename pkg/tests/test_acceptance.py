"""The eight acceptance criteria, one test each.

Run with ``pytest tests/test_acceptance.py`` (a PASS/FAIL line per criterion is
printed in the terminal summary) or directly with ``python3 tests/test_acceptance.py``.
"""

import random
import sys

import pytest

from endspace.certify import verify_certificate
from endspace.classify import classify, is_telescoping
from endspace.cli import fixtures_dir
from endspace.order import is_tame
from endspace.parser import parse_any, parse_surface, print_term
from endspace.ordinal import Ord
from endspace.terms import GenusSpec, Line, Omega, OrdSpace, Pt, Sum, has_genus_end, is_countable, validate

RESULTS: dict = {}


def record(n, title, failures, total):
    ok = not failures
    detail = f"{total - len(failures)}/{total}" + ("" if ok else f"; first failure: {failures[0]}")
    RESULTS[n] = (ok, title, detail)
    return ok, detail


def trichotomy(s):
    v = classify(s)
    return v.locally_cb, v.cb_generated, v.globally_cb


# 1: countable genus-zero grid

ALPHAS = {"1": False, "2": False, "w": True, "w+1": False, "w^2": True, "w^w": True}  # value: is a limit


def test_criterion_1_countable_grid():
    failures = []
    for a, limit in ALPHAS.items():
        for n in (1, 2, 3):
            got = trichotomy(parse_surface(f"surface genus=0 ends=ord({a},{n},none)"))
            if n == 1:
                want = ("yes", "yes", "yes")
            elif limit:
                want = ("yes", "no", "no")
            else:
                want = ("yes", "yes", "no")
            if got != want:
                failures.append(f"ord({a},{n}): {got} != {want}")
    ok, detail = record(1, "countable genus-zero grid", failures, 18)
    assert ok, detail


# 2: finite nonzero genus

FINITE_GENUS_ENDS = ["cantor", "omega(pt)", "sum(cantor, pt)", "ord(w,2,none)", "cacc(omega(pt))"]


def test_criterion_2_finite_genus():
    failures = []
    for g in (1, 2, 5):
        for ends in FINITE_GENUS_ENDS:
            s = parse_surface(f"surface genus={g} ends={ends}")
            v = classify(s)
            kinds = [c.kind for c in v.certificates]
            if v.globally_cb != "no" or "FiniteNonzeroGenus" not in kinds:
                failures.append(f"genus {g}, {ends}: {v.globally_cb}, {kinds}")
    ok, detail = record(2, "finite nonzero genus", failures, 15)
    assert ok, detail


# 3: telescoping


def random_countable_term(rng, depth=3):
    """Seeded generator for the countable fragment (flags forced where required)."""
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return Pt(rng.random() < 0.3)
        alpha = rng.choice([Ord.of(0), Ord.of(1), Ord.of(2), Ord.of(3), Ord.w_pow(1), Ord.w_pow(2)])
        gs = rng.choice([GenusSpec.none(), GenusSpec.all(), GenusSpec.at_least(min(alpha, Ord.of(1)))])
        return OrdSpace(alpha, rng.randint(1, 3), gs)
    kind = rng.choice(["sum", "omega", "line"])
    if kind == "sum":
        return Sum([random_countable_term(rng, depth - 1) for _ in range(rng.randint(2, 3))])
    child = random_countable_term(rng, depth - 1)
    forced = has_genus_end(child)
    if kind == "omega":
        return Omega(child, forced or rng.random() < 0.5)
    return Line(child, forced or rng.random() < 0.5, forced or rng.random() < 0.5)


def fifty_countable_terms():
    rng = random.Random(20240607)
    seen = {}
    while len(seen) < 50:
        t = random_countable_term(rng)
        if not validate(t) and is_countable(t):
            seen.setdefault(print_term(t), t)
    return list(seen.values())


def test_criterion_3_telescoping():
    failures = []
    s = parse_surface("surface genus=inf ends=line(sum(cantor g, cantor), g, g)")
    if is_telescoping(s) != "yes" or classify(s).globally_cb != "yes":
        failures.append("line(sum(cantor g, cantor), g, g) is not telescoping and globally CB")
    # the mixed-flag variants: a genus child would force both flags, so the children are planar
    for ends in ("line(sum(cantor, cantor), g, !g)", "line(sum(cacc(pt), cantor), g, !g)"):
        if is_telescoping(parse_surface(f"surface genus=inf ends={ends}")) != "no":
            failures.append(f"{ends} reported telescoping")
    terms = fifty_countable_terms()
    for t in terms:
        s = parse_surface(f"surface genus={'inf' if has_genus_end(t) else 0} ends={print_term(t)}")
        if is_telescoping(s) != "no":
            failures.append(f"countable {print_term(t)} reported telescoping")
    ok, detail = record(3, "telescoping", failures, 3 + len(terms))
    assert ok, detail


# 4: obstructions to CB generation


def test_criterion_4_obstructions():
    failures = []
    s = parse_surface("surface genus=0 ends=ord(w,2,none)")
    v = classify(s)
    if v.cb_generated != "no" or "LimitType" not in [c.kind for c in v.certificates]:
        failures.append("ord(w,2,none): no LimitType")
    s = parse_surface("surface genus=inf ends=fan(bloom(pt, g), two g g, repeated)")
    v = classify(s)
    ir = [c for c in v.certificates if c.kind == "InfiniteRank"]
    if v.cb_generated != "no" or not ir or len(set(ir[0].homomorphisms)) < 3:
        failures.append("repeated bloom fan: no InfiniteRank with three homomorphisms")
    for c in v.certificates:
        if not verify_certificate(s, c):
            failures.append(f"{c.kind} certificate does not verify")
    ok, detail = record(4, "limit type and infinite rank", failures, 2)
    assert ok, detail


# 5: finite genus with a supplied piece


def test_criterion_5_two_boundary_components():
    failures = []
    for g in (1, 2, 7):
        v = classify(parse_surface(f"surface genus={g} ends=omega(sum(cantor, cacc(pt)))"))
        w = v.witness
        if v.locally_cb != "yes" or w is None:
            failures.append(f"genus {g}: not locally CB")
        elif (w.k_genus, w.k_boundary_count) != (g, 2):
            failures.append(f"genus {g}: K has genus {w.k_genus} and {w.k_boundary_count} boundary components")
        if v.globally_cb != "no":
            failures.append(f"genus {g}: globally {v.globally_cb}")
    ok, detail = record(5, "finite genus witness K", failures, 3)
    assert ok, detail


# 6: classical surfaces

CLASSICAL = {
    "Loch Ness monster": ("surface genus=inf ends=pt g", ("yes", "yes", "yes")),
    "Jacob's ladder": ("surface genus=inf ends=sum(pt g, pt g)", ("yes", "yes", "no")),
    "Cantor tree": ("surface genus=0 ends=cantor", ("yes", "yes", "yes")),
    "blooming Cantor tree": ("surface genus=inf ends=cantor g", ("yes", "yes", "yes")),
}


def test_criterion_6_classical_surfaces():
    failures = []
    for name, (text, want) in CLASSICAL.items():
        got = trichotomy(parse_surface(text))
        if got != want:
            failures.append(f"{name}: {got} != {want}")
    ok, detail = record(6, "classical surfaces", failures, 4)
    assert ok, detail


# 7: property suites (the suites live beside the modules they exercise)


def property_suites():
    import test_classify
    import test_normalize
    import test_oracle
    import test_order
    import test_parser

    return {
        "leq preorder": test_order.test_leq_is_a_preorder,
        "accumulation implies leq": test_order.test_accumulation_implies_leq,
        "normalize idempotent": test_normalize.test_normalize_idempotent,
        "fingerprint preserved by normalize": test_normalize.test_normalize_preserves_fingerprint,
        "parser round trip": test_parser.test_round_trip_terms,
        "verdict monotonicity": test_classify.test_verdicts_are_monotone,
        "maximal classes": test_order.test_maximal_classes_exist_and_dominate,
        "oracle self-similarity, exhaustive": test_oracle.test_self_similarity_agrees_exhaustively,
        "oracle homeomorphism, exhaustive": test_oracle.test_homeomorphism_agrees_exhaustively,
    }


def test_criterion_7_property_suites():
    failures = []
    suites = property_suites()
    for name, prop in suites.items():
        try:
            prop()
        except Exception as e:  # hypothesis re-raises the shrunk counterexample
            failures.append(f"{name}: {type(e).__name__}: {e}"[:300])
    ok, detail = record(7, "property suites", failures, len(suites))
    assert ok, detail


# 8: honesty on non-tame inputs

# Rules whose conclusions do not depend on tameness.
TAME_FREE = {
    "local.maximal-family", "local.unstable-maximal", "local.self-similar", "local.no-stabilizing-complement",
    "local.partition", "generated.not-local", "generated.limit-type", "generated.infinite-rank",
    "generated.global", "global.finite-genus", "global.self-similar", "global.telescoping",
    "global.nondisplaceable", "global.not-generated", "model.cacc-attachment",
}


def honesty_fixtures():
    out = []
    for path in sorted(fixtures_dir().glob("*.surf")):
        s = parse_any(path.read_text())
        if is_tame(s.ends) != "yes":
            out.append((path.stem, s))
    return out


def test_criterion_8_honesty():
    failures = []
    cases = honesty_fixtures()
    unknowns = 0
    for name, s in cases:
        v = classify(s)
        reasons = dict(v.reasons)
        for field in ("locally_cb", "cb_generated", "globally_cb"):
            if getattr(v, field) == "unknown":
                unknowns += 1
                if not reasons.get(field):
                    failures.append(f"{name}: {field} unknown without a reason")
        for step in v.explanation:
            if step.result in ("yes", "no") and step.rule not in TAME_FREE:
                failures.append(f"{name}: definite {step.result} from tame-only rule {step.rule}")
        for c in v.certificates:
            if not verify_certificate(s, c):
                failures.append(f"{name}: {c.kind} does not verify")
        if v.certificates and v.globally_cb != "no":
            failures.append(f"{name}: certificate present but globally {v.globally_cb}")
    if len(cases) < 5:
        failures.append(f"only {len(cases)} non-tame fixtures")
    if unknowns == 0:
        failures.append("no unknown verdicts on non-tame fixtures")
    ok, detail = record(8, "honesty on non-tame fixtures", failures, len(cases))
    assert ok, detail


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
