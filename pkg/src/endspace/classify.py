"""Coarse-boundedness verdicts for mapping class groups of infinite-type surfaces.

Every predicate is three-valued.  A definite answer is only given when a
structural rule applies; otherwise the verdict is ``unknown`` together with
the first question that blocked it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from . import kinds as K
from .normalize import is_homeomorphic
from .order import ClassPoset, EndClass, acc_atoms, classes, is_tame, stable_neighborhood
from .terms import INF, Cacc, Surface, Term, is_countable, isolated_planar_count, require_valid, subterms

Tri = Literal["yes", "no", "unknown"]


# obstructions


@dataclass(frozen=True)
class FiniteNonzeroGenus:
    genus: int
    kind = "FiniteNonzeroGenus"

    def describe(self) -> str:
        return f"genus {self.genus}: a subsurface carrying all the genus meets each of its images"


@dataclass(frozen=True)
class InvariantFiniteEndSet:
    size: int
    classes: tuple  # kind texts of the finite classes used
    kind = "InvariantFiniteEndSet"

    def describe(self) -> str:
        return f"{self.size} ends in finite classes {', '.join(self.classes)} form an invariant set"


@dataclass(frozen=True)
class PantsXY:
    x: str  # a perfect class whose closure is a Cantor set
    y: str  # a class whose closure is disjoint from that of x
    kind = "PantsXY"

    def describe(self) -> str:
        return f"closures of {self.x} (a Cantor set) and {self.y} are disjoint closed invariant sets"


@dataclass(frozen=True)
class LimitType:
    x: str  # the finite maximal class forming the invariant set
    family: str  # the cofinal family of pairwise inequivalent types
    witness: str  # where the family also appears away from x
    kind = "LimitType"

    def describe(self) -> str:
        return f"types {self.family} accumulate cofinally at {self.x} and also near {self.witness}"


@dataclass(frozen=True)
class InfiniteRank:
    family: str
    targets: tuple
    homomorphisms: tuple
    kind = "InfiniteRank"

    def describe(self) -> str:
        return f"countable classes {self.family} each cross between {', '.join(self.targets)}"


@dataclass(frozen=True)
class NoStabilizingComplement:
    maximal: str
    missing: tuple
    kind = "NoStabilizingComplement"

    def describe(self) -> str:
        return f"small neighborhoods of {self.maximal} leave behind {', '.join(self.missing)} with nowhere to go"


Obstruction = (
    FiniteNonzeroGenus | InvariantFiniteEndSet | PantsXY | LimitType | InfiniteRank | NoStabilizingComplement
)


@dataclass(frozen=True)
class KWitness:
    """Finite-type surface K whose complementary regions realize the A/P partition."""

    k_genus: int
    k_boundary_count: int
    k_punctures: int
    A: tuple  # self-similar piece terms
    P: tuple  # (piece term, index into A of the piece it embeds in)


@dataclass(frozen=True)
class Step:
    rule: str
    citation: str
    detail: str
    result: str


@dataclass(frozen=True)
class Verdict:
    locally_cb: Tri
    cb_generated: Tri
    globally_cb: Tri
    explanation: tuple = ()
    witness: KWitness | None = None
    certificates: tuple = ()
    reasons: tuple = ()  # (verdict field, why it is unknown)

    def check_monotone(self) -> None:
        order = {"no": 0, "unknown": 1, "yes": 2}
        g, c, loc = order[self.globally_cb], order[self.cb_generated], order[self.locally_cb]
        assert not (self.globally_cb == "yes" and c < 2), "globally CB must be CB generated"
        assert not (self.cb_generated == "yes" and loc < 2), "CB generated needs locally CB"
        assert not (self.locally_cb == "no" and c > 0), "not locally CB is not CB generated"
        assert not (self.cb_generated == "no" and g > 0), "not CB generated is not globally CB"
        if self.certificates:
            assert self.globally_cb == "no", "a certificate contradicts a global yes"


CITE = {
    "global": "classification of globally CB mapping class groups",
    "selfsimilar": "self-similar end spaces give CB mapping class groups",
    "telescoping": "telescoping end spaces give CB mapping class groups",
    "nondisplace": "a nondisplaceable finite-type subsurface rules out global CB",
    "genus": "finite nonzero genus: a subsurface of full genus is nondisplaceable",
    "finiteset": "an invariant finite set of at least three ends yields a nondisplaceable subsurface",
    "pants": "two disjoint closed invariant end sets, one a Cantor set, yield nondisplaceable pants",
    "local": "classification of locally CB mapping class groups by an A/P partition",
    "stable": "maximal ends of a locally CB surface have stable neighborhoods",
    "complement": "condition on re-embedding neighborhoods of a maximal end over the complement",
    "generated": "classification of CB generated groups for tame surfaces",
    "limit": "limit type obstructs CB generation",
    "rank": "infinite rank obstructs CB generation",
    "countable": "countable genus-zero special case (rank and number of maximal ends)",
    "model": "modelling assumption of the term language",
}


# self-similarity and telescoping


def is_self_similar(t: Term) -> Tri:
    top = classes(t).maximal()
    if len(top) != 1:
        return "no"
    c = top[0]
    if c.is_family:
        return "no"
    if isinstance(c.entity, K.Perf):
        return "yes"
    if c.count != 1:
        return "no"
    # a lone maximal end of a self-similar space has the whole space as a stable neighborhood
    germ = stable_neighborhood(c)
    if germ is None:
        return "no"
    return is_homeomorphic(germ, t)


def is_telescoping(s: Surface) -> Tri:
    t = s.ends
    if is_countable(t):
        return "no"
    if s.genus not in (0, INF):
        return "no"
    top = classes(t).maximal()
    if len(top) != 1 or top[0].is_family:
        return "no"
    c = top[0]
    if isinstance(c.entity, K.Perf):
        return "yes"
    if c.count != 2 or not K.is_stable(c.entity):
        return "no"
    gens = K.acc(c.entity)
    if not gens or not all(isinstance(a, K.Perf) for a in gens):
        # a non-perfect generator has a class accumulating only at the two maximal ends
        return "no"
    if c.flag and not any(a.flag for a in gens):
        # genus would sit only at the two special ends
        return "no"
    return "yes"


# certificates


def _closure(poset: ClassPoset, c: EndClass) -> set:
    return {d.id for d in poset if d is c or poset.accumulation(c, d)}


def finite_class_points(poset: ClassPoset) -> tuple[int | float, list]:
    total, used = 0, []
    for c in poset:
        if not c.is_finite():
            continue
        used.append(c)
        total += math.inf if c.is_family else c.count
    return total, used


def nondisplaceable_certificates(s: Surface) -> list:
    out = []
    if s.genus not in (0, INF):
        out.append(FiniteNonzeroGenus(s.genus))
    poset = classes(s.ends)
    total, used = finite_class_points(poset)
    if total >= 3:
        size = int(min(total, sum(c.count if not c.is_family else 3 for c in used)))
        out.append(InvariantFiniteEndSet(size, tuple(c.label for c in used)))
    pants = _pants(poset)
    if pants:
        out.append(pants)
    return out


def _pants(poset: ClassPoset) -> PantsXY | None:
    for c in poset:
        if c.is_family or not isinstance(c.entity, K.Perf):
            continue
        cx = _closure(poset, c)
        for d in poset:
            if d is not c and not (cx & _closure(poset, d)):
                return PantsXY(c.label, d.label)
    return None


def nondisplaceable_certificate(s: Surface):
    found = nondisplaceable_certificates(s)
    return found[0] if found else None


# obstructions to CB generation


def _limit_type(poset: ClassPoset) -> LimitType | None:
    for x in poset.maximal():
        if x.is_family or not x.is_finite():
            continue
        gens = acc_atoms(x)
        loose = {a.desc for a in gens if isinstance(a, K.Loose)}
        for a in gens:
            if isinstance(a, K.Tower) or (isinstance(a, K.Fam) and a.desc not in loose):
                if x.count >= 2:
                    return LimitType(x.label, K.text(a), f"another point of {x.label}")
                # a family member never holds the whole cofinal family, so y is a single class
                for y in poset:
                    if y is x or y.is_family:
                        continue
                    if K.subset(a, y.atom) and not poset.accumulation(y, x):
                        return LimitType(x.label, K.text(a), y.label)
    return None


def has_limit_type(s: Surface) -> Tri:
    return "yes" if _limit_type(classes(s.ends)) else "no"


def _infinite_rank(poset: ClassPoset) -> tuple[Tri, InfiniteRank | None]:
    verdict: Tri = "no"
    for fam in poset:
        e = fam.entity
        if not isinstance(e, K.BloomFam) or e.which != "z" or e.count != K.ALEPH0:
            continue
        targets = [d for d in poset if d is not fam and poset.accumulation(fam, d)]
        if not targets or not all(d.is_finite() and not d.is_family for d in targets):
            verdict = "unknown"
            continue
        if sum(d.count for d in targets) < 2:
            continue
        x = targets[0].label
        hom = tuple(
            f"l_{n}(phi) = #{{z in E(z_{n}) near {x}: phi(z) away from {x}}} - #{{z in E(z_{n}) away from {x}: phi(z) near {x}}}"
            for n in (1, 2, 3)
        )
        return "yes", InfiniteRank(fam.label, tuple(d.label for d in targets), hom)
    return verdict, None


def has_infinite_rank(s: Surface) -> Tri:
    return _infinite_rank(classes(s.ends))[0]


# local CB


def _local(s: Surface, poset: ClassPoset, steps: list) -> tuple[Tri, KWitness | None, list]:
    t = s.ends
    top = poset.maximal()
    fams = [c for c in top if c.is_family]
    if fams:
        steps.append(Step("local.maximal-family", CITE["local"],
                          f"{fams[0].label} gives infinitely many maximal types", "no"))
        return "no", None, []
    for c in top:
        if stable_neighborhood(c) is None:
            steps.append(Step("local.unstable-maximal", CITE["stable"], f"{c.label} has no stable neighborhood", "no"))
            return "no", None, []
    if s.genus in (0, INF) and is_self_similar(t) == "yes":
        steps.append(Step("local.self-similar", CITE["selfsimilar"], "empty K; the whole group is CB", "yes"))
        return "yes", None, []

    failures = []
    supplied: dict = {}
    for x in top:
        if x.count != 1:
            continue
        missing, perf = [], []
        for a in K.acc(x.entity) if not isinstance(x.entity, K.Perf) else ():
            if any(K.ds_subset((a,), acc_atoms(y)) for y in top if y is not x):
                continue
            if isinstance(a, K.Perf):
                perf.append(a)
            else:
                missing.append(K.text(a))
        if x.flag and not any(c.flag for c in top if c is not x) and not any(a.flag for a in perf):
            missing.append("genus")
        if missing:
            failures.append(NoStabilizingComplement(x.label, tuple(missing)))
        elif perf:
            supplied[x.id] = tuple(perf)
    if failures:
        steps.append(Step("local.no-stabilizing-complement", CITE["complement"], failures[0].describe(), "no"))
        return "no", None, failures

    pieces, planar_points = [], 0
    index = {}
    for c in top:
        if isinstance(c.entity, K.Perf):
            pieces += [c.germ, c.germ]
            continue
        if c.entity == K.mk(False, ()):
            planar_points += c.count  # isolated planar maximal ends become punctures of K
            continue
        index[c.id] = len(pieces)
        pieces += [c.germ] * c.count
    extra = tuple((K.germ_ds(K.canon(gens)), index[cid]) for cid, gens in supplied.items())
    punct = isolated_planar_count(t)
    w = KWitness(
        k_genus=0 if s.genus == INF else s.genus,
        k_boundary_count=len(pieces) + len(extra),
        k_punctures=int(punct) if punct != INF else 0,
        A=tuple(pieces),
        P=extra,
    )
    steps.append(Step("local.partition", CITE["local"],
                      f"K of genus {w.k_genus} with {w.k_boundary_count} boundary components", "yes"))
    return "yes", w, []


# the pipeline


@lru_cache(maxsize=1024)
def _classify(s: Surface) -> Verdict:
    require_valid(s)
    t = s.ends
    poset = classes(t)
    steps: list = []
    if any(isinstance(u, Cacc) for u in subterms(t)):
        steps.append(Step("model.cacc-attachment", CITE["model"],
                          "cacc copies are attached homogeneously; the pair is taken to be unique up to homeomorphism",
                          "assumed"))
    countable = is_countable(t)
    tame = is_tame(t)

    local, witness, local_certs = _local(s, poset, steps)

    certs = nondisplaceable_certificates(s)
    lt = _limit_type(poset)
    ir, ir_cert = _infinite_rank(poset)
    obstructions = [o for o in (lt, ir_cert) if o is not None]

    ss = is_self_similar(t)
    tel = is_telescoping(s)
    reasons = {}

    # CB generation
    if local == "no":
        gen = "no"
        steps.append(Step("generated.not-local", CITE["generated"], "not locally CB", "no"))
    elif lt is not None:
        gen = "no"
        steps.append(Step("generated.limit-type", CITE["limit"], lt.describe(), "no"))
    elif ir_cert is not None:
        gen = "no"
        steps.append(Step("generated.infinite-rank", CITE["rank"], ir_cert.describe(), "no"))
    elif s.genus in (0, INF) and "yes" in (ss, tel):
        gen = "yes"
        steps.append(Step("generated.global", CITE["global"], "globally CB groups are CB generated", "yes"))
    elif local == "yes" and tame == "yes" and ir == "no":
        gen = "yes"
        steps.append(Step("generated.tame", CITE["generated"], "tame, finite rank and not limit type", "yes"))
    else:
        gen = "unknown"
        reasons["cb_generated"] = "non-tame: finite rank and no limit type do not settle CB generation"
        if ir == "unknown":
            reasons["cb_generated"] = "infinite rank undecided: a countable family accumulates at an infinite class"
        steps.append(Step("generated.undecided", CITE["generated"], reasons["cb_generated"], "unknown"))

    # global CB
    if s.genus not in (0, INF):
        glob = "no"
        steps.append(Step("global.finite-genus", CITE["genus"], f"genus {s.genus}", "no"))
    elif ss == "yes":
        glob = "yes"
        steps.append(Step("global.self-similar", CITE["selfsimilar"], "one maximal type with a stable germ", "yes"))
    elif tel == "yes":
        glob = "yes"
        steps.append(Step("global.telescoping", CITE["telescoping"], "two maximal ends fed by perfect classes", "yes"))
    elif certs:
        glob = "no"
        cite = CITE["finiteset"] if certs[0].kind == "InvariantFiniteEndSet" else CITE["pants"]
        steps.append(Step("global.nondisplaceable", cite, certs[0].describe(), "no"))
    elif gen == "no":
        glob = "no"
        steps.append(Step("global.not-generated", CITE["global"], "not CB generated", "no"))
    elif countable or tame == "yes":
        glob = "no"
        cite = CITE["countable"] if countable and s.genus == 0 else CITE["global"]
        steps.append(Step("global.complete", cite, "neither self-similar nor telescoping", "no"))
    else:
        glob = "unknown"
        reasons["globally_cb"] = "non-tame uncountable: the global classification needs tameness"
        steps.append(Step("global.non-tame", CITE["global"], reasons["globally_cb"], "unknown"))

    if local == "unknown":
        reasons["locally_cb"] = "partition conditions undecided"
    v = Verdict(local, gen, glob, tuple(steps), witness, tuple(certs + obstructions + local_certs),
                tuple(reasons.items()))
    v.check_monotone()
    return v


def classify(s: Surface) -> Verdict:
    return _classify(s)
