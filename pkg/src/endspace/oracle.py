"""Brute-force and truncation checkers, independent of the kinds engine.

Nothing here imports the symbolic machinery: fingerprints are computed on
finite trees built directly from the term syntax, so they can be used to
cross-check normalization and rank computations.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from itertools import product

from .ordinal import Ord
from .terms import Bloom, Cacc, Cantor, Fan, GenusSpec, Line, Omega, OrdSpace, Pt, Sum, Term, has_genus_end

W = "w"  # countably many
BRUTE_FORCE_CAP = 12


@dataclass(frozen=True)
class FiniteSpace:
    flags: tuple

    def __post_init__(self):
        if not self.flags:
            raise ValueError("a finite space needs at least one point")

    def __len__(self):
        return len(self.flags)


def finite_homeo(a: FiniteSpace, b: FiniteSpace) -> bool:
    return Counter(a.flags) == Counter(b.flags)


def self_similar_bruteforce(f: FiniteSpace) -> bool:
    """Every two-part clopen partition has a part holding a copy of the whole."""
    if len(f) > BRUTE_FORCE_CAP:
        raise ValueError(f"refusing brute force above {BRUTE_FORCE_CAP} points")
    whole = Counter(f.flags)
    for mask in product((0, 1), repeat=len(f)):
        parts = [Counter(x for x, m in zip(f.flags, mask) if m == side) for side in (0, 1)]
        if not any(all(p[k] >= n for k, n in whole.items()) for p in parts):
            return False
    return True


def finite_space_of(t: Term) -> FiniteSpace:
    flags = []

    def walk(u):
        if isinstance(u, Pt):
            flags.append(u.g)
        elif isinstance(u, Sum):
            for c in u.children:
                walk(c)
        elif isinstance(u, OrdSpace) and u.alpha.is_zero:
            flags.extend([u.gs.genus_at(u.alpha)] * u.n)
        else:
            raise ValueError(f"not a finite space: {u}")

    walk(t)
    return FiniteSpace(tuple(flags))


# truncations


@dataclass(frozen=True)
class TPoint:
    flag: bool


@dataclass(frozen=True)
class TPerfect:
    """A Cantor set of cut points, optionally with copies of ``attached`` accumulating on it."""

    flag: bool
    attached: object = None


@dataclass(frozen=True)
class TFamily:
    """Infinitely many copies of each member, converging to the cut points ``tops``."""

    members: tuple
    tops: tuple


@dataclass(frozen=True)
class TSum:
    parts: tuple


@dataclass(frozen=True)
class Truncation:
    depth: int
    root: object


def truncate(t: Term, depth: int = 8) -> Truncation:
    return Truncation(depth, _trunc(t, depth + 1))


def _trunc(t: Term, reach: int):
    if isinstance(t, Pt):
        return TPoint(t.g)
    if isinstance(t, Cantor):
        return TPerfect(t.g)
    if isinstance(t, Sum):
        return TSum(tuple(_trunc(c, reach) for c in t.children))
    if isinstance(t, Omega):
        return TFamily((_trunc(t.child, reach),), (t.g,))
    if isinstance(t, Line):
        return TFamily((_trunc(t.child, reach),), (t.g1, t.g2))
    if isinstance(t, Cacc):
        return TPerfect(t.g, _trunc(t.child, reach))
    if isinstance(t, OrdSpace):
        one = _ord_tree(t.alpha, t.gs, reach)
        return one if t.n == 1 else TSum((one,) * t.n)
    if isinstance(t, Fan):
        base = _trunc(t.schema.base, reach)
        lim = has_genus_end(t.schema.base)
        members = []
        prev = base  # omega^(k-1)(base)
        for _ in range(reach):
            if isinstance(t.schema, Bloom):
                members.append(TFamily((TPerfect(lim, prev),), (t.schema.zflag,)))
            prev = TFamily((prev,), (lim,))
            if not isinstance(t.schema, Bloom):
                members.append(prev)
        return TFamily(tuple(members), t.tops)
    raise TypeError(f"not a term: {t!r}")


def _ord_tree(alpha: Ord, gs: GenusSpec, reach: int):
    # omega^alpha + 1; ranks at or beyond the reach are indistinguishable
    if alpha.is_finite and int(alpha) <= reach:
        x = TPoint(gs.genus_at(Ord.of(0)))
        for r in range(1, int(alpha) + 1):
            x = TFamily((x,), (gs.genus_at(Ord.of(r)),))
        return x
    members = tuple(_ord_tree(Ord.of(r), gs, reach) for r in range(reach + 1))
    return TFamily(members, (gs.genus_at(alpha),))


def _cadd(a, b):
    return W if W in (a, b) else a + b


def _profile(node) -> tuple[Counter, float]:
    """Counts of points by (rank, flag) below the perfect kernel, and the height."""
    if isinstance(node, TPoint):
        return Counter({(0, node.flag): 1}), 1
    if isinstance(node, TPerfect):
        out = Counter()
        if node.attached is not None:
            sub, _ = _profile(node.attached)
            out = Counter({k: W for k in sub})
        return out, math.inf
    if isinstance(node, TSum):
        out: dict = {}
        h = 0
        for p in node.parts:
            sub, hp = _profile(p)
            for k, c in sub.items():
                out[k] = _cadd(out.get(k, 0), c)
            h = max(h, hp)
        return Counter(out), h
    if isinstance(node, TFamily):
        out = {}
        h = 0
        for m in node.members:
            sub, hm = _profile(m)
            for k in sub:
                out[k] = W
            h = max(h, hm)
        if h != math.inf:
            for f in node.tops:
                out[(h, f)] = _cadd(out.get((h, f), 0), 1)
        return Counter(out), h + 1
    raise TypeError(node)


def derivative_fingerprint(t: Term, depth: int = 8) -> tuple:
    """Per derivative step, the sorted ``(flag, count)`` pairs of removed isolated points."""
    tr = truncate(t, depth)
    counts, _ = _profile(tr.root)
    steps = []
    for k in range(depth):
        steps.append(tuple(sorted((f, c) for (r, f), c in counts.items() if r == k)))
    return tuple(steps)


def stabilization_step(t: Term, depth: int = 8) -> int | None:
    """First derivative step after which at most finitely many points remain, or None."""
    fp = derivative_fingerprint(t, depth)
    for k, step in enumerate(fp):
        if all(c != W for _, c in step) and all(not s for s in fp[k + 1:]):
            return k
    return None
