"""Canonical forms, Mazurkiewicz-Sierpinski invariants and a homeomorphism semidecision."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from . import kinds as K
from .oracle import derivative_fingerprint
from .order import classes
from .ordinal import ONE, OMEGA, ZERO, Ord
from .terms import (
    Cacc,
    Fan,
    GenusSpec,
    Iter,
    Line,
    Omega,
    OrdSpace,
    Pt,
    Sum,
    Term,
    has_genus_end,
    is_countable,
    is_finite_space,
)

Tri = Literal["yes", "no", "unknown"]
MIXED = "mixed"


class NotCountable(ValueError):
    """The term denotes an uncountable end space."""


@dataclass(frozen=True)
class MSInvariant:
    alpha: Ord
    n: int
    genus_profile: object  # a GenusSpec, or MIXED when genus ranks interleave planar ones

    def __str__(self):
        return f"(alpha={self.alpha}, n={self.n}, genus={self.genus_profile})"


@lru_cache(maxsize=4096)
def normalize(t: Term) -> Term:
    rebuilt = _rebuild(t)
    return rebuilt if rebuilt is not None else _syntactic(t)


def _rebuild(t: Term) -> Term | None:
    # Every end lies below a maximal class with a stable neighborhood, so its
    # neighborhood is consumed by that class's germ; the space is then the
    # disjoint union of the maximal germs.
    parts = []
    for c in classes(t).maximal():
        k = c.entity
        if c.is_family or not K.is_stable(k):
            return None
        if isinstance(k, K.Perf):
            parts.append(K.germ(k))
        elif c.count == K.ALEPH0 or c.count == K.CONT:
            return None
        elif not k.root and c.count > 1:
            parts.append(OrdSpace(k.gamma, c.count, GenusSpec(k.beta)))
        else:
            parts.extend([K.germ(k)] * c.count)
    return _assemble(parts)


def _assemble(parts: list) -> Term:
    flat = []
    for p in parts:
        flat.extend(p.children if isinstance(p, Sum) else (p,))
    return flat[0] if len(flat) == 1 else Sum(K.sort_terms(flat))


def _syntactic(t: Term) -> Term:
    if isinstance(t, Sum):
        return _assemble([normalize(c) for c in t.children])
    if isinstance(t, Omega):
        return Omega(normalize(t.child), t.g)
    if isinstance(t, Line):
        return Line(normalize(t.child), t.g1, t.g2)
    if isinstance(t, Cacc):
        return Cacc(normalize(t.child), t.g)
    if isinstance(t, Fan):
        schema = type(t.schema)(normalize(t.schema.base), *(() if isinstance(t.schema, Iter) else (t.schema.zflag,)))
        return Fan(schema, t.tops, t.repeated)
    return t


# countable invariants


def ms_invariant(t: Term) -> MSInvariant:
    if not is_countable(t):
        raise NotCountable(f"{t} is uncountable")
    alpha, n = _ms(t)
    return MSInvariant(alpha, n, genus_profile(t))


def _ms(t: Term) -> tuple[Ord, int]:
    if isinstance(t, Pt):
        return ZERO, 1
    if isinstance(t, Sum):
        got = [_ms(c) for c in t.children]
        top = max(a for a, _ in got)
        return top, sum(n for a, n in got if a == top)
    if isinstance(t, Omega):
        return _ms(t.child)[0] + ONE, 1
    if isinstance(t, Line):
        return _ms(t.child)[0] + ONE, 2
    if isinstance(t, OrdSpace):
        return t.alpha, t.n
    if isinstance(t, Fan) and isinstance(t.schema, Iter):
        return _ms(t.schema.base)[0] + OMEGA, len(t.tops)
    raise NotCountable(f"{t} is uncountable")


def genus_profile(t: Term):
    """GenusSpec whose threshold separates planar ranks from genus ranks, or MIXED."""
    inv = K.inventory(t)
    planar, genus = [], []
    for k in inv.explicit:
        r = K.rank(k)
        (genus if K.flag(k) else planar).append((r, r + ONE))
    for tf in inv.towers:
        h = K.ds_height(tf.root)
        (genus if tf.beta is not None else planar).append((h + tf.lo, h + tf.hi))
    if not genus:
        return GenusSpec.none()
    if not planar:
        return GenusSpec.all()
    low = min(lo for lo, _ in genus)
    if all(hi <= low for _, hi in planar):
        return GenusSpec.at_least(low)
    return MIXED


# homeomorphism


def is_homeomorphic(a: Term, b: Term, depth: int = 8) -> Tri:
    if normalize(a) == normalize(b):
        return "yes"
    ca, cb = is_countable(a), is_countable(b)
    if ca != cb or has_genus_end(a) != has_genus_end(b):
        return "no"
    if ca:
        ma, mb = ms_invariant(a), ms_invariant(b)
        if ma != mb:
            return "no"
        if ma.genus_profile != MIXED:
            # a countable compact pair is fixed by its rank data and a derived-set threshold
            return "yes"
    if is_finite_space(a) != is_finite_space(b):
        return "no"
    if derivative_fingerprint(a, depth) != derivative_fingerprint(b, depth):
        return "no"
    return "unknown"
