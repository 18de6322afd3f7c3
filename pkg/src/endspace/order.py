"""Equivalence classes of ends, the preorder between them, and tameness.

Classes come straight out of the kinds inventory: one class per explicit kind
and one symbolic entry per parametric family (a tower of ranks or a bloom
family indexed by k >= 1).  The preorder is containment of down-sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

from . import kinds as K
from .terms import Term

Tri = Literal["yes", "no", "unknown"]


@dataclass(frozen=True)
class EndClass:
    id: str
    entity: object  # a kind, a TowerFam or a BloomFam
    germ: Term
    locus: tuple
    cardinality: str
    count: object
    parametric: str | None = None

    @property
    def is_family(self) -> bool:
        return isinstance(self.entity, (K.TowerFam, K.BloomFam))

    @property
    def atom(self):
        return self.entity.atom() if self.is_family else self.entity

    @property
    def flag(self) -> bool:
        return K.flag(self.atom)

    @property
    def label(self) -> str:
        e = self.entity
        if isinstance(e, K.TowerFam):
            b = "" if e.beta is None else f";g>={e.beta}"
            return f"S[{K.ds_text(e.root)}](d{b}) for {e.lo} <= d < {e.hi}"
        if isinstance(e, K.BloomFam):
            return f"{e.which}_k<{K.text(e.desc)}> for k >= 1"
        return K.text(e)

    def is_finite(self) -> bool:
        return self.cardinality.startswith("finite")

    def __str__(self):
        return f"{self.id}: {self.label} [{self.cardinality}]"


def cardinality(count) -> str:
    if count == K.CONT:
        return "cantor"
    if count == K.ALEPH0:
        return "countably_infinite"
    return f"finite({count})"


def acc_atoms(c: EndClass) -> tuple:
    """Down-set of kinds accumulating at points of ``c``."""
    e = c.entity
    if isinstance(e, K.TowerFam):
        return (e.atom(),)
    if isinstance(e, K.BloomFam):
        return (K.Fam(e.desc, "B"),)
    if isinstance(e, K.Perf):
        return K.canon(e.below + (e,))
    return K.acc(e)


class ClassPoset:
    """Finite poset of end classes; immutable after construction."""

    def __init__(self, term: Term, classes: tuple):
        self.term = term
        self.classes = classes
        self._by_id = {c.id: c for c in classes}

    def __iter__(self):
        return iter(self.classes)

    def __len__(self):
        return len(self.classes)

    def __getitem__(self, cid: str) -> EndClass:
        return self._by_id[cid]

    def _check(self, *cs):
        for c in cs:
            if self._by_id.get(c.id) is not c:
                raise ValueError(f"class {c.id} does not belong to this poset")

    def leq(self, a: EndClass, b: EndClass) -> bool:
        self._check(a, b)
        return K.subset(a.atom, b.atom)

    def lt(self, a: EndClass, b: EndClass) -> bool:
        return self.leq(a, b) and not self.leq(b, a)

    def accumulation(self, a: EndClass, b: EndClass) -> bool:
        """Do points of class ``a`` accumulate at points of class ``b``?"""
        self._check(a, b)
        return K.ds_subset((a.atom,), acc_atoms(b))

    def maximal(self) -> list:
        return [c for c in self.classes if not any(self.lt(c, d) for d in self.classes)]

    def covers(self) -> list:
        """Pairs ``(a, b)`` with ``a < b`` and nothing strictly between."""
        out = []
        for a in self.classes:
            for b in self.classes:
                if self.lt(a, b) and not any(self.lt(a, c) and self.lt(c, b) for c in self.classes):
                    out.append((a, b))
        return out

    def immediate_predecessors(self, m: EndClass) -> list:
        # a tower approaches its limit rank without attaining a largest member
        return [
            c
            for c in self.classes
            if self.lt(c, m)
            and not isinstance(c.entity, K.TowerFam)
            and not any(self.lt(c, d) and self.lt(d, m) for d in self.classes)
        ]

    def to_dot(self) -> str:
        lines = ["digraph ends {", "  rankdir=BT;"]
        for c in self.classes:
            label = f"{c.label}\\n{c.cardinality}".replace('"', '\\"')
            lines.append(f'  {c.id} [label="{label}"];')
        for a, b in self.covers():
            lines.append(f"  {a.id} -> {b.id};")
        lines.append("}")
        return "\n".join(lines)


def _locus(inv: K.Inventory, key) -> tuple:
    return tuple(sorted(inv.loci.get(key, ())))


@lru_cache(maxsize=1024)
def classes(t: Term) -> ClassPoset:
    inv = K.inventory(t)
    found = []
    for k, count in inv.explicit.items():
        loc = _locus(inv, k) or _bloom_locus(inv, k)
        found.append((0, K.text(k), k, K.germ(k), loc, count, None))
    for tf in inv.towers:
        loc = _locus(inv, ("tower", tf.root, tf.beta))
        found.append((1, K.text(tf.atom()) + str(tf.lo), tf, K.germ(tf.member(tf.lo)), loc, K.ALEPH0,
                      f"rank d with {tf.lo} <= d < {tf.hi}"))
    for (desc, which), fam in sorted(inv.blooms.items(), key=lambda kv: (K.text(kv[0][0]), kv[0][1])):
        loc = _locus(inv, ("bloom", desc, which))
        first = next(j for j in range(1, len(fam.excluded) + 2) if j not in fam.excluded)
        found.append((2, K.text(fam.atom()), fam, K.germ(K.member(desc, which, first)), loc, fam.count,
                      "k >= 1" if not fam.excluded else f"k >= 1 except {sorted(fam.excluded)}"))
    found.sort(key=lambda r: (r[0], r[1]))
    out = tuple(
        EndClass(f"c{i}", ent, germ, loc, cardinality(count), count, param)
        for i, (_, _, ent, germ, loc, count, param) in enumerate(found)
    )
    return ClassPoset(t, out)


def _bloom_locus(inv: K.Inventory, k) -> tuple:
    # members split off a finite bloom family keep the family's locus
    for desc, which in inv.blooms:
        if K.member_index(desc, which, k) is not None:
            return _locus(inv, ("bloom", desc, which))
    return ()


def leq(poset: ClassPoset, a: EndClass, b: EndClass) -> bool:
    return poset.leq(a, b)


def maximal_classes(t: Term) -> list:
    return classes(t).maximal()


def stable_neighborhood(c: EndClass) -> Term | None:
    """Canonical stable germ, or None when small neighborhoods do not re-embed."""
    if not c.is_family and not K.is_stable(c.entity):
        return None
    return c.germ


def is_tame(t: Term) -> Tri:
    poset = classes(t)
    for m in poset.maximal():
        if stable_neighborhood(m) is None:
            return "no"
        if any(stable_neighborhood(p) is None for p in poset.immediate_predecessors(m)):
            return "no"
    return "yes"
