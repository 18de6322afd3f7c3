"""Semantic engine: kinds of ends and their down-sets.

A *kind* names an equivalence class of ends by what accumulates onto it.

* ``Scat(root, gamma, beta)`` is a scattered point of relative rank ``gamma``
  above the down-set ``root``; ranks ``>= beta`` carry genus.
* ``Perf(flag, below)`` is a point of a perfect set that is also accumulated
  by everything in ``below``.
* ``Loose(desc, pattern, flag)`` is the accumulation point of a one-shot
  bloom fan.  Its small neighbourhoods keep losing types, so it has no stable
  neighbourhood.

A down-set is a canonical tuple of atoms.  An atom is a kind (standing for
everything below it), a ``Tower`` (an unbounded increasing chain of scattered
ranks) or a ``Fam`` (the union of a bloom family).  Containment between
atoms is decided atom by atom, which is exact for the directed families the
grammar produces.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cmp_to_key, lru_cache
from typing import Union

from .ordinal import OMEGA, ONE, ZERO, Ord, sub
from .terms import (
    Bloom,
    Cacc,
    Cantor,
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
)

ALEPH0 = "aleph0"
CONT = "continuum"


def cadd(a, b):
    if CONT in (a, b):
        return CONT
    if ALEPH0 in (a, b):
        return ALEPH0
    return a + b


def is_infinite(c) -> bool:
    return c in (ALEPH0, CONT)


def times_aleph0(c):
    if c == 0:
        return 0
    return CONT if c == CONT else ALEPH0


def _cached_hash(cls):
    names = tuple(cls.__dataclass_fields__)

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((cls.__name__,) + tuple(getattr(self, n) for n in names))
            object.__setattr__(self, "_h", h)
        return h

    cls.__hash__ = __hash__
    return cls


@_cached_hash
@dataclass(frozen=True)
class BloomDesc:
    d1: tuple
    cf: bool
    zf: bool


@_cached_hash
@dataclass(frozen=True)
class Perf:
    flag: bool
    below: tuple = ()


@_cached_hash
@dataclass(frozen=True)
class Scat:
    root: tuple
    gamma: Ord
    beta: Ord | None


@_cached_hash
@dataclass(frozen=True)
class Loose:
    desc: BloomDesc
    pattern: str  # 'all', 'odd' or 'even'
    flag: bool


@_cached_hash
@dataclass(frozen=True)
class Tower:
    root: tuple
    beta: Ord | None
    lam: Ord


@_cached_hash
@dataclass(frozen=True)
class Fam:
    desc: BloomDesc
    which: str  # 'B' (perfect members) or 'z' (marked limits)


Key = Union[Perf, Scat, Loose]
Atom = Union[Perf, Scat, Loose, Tower, Fam]


# text form, used for deterministic ordering and display


@lru_cache(maxsize=None)
def text(a) -> str:
    if isinstance(a, Perf):
        return f"P{'g' if a.flag else ''}[{ds_text(a.below)}]"
    if isinstance(a, Scat):
        b = "" if a.beta is None else f";g>={a.beta}"
        return f"S[{ds_text(a.root)}]({a.gamma}{b})"
    if isinstance(a, Loose):
        return f"L{a.pattern}{'g' if a.flag else ''}<{text(a.desc)}>"
    if isinstance(a, Tower):
        b = "" if a.beta is None else f";g>={a.beta}"
        return f"T[{ds_text(a.root)}](<{a.lam}{b})"
    if isinstance(a, Fam):
        return f"F{a.which}<{text(a.desc)}>"
    if isinstance(a, BloomDesc):
        return f"D[{ds_text(a.d1)}]{int(a.cf)}{int(a.zf)}"
    raise TypeError(a)


def ds_text(ds: tuple) -> str:
    return ",".join(text(a) for a in ds)


def flag(a) -> bool:
    """Whether the kind (or any member of the atom) is accumulated by genus."""
    if isinstance(a, (Perf, Loose)):
        return a.flag
    if isinstance(a, (Scat, Tower)):
        return a.beta is not None
    if isinstance(a, Fam):
        return a.desc.zf if a.which == "z" else a.desc.cf
    raise TypeError(a)


def ds_genus(ds: tuple) -> bool:
    return any(flag(a) for a in ds)


def _restrict_le(beta, gamma):
    return beta if beta is not None and beta <= gamma else None


def _restrict_lt(beta, lam):
    return beta if beta is not None and beta < lam else None


def scat(root: tuple, gamma: Ord, beta) -> Scat:
    if ds_genus(root):
        beta = ZERO
    return Scat(root, gamma, _restrict_le(beta, gamma))


def tower(root: tuple, beta, lam: Ord) -> Tower:
    if ds_genus(root):
        beta = ZERO
    return Tower(root, _restrict_lt(beta, lam), lam)


def mk(f: bool, ds: tuple) -> Key:
    """Kind of a point with flag ``f`` accumulated exactly by the down-set ``ds``."""
    if len(ds) == 1:
        a = ds[0]
        if isinstance(a, Perf) and a.flag == f:
            return a
        if isinstance(a, Scat):
            g = a.gamma + ONE
            return scat(a.root, g, a.beta if a.beta is not None else (g if f else None))
        if isinstance(a, Tower):
            return scat(a.root, a.lam, a.beta if a.beta is not None else (a.lam if f else None))
    return scat(ds, ZERO, ZERO if f else None)


def mkperf(f: bool, ds: tuple) -> Perf:
    if len(ds) == 1 and isinstance(ds[0], Perf) and ds[0].flag == f:
        return ds[0]
    return Perf(f, ds)


# bloom families


@lru_cache(maxsize=None)
def i_first(desc: BloomDesc) -> Key:
    return mk(desc.cf, desc.d1)


def i_member(desc: BloomDesc, j: int) -> Scat:
    first = i_first(desc)
    return scat(first.root, first.gamma + Ord.of(j - 1), first.beta)


@lru_cache(maxsize=None)
def tower_part(desc: BloomDesc) -> tuple:
    first = i_first(desc)
    return (tower(first.root, first.beta, first.gamma + OMEGA),)


def b_member(desc: BloomDesc, k: int) -> Perf:
    below = desc.d1 if k == 1 else (i_member(desc, k - 1),)
    return mkperf(desc.cf, below)


def z_member(desc: BloomDesc, k: int) -> Key:
    return mk(desc.zf, (b_member(desc, k),))


def fam_which(desc: BloomDesc) -> str:
    # when the marked limit carries the same flag it merges into the Cantor piece
    return "B" if desc.zf == desc.cf else "z"


def member(desc: BloomDesc, which: str, k: int) -> Key:
    return z_member(desc, k) if which == "z" else b_member(desc, k)


@lru_cache(maxsize=None)
def member_index(desc: BloomDesc, which: str, key) -> int | None:
    """Index k with ``member(desc, which, k) == key``, or None."""
    probe = key
    if which == "z":
        if not (isinstance(key, Scat) and len(key.root) == 1 and key.gamma.is_zero):
            return None
        probe = key.root[0]
    if not isinstance(probe, Perf) or probe.flag != desc.cf:
        return None
    if probe.below == desc.d1:
        k = 1
    else:
        first = i_first(desc)
        if len(probe.below) != 1 or not isinstance(probe.below[0], Scat):
            return None
        q = probe.below[0]
        if q.root != first.root or q.gamma < first.gamma:
            return None
        gap = sub(first.gamma, q.gamma)
        if not gap.is_finite:
            return None
        k = int(gap) + 2
    return k if member(desc, which, k) == key else None


# containment


def below_of(a) -> tuple:
    if isinstance(a, Perf):
        return a.below
    if isinstance(a, (Scat, Tower)):
        return a.root
    if isinstance(a, (Loose, Fam)):
        return tower_part(a.desc)
    raise TypeError(a)


@lru_cache(maxsize=None)
def contains(x, k) -> bool:
    """Is the kind ``k`` in the down-set of the atom ``x``?"""
    if x == k:
        return True
    if isinstance(x, (Scat, Tower)) and isinstance(k, Scat) and k.root == x.root:
        top_ok = k.gamma <= x.gamma if isinstance(x, Scat) else k.gamma < x.lam
        if top_ok and k.beta == _restrict_le(x.beta, k.gamma):
            return True
    if isinstance(x, Fam) and member_index(x.desc, x.which, k) is not None:
        return True
    if isinstance(x, Fam) and x.which == "z" and member_index(x.desc, "B", k) is not None:
        return True
    return ds_contains(below_of(x), k)


def ds_contains(ds: tuple, k) -> bool:
    return any(contains(x, k) for x in ds)


@lru_cache(maxsize=None)
def subset(a, x) -> bool:
    """Is the down-set of atom ``a`` inside the down-set of atom ``x``?"""
    if a == x:
        return True
    if isinstance(a, (Perf, Scat, Loose)):
        return contains(x, a)
    if isinstance(a, Tower):
        if isinstance(x, (Tower, Scat)) and x.root == a.root:
            reach = a.lam <= x.lam if isinstance(x, Tower) else a.lam <= x.gamma
            if reach and _restrict_lt(a.beta, a.lam) == _restrict_lt(x.beta, a.lam):
                return True
    if isinstance(a, Fam) and isinstance(x, Fam) and x.desc == a.desc:
        if a.which == x.which or x.which == "z":
            return True
    return any(subset(a, y) for y in below_of(x))


def ds_subset(d1: tuple, d2: tuple) -> bool:
    return all(any(subset(a, x) for x in d2) for a in d1)


def _text_cmp(a, b) -> int:
    ta, tb = text(a), text(b)
    return (ta > tb) - (ta < tb)


def canon(atoms) -> tuple:
    atoms = sorted(set(atoms), key=cmp_to_key(_text_cmp))
    keep = []
    for i, a in enumerate(atoms):
        dominated = False
        for j, b in enumerate(atoms):
            if i == j or not subset(a, b):
                continue
            # equal down-sets: keep the first in text order
            if subset(b, a) and j > i:
                continue
            dominated = True
            break
        if not dominated:
            keep.append(a)
    return tuple(keep)


def acc(k) -> tuple:
    """Down-set of kinds accumulating at ``k`` (a Perf kind also accumulates at itself)."""
    if isinstance(k, Perf):
        return k.below
    if isinstance(k, Scat):
        if k.gamma.is_zero:
            return k.root
        if k.gamma.is_successor:
            return (scat(k.root, k.gamma.pred(), k.beta),)
        return (tower(k.root, k.beta, k.gamma),)
    if isinstance(k, Loose):
        return tower_part(k.desc)
    raise TypeError(k)


def is_stable(k) -> bool:
    return not isinstance(k, Loose)


# Cantor-Bendixson heights (None when the perfect kernel is reached)


@lru_cache(maxsize=None)
def height(a) -> Ord | None:
    if isinstance(a, (Perf, Loose, Fam)):
        return None
    base = ds_height(a.root)
    if base is None:
        return None
    if isinstance(a, Tower):
        return base + a.lam
    return base + a.gamma + ONE


def ds_height(ds: tuple) -> Ord | None:
    best = ZERO
    for a in ds:
        h = height(a)
        if h is None:
            return None
        best = max(best, h)
    return best


def rank(k) -> Ord | None:
    h = height(k)
    return None if h is None else h.pred()


# inventories


@dataclass(frozen=True)
class TowerFam:
    """Members ``scat(root, d, beta)`` for ``lo <= d < hi``; each countably infinite."""

    root: tuple
    beta: Ord | None
    lo: Ord
    hi: Ord

    def atom(self) -> Tower:
        return tower(self.root, self.beta, self.hi)

    def has(self, k) -> bool:
        return (
            isinstance(k, Scat)
            and k.root == self.root
            and self.lo <= k.gamma < self.hi
            and k.beta == _restrict_le(self.beta, k.gamma)
        )

    def member(self, d: Ord) -> Scat:
        return scat(self.root, d, self.beta)


@dataclass(frozen=True)
class BloomFam:
    """Members ``member(desc, which, k)`` for k >= 1 except ``excluded``."""

    desc: BloomDesc
    which: str
    count: object
    excluded: frozenset = frozenset()

    def atom(self) -> Fam:
        return Fam(self.desc, self.which)


@dataclass
class Inventory:
    explicit: dict = field(default_factory=dict)
    towers: list = field(default_factory=list)
    blooms: dict = field(default_factory=dict)
    loci: dict = field(default_factory=dict)

    def add_key(self, k, count, path: str) -> None:
        self.explicit[k] = cadd(self.explicit.get(k, 0), count)
        self.loci.setdefault(k, set()).add(path)

    def add_range(self, root: tuple, beta, lo: Ord, hi: Ord, path: str) -> None:
        """Add ranks ``lo <= d < hi`` (each countably infinite) above ``root``."""
        b = ZERO if ds_genus(root) else beta
        if b is None or b >= hi:
            pieces = [(None, lo, hi)]
        elif b <= lo:
            pieces = [(b, lo, hi)]
        else:
            pieces = [(None, lo, b), (b, b, hi)]
        for tag, a, c in pieces:
            if c <= a:
                continue
            lam, _ = c.split_limit()
            d = a
            if lam > a:
                self.towers.append(TowerFam(root, tag, a, lam))
                self.loci.setdefault(("tower", root, tag), set()).add(path)
                d = lam
            while d < c:
                self.add_key(scat(root, d, tag), ALEPH0, path)
                d = d + ONE

    def add_bloom(self, desc: BloomDesc, which: str, count, path: str) -> None:
        cur = self.blooms.get((desc, which))
        if cur is None:
            self.blooms[(desc, which)] = BloomFam(desc, which, count)
        else:
            self.blooms[(desc, which)] = BloomFam(desc, which, cadd(cur.count, count), cur.excluded)
            for j in cur.excluded:
                k = member(desc, which, j)
                self.explicit[k] = cadd(self.explicit.get(k, 0), count)
        self.loci.setdefault(("bloom", desc, which), set()).add(path)

    def merge(self, other: "Inventory") -> None:
        for k, c in other.explicit.items():
            self.explicit[k] = cadd(self.explicit.get(k, 0), c)
        self.towers.extend(other.towers)
        for (desc, which), fam in other.blooms.items():
            cur = self.blooms.get((desc, which))
            if cur is None:
                self.blooms[(desc, which)] = fam
                continue
            for j in fam.excluded - cur.excluded:
                k = member(desc, which, j)
                self.explicit[k] = cadd(self.explicit.get(k, 0), cur.count)
            for j in cur.excluded - fam.excluded:
                k = member(desc, which, j)
                self.explicit[k] = cadd(self.explicit.get(k, 0), fam.count)
            self.blooms[(desc, which)] = BloomFam(
                desc, which, cadd(cur.count, fam.count), cur.excluded | fam.excluded
            )
        for k, paths in other.loci.items():
            self.loci.setdefault(k, set()).update(paths)

    def scaled(self) -> "Inventory":
        """Countably many disjoint copies."""
        out = Inventory(
            {k: times_aleph0(c) for k, c in self.explicit.items()},
            list(self.towers),
            {key: BloomFam(f.desc, f.which, times_aleph0(f.count), f.excluded) for key, f in self.blooms.items()},
            {k: set(v) for k, v in self.loci.items()},
        )
        return out

    def settle(self) -> "Inventory":
        self.towers = _merge_towers(self.towers)
        for key, fam in list(self.blooms.items()):
            members = {
                k: member_index(fam.desc, fam.which, k) for k in self.explicit if isinstance(k, (Perf, Scat))
            }
            members = {k: j for k, j in members.items() if j is not None}
            if is_infinite(fam.count):
                for k in members:
                    del self.explicit[k]
                self.blooms[key] = BloomFam(fam.desc, fam.which, fam.count)
            else:
                excluded = set(fam.excluded)
                for k, j in members.items():
                    if j not in excluded:
                        self.explicit[k] = cadd(self.explicit[k], fam.count)
                        excluded.add(j)
                self.blooms[key] = BloomFam(fam.desc, fam.which, fam.count, frozenset(excluded))
        for k in list(self.explicit):
            if any(t.has(k) for t in self.towers):
                del self.explicit[k]
        return self

    def downset(self) -> tuple:
        atoms = list(self.explicit)
        atoms += [t.atom() for t in self.towers]
        atoms += [f.atom() for f in self.blooms.values()]
        return canon(atoms)


def _merge_towers(towers: list) -> list:
    groups: dict = {}
    for t in towers:
        groups.setdefault((t.root, t.beta), []).append(t)
    out = []
    for (root, beta), ts in groups.items():
        ts.sort(key=cmp_to_key(lambda a, b: (a.lo > b.lo) - (a.lo < b.lo)))
        cur = ts[0]
        for t in ts[1:]:
            if t.lo <= cur.hi:
                cur = TowerFam(root, beta, cur.lo, max(cur.hi, t.hi))
            else:
                out.append(cur)
                cur = t
        out.append(cur)
    out.sort(key=lambda t: (ds_text(t.root), str(t.beta), str(t.lo)))
    return out


def _child(path: str, name: str) -> str:
    return f"{path.rstrip('/')}/{name}"


@lru_cache(maxsize=4096)
def inventory(t: Term, path: str = "/") -> Inventory:
    """Kinds of the space denoted by ``t`` with their cardinalities and loci."""
    inv = _inventory(t, path)
    return inv.settle()


def _copy(inv: Inventory) -> Inventory:
    return Inventory(dict(inv.explicit), list(inv.towers), dict(inv.blooms), {k: set(v) for k, v in inv.loci.items()})


def _inventory(t: Term, path: str) -> Inventory:
    inv = Inventory()
    if isinstance(t, Pt):
        inv.add_key(mk(t.g, ()), 1, path)
    elif isinstance(t, Cantor):
        inv.add_key(Perf(t.g, ()), CONT, path)
    elif isinstance(t, Sum):
        for i, c in enumerate(t.children):
            inv.merge(inventory(c, _child(path, str(i))))
    elif isinstance(t, (Omega, Line, Cacc)):
        child = inventory(t.child, _child(path, "child"))
        inv = child.scaled()
        ds = child.downset()
        if isinstance(t, Omega):
            inv.add_key(mk(t.g, ds), 1, path)
        elif isinstance(t, Line):
            inv.add_key(mk(t.g1, ds), 1, path)
            inv.add_key(mk(t.g2, ds), 1, path)
        else:
            inv.add_key(mkperf(t.g, ds), CONT, path)
    elif isinstance(t, OrdSpace):
        beta = t.gs.threshold
        inv.add_range((), beta, ZERO, t.alpha, path)
        inv.add_key(scat((), t.alpha, beta), t.n, path)
    elif isinstance(t, Fan):
        base = inventory(t.schema.base, _child(path, "base"))
        inv = base.scaled()
        d1 = base.downset()
        cf = has_genus_end(t.schema.base)
        first = mk(cf, d1)
        if not isinstance(first, Scat):
            raise ValueError("degenerate fan schema")
        top_rank = first.gamma + OMEGA
        inv.add_range(first.root, first.beta, first.gamma, top_rank, path)
        if isinstance(t.schema, Iter):
            tw = (tower(first.root, first.beta, top_rank),)
            for f in t.tops:
                inv.add_key(mk(f, tw), 1, path)
        else:
            desc = BloomDesc(d1, cf, t.schema.zflag)
            which = fam_which(desc)
            inv.add_bloom(desc, "B", CONT, path)
            if which == "z":
                inv.add_bloom(desc, "z", ALEPH0 if t.repeated else 1, path)
            if t.repeated:
                for f in t.tops:
                    inv.add_key(mk(f, (Fam(desc, which),)), 1, path)
            elif len(t.tops) == 1:
                inv.add_key(Loose(desc, "all", t.tops[0]), 1, path)
            else:
                inv.add_key(Loose(desc, "odd", t.tops[0]), 1, path)
                inv.add_key(Loose(desc, "even", t.tops[1]), 1, path)
    else:
        raise TypeError(f"not a term: {t!r}")
    return inv


def term_downset(t: Term) -> tuple:
    return inventory(t).downset()


def degenerate_base(base: Term) -> bool:
    return isinstance(mk(has_genus_end(base), term_downset(base)), Perf)


def term_height(t: Term) -> Ord | None:
    return ds_height(term_downset(t))


# germs: canonical neighbourhood terms of kinds


def _gspec(beta) -> GenusSpec:
    return GenusSpec(beta)


@lru_cache(maxsize=None)
def germ(k) -> Term:
    if isinstance(k, Perf):
        return Cantor(k.flag) if not k.below else Cacc(germ_ds(k.below), k.flag)
    if isinstance(k, Loose):
        return Fan(Bloom(germ_ds(k.desc.d1), k.desc.zf), (k.flag,))
    if isinstance(k, Tower):
        return germ(scat(k.root, k.lam, k.beta))
    if isinstance(k, Fam):
        return Fan(Bloom(germ_ds(k.desc.d1), k.desc.zf), (flag(k),), repeated=True)
    f = flag(k)
    if not k.root:
        if k.gamma.is_zero:
            return Pt(f)
        if k.gamma == ONE:
            return Omega(Pt(k.beta == ZERO), f)
        return OrdSpace(k.gamma, 1, _gspec(k.beta))
    if k.gamma.is_zero:
        if len(k.root) == 1 and isinstance(k.root[0], Fam):
            fam = k.root[0]
            return Fan(Bloom(germ_ds(fam.desc.d1), fam.desc.zf), (f,), repeated=True)
        return Omega(germ_ds(k.root), f)
    if k.gamma.is_successor:
        return Omega(germ(scat(k.root, k.gamma.pred(), k.beta)), f)
    *head, (exp, c) = k.gamma.terms
    if exp != ONE:
        raise ValueError(f"no germ for rank {k.gamma} above a nonempty root")
    xi = Ord(tuple(head) + (((exp, c - 1),) if c > 1 else ()))
    b = xi
    if k.beta is not None and xi <= k.beta < k.gamma:
        b = k.beta
    return Fan(Iter(germ(scat(k.root, b, k.beta))), (f,))


def germ_ds(ds: tuple) -> Term:
    parts = []
    loose: dict = {}
    for a in ds:
        if isinstance(a, Loose):
            loose.setdefault(a.desc, {})[a.pattern] = a.flag
    for a in ds:
        # a one-shot fan already carries its whole family
        if isinstance(a, Fam) and a.desc in loose:
            continue
        if not isinstance(a, Loose):
            parts.append(germ(a))
    for desc, pats in loose.items():
        base = Bloom(germ_ds(desc.d1), desc.zf)
        if "odd" in pats and "even" in pats:
            parts.append(Fan(base, (pats["odd"], pats["even"])))
        else:
            parts.append(Fan(base, (next(iter(pats.values())),)))
    if len(parts) == 1:
        return parts[0]
    return Sum(sort_terms(parts))


def _term_cmp(a: Term, b: Term) -> int:
    ca, cb = is_countable(a), is_countable(b)
    if ca != cb:
        return -1 if ca else 1
    ha, hb = term_height(a), term_height(b)
    if ha is not None and hb is not None and ha != hb:
        return -1 if ha > hb else 1
    sa, sb = str(a), str(b)
    return (sa > sb) - (sa < sb)


def sort_terms(ts) -> list:
    return sorted(ts, key=cmp_to_key(_term_cmp))
