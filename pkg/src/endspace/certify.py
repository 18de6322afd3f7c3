"""Re-check obstruction certificates from the kinds inventory alone.

The classifier works on the class poset; this module rebuilds the sets a
certificate talks about (closures, maximal kinds, accumulation) directly
from inventory entries so a certificate is never trusted on its own word.
"""

from __future__ import annotations

from . import kinds as K
from .terms import INF, Surface


def _entries(t) -> dict:
    """label -> (atom, count, is_family, entity)"""
    inv = K.inventory(t)
    out = {}
    for k, c in inv.explicit.items():
        out[K.text(k)] = (k, c, False, k)
    for tf in inv.towers:
        b = "" if tf.beta is None else f";g>={tf.beta}"
        out[f"S[{K.ds_text(tf.root)}](d{b}) for {tf.lo} <= d < {tf.hi}"] = (tf.atom(), K.ALEPH0, True, tf)
    for (desc, which), fam in inv.blooms.items():
        out[f"{which}_k<{K.text(desc)}> for k >= 1"] = (fam.atom(), fam.count, True, fam)
    return out


def _acc_down(entity) -> tuple:
    if isinstance(entity, K.TowerFam):
        return (entity.atom(),)
    if isinstance(entity, K.BloomFam):
        return (K.Fam(entity.desc, "B"),)
    if isinstance(entity, K.Perf):
        return entity.below + (entity,)
    return K.acc(entity)


def _accumulates(a_atom, target_entity) -> bool:
    return any(K.subset(a_atom, x) for x in _acc_down(target_entity))


def _closure(entries: dict, label: str) -> set:
    atom = entries[label][0]
    return {lab for lab, (_, _, _, ent) in entries.items() if lab == label or _accumulates(atom, ent)}


def _is_finite(count) -> bool:
    return isinstance(count, int)


def _maximal(entries: dict, label: str) -> bool:
    a = entries[label][0]
    return not any(K.subset(a, b) and not K.subset(b, a) for b, *_ in entries.values())


def verify_certificate(s: Surface, cert) -> bool:
    t = s.ends
    kind = cert.kind
    if kind == "FiniteNonzeroGenus":
        return s.genus != INF and s.genus >= 1 and cert.genus == s.genus
    entries = _entries(t)
    if kind == "InvariantFiniteEndSet":
        if cert.size < 3 or not cert.classes:
            return False
        total = 0
        for lab in cert.classes:
            if lab not in entries or not _is_finite(entries[lab][1]):
                return False
            _, count, fam, _ = entries[lab]
            total += 3 if fam else count
        return total >= cert.size
    if kind == "PantsXY":
        if cert.x not in entries or cert.y not in entries:
            return False
        atom, count, fam, _ = entries[cert.x]
        if fam or not isinstance(atom, K.Perf) or count != K.CONT:
            return False
        return not (_closure(entries, cert.x) & _closure(entries, cert.y))
    if kind == "LimitType":
        if cert.x not in entries:
            return False
        x, count, fam, _ = entries[cert.x]
        if fam or not _is_finite(count) or not _maximal(entries, cert.x):
            return False
        gens = {K.text(a): a for a in _acc_down(x)}
        a = gens.get(cert.family)
        if not isinstance(a, (K.Tower, K.Fam)):
            return False
        if isinstance(a, K.Fam) and any(isinstance(g, K.Loose) and g.desc == a.desc for g in gens.values()):
            return False
        if cert.witness == f"another point of {cert.x}":
            return count >= 2
        if cert.witness not in entries:
            return False
        y, _, yfam, _ = entries[cert.witness]
        return not yfam and K.subset(a, y) and not _accumulates(y, x)
    if kind == "InfiniteRank":
        if cert.family not in entries:
            return False
        atom, count, fam, ent = entries[cert.family]
        if not isinstance(ent, K.BloomFam) or ent.which != "z" or count != K.ALEPH0:
            return False
        targets = {lab for lab, (_, _, _, e) in entries.items() if lab != cert.family and _accumulates(atom, e)}
        if targets != set(cert.targets):
            return False
        if any(entries[lab][2] or not _is_finite(entries[lab][1]) for lab in targets):
            return False
        return sum(entries[lab][1] for lab in targets) >= 2 and len(set(cert.homomorphisms)) >= 3
    if kind == "NoStabilizingComplement":
        if cert.maximal not in entries:
            return False
        x, count, fam, _ = entries[cert.maximal]
        if fam or count != 1 or not _maximal(entries, cert.maximal) or not cert.missing:
            return False
        others = [e for lab, (_, _, _, e) in entries.items() if lab != cert.maximal and _maximal(entries, lab)]
        gens = {K.text(a): a for a in K.acc(x)}
        for m in cert.missing:
            if m == "genus":
                # genus near x must have somewhere else to go
                if not K.flag(x) or any(K.flag(o.atom() if hasattr(o, "atom") else o) for o in others):
                    return False
                if any(isinstance(a, K.Perf) and a.flag for a in gens.values()):
                    return False
                continue
            if m not in gens or isinstance(gens[m], K.Perf):
                return False
            if any(_accumulates(gens[m], o) for o in others):
                return False
        return True
    return False
