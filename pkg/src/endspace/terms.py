"""End-space terms: finite descriptions of pairs (E, E^G).

Every constructor is a frozen dataclass.  Flags are plain booleans where
``True`` marks an end accumulated by genus.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterator, Union

from .ordinal import ZERO, Ord

INF = math.inf


class TermError(ValueError):
    """A term or surface violates a validity rule."""

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(f"{p}: {m}" for p, m in self.violations))


class ScopeError(ValueError):
    """Input is outside the classifier's scope (finite-type surfaces)."""


@dataclass(frozen=True)
class GenusSpec:
    """Genus ends of an ordinal space: those of rank >= threshold (None: no genus)."""

    threshold: Ord | None = None

    @classmethod
    def none(cls) -> "GenusSpec":
        return cls(None)

    @classmethod
    def all(cls) -> "GenusSpec":
        return cls(ZERO)

    @classmethod
    def at_least(cls, beta: Ord | int) -> "GenusSpec":
        return cls(beta if isinstance(beta, Ord) else Ord.of(beta))

    def genus_at(self, rank: Ord) -> bool:
        return self.threshold is not None and self.threshold <= rank

    def __str__(self):
        if self.threshold is None:
            return "none"
        if self.threshold.is_zero:
            return "all"
        return f"ge({self.threshold})"


class Term:
    """Base class of end-space terms."""

    __slots__ = ()

    def __str__(self):
        from .parser import print_term

        return print_term(self)


def _hashed(cls):
    # terms are hashed constantly by the memoized engines; cache the hash
    fields = tuple(cls.__dataclass_fields__)

    def __hash__(self):
        h = self.__dict__.get("_h")
        if h is None:
            h = hash((cls.__name__,) + tuple(getattr(self, f) for f in fields))
            object.__setattr__(self, "_h", h)
        return h

    cls.__hash__ = __hash__
    return cls


@_hashed
@dataclass(frozen=True, eq=True)
class Pt(Term):
    g: bool = False


@_hashed
@dataclass(frozen=True, eq=True)
class Sum(Term):
    children: tuple

    def __init__(self, children):
        object.__setattr__(self, "children", tuple(children))


@_hashed
@dataclass(frozen=True, eq=True)
class Omega(Term):
    child: Term
    g: bool = False


@_hashed
@dataclass(frozen=True, eq=True)
class Line(Term):
    child: Term
    g1: bool = False
    g2: bool = False


@_hashed
@dataclass(frozen=True, eq=True)
class Cantor(Term):
    g: bool = False


@_hashed
@dataclass(frozen=True, eq=True)
class Cacc(Term):
    child: Term
    g: bool = False


@_hashed
@dataclass(frozen=True, eq=True)
class OrdSpace(Term):
    alpha: Ord
    n: int = 1
    gs: GenusSpec = field(default_factory=GenusSpec)


@_hashed
@dataclass(frozen=True, eq=True)
class Iter:
    """X(k) = omega applied k times to the base."""

    base: Term


@_hashed
@dataclass(frozen=True, eq=True)
class Bloom:
    """X(k) = omega(cacc(omega^(k-1)(base)), zflag): a Cantor piece of rank k with a marked limit."""

    base: Term
    zflag: bool = False


Schema = Union[Iter, Bloom]


@_hashed
@dataclass(frozen=True, eq=True)
class Fan(Term):
    schema: Schema
    tops: tuple = (False,)
    repeated: bool = False

    def __init__(self, schema, tops=(False,), repeated=False):
        object.__setattr__(self, "schema", schema)
        object.__setattr__(self, "tops", tuple(tops))
        object.__setattr__(self, "repeated", bool(repeated))


@dataclass(frozen=True)
class Surface:
    genus: int | float
    ends: Term

    @property
    def infinite_genus(self) -> bool:
        return self.genus == INF

    def __str__(self):
        from .parser import print_surface

        return print_surface(self)


# structural queries


def children(t: Term) -> tuple:
    if isinstance(t, Sum):
        return t.children
    if isinstance(t, (Omega, Line, Cacc)):
        return (t.child,)
    if isinstance(t, Fan):
        return (t.schema.base,)
    return ()


def subterms(t: Term) -> Iterator[Term]:
    yield t
    for c in children(t):
        yield from subterms(c)


def has_genus_end(t: Term) -> bool:
    if isinstance(t, (Pt, Cantor)):
        return t.g
    if isinstance(t, Sum):
        return any(has_genus_end(c) for c in t.children)
    if isinstance(t, (Omega, Cacc)):
        return t.g or has_genus_end(t.child)
    if isinstance(t, Line):
        return t.g1 or t.g2 or has_genus_end(t.child)
    if isinstance(t, OrdSpace):
        return t.gs.genus_at(t.alpha)
    if isinstance(t, Fan):
        z = isinstance(t.schema, Bloom) and t.schema.zflag
        return z or any(t.tops) or has_genus_end(t.schema.base)
    raise TypeError(f"not a term: {t!r}")


def is_countable(t: Term) -> bool:
    if isinstance(t, (Cantor, Cacc)):
        return False
    if isinstance(t, Fan):
        return isinstance(t.schema, Iter) and is_countable(t.schema.base)
    return all(is_countable(c) for c in children(t))


def is_finite_space(t: Term) -> bool:
    if isinstance(t, Pt):
        return True
    if isinstance(t, Sum):
        return all(is_finite_space(c) for c in t.children)
    if isinstance(t, OrdSpace):
        return t.alpha.is_zero
    return False


def isolated_planar_count(t: Term) -> int | float:
    if isinstance(t, Pt):
        return 0 if t.g else 1
    if isinstance(t, Cantor):
        return 0
    if isinstance(t, Sum):
        return sum(isolated_planar_count(c) for c in t.children)
    if isinstance(t, OrdSpace):
        if t.gs.genus_at(ZERO):
            return 0
        return t.n if t.alpha.is_zero else INF
    # everything else repeats its child infinitely often
    return INF if isolated_planar_count(children(t)[0]) else 0


def forced_flag(t: Term) -> bool:
    """Flag a new limit point must carry when it is accumulated by ``t``."""
    return has_genus_end(t)


def schema_flag(s: Schema) -> bool:
    if isinstance(s, Bloom):
        return s.zflag or has_genus_end(s.base)
    return has_genus_end(s.base)


def validate(t: Term, path: str = "/") -> list[tuple[str, str]]:
    """Return a list of ``(node path, message)`` violations; empty means valid."""
    out: list[tuple[str, str]] = []
    _validate(t, path, out)
    return out


def _validate(t: Term, path: str, out: list) -> None:
    if isinstance(t, Sum):
        if len(t.children) < 2:
            out.append((path, "sum arity"))
        for i, c in enumerate(t.children):
            _validate(c, f"{path.rstrip('/')}/{i}", out)
        return
    if isinstance(t, (Pt, Cantor)):
        if not isinstance(t.g, bool):
            out.append((path, "flag must be boolean"))
        return
    if isinstance(t, OrdSpace):
        if not isinstance(t.n, int) or t.n < 1:
            out.append((path, "ord multiplicity must be positive"))
        return
    sub = f"{path.rstrip('/')}/child"
    if isinstance(t, (Omega, Cacc)):
        if has_genus_end(t.child) and not t.g:
            out.append((path, "limit flag must be genus"))
        _validate(t.child, sub, out)
        return
    if isinstance(t, Line):
        if has_genus_end(t.child) and not (t.g1 and t.g2):
            out.append((path, "limit flag must be genus"))
        _validate(t.child, sub, out)
        return
    if isinstance(t, Fan):
        s = t.schema
        if not isinstance(s, (Iter, Bloom)):
            out.append((path, "unknown schema"))
            return
        if len(t.tops) not in (1, 2):
            out.append((path, "fan needs one or two accumulation points"))
        if isinstance(s, Bloom) and has_genus_end(s.base) and not s.zflag:
            out.append((path, "limit flag must be genus"))
        if schema_flag(s) and not all(t.tops):
            out.append((path, "limit flag must be genus"))
        base_path = f"{path.rstrip('/')}/base"
        before = len(out)
        _validate(s.base, base_path, out)
        if len(out) == before and _degenerate(s.base):
            out.append((path, "degenerate schema"))
        return
    out.append((path, f"unknown constructor {type(t).__name__}"))


def _degenerate(base: Term) -> bool:
    # omega^k(base) collapses back into a perfect kind: X(k) does not grow
    from .kinds import degenerate_base

    return degenerate_base(base)


def check_surface(s: Surface) -> list[tuple[str, str]]:
    """Validity of a surface: term validity plus the genus/E^G correspondence."""
    out = validate(s.ends)
    if out:
        return out
    g = s.genus
    if not (g == INF or (isinstance(g, int) and g >= 0)):
        out.append(("genus", "genus must be a natural number or inf"))
    elif g == INF and not has_genus_end(s.ends):
        out.append(("genus", "infinite genus requires an end accumulated by genus"))
    elif g != INF and has_genus_end(s.ends):
        out.append(("genus", "finite genus with genus end"))
    return out


def require_valid(s: Surface) -> Surface:
    bad = check_surface(s)
    if bad:
        raise TermError(bad)
    if is_finite_space(s.ends) and s.genus != INF:
        raise ScopeError("finite-type surface: classification needs infinitely many ends or infinite genus")
    return s
