"""Countable ordinals below epsilon-zero in Cantor normal form.

An ordinal is a finite tuple of ``(exponent, coefficient)`` pairs with strictly
decreasing exponents.  Exponents are themselves ``Ord`` values, so the
representation is a finite tree.  Values are immutable and hashable.
"""

from __future__ import annotations

from typing import Iterable, Literal

MAX_COEFF = 2**63 - 1

Comparison = Literal["less", "equal", "greater"]


class OrdinalError(ArithmeticError):
    """Domain error: predecessor of a limit, negative result, overflow."""


class Ord:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Iterable[tuple["Ord", int]] = ()):
        terms = tuple(terms)
        prev = None
        for exp, coeff in terms:
            if not isinstance(exp, Ord) or not isinstance(coeff, int):
                raise TypeError(f"bad CNF term {exp!r}, {coeff!r}")
            if coeff <= 0:
                raise OrdinalError("CNF coefficients must be positive")
            if coeff > MAX_COEFF:
                raise OrdinalError("ordinal coefficient overflow")
            if prev is not None and _cmp(exp, prev) >= 0:
                raise OrdinalError("CNF exponents must strictly decrease")
            prev = exp
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "_hash", hash(terms))

    def __setattr__(self, name, value):
        raise AttributeError("Ord is immutable")

    # construction helpers
    @classmethod
    def of(cls, n: int) -> "Ord":
        if n < 0:
            raise OrdinalError("negative ordinal")
        return ZERO if n == 0 else cls(((ZERO, n),))

    @classmethod
    def w_pow(cls, exp: "Ord | int", coeff: int = 1) -> "Ord":
        if isinstance(exp, int):
            exp = Ord.of(exp)
        return cls(((exp, coeff),))

    # comparisons
    def __eq__(self, other):
        if isinstance(other, int):
            other = Ord.of(other) if other >= 0 else None
        if not isinstance(other, Ord):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return _cmp(self, _coerce(other)) < 0

    def __le__(self, other):
        return _cmp(self, _coerce(other)) <= 0

    def __gt__(self, other):
        return _cmp(self, _coerce(other)) > 0

    def __ge__(self, other):
        return _cmp(self, _coerce(other)) >= 0

    # arithmetic
    def __add__(self, other):
        return add(self, _coerce(other))

    def __radd__(self, other):
        return add(_coerce(other), self)

    # structure
    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    @property
    def is_limit(self) -> bool:
        return bool(self.terms) and bool(self.terms[-1][0].terms)

    @property
    def is_successor(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].terms

    def __int__(self) -> int:
        if not self.is_finite:
            raise OrdinalError(f"{self} is not finite")
        return self.terms[0][1] if self.terms else 0

    def pred(self) -> "Ord":
        if not self.is_successor:
            raise OrdinalError(f"{self} has no predecessor")
        *head, (exp, c) = self.terms
        return Ord(head + ([(exp, c - 1)] if c > 1 else []))

    def succ(self) -> "Ord":
        return self + ONE

    def split_limit(self) -> tuple["Ord", int]:
        """Return ``(lam, m)`` with ``self == lam + m`` and ``lam`` zero or a limit."""
        if self.is_successor:
            *head, (_, c) = self.terms
            return Ord(head), c
        return self, 0

    def leading_exponent(self) -> "Ord":
        if not self.terms:
            raise OrdinalError("zero has no leading exponent")
        return self.terms[0][0]

    def __repr__(self):
        return f"Ord({str(self)!r})"

    def __str__(self):
        if not self.terms:
            return "0"
        return "+".join(_term_str(e, c) for e, c in self.terms)

    def __reduce__(self):
        return (Ord, (self.terms,))


def _coerce(x) -> Ord:
    if isinstance(x, Ord):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Ord.of(x)
    raise TypeError(f"cannot use {x!r} as an ordinal")


def _cmp(a: Ord, b: Ord) -> int:
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = _cmp(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def compare(a: Ord, b: Ord) -> Comparison:
    c = _cmp(a, b)
    return "less" if c < 0 else "greater" if c > 0 else "equal"


def add(a: Ord, b: Ord) -> Ord:
    # terms of a strictly above b's leading exponent survive; the rest is absorbed
    if not b.terms:
        return a
    lead, lead_c = b.terms[0]
    keep = []
    for exp, c in a.terms:
        k = _cmp(exp, lead)
        if k > 0:
            keep.append((exp, c))
        elif k == 0:
            total = c + lead_c
            if total > MAX_COEFF:
                raise OrdinalError("ordinal coefficient overflow")
            return Ord(keep + [(exp, total)] + list(b.terms[1:]))
        else:
            break
    return Ord(keep + list(b.terms))


def sub(a: Ord, b: Ord) -> Ord:
    """Left subtraction: the unique ``c`` with ``a + c == b`` (requires a <= b)."""
    if _cmp(a, b) > 0:
        raise OrdinalError(f"{a} exceeds {b}")
    for k, ((ea, ca), (eb, cb)) in enumerate(zip(a.terms, b.terms)):
        if ea == eb and ca == cb:
            continue
        if ea == eb:
            return Ord(((eb, cb - ca),) + b.terms[k + 1:])
        return Ord(b.terms[k:])
    return Ord(b.terms[len(a.terms):])


def _term_str(exp: Ord, c: int) -> str:
    if not exp.terms:
        return str(c)
    if exp == ONE:
        base = "w"
    elif exp.is_finite or (len(exp.terms) == 1 and exp.terms[0][1] == 1):
        base = f"w^{exp}"
    else:
        base = f"w^({exp})"
    return base if c == 1 else f"{base}*{c}"


ZERO = Ord()
ONE = Ord(((ZERO, 1),))
OMEGA = Ord(((ONE, 1),))
