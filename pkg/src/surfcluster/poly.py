"""Exact sparse multivariate Laurent polynomials over the integers.

A polynomial is a mapping from exponent vectors to nonzero integer
coefficients.  Exponent vectors are stored sparsely as sorted tuples of
(variable, exponent) pairs with all exponents nonzero, so equal polynomials
have identical dictionaries and the zero polynomial is the empty mapping.
Coefficients are Python ints (arbitrary precision); nothing here ever
rounds.

Variables carry a kind ('x', 'y' or 'h') and a name.  Variables are ordered
by kind and then by a natural ordering of the name ("2" before "10"), which
fixes the canonical text rendering.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Tuple

__all__ = [
    "VarId",
    "LaurentPoly",
    "NotDivisible",
    "NonInvertibleSubstitution",
    "xvar",
    "yvar",
    "hvar",
]


class NotDivisible(ArithmeticError):
    """Raised by div_exact when the division leaves a remainder."""


class NonInvertibleSubstitution(ValueError):
    """Raised when a negative power must be substituted by a non-monomial."""


_KIND_RANK = {"x": 0, "y": 1, "h": 2}

_CHUNKS = re.compile(r"(\d+)|(\D+)")


def _natural_key(name: str) -> Tuple:
    # "10" sorts after "2", "a10b" after "a2z"
    return tuple(
        (0, int(num)) if num else (1, alpha)
        for num, alpha in _CHUNKS.findall(name)
    )


@dataclass(frozen=True)
class VarId:
    """A symbol: kind 'x'/'y'/'h' plus the (tagged) arc name it refers to."""

    kind: str
    name: str
    _key: Tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.kind not in _KIND_RANK:
            raise ValueError(f"unknown variable kind {self.kind!r}")
        object.__setattr__(
            self, "_key", (_KIND_RANK[self.kind], _natural_key(self.name))
        )

    def __lt__(self, other: "VarId") -> bool:
        return self._key < other._key

    def __le__(self, other: "VarId") -> bool:
        return self._key <= other._key

    def text(self) -> str:
        if self.name and self.name[0].isdigit():
            return f"{self.kind}{self.name}"
        return f"{self.kind}_{self.name}"


def xvar(name: str) -> VarId:
    return VarId("x", name)


def yvar(name: str) -> VarId:
    return VarId("y", name)


def hvar(name: str) -> VarId:
    return VarId("h", name)


# An exponent vector: sorted tuple of (VarId, nonzero int).
ExpVec = Tuple[Tuple[VarId, int], ...]


def _expvec(exps: Mapping[VarId, int]) -> ExpVec:
    return tuple(sorted(((v, e) for v, e in exps.items() if e != 0)))


class LaurentPoly:
    """Immutable Laurent polynomial; supports +, -, *, exact division."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[ExpVec, int] | None = None):
        self._terms: Dict[ExpVec, int] = dict(terms or {})
        self._hash: int | None = None

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return LaurentPoly()

    @staticmethod
    def const(n: int) -> "LaurentPoly":
        if n == 0:
            return LaurentPoly()
        return LaurentPoly({(): int(n)})

    @staticmethod
    def one() -> "LaurentPoly":
        return LaurentPoly.const(1)

    @staticmethod
    def var(v: VarId, exp: int = 1) -> "LaurentPoly":
        if exp == 0:
            return LaurentPoly.const(1)
        return LaurentPoly({((v, exp),): 1})

    @staticmethod
    def monomial(coeff: int, exps: Mapping[VarId, int]) -> "LaurentPoly":
        if coeff == 0:
            return LaurentPoly()
        return LaurentPoly({_expvec(exps): int(coeff)})

    # -- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self._terms

    def is_one(self) -> bool:
        return self._terms == {(): 1}

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def monomial_parts(self) -> Tuple[int, Dict[VarId, int]]:
        """Return (coeff, exponent map) of a monomial; error otherwise."""
        if len(self._terms) != 1:
            raise ValueError("not a monomial")
        (ev, c), = self._terms.items()
        return c, dict(ev)

    def terms(self) -> Iterable[Tuple[ExpVec, int]]:
        return self._terms.items()

    def num_terms(self) -> int:
        return len(self._terms)

    def variables(self) -> set:
        out = set()
        for ev in self._terms:
            for v, _ in ev:
                out.add(v)
        return out

    def coefficients(self) -> Iterable[int]:
        return self._terms.values()

    # -- ring operations -----------------------------------------------

    def add(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._terms:
            return other
        if not other._terms:
            return self
        out = dict(self._terms)
        for ev, c in other._terms.items():
            s = out.get(ev, 0) + c
            if s:
                out[ev] = s
            else:
                out.pop(ev, None)
        return LaurentPoly(out)

    def neg(self) -> "LaurentPoly":
        return LaurentPoly({ev: -c for ev, c in self._terms.items()})

    def sub(self, other: "LaurentPoly") -> "LaurentPoly":
        return self.add(other.neg())

    def mul(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self._terms or not other._terms:
            return LaurentPoly()
        out: Dict[ExpVec, int] = {}
        for ev1, c1 in self._terms.items():
            d1 = dict(ev1)
            for ev2, c2 in other._terms.items():
                exps = dict(d1)
                for v, e in ev2:
                    ne = exps.get(v, 0) + e
                    if ne:
                        exps[v] = ne
                    else:
                        del exps[v]
                key = tuple(sorted(exps.items()))
                s = out.get(key, 0) + c1 * c2
                if s:
                    out[key] = s
                else:
                    del out[key]
        return LaurentPoly(out)

    def pow(self, n: int) -> "LaurentPoly":
        if n < 0:
            c, exps = self.monomial_parts()  # raises if not a monomial
            if c not in (1, -1):
                raise NotDivisible(f"cannot invert coefficient {c}")
            coeff = 1 if c == 1 or n % 2 == 0 else -1
            return LaurentPoly.monomial(coeff,
                                        {v: e * n for v, e in exps.items()})
        out = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                out = out.mul(base)
            base = base.mul(base) if n > 1 else base
            n >>= 1
        return out

    # -- exact division --------------------------------------------------

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Return q with q * other == self; NotDivisible otherwise."""
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly()
        if other.is_monomial():
            c, exps = other.monomial_parts()
            inv = {v: -e for v, e in exps.items()}
            out: Dict[ExpVec, int] = {}
            for ev, coeff in self._terms.items():
                q, r = divmod(coeff, c)
                if r:
                    raise NotDivisible(
                        f"coefficient {coeff} not divisible by {c}")
                exps2 = dict(ev)
                for v, e in inv.items():
                    ne = exps2.get(v, 0) + e
                    if ne:
                        exps2[v] = ne
                    else:
                        del exps2[v]
                out[tuple(sorted(exps2.items()))] = q
            return LaurentPoly(out)
        return self._long_division(other)

    def _long_division(self, other: "LaurentPoly") -> "LaurentPoly":
        # Shift both operands into honest polynomials (all exponents >= 0)
        # and run multivariate long division under lex order; exactness of
        # the Laurent division is equivalent to exactness of the shifted one,
        # and lex leads strictly decrease, so the loop terminates either way.
        all_vars = sorted(self.variables() | other.variables())

        def shift(p: "LaurentPoly"):
            mins = None
            for ev, _ in p.terms():
                d = dict(ev)
                cur = {v: d.get(v, 0) for v in all_vars}
                if mins is None:
                    mins = cur
                else:
                    for v in all_vars:
                        mins[v] = min(mins[v], cur[v])
            dense = {}
            for ev, c in p.terms():
                d = dict(ev)
                dense[tuple(d.get(v, 0) - mins[v] for v in all_vars)] = c
            return dense, mins

        num, num_min = shift(self)
        den, den_min = shift(other)
        den_lead = max(den)
        den_lc = den[den_lead]
        quo: Dict[Tuple[int, ...], int] = {}
        while num:
            lead = max(num)
            diff = tuple(a - b for a, b in zip(lead, den_lead))
            if any(d < 0 for d in diff):
                raise NotDivisible("leading monomial not divisible")
            q, r = divmod(num[lead], den_lc)
            if r:
                raise NotDivisible("leading coefficient not divisible")
            quo[diff] = quo.get(diff, 0) + q
            for mono, c in den.items():
                key = tuple(a + b for a, b in zip(diff, mono))
                s = num.get(key, 0) - q * c
                if s:
                    num[key] = s
                else:
                    num.pop(key, None)
        out: Dict[ExpVec, int] = {}
        for mono, c in quo.items():
            exps = {}
            for v, e, mn, md in zip(
                all_vars, mono,
                (num_min[v] for v in all_vars),
                (den_min[v] for v in all_vars),
            ):
                tot = e + mn - md
                if tot:
                    exps[v] = tot
            out[tuple(sorted(exps.items()))] = c
        return LaurentPoly(out)

    # -- substitution ------------------------------------------------------

    def substitute(self, bindings: Mapping[VarId, "LaurentPoly"]) -> "LaurentPoly":
        """Simultaneous substitution of variables by polynomials.

        A variable occurring with a negative exponent may only be bound to a
        (unit-coefficient) monomial, since its inverse must exist.
        """
        if not bindings:
            return self
        out = LaurentPoly()
        cache: Dict[Tuple[VarId, int], LaurentPoly] = {}
        for ev, c in self._terms.items():
            rest: Dict[VarId, int] = {}
            factor = LaurentPoly.const(c)
            for v, e in ev:
                if v not in bindings:
                    rest[v] = e
                    continue
                key = (v, e)
                if key not in cache:
                    val = bindings[v]
                    if e < 0:
                        if not val.is_monomial():
                            raise NonInvertibleSubstitution(
                                f"{v.text()}^{e} bound to a non-monomial")
                        try:
                            cache[key] = val.pow(e)
                        except NotDivisible as exc:
                            raise NonInvertibleSubstitution(str(exc)) from exc
                    else:
                        cache[key] = val.pow(e)
                factor = factor.mul(cache[key])
            out = out.add(factor.mul(LaurentPoly.monomial(1, rest)))
        return out

    # -- canonical text ----------------------------------------------------

    def _sort_key(self, all_vars):
        # total y-degree ascending, then exponent vectors in descending
        # lexicographic order (larger leading exponents print first)
        def key(item):
            ev, _ = item
            d = dict(ev)
            ydeg = sum(e for v, e in ev if v.kind == "y")
            return (ydeg, tuple(-d.get(v, 0) for v in all_vars))
        return key

    def canonical_text(self) -> str:
        """Deterministic rendering: y-degree ascending, then lex."""
        if not self._terms:
            return "0"
        all_vars = sorted(self.variables())
        display_rank = {"y": 0, "x": 1, "h": 2}
        parts = []
        for ev, c in sorted(self._terms.items(), key=self._sort_key(all_vars)):
            factors = []
            for v, e in sorted(ev, key=lambda ve: (display_rank[ve[0].kind],
                                                   ve[0]._key)):
                factors.append(v.text() if e == 1 else f"{v.text()}^{e}")
            mono = "*".join(factors)
            if not mono:
                body = str(abs(c))
            elif abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}*{mono}"
            parts.append((c < 0, body))
        first_neg, first = parts[0]
        text = ("-" if first_neg else "") + first
        for neg, body in parts[1:]:
            text += (" - " if neg else " + ") + body
        return text

    # -- protocol plumbing --------------------------------------------------

    def __add__(self, other):
        return self.add(self._coerce(other))

    def __radd__(self, other):
        return self._coerce(other).add(self)

    def __sub__(self, other):
        return self.sub(self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other).sub(self)

    def __mul__(self, other):
        return self.mul(self._coerce(other))

    def __rmul__(self, other):
        return self._coerce(other).mul(self)

    def __neg__(self):
        return self.neg()

    def __pow__(self, n: int):
        return self.pow(n)

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.const(other)
        return NotImplemented

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.canonical_text()})"
