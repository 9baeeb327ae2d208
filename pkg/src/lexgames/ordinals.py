"""Ordinals below epsilon_0 in Cantor normal form.

An :class:`Ordinal` is a finite sequence of ``(exponent, coefficient)`` terms
with strictly decreasing exponents, each exponent itself an ordinal.  Values
are immutable and hashable; naturals hash like the corresponding ``int`` so
that ``{Ordinal(3): x}[3]`` works.

Text syntax: ``4``, ``w``, ``w*2+1``, ``w^2*3+w+4``, ``w^w``, ``w^(w+1)*2``.
"""

from __future__ import annotations

import re
from functools import total_ordering
from typing import Iterable, Union

__all__ = [
    "Ordinal",
    "OrdinalLike",
    "ZERO",
    "ONE",
    "OMEGA",
    "ord_compare",
    "ord_add",
    "ord_parity",
    "ord_classify",
    "parse_ordinal",
    "as_ordinal",
]

OrdinalLike = Union["Ordinal", int]


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_key", "_hash")

    def __init__(self, value: int | Iterable[tuple["Ordinal", int]] = 0):
        if isinstance(value, int):
            if value < 0:
                raise ValueError("ordinals are non-negative")
            terms = ((ZERO, value),) if value else ()
        else:
            terms = tuple((as_ordinal(e), int(c)) for e, c in value)
            for i, (e, c) in enumerate(terms):
                if c < 1:
                    raise ValueError("CNF coefficients must be positive")
                if i and not e < terms[i - 1][0]:
                    raise ValueError("CNF exponents must strictly decrease")
        self.terms: tuple[tuple[Ordinal, int], ...] = terms
        # Nested tuples compare exactly like CNF term sequences.
        self._key = tuple((e._key, c) for e, c in terms)
        if self.is_finite:
            self._hash = hash(self.natural_part)
        else:
            self._hash = hash(self._key)

    # -- construction helpers -------------------------------------------------

    @classmethod
    def omega_power(cls, exponent: OrdinalLike, coefficient: int = 1) -> "Ordinal":
        return cls([(as_ordinal(exponent), coefficient)])

    # -- queries --------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and not self.terms[0][0].terms)

    @property
    def natural_part(self) -> int:
        """The trailing ``n`` in ``self = a + n`` with ``a`` zero or limit."""
        if self.terms and not self.terms[-1][0].terms:
            return self.terms[-1][1]
        return 0

    @property
    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    def __int__(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return self.natural_part

    def __index__(self) -> int:
        return int(self)

    # -- comparison -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Ordinal):
            return self._key == other._key
        if isinstance(other, int) and not isinstance(other, bool):
            return other >= 0 and self._key == Ordinal(other)._key
        return NotImplemented

    def __lt__(self, other: OrdinalLike) -> bool:
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self._key < other._key

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self) -> tuple:
        return self._key

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: OrdinalLike) -> "Ordinal":
        return ord_add(self, other)

    def __radd__(self, other: OrdinalLike) -> "Ordinal":
        return ord_add(other, self)

    # -- text -----------------------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e.is_zero:
                parts.append(str(c))
                continue
            if e == 1:
                base = "w"
            elif e.is_finite or (len(e.terms) == 1 and e.terms[0][1] == 1 and e.terms[0][0] == 1):
                base = f"w^{e}"
            else:
                base = f"w^({e})"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    def __repr__(self) -> str:
        return f"Ordinal({str(self)!r})"

    def __reduce__(self):
        return (parse_ordinal, (str(self),))


def as_ordinal(x: OrdinalLike | str) -> Ordinal:
    if isinstance(x, Ordinal):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not ordinals")
    if isinstance(x, int):
        return Ordinal(x)
    if isinstance(x, str):
        return parse_ordinal(x)
    raise TypeError(f"cannot interpret {x!r} as an ordinal")


ZERO = Ordinal.__new__(Ordinal)
ZERO.terms = ()
ZERO._key = ()
ZERO._hash = hash(0)
ONE = Ordinal(1)
OMEGA = Ordinal([(ONE, 1)])


def ord_compare(a: OrdinalLike, b: OrdinalLike) -> str:
    """Return ``"LT"``, ``"EQ"`` or ``"GT"``."""
    ka, kb = as_ordinal(a)._key, as_ordinal(b)._key
    if ka == kb:
        return "EQ"
    return "LT" if ka < kb else "GT"


def ord_add(a: OrdinalLike, b: OrdinalLike) -> Ordinal:
    a, b = as_ordinal(a), as_ordinal(b)
    if b.is_zero:
        return a
    lead, coeff = b.terms[0]
    kept = []
    for e, c in a.terms:
        if lead < e:
            kept.append((e, c))
        elif e == lead:
            coeff += c
            break
        else:
            break
    return Ordinal(kept + [(lead, coeff)] + list(b.terms[1:]))


def ord_parity(a: OrdinalLike) -> str:
    """``"odd"`` or ``"even"``; zero and limit ordinals are even."""
    return "odd" if as_ordinal(a).natural_part % 2 else "even"


def is_odd(a: OrdinalLike) -> bool:
    return as_ordinal(a).natural_part % 2 == 1


def ord_classify(a: OrdinalLike) -> str:
    a = as_ordinal(a)
    if a.is_zero:
        return "zero"
    return "successor" if a.terms[-1][0].is_zero else "limit"


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|w|\^|\*|\+|\(|\))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens: list[str] = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ValueError(f"bad ordinal syntax: {self.text!r}")
            self.tokens.append(m.group(1))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expected is not None and tok != expected):
            raise ValueError(f"bad ordinal syntax: {self.text!r}")
        self.i += 1
        return tok

    def natural(self) -> int:
        tok = self.take()
        if not tok.isdigit() or (len(tok) > 1 and tok[0] == "0"):
            raise ValueError(f"bad ordinal syntax: {self.text!r}")
        return int(tok)

    def ordinal(self) -> Ordinal:
        terms: list[tuple[Ordinal, int]] = []
        while True:
            terms.append(self.term())
            if self.peek() != "+":
                break
            self.take("+")
        for e, c in terms:
            if c < 1:
                raise ValueError(f"non-canonical ordinal (zero term): {self.text!r}")
        if len(terms) == 1 and terms[0][1] == 0:
            return ZERO
        for prev, cur in zip(terms, terms[1:]):
            if not cur[0] < prev[0]:
                raise ValueError(f"non-canonical ordinal (exponents must decrease): {self.text!r}")
        return Ordinal(terms)

    def term(self) -> tuple[Ordinal, int]:
        if self.peek() == "w":
            self.take("w")
            exponent = ONE
            if self.peek() == "^":
                self.take("^")
                if self.peek() == "(":
                    self.take("(")
                    exponent = self.ordinal()
                    self.take(")")
                elif self.peek() == "w":
                    self.take("w")
                    exponent = OMEGA
                else:
                    exponent = Ordinal(self.natural())
                if exponent.is_zero:
                    raise ValueError(f"non-canonical ordinal (w^0): {self.text!r}")
            coeff = 1
            if self.peek() == "*":
                self.take("*")
                coeff = self.natural()
                if coeff == 0:
                    raise ValueError(f"non-canonical ordinal (zero coefficient): {self.text!r}")
            return exponent, coeff
        n = self.natural()
        return ZERO, n


def parse_ordinal(text: str) -> Ordinal:
    """Parse the CNF text syntax; non-canonical spellings are rejected."""
    p = _Parser(text)
    if not p.tokens:
        raise ValueError("empty ordinal")
    if p.tokens == ["0"]:
        return ZERO
    value = p.ordinal()
    if p.peek() is not None:
        raise ValueError(f"bad ordinal syntax: {text!r}")
    return value
