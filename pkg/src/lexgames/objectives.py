"""Objective expressions: trivial atoms, max-/min-lexicographic products and
the named families built from them, with membership decided on lassos."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Union

from .ordinals import Ordinal, OrdinalLike, as_ordinal, is_odd
from .words import Colour, LassoWord, limsup_index, project, support_index

__all__ = [
    "ObjectiveError",
    "TW",
    "TL",
    "CoBuchiAtom",
    "MaxLex",
    "MinLex",
    "ParityD",
    "MaxParity",
    "MinParity",
    "OmegaBuchi",
    "MembershipVerdict",
    "Objective",
    "expand",
    "member",
    "flat_view",
    "parse_objective",
    "format_objective",
]


class ObjectiveError(ValueError):
    pass


class MembershipVerdict(NamedTuple):
    accepted: bool
    witness_index: Ordinal


# -- atoms -------------------------------------------------------------------------


@dataclass(frozen=True)
class TW:
    """Trivially winning objective over class ``index``."""

    index: Ordinal
    symbols: frozenset = frozenset({0})

    def __post_init__(self):
        object.__setattr__(self, "index", as_ordinal(self.index))
        object.__setattr__(self, "symbols", frozenset(self.symbols))

    def covers(self, colour: Colour) -> bool:
        return colour.index == self.index and colour.symbol in self.symbols

    def covers_index(self, index: Ordinal) -> bool:
        return index == self.index


@dataclass(frozen=True)
class TL(TW):
    """Trivially losing objective over class ``index``."""


@dataclass(frozen=True)
class CoBuchiAtom(TW):
    """Words over ``{1, 2}`` at ``index`` where 2 occurs finitely often."""

    symbols: frozenset = frozenset({1, 2})


Atom = Union[TW, TL, CoBuchiAtom]


def _atom_kind(atom) -> str:
    if isinstance(atom, TL):
        return "TL"
    if isinstance(atom, CoBuchiAtom):
        return "coBuchi"
    return "TW"


# -- products ----------------------------------------------------------------------


@dataclass(frozen=True)
class _Product:
    family: tuple  # ((key, sub-objective), ...) sorted by key

    def __init__(self, family):
        items = family.items() if isinstance(family, dict) else family
        pairs = sorted(((as_ordinal(k), sub) for k, sub in items), key=lambda kv: kv[0].sort_key())
        keys = [k for k, _ in pairs]
        if len(set(keys)) != len(keys):
            raise ObjectiveError("product indices must be pairwise distinct")
        for key, sub in pairs:
            if isinstance(sub, TW) and sub.index != key:
                raise ObjectiveError(f"atom over class {sub.index} placed at index {key}")
        object.__setattr__(self, "family", tuple(pairs))
        object.__setattr__(self, "_table", {k: s for k, s in pairs})

    def component(self, key: OrdinalLike):
        return self._table[as_ordinal(key)]

    def keys(self) -> tuple[Ordinal, ...]:
        return tuple(k for k, _ in self.family)

    def group_of(self, index: Ordinal) -> Ordinal | None:
        sub = self._table.get(index)
        if sub is not None and isinstance(sub, TW):
            return index
        for k, sub in self.family:
            if sub.covers_index(index):
                return k
        return None

    def covers_index(self, index: Ordinal) -> bool:
        return self.group_of(index) is not None

    def covers(self, colour: Colour) -> bool:
        k = self.group_of(colour.index)
        return k is not None and self._table[k].covers(colour)

    @property
    def is_flat(self) -> bool:
        return all(isinstance(s, TW) for _, s in self.family)


class MaxLex(_Product):
    """Max-lexicographic product: decided at the largest index seen infinitely often."""


class MinLex(_Product):
    """Min-lexicographic product: decided at the support index."""


# -- named families ------------------------------------------------------------------


@dataclass(frozen=True)
class ParityD:
    """``Parity_d`` over priorities ``0..d``; even limsup wins."""

    d: int

    def __post_init__(self):
        if self.d < 0 or self.d % 2:
            raise ObjectiveError(f"Parity(d) needs an even d, got {self.d}")

    def covers_index(self, index: Ordinal) -> bool:
        return index.is_finite and int(index) <= self.d

    def covers(self, colour: Colour) -> bool:
        return colour.symbol == 0 and self.covers_index(as_ordinal(colour.index))


@dataclass(frozen=True)
class _Ranged:
    alpha: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_ordinal(self.alpha))

    def covers_index(self, index: Ordinal) -> bool:
        return index < self.alpha

    def covers(self, colour: Colour) -> bool:
        return colour.symbol == 0 and self.covers_index(as_ordinal(colour.index))


class MaxParity(_Ranged):
    """Priorities below ``alpha``; accepted iff the limsup is odd."""


class MinParity(_Ranged):
    """Priorities below ``alpha``; accepted iff supported at an even index."""


class OmegaBuchi(_Ranged):
    """Min-lex product of trivially winning objectives below ``alpha``."""


Named = Union[ParityD, MaxParity, MinParity, OmegaBuchi]
Objective = Union[TW, TL, CoBuchiAtom, MaxLex, MinLex, ParityD, MaxParity, MinParity, OmegaBuchi]


def _named_atom(named, lam: Ordinal):
    if isinstance(named, ParityD):
        return TL(lam) if is_odd(lam) else TW(lam)
    if isinstance(named, MaxParity):
        return TW(lam) if is_odd(lam) else TL(lam)
    if isinstance(named, MinParity):
        return TL(lam) if is_odd(lam) else TW(lam)
    return TW(lam)


def expand(named, indices: Iterable[OrdinalLike] | None = None):
    """Expand a named objective into an explicit product of singleton atoms.

    For infinite ``alpha`` the caller must supply the finite set of indices
    that actually occur; only those components are materialised.
    """
    if isinstance(named, (TW, MaxLex, MinLex)):
        return named
    if indices is None:
        if isinstance(named, ParityD):
            indices = range(named.d + 1)
        elif named.alpha.is_finite:
            indices = range(int(named.alpha))
        else:
            raise ObjectiveError(f"expanding {format_objective(named)} needs an explicit index set")
    lams = sorted({as_ordinal(i) for i in indices}, key=Ordinal.sort_key)
    for lam in lams:
        if not named.covers_index(lam):
            raise ObjectiveError(f"index {lam} outside {format_objective(named)}")
    family = {lam: _named_atom(named, lam) for lam in lams}
    if isinstance(named, (ParityD, MaxParity)):
        return MaxLex(family)
    return MinLex(family)


def flat_view(W) -> tuple[str, callable]:
    """``(kind, atom_kind)`` for flat products and named families.

    ``kind`` is ``"max"`` or ``"min"``; ``atom_kind(index)`` answers
    ``"TW"``, ``"TL"`` or ``"coBuchi"`` (``None`` if the index is outside).
    Raises :class:`ObjectiveError` for nested products.
    """
    if isinstance(W, (ParityD, MaxParity, MinParity, OmegaBuchi)):
        kind = "max" if isinstance(W, (ParityD, MaxParity)) else "min"

        def atom_kind(lam, W=W):
            lam = as_ordinal(lam)
            return _atom_kind(_named_atom(W, lam)) if W.covers_index(lam) else None

        return kind, atom_kind
    if isinstance(W, (MaxLex, MinLex)):
        if not W.is_flat:
            raise ObjectiveError("nested products have no exact cycle criterion; use bounded checking")
        table = {k: _atom_kind(s) for k, s in W.family}
        return ("max" if isinstance(W, MaxLex) else "min"), lambda lam: table.get(as_ordinal(lam))
    if isinstance(W, TW):
        # a lone atom is a one-component product
        return "max", lambda lam, W=W: _atom_kind(W) if as_ordinal(lam) == W.index else None
    raise ObjectiveError(f"unsupported objective {W!r}")


# -- membership ----------------------------------------------------------------------


def member(W, w: LassoWord) -> MembershipVerdict:
    for c in w.spoke + w.cycle:
        if not W.covers(c):
            raise ObjectiveError(f"colour {c} is outside the objective's colour family")
    return _member(W, w)


def _member(W, w: LassoWord) -> MembershipVerdict:
    if isinstance(W, TW):
        lam = W.index
        if isinstance(W, TL):
            return MembershipVerdict(False, lam)
        if isinstance(W, CoBuchiAtom):
            return MembershipVerdict(all(c.symbol != 2 for c in w.cycle), lam)
        return MembershipVerdict(True, lam)
    if isinstance(W, ParityD):
        lam = limsup_index(w)
        return MembershipVerdict(not is_odd(lam), lam)
    if isinstance(W, MaxParity):
        lam = limsup_index(w)
        return MembershipVerdict(is_odd(lam), lam)
    if isinstance(W, MinParity):
        lam = support_index(w)
        return MembershipVerdict(not is_odd(lam), lam)
    if isinstance(W, OmegaBuchi):
        # some colour recurs in every cycle
        return MembershipVerdict(True, support_index(w))
    if isinstance(W, (MaxLex, MinLex)):
        groups = [W.group_of(c.index) for c in w.cycle]
        pick = max if isinstance(W, MaxLex) else min
        lam = pick(groups, key=Ordinal.sort_key)
        sub = W.component(lam)
        inner = project(w, lambda i: W.group_of(i) == lam)
        return MembershipVerdict(_member(sub, inner).accepted, lam)
    raise ObjectiveError(f"unsupported objective {W!r}")


# -- text syntax -----------------------------------------------------------------------


def format_objective(W) -> str:
    if isinstance(W, TL):
        return f"TL@{W.index}"
    if isinstance(W, CoBuchiAtom):
        return f"coBuchi@{W.index}"
    if isinstance(W, TW):
        return f"TW@{W.index}"
    if isinstance(W, ParityD):
        return f"Parity({W.d})"
    if isinstance(W, MaxParity):
        return f"MaxParity({W.alpha})"
    if isinstance(W, MinParity):
        return f"MinParity({W.alpha})"
    if isinstance(W, OmegaBuchi):
        return f"omegaBuchi({W.alpha})"
    if isinstance(W, (MaxLex, MinLex)):
        name = "maxlex" if isinstance(W, MaxLex) else "minlex"
        inner = ", ".join(f"{k}:{format_objective(s)}" for k, s in W.family)
        return f"{name}{{{inner}}}"
    raise ObjectiveError(f"unsupported objective {W!r}")


_ORD_CHARS = set("0123456789w^*+()")


class _ObjParser:
    def __init__(self, text: str):
        self.s = re.sub(r"\s+", "", text)
        self.i = 0

    def fail(self, what: str = "bad objective syntax"):
        raise ObjectiveError(f"{what}: {self.s!r} at position {self.i}")

    def eat(self, lit: str) -> bool:
        if self.s.startswith(lit, self.i):
            self.i += len(lit)
            return True
        return False

    def expect(self, lit: str):
        if not self.eat(lit):
            self.fail(f"expected {lit!r}")

    def ordinal(self) -> Ordinal:
        start, depth = self.i, 0
        while self.i < len(self.s) and self.s[self.i] in _ORD_CHARS:
            ch = self.s[self.i]
            if ch == "(":
                depth += 1
            elif ch == ")":
                if depth == 0:
                    break
                depth -= 1
            self.i += 1
        try:
            return as_ordinal(self.s[start : self.i])
        except ValueError as exc:
            raise ObjectiveError(str(exc)) from None

    def expr(self):
        for prefix, cls in (("TW@", TW), ("TL@", TL), ("coBuchi@", CoBuchiAtom)):
            if self.eat(prefix):
                return cls(self.ordinal())
        for prefix, cls in (("maxlex{", MaxLex), ("minlex{", MinLex)):
            if self.eat(prefix):
                items = []
                if not self.eat("}"):
                    while True:
                        key = self.ordinal()
                        self.expect(":")
                        items.append((key, self.expr()))
                        if self.eat("}"):
                            break
                        self.expect(",")
                return cls(items)
        for prefix, cls in (("MaxParity(", MaxParity), ("MinParity(", MinParity), ("omegaBuchi(", OmegaBuchi)):
            if self.eat(prefix):
                alpha = self.ordinal()
                self.expect(")")
                return cls(alpha)
        if self.eat("Parity("):
            d = self.ordinal()
            self.expect(")")
            if not d.is_finite:
                self.fail("Parity(d) needs a natural d")
            return ParityD(int(d))
        self.fail()


def parse_objective(text: str):
    p = _ObjParser(text)
    W = p.expr()
    if p.i != len(p.s):
        p.fail("trailing input")
    return W
