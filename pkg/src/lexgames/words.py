"""Indexed colours, colour families and ultimately periodic (lasso) words."""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, Mapping, NamedTuple, Sequence

from .ordinals import Ordinal, OrdinalLike, as_ordinal, parse_ordinal

__all__ = [
    "Colour",
    "ColourFamily",
    "LassoWord",
    "project",
    "limsup_index",
    "mininf_index",
    "support_index",
    "parse_colour",
    "format_colour",
    "parse_lasso",
    "format_lasso",
    "EPSILON",
]

EPSILON = "eps"


class Colour(NamedTuple):
    """A colour ``c`` of class ``C_index``; symbols are local to the class."""

    index: Ordinal
    symbol: int = 0

    @classmethod
    def of(cls, index: OrdinalLike | str, symbol: int = 0) -> "Colour":
        return cls(as_ordinal(index), symbol)

    def __str__(self) -> str:
        return format_colour(self)


def parse_colour(text: str) -> Colour:
    text = text.strip()
    if ":" in text:
        idx, sym = text.split(":", 1)
        if not sym.isdigit():
            raise ValueError(f"bad colour {text!r}")
        return Colour(parse_ordinal(idx), int(sym))
    return Colour(parse_ordinal(text), 0)


def format_colour(c: Colour) -> str:
    return str(c.index) if c.symbol == 0 else f"{c.index}:{c.symbol}"


class ColourFamily:
    """Finite association ``index -> symbol set``; classes are disjoint by index."""

    __slots__ = ("classes", "_colours")

    def __init__(self, classes: Mapping[OrdinalLike, Iterable[int]]):
        table: dict[Ordinal, frozenset[int]] = {}
        for idx, syms in classes.items():
            idx = as_ordinal(idx)
            syms = frozenset(int(s) for s in syms)
            if not syms:
                raise ValueError(f"colour class {idx} is empty")
            if idx in table:
                raise ValueError(f"duplicate colour class {idx}")
            table[idx] = syms
        self.classes = dict(sorted(table.items(), key=lambda kv: kv[0].sort_key()))
        self._colours = tuple(Colour(i, s) for i, syms in self.classes.items() for s in sorted(syms))

    @classmethod
    def singletons(cls, indices: Iterable[OrdinalLike]) -> "ColourFamily":
        return cls({i: (0,) for i in indices})

    @classmethod
    def of_colours(cls, colours: Iterable[Colour]) -> "ColourFamily":
        table: dict[Ordinal, set[int]] = {}
        for c in colours:
            table.setdefault(c.index, set()).add(c.symbol)
        return cls(table)

    @classmethod
    def parse(cls, text: str) -> "ColourFamily":
        """``"0,1,2"`` (singleton classes) or ``"0:1/2,w"`` (explicit symbols)."""
        table: dict[Ordinal, list[int]] = {}
        for item in text.replace(" ", "").split(","):
            if not item:
                continue
            if ":" in item:
                idx, syms = item.split(":", 1)
                table[parse_ordinal(idx)] = [int(s) for s in syms.split("/")]
            else:
                table[parse_ordinal(item)] = [0]
        return cls(table)

    def format(self) -> str:
        items = []
        for idx, syms in self.classes.items():
            if syms == {0}:
                items.append(str(idx))
            else:
                items.append(f"{idx}:" + "/".join(str(s) for s in sorted(syms)))
        return ",".join(items)

    def colours(self) -> tuple[Colour, ...]:
        return self._colours

    def indices(self) -> tuple[Ordinal, ...]:
        return tuple(self.classes)

    def symbols(self, index: OrdinalLike) -> frozenset[int]:
        return self.classes[as_ordinal(index)]

    def restrict(self, predicate: Callable[[Ordinal], bool]) -> "ColourFamily":
        return ColourFamily({i: s for i, s in self.classes.items() if predicate(i)})

    def union(self, other: "ColourFamily") -> "ColourFamily":
        table = {i: set(s) for i, s in self.classes.items()}
        for i, s in other.classes.items():
            table.setdefault(i, set()).update(s)
        return ColourFamily(table)

    def __contains__(self, c: object) -> bool:
        if not isinstance(c, tuple) or len(c) != 2:
            return False
        syms = self.classes.get(c[0])
        return syms is not None and c[1] in syms

    def __len__(self) -> int:
        return len(self._colours)

    def __iter__(self) -> Iterator[Colour]:
        return iter(self._colours)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ColourFamily) and self.classes == other.classes

    def __hash__(self) -> int:
        return hash(tuple(self.classes.items()))

    def __repr__(self) -> str:
        return f"ColourFamily({self.format()!r})"


def _primitive_root(v: tuple) -> tuple:
    n = len(v)
    for p in range(1, n + 1):
        if n % p == 0 and v[:p] * (n // p) == v:
            return v[:p]
    return v


class LassoWord:
    """The infinite word ``spoke . cycle^omega``, kept in canonical form.

    Canonical form: the cycle is primitive and the spoke is as short as
    possible, so two lassos are equal iff they denote the same word.
    """

    __slots__ = ("spoke", "cycle", "_hash")

    def __init__(self, spoke: Iterable = (), cycle: Iterable = ()):
        u = tuple(spoke)
        v = tuple(cycle)
        if not v:
            raise ValueError("lasso cycle must be nonempty")
        v = _primitive_root(v)
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1:] + v[:-1]
        self.spoke: tuple = u
        self.cycle: tuple = v
        self._hash = hash((u, v))

    def __eq__(self, other: object) -> bool:
        return isinstance(other, LassoWord) and self.spoke == other.spoke and self.cycle == other.cycle

    def __hash__(self) -> int:
        return self._hash

    def letter(self, i: int):
        if i < len(self.spoke):
            return self.spoke[i]
        return self.cycle[(i - len(self.spoke)) % len(self.cycle)]

    def unroll(self, n: int) -> tuple:
        return tuple(self.letter(i) for i in range(n))

    def letters(self) -> set:
        return set(self.spoke) | set(self.cycle)

    def map(self, fn: Callable) -> "LassoWord":
        return LassoWord([fn(c) for c in self.spoke], [fn(c) for c in self.cycle])

    def __repr__(self) -> str:
        return f"LassoWord({format_lasso(self)!r})"

    def __str__(self) -> str:
        return format_lasso(self)


_PREDICATES: dict[str, Callable[[Ordinal, Ordinal], bool]] = {
    "=": lambda i, lam: i == lam,
    "==": lambda i, lam: i == lam,
    "<": lambda i, lam: i < lam,
    "<=": lambda i, lam: i <= lam,
    ">": lambda i, lam: i > lam,
    ">=": lambda i, lam: i >= lam,
}


def project(w: LassoWord, op: str | Callable[[Ordinal], bool], index: OrdinalLike | None = None):
    """Restrict ``w`` to colours whose index satisfies the predicate.

    Returns a :class:`LassoWord` when the cycle contains a matching colour,
    otherwise the finite tuple of matching spoke letters.
    """
    if callable(op):
        keep = op
    else:
        lam = as_ordinal(index)
        test = _PREDICATES[op]
        keep = lambda i: test(i, lam)  # noqa: E731
    u = [c for c in w.spoke if keep(c.index)]
    v = [c for c in w.cycle if keep(c.index)]
    if v:
        return LassoWord(u, v)
    return tuple(u)


def limsup_index(w: LassoWord) -> Ordinal:
    return max((c.index for c in w.cycle), key=Ordinal.sort_key)


def mininf_index(w: LassoWord) -> Ordinal:
    return min((c.index for c in w.cycle), key=Ordinal.sort_key)


def support_index(w: LassoWord) -> Ordinal:
    # Indices below the cycle minimum only occur in the spoke.
    return mininf_index(w)


def parse_lasso(text: str, parse_letter: Callable[[str], object] = parse_colour) -> LassoWord:
    if text.count("|") != 1:
        raise ValueError(f"lasso needs exactly one '|': {text!r}")
    left, right = text.split("|")
    u = [parse_letter(t) for t in left.split()]
    v = [parse_letter(t) for t in right.split()]
    if not v:
        raise ValueError(f"lasso cycle must be nonempty: {text!r}")
    return LassoWord(u, v)


def format_lasso(w: LassoWord) -> str:
    def fmt(c) -> str:
        return format_colour(c) if isinstance(c, Colour) else str(c)

    u = " ".join(fmt(c) for c in w.spoke)
    v = " ".join(fmt(c) for c in w.cycle)
    return f"{u} | {v}".strip() if u else f"| {v}"


def lasso_of(spoke: Sequence, cycle: Sequence) -> LassoWord:
    """Shorthand: build a lasso of singleton-class colours from indices."""
    return LassoWord([Colour.of(i) for i in spoke], [Colour.of(i) for i in cycle])
