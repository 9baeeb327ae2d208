"""Finite-state prefix functions and the reductions built from them.

A prefix function reads a finite colour word and outputs a value; with
outputs in ``{1, 2}`` it represents the set of infinite words on which it
outputs 2 only finitely often.  Machines here are deterministic automata with
output on states, explored eagerly and renumbered in BFS order so that
products are canonical.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Sequence

from .ordinals import as_ordinal
from .words import Colour, LassoWord

__all__ = [
    "ReductionError",
    "PrefixFunction",
    "eval_prefix",
    "lasso_image",
    "cobuchi_sem",
    "const",
    "op_max",
    "op_union",
    "pointwise_leq",
    "successor_step",
    "chain_reduction",
    "least_accepting_index",
    "difference_verdict",
    "double_map",
    "limit_collapse",
    "random_machine",
    "all_lassos",
]


class ReductionError(ValueError):
    pass


@dataclass(frozen=True)
class PrefixFunction:
    """Deterministic machine ``(states, init, step, out)`` over ``letters``."""

    letters: tuple
    states: tuple
    init: Hashable
    trans: dict  # (state, letter) -> state
    out: dict  # state -> output value

    def __post_init__(self):
        sset = set(self.states)
        if self.init not in sset:
            raise ReductionError(f"initial state {self.init!r} is not a state")
        for s in self.states:
            if s not in self.out:
                raise ReductionError(f"state {s!r} has no output")
            for a in self.letters:
                t = self.trans.get((s, a))
                if t is None:
                    raise ReductionError(f"no transition from {s!r} on {a}")
                if t not in sset:
                    raise ReductionError(f"transition into unknown state {t!r}")

    def step(self, state, letter):
        try:
            return self.trans[(state, letter)]
        except KeyError:
            raise ReductionError(f"letter {letter} is outside the machine's alphabet") from None

    def run(self, word: Iterable):
        s = self.init
        for a in word:
            s = self.step(s, a)
        return s


def _explore(letters: tuple, init, step: Callable, out: Callable) -> PrefixFunction:
    """Build the reachable part of an implicit machine, states renumbered 0.."""
    index = {init: 0}
    order = [init]
    dq = deque([init])
    trans = {}
    while dq:
        s = dq.popleft()
        for a in letters:
            t = step(s, a)
            if t not in index:
                index[t] = len(order)
                order.append(t)
                dq.append(t)
            trans[(index[s], a)] = index[t]
    return PrefixFunction(letters, tuple(range(len(order))), 0, trans, {index[s]: out(s) for s in order})


def const(letters: Sequence, value) -> PrefixFunction:
    letters = tuple(letters)
    return PrefixFunction(letters, (0,), 0, {(0, a): 0 for a in letters}, {0: value})


def eval_prefix(f: PrefixFunction, x: Iterable):
    return f.out[f.run(x)]


def lasso_image(f: PrefixFunction, w: LassoWord) -> LassoWord:
    """The output word ``n -> f(w_0 ... w_{n-1})`` as a lasso."""
    outputs = []
    s = f.init
    for a in w.spoke:
        outputs.append(f.out[s])
        s = f.step(s, a)
    seen = {}
    v = w.cycle
    i = 0
    while True:
        key = (s, i % len(v))
        if key in seen:
            start = seen[key]
            return LassoWord(outputs[:start], outputs[start:])
        seen[key] = len(outputs)
        outputs.append(f.out[s])
        s = f.step(s, v[i % len(v)])
        i += 1


def cobuchi_sem(f: PrefixFunction, w: LassoWord) -> bool:
    """``w`` is in the set of ``f``: output 2 only finitely often."""
    return 2 not in lasso_image(f, w).cycle


def _same_letters(*machines: PrefixFunction) -> tuple:
    letters = machines[0].letters
    for m in machines[1:]:
        if set(m.letters) != set(letters):
            raise ReductionError("machines read different alphabets")
    return letters


def op_max(f: PrefixFunction, g: PrefixFunction) -> PrefixFunction:
    """Pointwise maximum; represents the intersection."""
    letters = _same_letters(f, g)
    return _explore(
        letters,
        (f.init, g.init),
        lambda s, a: (f.step(s[0], a), g.step(s[1], a)),
        lambda s: max(f.out[s[0]], g.out[s[1]]),
    )


def op_union(f: PrefixFunction, g: PrefixFunction) -> PrefixFunction:
    """A function below ``f`` representing the union of both sets.

    On a prefix ``x`` with ``f(x) = 2`` the output is 1 exactly when the
    last prefix (``x`` included) on which ``g`` output 2 is no longer than
    the last strict prefix on which ``f`` output 2; a missing prefix counts
    as length -1.  The third state component records that comparison.
    """
    letters = _same_letters(f, g)

    def step(s, a):
        p, q, g_not_later = s
        if f.out[p] == 2:  # f-event at the strict prefix x
            g_not_later = True
        p2, q2 = f.step(p, a), g.step(q, a)
        if g.out[q2] == 2:  # g-event at xa itself
            g_not_later = False
        return (p2, q2, g_not_later)

    def out(s):
        p, _, g_not_later = s
        return 1 if f.out[p] == 1 or g_not_later else 2

    return _explore(letters, (f.init, g.init, g.out[g.init] != 2), step, out)


def pointwise_leq(f: PrefixFunction, g: PrefixFunction) -> bool:
    """``f <= g``: wherever ``g`` outputs 1, so does ``f``."""
    letters = _same_letters(f, g)
    seen = {(f.init, g.init)}
    dq = deque(seen)
    while dq:
        p, q = dq.popleft()
        if g.out[q] == 1 and f.out[p] != 1:
            return False
        for a in letters:
            t = (f.step(p, a), g.step(q, a))
            if t not in seen:
                seen.add(t)
                dq.append(t)
    return True


def successor_step(g_small: PrefixFunction, g_big: PrefixFunction, f_next: PrefixFunction) -> PrefixFunction:
    """``max(union(g_small, f_next), g_big)``, squeezed between the two bounds."""
    if not pointwise_leq(g_big, g_small):
        raise ReductionError("successor step needs g_big <= g_small pointwise")
    return op_max(op_union(g_small, f_next), g_big)


def chain_reduction(chain: Sequence[PrefixFunction]) -> PrefixFunction:
    """Emit, after each prefix, the least ``i`` with ``f_i(x) = 1`` (``k`` if none).

    Outputs are colours ``Colour(i, 0)``, so the output lasso can be judged
    by ``MaxParity(k + 1)``.
    """
    if not chain:
        raise ReductionError("empty chain")
    for i in range(len(chain) - 1):
        if not pointwise_leq(chain[i + 1], chain[i]):
            raise ReductionError(f"chain is not pointwise decreasing at position {i}")
    letters = _same_letters(*chain)
    k = len(chain)

    def out(s):
        for i, (m, st) in enumerate(zip(chain, s)):
            if m.out[st] == 1:
                return Colour(as_ordinal(i), 0)
        return Colour(as_ordinal(k), 0)

    return _explore(
        letters,
        tuple(m.init for m in chain),
        lambda s, a: tuple(m.step(st, a) for m, st in zip(chain, s)),
        out,
    )


def least_accepting_index(chain: Sequence[PrefixFunction], w: LassoWord) -> int:
    for i, m in enumerate(chain):
        if cobuchi_sem(m, w):
            return i
    return len(chain)


def difference_verdict(chain: Sequence[PrefixFunction], w: LassoWord) -> bool:
    """Membership in the difference set of the increasing chain of represented sets.

    ``w`` belongs iff its least accepting index exists and has the parity
    opposite to the chain length.
    """
    k = len(chain)
    i = least_accepting_index(chain, w)
    return i < k and (i % 2) != (k % 2)


# -- letter maps ---------------------------------------------------------------------


def double_map(w: LassoWord) -> LassoWord:
    """Replace every index ``i`` by ``2i``."""

    def dbl(c: Colour) -> Colour:
        if not c.index.is_finite:
            raise ReductionError(f"index {c.index} is not a natural number")
        return Colour(as_ordinal(2 * int(c.index)), c.symbol)

    return w.map(dbl)


def limit_collapse(w: LassoWord, alpha, gammas: Callable[[int], object] | Sequence) -> LassoWord:
    """Replace the ``i``-th occurrence position of index ``alpha`` by ``gammas(i)``.

    Positions are absolute word positions.  Occurrences are only allowed in
    the spoke: an ``alpha`` in the cycle would be replaced by infinitely many
    distinct letters and the image would not be ultimately periodic.
    """
    alpha = as_ordinal(alpha)
    if any(c.index == alpha for c in w.cycle):
        raise ReductionError(f"index {alpha} occurs in the cycle; its image would not be ultimately periodic")
    pick = gammas if callable(gammas) else (lambda i: gammas[i])
    spoke = []
    for i, c in enumerate(w.spoke):
        if c.index == alpha:
            g = as_ordinal(pick(i))
            if not g < alpha:
                raise ReductionError(f"replacement {g} is not below {alpha}")
            spoke.append(Colour(g, c.symbol))
        else:
            spoke.append(c)
    return LassoWord(spoke, w.cycle)


# -- generators used by sweeps ---------------------------------------------------------


def random_machine(rng: random.Random, letters: Sequence, max_states: int = 4, outputs=(1, 2)) -> PrefixFunction:
    letters = tuple(letters)
    n = rng.randint(1, max_states)
    trans = {(s, a): rng.randrange(n) for s in range(n) for a in letters}
    out = {s: rng.choice(outputs) for s in range(n)}
    return PrefixFunction(letters, tuple(range(n)), 0, trans, out)


def all_lassos(letters: Sequence, max_spoke: int, max_cycle: int) -> list[LassoWord]:
    """Every distinct lasso with ``|u| <= max_spoke`` and ``1 <= |v| <= max_cycle``."""
    letters = tuple(letters)
    out = {}
    for lu in range(max_spoke + 1):
        for u in itertools.product(letters, repeat=lu):
            for lv in range(1, max_cycle + 1):
                for v in itertools.product(letters, repeat=lv):
                    w = LassoWord(u, v)
                    out.setdefault(w, None)
    return list(out)
