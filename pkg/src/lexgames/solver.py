"""Games on coloured graphs: progress-measure solving and a brute-force oracle.

``solve`` lifts a map from game vertices into a totally ordered monotone
universal graph (plus a TOP value) until every vertex is consistent; the
vertices that stay below TOP are Eve's winning region and the edges that
witness consistency form a positional strategy.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass
from typing import Mapping

from .graphs import BudgetError, ColouredGraph, OrderedGraph, chain_graph, lex_product, loop_graph
from .objectives import (
    TL,
    TW,
    CoBuchiAtom,
    MaxLex,
    MaxParity,
    MinLex,
    MinParity,
    OmegaBuchi,
    ParityD,
    flat_view,
)
from .ordinals import as_ordinal
from .universal import lemma21_wrap, parity_graph, power_graph, signature_graph
from .verify import losing_region
from .words import EPSILON, ColourFamily

__all__ = [
    "EVE",
    "ADAM",
    "Game",
    "SolveResult",
    "SolverError",
    "solve",
    "oracle_solve",
    "verify_strategy",
    "restrict_to_strategy",
    "auto_universal",
    "cobuchi_graph",
    "random_game",
]

EVE = "eve"
ADAM = "adam"


class SolverError(ValueError):
    pass


@dataclass
class Game:
    graph: ColouredGraph
    owner: dict
    objective: object

    def __post_init__(self):
        for v in self.graph.vertices:
            if self.owner.get(v) not in (EVE, ADAM):
                raise SolverError(f"vertex {v!r} has no owner")
            if not self.graph.successors(v):
                raise SolverError(f"vertex {v!r} is a sink; games must be sinkless")
        for (_, c, _) in self.graph.edges:
            if c != EPSILON and not self.objective.covers(c):
                raise SolverError(f"colour {c} is outside the objective's colour family")

    @property
    def vertices(self) -> tuple:
        return self.graph.vertices

    def eve_vertices(self) -> list:
        return [v for v in self.graph.vertices if self.owner[v] == EVE]


@dataclass
class SolveResult:
    winning: set
    strategy: dict  # Eve vertex -> edge (src, colour, dst)
    rho: dict  # vertex -> vertex of U, or None for TOP
    lifts: int = 0


def solve(game: Game, U: OrderedGraph, trace: list | None = None) -> SolveResult:
    """Least consistent progress measure of ``game`` into ``U``.

    An edge ``v -c-> v'`` is supported at value ``u`` when ``u -c-> rho(v')``
    in ``U``, or ``c`` is ``eps`` and ``u >= rho(v')``; TOP supports
    everything.  Eve needs one supported edge, Adam needs all.  ``trace``,
    if given, receives a snapshot of the measure after every lift.
    """
    if U.key is None or not (U.is_total() and U.is_antisymmetric()):
        raise SolverError("the universal graph must be totally ordered and antisymmetric")
    if not U.is_monotone():
        raise SolverError("the universal graph must be monotone")
    G = game.graph
    for (_, c, _) in G.edges:
        if c != EPSILON and c not in U.family:
            raise SolverError(f"colour {c} is missing from the universal graph")
    TOP = len(U.vertices)
    vs = G.vertices
    rho = {v: 0 for v in vs}
    eve = {v: game.owner[v] == EVE for v in vs}

    def need(c, t) -> int:
        r = rho[t]
        if r == TOP:
            return TOP
        if c == EPSILON:
            return r
        src = U.min_source(c, r)
        return TOP if src is None else src

    queue = deque(vs)
    queued = set(vs)
    lifts = 0
    while queue:
        v = queue.popleft()
        queued.discard(v)
        needs = [need(c, t) for c, t in G.successors(v)]
        target = min(needs) if eve[v] else max(needs)
        if target > rho[v]:
            rho[v] = target
            lifts += 1
            if trace is not None:
                trace.append(dict(rho))
            for _, p in G.predecessors(v):
                if p not in queued:
                    queued.add(p)
                    queue.append(p)
    winning = {v for v in vs if rho[v] != TOP}
    strategy = {}
    for v in vs:
        if not eve[v] or v not in winning:
            continue
        best = None
        for i, (c, t) in enumerate(G.successors(v)):
            if need(c, t) <= rho[v]:
                cand = (rho[t], i)
                if best is None or cand < best[0]:
                    best = (cand, (v, c, t))
        strategy[v] = best[1]
    measure = {v: (U.vertices[r] if r != TOP else None) for v, r in rho.items()}
    return SolveResult(winning, strategy, measure, lifts)


# -- oracle --------------------------------------------------------------------------


def restrict_to_strategy(game: Game, strategy: Mapping) -> ColouredGraph:
    """Keep every Adam edge and, at each Eve vertex, only the chosen edge."""
    G = game.graph
    edges = []
    for v in G.vertices:
        if game.owner[v] == EVE:
            e = strategy.get(v)
            if e is None:
                raise SolverError(f"strategy undefined at Eve vertex {v!r}")
            if e[0] != v or not G.has_edge(*e):
                raise SolverError(f"strategy picks a non-edge {e!r} at {v!r}")
            edges.append(e)
        else:
            edges.extend((v, c, t) for c, t in G.successors(v))
    return ColouredGraph(G.vertices, edges, G.family)


def oracle_solve(game: Game, budget: int = 200_000) -> set:
    """Winning region by enumerating every positional Eve strategy.

    For each strategy, a vertex wins if no rejected cycle is reachable from
    it in the restricted graph (cycles labelled only ``eps`` are wins).
    """
    flat_view(game.objective)  # raises for objectives without an exact criterion
    G = game.graph
    eve = game.eve_vertices()
    choices = [[(v, c, t) for c, t in G.successors(v)] for v in eve]
    count = 1
    for ch in choices:
        count *= len(ch)
    if count > budget:
        raise BudgetError(f"{count} Eve strategies exceed the oracle budget of {budget}")
    winning: set = set()
    for pick in itertools.product(*choices):
        H = restrict_to_strategy(game, dict(zip(eve, pick)))
        lose = losing_region(H, game.objective)
        winning.update(v for v in G.vertices if v not in lose)
        if len(winning) == len(G.vertices):
            break
    return winning


def verify_strategy(game: Game, strategy: Mapping, v) -> bool:
    """Does ``strategy`` win every play from ``v``?"""
    G = game.graph
    edges = []
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        if game.owner[x] == EVE:
            e = strategy.get(x)
            if e is None or e[0] != x or not G.has_edge(*e):
                return False
            out = [e]
        else:
            out = [(x, c, t) for c, t in G.successors(x)]
        edges.extend(out)
        for (_, _, t) in out:
            if t not in seen:
                seen.add(t)
                todo.append(t)
    H = ColouredGraph([u for u in G.vertices if u in seen], edges, G.family)
    return v not in losing_region(H, game.objective)


# -- universal graphs for --auto ----------------------------------------------------


def cobuchi_graph(index, kappa: int) -> OrderedGraph:
    """Chain for a coBuchi atom: symbol 1 may stay level, symbol 2 must descend."""
    family = ColourFamily({as_ordinal(index): (1, 2)})
    return OrderedGraph(
        range(kappa),
        family,
        lambda u, c, v: c in family and (u > v if c.symbol == 2 else u >= v),
        key=lambda v: v,
        certified=("total", "antisymmetric", "monotone", "partial_order"),
        name=f"cobuchi{kappa}",
    )


def _atom_graph(atom, kappa: int) -> OrderedGraph:
    if isinstance(atom, TL):
        return chain_graph(ColourFamily({atom.index: atom.symbols}), kappa)
    if isinstance(atom, CoBuchiAtom):
        return cobuchi_graph(atom.index, kappa)
    return loop_graph(ColourFamily({atom.index: atom.symbols}))


def _flat_atoms(W) -> list:
    if isinstance(W, ParityD):
        return [TL(i) if i % 2 else TW(i) for i in range(W.d + 1)]
    if isinstance(W, (MaxParity, MinParity, OmegaBuchi)):
        if not W.alpha.is_finite:
            raise SolverError("automatic universal graphs need a finite index range")
        from .objectives import expand

        return [atom for _, atom in expand(W).family]
    if isinstance(W, (MaxLex, MinLex)):
        if not W.is_flat:
            raise SolverError("automatic universal graphs need a flat product of atoms")
        return [atom for _, atom in W.family]
    if isinstance(W, TW):
        return [W]
    raise SolverError(f"no automatic universal graph for {W!r}")


_AUTO_CACHE: dict = {}


def auto_universal(W, n: int) -> OrderedGraph:
    """Universal graph for games with ``n`` vertices.

    Max-lex shapes use signature / lexicographic-product graphs with chains
    of ``kappa = n + 1`` levels.  Min-lex shapes use power graphs with rank
    bound ``beta = n + a`` for ``a`` components: a single vertex carrying a
    loop of every colour already needs ``a + 1`` ranks.  The result is
    wrapped into ``n + 1`` copies.
    """
    cache_key = (W, n)
    if cache_key in _AUTO_CACHE:
        return _AUTO_CACHE[cache_key]
    kappa = n + 1
    if isinstance(W, MaxParity) and W.alpha.is_finite:
        U = signature_graph(int(W.alpha), kappa)
    elif isinstance(W, ParityD):
        U = parity_graph(W.d, kappa)
    else:
        atoms = _flat_atoms(W)
        kind, _ = flat_view(W)
        if kind == "max":
            U = _atom_graph(atoms[0], kappa)
            for atom in atoms[1:]:
                U = lex_product(U, _atom_graph(atom, kappa))
        else:
            U = power_graph([_atom_graph(a, kappa) for a in atoms], n + len(atoms))
    U = lemma21_wrap(U, kappa)
    _AUTO_CACHE[cache_key] = U
    return U


# -- random games --------------------------------------------------------------------


def random_game(
    rng: random.Random,
    objective,
    colours: ColourFamily,
    max_vertices: int = 5,
    max_edges: int = 8,
    eps_rate: float = 0.0,
) -> Game:
    """A sinkless random game with mixed owners."""
    n = rng.randint(1, max_vertices)
    palette = list(colours.colours())
    vs = list(range(n))

    def colour():
        return EPSILON if rng.random() < eps_rate else rng.choice(palette)

    edges = {(v, colour(), rng.choice(vs)) for v in vs}
    target = rng.randint(n, max(n, max_edges))
    tries = 0
    while len(edges) < target and tries < 10 * max_edges:
        edges.add((rng.choice(vs), colour(), rng.choice(vs)))
        tries += 1
    owner = {v: rng.choice((EVE, ADAM)) for v in vs}
    return Game(ColouredGraph(vs, sorted(edges, key=repr), colours), owner, objective)
