"""Satisfaction of objectives by finite graphs, and desk-scale universality checks."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterator

from .graphs import BudgetError, ColouredGraph, OrderedGraph, morphism_search, reachable_restrict
from .objectives import ObjectiveError, flat_view, member
from .words import EPSILON, ColourFamily, LassoWord

__all__ = [
    "SatisfactionReport",
    "UniversalityReport",
    "satisfies_exact",
    "satisfies_bounded",
    "satisfies",
    "losing_region",
    "enumerate_graphs",
    "count_graphs",
    "graph_from_mask",
    "check_universality",
    "check_almost_universality",
    "DEFAULT_ENUMERATION_BUDGET",
]

DEFAULT_ENUMERATION_BUDGET = 1 << 20


@dataclass
class SatisfactionReport:
    satisfied: bool
    witness: LassoWord | None = None
    cycle: tuple = ()  # vertices v0, v1, ..., back to v0 along the witness

    def __bool__(self) -> bool:
        return self.satisfied


@dataclass
class UniversalityReport:
    checked_count: int = 0
    enumerated_count: int = 0
    failures: list = field(default_factory=list)  # (graph, reason)

    @property
    def passed(self) -> bool:
        return not self.failures


def _coloured(G) -> ColouredGraph:
    return G.as_coloured() if isinstance(G, OrderedGraph) else G


def _witness(colours: list) -> LassoWord | None:
    proper = [c for c in colours if c != EPSILON]
    return LassoWord((), proper) if proper else None


def _violations(G: ColouredGraph, W) -> Iterator[tuple]:
    """Yield ``(edge, path)`` for every losing edge that closes a cycle.

    For a max-lex product an edge of index ``l`` whose atom can lose (a TL
    atom, or a 2-symbol of a coBuchi atom) is fatal iff it lies on a cycle of
    edges of index ``<= l``; for a min-lex product, of index ``>= l``.
    Edges coloured ``eps`` carry no index and are allowed in every cycle.
    """
    kind, atom_kind = flat_view(W)
    kinds = {}
    for (_, c, _) in G.edges:
        if c != EPSILON and c.index not in kinds:
            k = atom_kind(c.index)
            if k is None:
                raise ObjectiveError(f"colour {c} is outside the objective's colour family")
            kinds[c.index] = k

    for (s, c, t) in G.edges:
        if c == EPSILON:
            continue
        k = kinds[c.index]
        if not (k == "TL" or (k == "coBuchi" and c.symbol == 2)):
            continue
        lam = c.index
        if kind == "max":
            allowed = lambda d: d == EPSILON or not lam < d.index  # noqa: E731
        else:
            allowed = lambda d: d == EPSILON or not d.index < lam  # noqa: E731
        path = _find_path(G, t, s, allowed)
        if path is not None:
            yield (s, c, t), path


def satisfies_exact(G, W) -> SatisfactionReport:
    """Exact satisfaction check for (flat) products of atoms via cycle queries."""
    G = _coloured(G)
    for (s, c, t), (vertices, colours) in _violations(G, W):
        return SatisfactionReport(False, _witness([c] + colours), (s,) + vertices)
    return SatisfactionReport(True)


def losing_region(G, W) -> set:
    """Vertices from which some infinite path of ``G`` is rejected."""
    G = _coloured(G)
    seeds = {e[0] for e, _ in _violations(G, W)}
    seen = set(seeds)
    todo = list(seeds)
    while todo:
        x = todo.pop()
        for _, p in G.predecessors(x):
            if p not in seen:
                seen.add(p)
                todo.append(p)
    return seen


def _find_path(G: ColouredGraph, src, dst, allowed):
    """BFS path ``src ->* dst`` using allowed colours: (vertices, colours) or None."""
    parent = {src: None}
    dq = deque([src])
    while dq:
        x = dq.popleft()
        if x == dst:
            vs, cs = [x], []
            while parent[x] is not None:
                px, pc = parent[x]
                vs.append(px)
                cs.append(pc)
                x = px
            vs.reverse()
            cs.reverse()
            return tuple(vs), cs
        for c, y in G.successors(x):
            if y not in parent and allowed(c):
                parent[y] = (x, c)
                dq.append(y)
    return None


def satisfies_bounded(G, W, L: int, cache: dict | None = None) -> SatisfactionReport:
    """Search closed walks of length ``<= L`` for a rejected lasso.

    Every objective handled by this package is prefix independent, so a
    lasso realised by a path into a cycle is accepted iff its cycle word
    is; only cycles are enumerated.  Each closed walk is generated once up
    to rotation: from its least vertex, through vertices not below it.
    Walks labelled only by ``eps`` are accepted.
    """
    G = _coloured(G)
    if cache is None:
        cache = {}
    pos = {v: i for i, v in enumerate(G.vertices)}
    succ = {v: G.successors(v) for v in G.vertices}

    def rejected(colours: tuple) -> LassoWord | None:
        hit = cache.get(colours)
        if hit is None:
            w = _witness(list(colours))
            hit = (w,) if w is not None and not member(W, w).accepted else ()
            cache[colours] = hit
        return hit[0] if hit else None

    for start in G.vertices:
        floor = pos[start]
        # iterative DFS over (vertex, colours, vertices)
        stack = [(start, (), (start,))]
        while stack:
            v, cols, vs = stack.pop()
            if len(cols) >= L:
                continue
            for c, t in succ[v]:
                if pos[t] < floor:
                    continue
                ncols = cols + (c,)
                if t == start:
                    w = rejected(ncols)
                    if w is not None:
                        return SatisfactionReport(False, w, vs + (t,))
                stack.append((t, ncols, vs + (t,)))
    return SatisfactionReport(True)


def satisfies(G, W, bound: int | None = None) -> SatisfactionReport:
    """Exact check when available, otherwise bounded with ``L = |V|`` (or ``bound``)."""
    if bound is None:
        try:
            return satisfies_exact(G, W)
        except ObjectiveError as exc:
            if "outside" in str(exc):
                raise
        bound = len(G.vertices)
    return satisfies_bounded(G, W, bound)


# -- enumeration ---------------------------------------------------------------------


def count_graphs(colours: ColourFamily, n: int) -> int:
    return 1 << (n * n * len(colours))


def _slots(colours: ColourFamily, n: int) -> list:
    return [(s, c, t) for s in range(n) for c in colours.colours() for t in range(n)]


def graph_from_mask(colours: ColourFamily, n: int, mask: int, slots: list | None = None) -> ColouredGraph:
    slots = slots if slots is not None else _slots(colours, n)
    return ColouredGraph(range(n), [e for i, e in enumerate(slots) if mask >> i & 1], colours)


def enumerate_graphs(
    colours: ColourFamily, n: int, budget: int | None = DEFAULT_ENUMERATION_BUDGET
) -> Iterator[ColouredGraph]:
    """Every edge set over vertices ``0..n-1``, in order of the edge bitmask."""
    total = count_graphs(colours, n)
    if budget is not None and total > budget:
        raise BudgetError(f"enumeration of {total} graphs exceeds the budget of {budget}")
    slots = _slots(colours, n)
    for mask in range(total):
        yield graph_from_mask(colours, n, mask, slots)


def _check_range(U, W, colours, n, almost, bound, lo, hi):
    """Sweep masks ``lo..hi-1``: (enumerated, checked, [(mask, reason)])."""
    slots = _slots(colours, n)
    checked = 0
    failures = []
    for mask in range(lo, hi):
        G = graph_from_mask(colours, n, mask, slots)
        if not satisfies(G, W, bound).satisfied:
            continue
        checked += 1
        if not almost:
            if morphism_search(G, U) is None:
                failures.append((mask, "no-morphism"))
        elif not any(morphism_search(reachable_restrict(G, v), U) is not None for v in G.vertices):
            failures.append((mask, "no-vertex-with-mapped-cone"))
    return hi - lo, checked, failures


_WORK = None


def _worker(args):
    size, lo, hi = args
    U, W, colours, almost, bound = _WORK
    return _check_range(U, W, colours, size, almost, bound, lo, hi)


def _sweep(U, W, colours, n, almost: bool, bound: int | None, budget, jobs: int = 1) -> UniversalityReport:
    global _WORK
    if isinstance(colours, str):
        colours = ColourFamily.parse(colours)
    sizes = range(1, n + 1) if almost else [n]
    total = sum(count_graphs(colours, m) for m in sizes)
    if budget is not None and total > budget:
        raise BudgetError(f"enumeration of {total} graphs exceeds the budget of {budget}")
    tasks = []
    for m in sizes:
        count = count_graphs(colours, m)
        step = max(1, count // (8 * max(jobs, 1)))
        tasks += [(m, lo, min(lo + step, count)) for lo in range(0, count, step)]
    if jobs > 1:
        import multiprocessing

        # workers inherit the (unpicklable) graphs through fork
        _WORK = (U, W, colours, almost, bound)
        try:
            with multiprocessing.get_context("fork").Pool(jobs) as pool:
                results = pool.map(_worker, tasks)
        finally:
            _WORK = None
    else:
        results = [_check_range(U, W, colours, m, almost, bound, lo, hi) for m, lo, hi in tasks]
    report = UniversalityReport()
    for (m, _, _), (enumerated, checked, failures) in zip(tasks, results):
        report.enumerated_count += enumerated
        report.checked_count += checked
        report.failures.extend((graph_from_mask(colours, m, mask), reason) for mask, reason in failures)
    return report


def check_universality(
    U, W, colours, n: int, *, bound: int | None = None, budget=DEFAULT_ENUMERATION_BUDGET, jobs: int = 1
) -> UniversalityReport:
    """Every satisfying graph on ``n`` labelled vertices must map into ``U``.

    Graphs with fewer vertices are covered too: padding with isolated
    vertices changes neither satisfaction nor the existence of a morphism.
    """
    return _sweep(U, W, colours, n, False, bound, budget, jobs)


def check_almost_universality(
    U, W, colours, n: int, *, bound: int | None = None, budget=DEFAULT_ENUMERATION_BUDGET, jobs: int = 1
) -> UniversalityReport:
    """Every satisfying graph on at most ``n`` vertices needs a vertex whose cone maps into ``U``.

    All sizes ``1..n`` are swept: an isolated vertex has a trivially mapped
    cone, so padding does not reduce small graphs to large ones here.
    """
    return _sweep(U, W, colours, n, True, bound, budget, jobs)
