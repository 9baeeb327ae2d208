"""Edge-coloured graphs, ordered graphs and their algebra.

Two representations live here:

* :class:`ColouredGraph` -- an explicit, immutable edge set.  Used for the
  small graphs that get enumerated, solved and checked by the thousand.
* :class:`OrderedGraph` -- vertices, a colour family, an order and an edge
  *predicate*.  Universal graphs are built as OrderedGraphs whose edges are
  decided by formula, so that products and sums never materialise edge sets
  unless asked to.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Mapping, Sequence

from .ordinals import as_ordinal
from .words import EPSILON, Colour, ColourFamily, format_colour

__all__ = [
    "GraphError",
    "BudgetError",
    "ColouredGraph",
    "OrderedGraph",
    "Morphism",
    "TOP",
    "loop_graph",
    "chain_graph",
    "discrete",
    "directed_sum",
    "tensor",
    "lex_product",
    "reachable_restrict",
    "check_monotone",
    "check_partial_order",
    "morphism_check",
    "morphism_search",
    "compose",
    "MonotonicityReport",
    "OrderReport",
    "vertex_id",
]

Vertex = Hashable
Edge = tuple  # (src, Colour, dst)


class GraphError(ValueError):
    pass


class BudgetError(GraphError):
    """A construction or sweep would exceed its configured size budget."""


class _Top:
    """The fresh maximal vertex added by ``add_top``."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "TOP"

    def __reduce__(self):
        return (_Top, ())


TOP = _Top()


def vertex_id(v) -> str:
    """Deterministic whitespace-free text encoding of a vertex."""
    if v is TOP:
        return "T"
    if isinstance(v, tuple):
        return "(" + ",".join(vertex_id(x) for x in v) + ")"
    return str(v)


# -- explicit graphs ------------------------------------------------------------------


class ColouredGraph:
    """Finite C-graph with an explicit edge set."""

    __slots__ = ("vertices", "edges", "family", "_succ", "_pred")

    def __init__(self, vertices: Iterable[Vertex], edges: Iterable[Edge], family: ColourFamily | None = None):
        self.vertices = tuple(dict.fromkeys(vertices))
        es = []
        seen = set()
        vset = set(self.vertices)
        for e in edges:
            s, c, t = e
            if s not in vset or t not in vset:
                raise GraphError(f"edge {e} has an endpoint outside the vertex set")
            if e not in seen:
                seen.add(e)
                es.append((s, c, t))
        self.edges: tuple[Edge, ...] = tuple(es)
        if family is None:
            family = ColourFamily.of_colours(c for _, c, _ in es if c != EPSILON)
        self.family = family
        self._succ = None
        self._pred = None

    def successors(self, v: Vertex) -> list[tuple[Colour, Vertex]]:
        if self._succ is None:
            succ = {u: [] for u in self.vertices}
            for s, c, t in self.edges:
                succ[s].append((c, t))
            self._succ = succ
        return self._succ[v]

    def predecessors(self, v: Vertex) -> list[tuple[Colour, Vertex]]:
        if self._pred is None:
            pred = {u: [] for u in self.vertices}
            for s, c, t in self.edges:
                pred[t].append((c, s))
            self._pred = pred
        return self._pred[v]

    def has_edge(self, s: Vertex, c: Colour, t: Vertex) -> bool:
        return (c, t) in self.successors(s)

    def edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def restrict(self, keep: Iterable[Vertex]) -> "ColouredGraph":
        keep = set(keep)
        return ColouredGraph(
            [v for v in self.vertices if v in keep],
            [e for e in self.edges if e[0] in keep and e[2] in keep],
            self.family,
        )

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        return f"ColouredGraph(|V|={len(self.vertices)}, |E|={len(self.edges)})"


# -- ordered graphs -------------------------------------------------------------------


class OrderedGraph:
    """An ordered C-graph with a decidable edge relation.

    Parameters
    ----------
    vertices:
        Vertex ids (hashable).  When ``key`` is given they are stored in
        ascending key order.
    family:
        The ambient colour family.
    has_edge:
        Edge predicate ``(u, colour, v) -> bool``; alternatively ``edges``.
    geq:
        Order predicate ``(u, v) -> bool`` meaning ``u >= v``.
    key:
        Optional sort key consistent with ``geq``; makes the order a total
        preorder and enables fast sorting.
    certified:
        Order/edge properties guaranteed by the construction (``"monotone"``,
        ``"total"``, ``"antisymmetric"``); they short-circuit the exhaustive
        checks used by the solver and morphism search.
    """

    def __init__(
        self,
        vertices: Iterable[Vertex],
        family: ColourFamily,
        has_edge: Callable[[Vertex, Colour, Vertex], bool] | None = None,
        *,
        edges: Iterable[Edge] | None = None,
        geq: Callable[[Vertex, Vertex], bool] | None = None,
        key: Callable[[Vertex], object] | None = None,
        certified: Iterable[str] = (),
        name: str = "",
    ):
        vs = list(dict.fromkeys(vertices))
        if key is not None:
            vs.sort(key=key)
        self.vertices: tuple = tuple(vs)
        self.family = family
        self.key = key
        self.name = name
        self._position = None
        if has_edge is None:
            edge_set = frozenset(edges or ())
            has_edge = lambda u, c, v: (u, c, v) in edge_set  # noqa: E731
            self._edges = sorted(edge_set, key=self._edge_sort_key) if edge_set else []
        else:
            self._edges = None
        self._has_edge = has_edge
        if geq is None:
            if key is not None:
                geq = lambda u, v: key(u) >= key(v)  # noqa: E731
            else:
                geq = lambda u, v: u == v  # noqa: E731
        self._geq = geq
        self._props: dict[str, bool] = {p: True for p in certified}
        self._min_source: dict = {}

    # -- basic queries ----------------------------------------------------------

    def has_edge(self, u: Vertex, c: Colour, v: Vertex) -> bool:
        return self._has_edge(u, c, v)

    def geq(self, u: Vertex, v: Vertex) -> bool:
        return self._geq(u, v)

    def gt(self, u: Vertex, v: Vertex) -> bool:
        return self._geq(u, v) and not self._geq(v, u)

    def __len__(self) -> int:
        return len(self.vertices)

    def __repr__(self) -> str:
        label = f" {self.name}" if self.name else ""
        return f"OrderedGraph{label}(|V|={len(self.vertices)}, colours={self.family.format()})"

    def _edge_sort_key(self, e):
        pos = self.position
        return (pos.get(e[0], 0), e[1].index.sort_key(), e[1].symbol, pos.get(e[2], 0))

    @property
    def position(self) -> dict:
        if self._position is None:
            self._position = {v: i for i, v in enumerate(self.vertices)}
        return self._position

    def edges(self) -> list[Edge]:
        """All edges, materialised (vertex order, then colour order)."""
        if self._edges is None:
            colours = self.family.colours()
            self._edges = [
                (u, c, v) for u in self.vertices for c in colours for v in self.vertices if self._has_edge(u, c, v)
            ]
        return self._edges

    def as_coloured(self) -> ColouredGraph:
        return ColouredGraph(self.vertices, self.edges(), self.family)

    # -- order properties -------------------------------------------------------

    def _prop(self, name: str, compute: Callable[[], bool]) -> bool:
        if name not in self._props:
            self._props[name] = compute()
        return self._props[name]

    def is_total(self) -> bool:
        return self._prop("total", lambda: check_partial_order(self).total)

    def is_antisymmetric(self) -> bool:
        return self._prop("antisymmetric", lambda: check_partial_order(self).antisymmetric)

    def is_monotone(self) -> bool:
        return self._prop("monotone", lambda: check_monotone(self).ok)

    def is_partial_order(self) -> bool:
        return self._prop("partial_order", lambda: check_partial_order(self).is_partial_order)

    def certify(self, *props: str) -> "OrderedGraph":
        for p in props:
            self._props[p] = True
        return self

    def ascending(self) -> tuple:
        """Vertices in ascending order (a linear extension for partial orders)."""
        if self.key is not None:
            return self.vertices
        below = {v: sum(1 for u in self.vertices if self._geq(v, u)) for v in self.vertices}
        return tuple(sorted(self.vertices, key=lambda v: (below[v], self.position[v])))

    # -- least sources, for the total monotone fast paths ---------------------------

    def min_source(self, c: Colour, target_pos: int) -> int | None:
        """Least position ``i`` with ``vertices[i] -c-> vertices[target_pos]``.

        Valid for total, left-monotone graphs stored in ascending order: the
        set of c-predecessors of a vertex is then upward closed.
        """
        cache_key = (c, target_pos)
        hit = self._min_source.get(cache_key, -1)
        if hit != -1:
            return hit
        vs = self.vertices
        tgt = vs[target_pos]
        if not vs or not self._has_edge(vs[-1], c, tgt):
            res = None
        else:
            lo, hi = 0, len(vs) - 1
            while lo < hi:
                mid = (lo + hi) // 2
                if self._has_edge(vs[mid], c, tgt):
                    hi = mid
                else:
                    lo = mid + 1
            res = lo
        self._min_source[cache_key] = res
        return res


def discrete(G: ColouredGraph) -> OrderedGraph:
    """View an explicit graph as an ordered graph with the discrete order."""
    return OrderedGraph(G.vertices, G.family, edges=G.edges)


def _ordered(G) -> OrderedGraph:
    return G if isinstance(G, OrderedGraph) else discrete(G)


def _edges_of(G) -> Sequence[Edge]:
    return G.edges if isinstance(G, ColouredGraph) else G.edges()


# -- elementary graphs ---------------------------------------------------------------


def loop_graph(index, symbols: Iterable[int] = (0,)) -> OrderedGraph:
    """Single vertex with a loop for every colour of the class."""
    family = index if isinstance(index, ColourFamily) else ColourFamily({as_ordinal(index): symbols})
    return OrderedGraph(
        [0],
        family,
        lambda u, c, v: c in family,
        key=lambda v: v,
        certified=("total", "antisymmetric", "monotone", "partial_order"),
        name="loop",
    )


def chain_graph(index, k: int, symbols: Iterable[int] = (0,)) -> OrderedGraph:
    """The order graph on ``0..k-1`` with ``l -c-> l'`` for every colour and ``l > l'``."""
    if k < 1:
        raise GraphError("chain needs k >= 1")
    family = index if isinstance(index, ColourFamily) else ColourFamily({as_ordinal(index): symbols})
    return OrderedGraph(
        range(k),
        family,
        lambda u, c, v: u > v and c in family,
        key=lambda v: v,
        certified=("total", "antisymmetric", "monotone", "partial_order"),
        name=f"chain{k}",
    )


# -- algebra -------------------------------------------------------------------------


def _inherit(parts: Sequence[OrderedGraph], props=("total", "antisymmetric", "monotone", "partial_order")):
    """Properties closed under sums and products hold when they hold for all parts."""
    return [p for p in props if all(getattr(G, "_props", {}).get(p) for G in parts)]


def directed_sum(parts: Sequence, family: ColourFamily | None = None) -> OrderedGraph:
    """Disjoint union with every-colour edges from later parts to earlier ones.

    Vertices are pairs ``(mu, v)``; the order puts later parts strictly above.
    """
    parts = [_ordered(G) for G in parts]
    if not parts:
        raise GraphError("directed sum of no graphs")
    if family is None:
        family = parts[0].family
        for G in parts[1:]:
            family = family.union(G.family)
    vertices = [(mu, v) for mu, G in enumerate(parts) for v in G.vertices]

    def has_edge(a, c, b):
        if c not in family:
            return False
        if a[0] > b[0]:
            return True
        return a[0] == b[0] and parts[a[0]].has_edge(a[1], c, b[1])

    def geq(a, b):
        return a[0] > b[0] or (a[0] == b[0] and parts[a[0]].geq(a[1], b[1]))

    key = None
    if all(G.key is not None for G in parts):
        keys = [G.key for G in parts]
        key = lambda a: (a[0], keys[a[0]](a[1]))  # noqa: E731
    return OrderedGraph(vertices, family, has_edge, geq=geq, key=key, certified=_inherit(parts), name="sum")


def tensor(G, k: int) -> OrderedGraph:
    """``k`` stacked copies of ``G`` joined as a directed sum."""
    if k < 1:
        raise GraphError("tensor needs k >= 1")
    G = _ordered(G)
    return directed_sum([G] * k)


def lex_product(G0, G1) -> OrderedGraph:
    """Lexicographic product with ``G1`` (second coordinate) dominant.

    Vertices are pairs ``(v0, v1)``.  A ``C1`` colour moves the second
    coordinate along a ``G1`` edge and resets the first one arbitrarily; a
    ``C0`` colour is allowed when the second coordinate strictly decreases,
    or stays put while the first coordinate takes a ``G0`` edge.
    """
    G0, G1 = _ordered(G0), _ordered(G1)
    overlap = set(G0.family.indices()) & set(G1.family.indices())
    if overlap:
        raise GraphError(f"lexicographic product needs disjoint colour classes, both use {sorted(map(str, overlap))}")
    family = G0.family.union(G1.family)
    c1 = G1.family

    def has_edge(a, c, b):
        if c in c1:
            return G1.has_edge(a[1], c, b[1])
        if c not in G0.family:
            return False
        if a[1] == b[1]:
            return G0.has_edge(a[0], c, b[0])
        return G1.gt(a[1], b[1])

    def geq(a, b):
        if a[1] == b[1]:
            return G0.geq(a[0], b[0])
        return G1.gt(a[1], b[1])

    key = None
    if G0.key is not None and G1.key is not None:
        k0, k1 = G0.key, G1.key
        key = lambda a: (k1(a[1]), k0(a[0]))  # noqa: E731
    vertices = [(v0, v1) for v1 in G1.vertices for v0 in G0.vertices]
    return OrderedGraph(vertices, family, has_edge, geq=geq, key=key, certified=_inherit([G0, G1]), name="lexprod")


def reachable_restrict(G, v) -> ColouredGraph:
    """``G[v]``: the restriction of ``G`` to vertices reachable from ``v``."""
    if isinstance(G, OrderedGraph):
        G = G.as_coloured()
    if v not in set(G.vertices):
        raise GraphError(f"unknown vertex {v!r}")
    seen = {v}
    todo = [v]
    while todo:
        x = todo.pop()
        for _, y in G.successors(x):
            if y not in seen:
                seen.add(y)
                todo.append(y)
    return G.restrict(seen)


# -- checks --------------------------------------------------------------------------


@dataclass
class MonotonicityReport:
    ok: bool
    left_ok: bool
    right_ok: bool
    violations: list = field(default_factory=list)  # (side, (u, v), edge)


def check_monotone(G, limit: int = 50) -> MonotonicityReport:
    """Exhaustively check left- and right-monotonicity.

    Left: ``u >= v -c-> v'`` implies ``u -c-> v'``.  Right: ``v -c-> v' >= u'``
    implies ``v -c-> u'``.  Their conjunction is monotonicity.
    """
    G = _ordered(G)
    vs = G.vertices
    geq = G.geq
    above = {v: [u for u in vs if u != v and geq(u, v)] for v in vs}
    below = {v: [u for u in vs if u != v and geq(v, u)] for v in vs}
    violations = []
    left_ok = right_ok = True
    for (v, c, v2) in G.edges():
        for u in above[v]:
            if not G.has_edge(u, c, v2):
                left_ok = False
                if len(violations) < limit:
                    violations.append(("left", (u, v), (v, c, v2)))
        for u2 in below[v2]:
            if not G.has_edge(v, c, u2):
                right_ok = False
                if len(violations) < limit:
                    violations.append(("right", (v2, u2), (v, c, v2)))
    return MonotonicityReport(left_ok and right_ok, left_ok, right_ok, violations)


@dataclass
class OrderReport:
    reflexive: bool
    antisymmetric: bool
    transitive: bool
    total: bool
    well_founded: bool
    max_antichain: int | None

    @property
    def is_partial_order(self) -> bool:
        return self.reflexive and self.antisymmetric and self.transitive

    @property
    def well_partial_order(self) -> bool:
        # finite: every antichain is finite
        return self.is_partial_order

    @property
    def well_order(self) -> bool:
        return self.is_partial_order and self.total


def check_partial_order(G) -> OrderReport:
    G = _ordered(G)
    vs = G.vertices
    n = len(vs)
    rel = [[G.geq(a, b) for b in vs] for a in vs]
    reflexive = all(rel[i][i] for i in range(n))
    antisymmetric = all(not (rel[i][j] and rel[j][i]) for i in range(n) for j in range(n) if i != j)
    transitive = all(
        rel[i][k] for i in range(n) for j in range(n) if rel[i][j] for k in range(n) if rel[j][k]
    )
    total = all(rel[i][j] or rel[j][i] for i in range(n) for j in range(n))
    antichain = _max_antichain(rel) if (reflexive and antisymmetric and transitive) else None
    # finite partial orders are well-founded
    return OrderReport(reflexive, antisymmetric, transitive, total, reflexive and antisymmetric and transitive, antichain)


def _max_antichain(rel: list[list[bool]]) -> int:
    """Dilworth: width = n - maximum matching in the strict comparability graph."""
    n = len(rel)
    adj = [[j for j in range(n) if j != i and rel[i][j]] for i in range(n)]
    match_right = [-1] * n

    def augment(i, seen):
        for j in adj[i]:
            if not seen[j]:
                seen[j] = True
                if match_right[j] == -1 or augment(match_right[j], seen):
                    match_right[j] = i
                    return True
        return False

    matching = sum(1 for i in range(n) if augment(i, [False] * n))
    return n - matching


# -- morphisms -----------------------------------------------------------------------


@dataclass
class Morphism:
    """A vertex map, optionally remembering its intended source and target."""

    mapping: dict
    source: object = None
    target: object = None

    def __getitem__(self, v):
        return self.mapping[v]

    def __len__(self) -> int:
        return len(self.mapping)


def morphism_check(G, H, phi) -> tuple | None:
    """Return ``None`` if ``phi`` is a morphism ``G -> H``, else the first bad edge."""
    mapping = phi.mapping if isinstance(phi, Morphism) else phi
    for v in G.vertices:
        if v not in mapping:
            raise GraphError(f"morphism undefined on vertex {v!r}")
    H_family = H.family
    for (s, c, t) in _edges_of(G):
        if c not in H_family:
            raise GraphError(f"colour {format_colour(c)} of the source is absent from the target family")
        if not H.has_edge(mapping[s], c, mapping[t]):
            return (s, c, t)
    return None


def compose(phi: Morphism | Mapping, psi: Morphism | Mapping) -> dict:
    """``psi . phi`` as a plain mapping."""
    m1 = phi.mapping if isinstance(phi, Morphism) else phi
    m2 = psi.mapping if isinstance(psi, Morphism) else psi
    return {v: m2[x] for v, x in m1.items()}


def morphism_search(G, H) -> dict | None:
    """Find a morphism ``G -> H`` or return ``None``.

    Totally ordered, antisymmetric, monotone targets use least-fixpoint lifting
    and return the pointwise least morphism.  Other targets fall back to
    backtracking with forward checking.
    """
    H = _ordered(H)
    if isinstance(G, OrderedGraph):
        G = G.as_coloured()
    for (_, c, _) in G.edges:
        if c not in H.family:
            return None
    if not G.vertices:
        return {}
    if H.key is not None and H.is_total() and H.is_antisymmetric() and H.is_monotone():
        return least_morphism(G, H)
    return _backtrack(G, H)


def least_morphism(G: ColouredGraph, H: OrderedGraph) -> dict | None:
    """Lift every vertex of ``G`` from the minimum of ``H`` until consistent."""
    if not H.vertices:
        return None
    phi = {v: 0 for v in G.vertices}
    queue = deque(G.vertices)
    queued = set(G.vertices)
    while queue:
        v = queue.popleft()
        queued.discard(v)
        need = phi[v]
        for c, t in G.successors(v):
            src = H.min_source(c, phi[t])
            if src is None:
                return None
            if src > need:
                need = src
        if need > phi[v]:
            phi[v] = need
            for _, p in G.predecessors(v):
                if p not in queued:
                    queued.add(p)
                    queue.append(p)
    vs = H.vertices
    return {v: vs[i] for v, i in phi.items()}


def _backtrack(G: ColouredGraph, H: OrderedGraph) -> dict | None:
    candidates = list(H.ascending())
    # BFS order keeps constrained neighbours close together
    order: list = []
    seen = set()
    for root in G.vertices:
        if root in seen:
            continue
        seen.add(root)
        dq = deque([root])
        while dq:
            x = dq.popleft()
            order.append(x)
            nbrs = [t for _, t in G.successors(x)] + [s for _, s in G.predecessors(x)]
            for y in nbrs:
                if y not in seen:
                    seen.add(y)
                    dq.append(y)
    domains = {}
    for v in order:
        loops = [c for c, t in G.successors(v) if t == v]
        domains[v] = [u for u in candidates if all(H.has_edge(u, c, u) for c in loops)]
        if not domains[v]:
            return None
    out_edges = {v: [(c, t) for c, t in G.successors(v) if t != v] for v in order}
    in_edges = {v: [(c, s) for c, s in G.predecessors(v) if s != v] for v in order}
    assignment: dict = {}

    def consistent(v, u) -> bool:
        for c, t in out_edges[v]:
            if t in assignment and not H.has_edge(u, c, assignment[t]):
                return False
        for c, s in in_edges[v]:
            if s in assignment and not H.has_edge(assignment[s], c, u):
                return False
        return True

    def solve(i: int, doms: dict) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for u in doms[v]:
            if not consistent(v, u):
                continue
            assignment[v] = u
            # forward checking on unassigned neighbours
            new_doms = doms
            pruned_ok = True
            touched = {t for _, t in out_edges[v] if t not in assignment} | {
                s for _, s in in_edges[v] if s not in assignment
            }
            if touched:
                new_doms = dict(doms)
                for w in touched:
                    keep = [x for x in doms[w] if consistent(w, x)]
                    if not keep:
                        pruned_ok = False
                        break
                    new_doms[w] = keep
            if pruned_ok and solve(i + 1, new_doms):
                return True
            del assignment[v]
        return False

    return dict(assignment) if solve(0, domains) else None
