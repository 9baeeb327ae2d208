"""Universal graphs: top-augmentation, signature graphs and power graphs.

All constructions return :class:`OrderedGraph` objects with formula-based
edge predicates.  The properties they are known to have by construction
(total order, antisymmetry, monotonicity) are recorded as certificates so
the solver does not have to re-check large graphs; the test-suite checks
them exhaustively at small scale.
"""

from __future__ import annotations

import itertools
from typing import Sequence

from .graphs import (
    TOP,
    BudgetError,
    GraphError,
    Morphism,
    OrderedGraph,
    chain_graph,
    directed_sum,
    lex_product,
    loop_graph,
    morphism_check,
    tensor,
)
from .ordinals import Ordinal, as_ordinal
from .words import ColourFamily

__all__ = [
    "DEFAULT_VERTEX_BUDGET",
    "add_top",
    "signature_graph",
    "parity_graph",
    "PowerGraph",
    "power_graph",
    "lemma21_wrap",
    "lemma47_embed",
    "lemma49_sum_morphism",
    "power_vertex_ok",
]

DEFAULT_VERTEX_BUDGET = 200_000
_CERTS = ("total", "antisymmetric", "monotone", "partial_order")


def _budget_check(count: int, budget: int | None) -> None:
    if budget is not None and count > budget:
        raise BudgetError(f"construction would have {count} vertices, over the budget of {budget}")


def add_top(U: OrderedGraph) -> OrderedGraph:
    """Add a fresh vertex above everything with edges to every original vertex."""
    family = U.family

    def has_edge(u, c, v):
        if v is TOP:
            return False
        if u is TOP:
            return c in family
        return U.has_edge(u, c, v)

    def geq(u, v):
        if u is TOP:
            return True
        if v is TOP:
            return False
        return U.geq(u, v)

    key = None
    if U.key is not None:
        k = U.key
        key = lambda v: (1,) if v is TOP else (0, k(v))  # noqa: E731
    certs = [p for p in ("total", "antisymmetric", "monotone", "partial_order") if U._props.get(p)]
    return OrderedGraph(list(U.vertices) + [TOP], family, has_edge, geq=geq, key=key, certified=certs, name="top")


# -- signature graphs ----------------------------------------------------------------


def _rev_suffix(v: tuple, j: int) -> tuple:
    # most significant (highest) coordinate first
    return tuple(reversed(v[j:]))


def signature_graph(alpha: int, kappa: int, *, guarded: bool = False, budget: int | None = DEFAULT_VERTEX_BUDGET) -> OrderedGraph:
    """Universal graph for ``MaxParity(alpha)`` over colours ``0..alpha-1``.

    A vertex is a tuple of counters indexed by the even priorities, listed
    from the lowest priority up; the order is lexicographic with the highest
    priority most significant.  An even colour ``l`` needs a strict decrease
    of the counters at priorities ``>= l``; an odd colour ``l`` needs the
    counters at priorities ``> l`` not to increase.

    By default the counters sit at even priorities ``< alpha``, which makes
    ``signature_graph(a+1)`` literally the lexicographic product of
    ``signature_graph(a)`` with a chain (even ``a``) or a loop (odd ``a``).
    With ``guarded=True`` counters sit at even priorities ``<= alpha`` and odd
    edges additionally need a nonzero counter above them; for even ``alpha``
    the extra top counter then plays the role of the copy index of a wrap.
    """
    alpha = int(as_ordinal(alpha))
    if kappa < 1:
        raise GraphError("kappa must be >= 1")
    top = alpha if guarded else alpha - 1
    positions = [p for p in range(0, top + 1) if p % 2 == 0]
    _budget_check(kappa ** len(positions), budget)
    family = ColourFamily.singletons(range(alpha))
    vertices = list(itertools.product(range(kappa), repeat=len(positions)))

    def has_edge(u, c, v):
        if c.symbol != 0 or not c.index.is_finite:
            return False
        lam = int(c.index)
        if lam >= alpha:
            return False
        if lam % 2 == 0:
            j = lam // 2
            return _rev_suffix(u, j) > _rev_suffix(v, j)
        j = (lam + 1) // 2
        su, sv = _rev_suffix(u, j), _rev_suffix(v, j)
        if guarded and not any(su):
            return False
        return su >= sv

    name = f"signature{'-guarded' if guarded else ''}({alpha},{kappa})"
    return OrderedGraph(vertices, family, has_edge, key=lambda v: tuple(reversed(v)), certified=_CERTS, name=name)


def parity_graph(d: int, kappa: int) -> OrderedGraph:
    """``loop(0) x chain(1) x loop(2) x ... `` up to priority ``d`` (lexicographic products)."""
    G = loop_graph(0)
    for p in range(1, d + 1):
        G = lex_product(G, chain_graph(p, kappa) if p % 2 else loop_graph(p))
    G.name = f"parity({d},{kappa})"
    return G


def lemma21_wrap(U: OrderedGraph, k: int) -> OrderedGraph:
    """Stack ``k`` copies of an almost universal graph to make it universal."""
    return tensor(U, k)


# -- power graphs --------------------------------------------------------------------


class PowerGraph(OrderedGraph):
    """Power graph over bases ``U_0, ..., U_{a-1}`` with rank bound ``beta``.

    Vertices are pairs ``(f, S)``: ``f`` is a non-increasing tuple of length
    ``a+1`` with values below ``beta`` and ``f[a] == 0``; ``S[l]`` is a vertex
    of the top-augmented base ``l``, and may differ from ``TOP`` only if
    ``f[l] > f[l+1]``.
    """

    bases: list
    topped: list
    beta: int


def _normalise_bases(families) -> list[tuple[Ordinal, OrderedGraph]]:
    out = []
    for item in families:
        if isinstance(item, OrderedGraph):
            idx = item.family.indices()
            if len(idx) != 1:
                raise GraphError("each base graph must use exactly one colour class")
            out.append((idx[0], item))
        else:
            idx, base = item
            idx = as_ordinal(idx)
            if base.family.indices() != (idx,):
                raise GraphError(f"base for class {idx} uses colours {base.family.format()}")
            out.append((idx, base))
    for (a, _), (b, _) in zip(out, out[1:]):
        if not a < b:
            raise GraphError("base classes must be listed by strictly increasing index")
    return out


def power_vertex_ok(f: Sequence[int], S: Sequence, beta: int) -> bool:
    """Shape checks for a power-graph vertex: ranges, monotone f and the top condition."""
    a = len(S)
    if len(f) != a + 1 or f[a] != 0:
        return False
    if any(not 0 <= x < beta for x in f):
        return False
    if any(f[i] < f[i + 1] for i in range(a)):
        return False
    return all(S[i] is TOP or f[i] > f[i + 1] for i in range(a))


def power_graph(families, beta: int, *, check_bases: bool = True, budget: int | None = DEFAULT_VERTEX_BUDGET) -> PowerGraph:
    """Build the power graph of a sequence of base graphs."""
    if beta < 1:
        raise GraphError("beta must be >= 1")
    bases = _normalise_bases(families)
    a = len(bases)
    if check_bases:
        for idx, base in bases:
            if not base.is_antisymmetric():
                raise GraphError(f"base for class {idx} is not antisymmetric")
            if not base.is_monotone():
                raise GraphError(f"base for class {idx} is not monotone")
    topped = [add_top(base) for _, base in bases]
    position = {idx: l for l, (idx, _) in enumerate(bases)}
    family = ColourFamily({})
    for _, base in bases:
        family = family.union(base.family)

    # count first so a huge request fails fast
    ranks = [f + (0,) for f in itertools.combinations_with_replacement(range(beta - 1, -1, -1), a)]
    sizes = [len(T.vertices) for T in topped]
    count = 0
    for f in ranks:
        n = 1
        for l in range(a):
            if f[l] > f[l + 1]:
                n *= sizes[l]
        count += n
    _budget_check(count, budget)
    vertices = []
    for f in ranks:
        choices = [topped[l].vertices if f[l] > f[l + 1] else (TOP,) for l in range(a)]
        for S in itertools.product(*choices):
            vertices.append((f, S))

    def cmp_prefix(x, y, upto: int) -> int:
        """Compare f(0),S(0),...,S(upto-1) lexicographically: 1, 0, -1, or None if incomparable."""
        fx, sx = x
        fy, sy = y
        for l in range(upto):
            if fx[l] != fy[l]:
                return 1 if fx[l] > fy[l] else -1
            p, q = sx[l], sy[l]
            if p == q:
                continue
            T = topped[l]
            if T.geq(p, q):
                return 1
            if T.geq(q, p):
                return -1
            return None
        return 0

    def has_edge(u, c, v):
        l = position.get(c.index)
        if l is None or c not in family:
            return False
        r = cmp_prefix(u, v, l)
        if r is None or r < 0:
            return False
        if r > 0:
            return True
        fu, fv = u[0][l], v[0][l]
        if fu != fv:
            return fu > fv
        return topped[l].has_edge(u[1][l], c, v[1][l])

    def geq(u, v):
        r = cmp_prefix(u, v, a)
        return r is not None and r >= 0

    key = None
    if all(T.key is not None for T in topped):
        keys = [T.key for T in topped]

        def key(v):
            f, S = v
            return tuple(itertools.chain.from_iterable((f[l], keys[l](S[l])) for l in range(a)))

    certs = ["antisymmetric", "partial_order"]
    if all(base._props.get("monotone") for _, base in bases):
        certs.append("monotone")
    if all(base._props.get("total") for _, base in bases):
        certs.append("total")
    G = PowerGraph(vertices, family, has_edge, geq=geq, key=key, certified=certs, name=f"power(beta={beta})")
    G.bases = bases
    G.topped = topped
    G.beta = beta
    return G


def lemma47_embed(left: PowerGraph, right: PowerGraph) -> Morphism:
    """Embed ``right x left`` (left dominant) into the power graph of the joined bases.

    The source is ``lex_product(right, left)``: its vertices are pairs
    ``(right_vertex, left_vertex)``.  Ranks of the left part are shifted
    above every rank of the right part.
    """
    if not left.bases or not right.bases:
        raise GraphError("both halves of the split must be nonempty")
    if not left.bases[-1][0] < right.bases[0][0]:
        raise GraphError("left bases must all precede the right bases")
    source = lex_product(right, left)
    target = power_graph(left.bases + right.bases, left.beta + right.beta, check_bases=False)
    shift = right.beta
    mapping = {}
    for v in source.vertices:
        (fr, Sr), (fl, Sl) = v
        g = tuple(shift + x for x in fl[:-1]) + fr
        mapping[v] = (g, Sl + Sr)
    return Morphism(mapping, source, target)


def lemma49_sum_morphism(parts: Sequence[tuple]) -> Morphism:
    """Combine morphisms ``G_mu -> U^{beta_mu}`` into one from the directed sum.

    Each part's ranks (except the fixed final zero) are shifted by the sum
    of the bounds of the earlier parts.
    """
    if not parts:
        raise GraphError("no parts")
    bases = parts[0][1].target.bases
    key = [(i, id(b)) for i, b in bases]
    offsets = []
    total = 0
    for mu, (G, phi) in enumerate(parts):
        T = phi.target
        if not isinstance(T, PowerGraph) or [(i, id(b)) for i, b in T.bases] != key:
            raise GraphError(f"part {mu}: morphism target is not a power graph over the shared bases")
        bad = morphism_check(G, T, phi)
        if bad is not None:
            raise GraphError(f"part {mu}: input map is not a morphism (edge {bad})")
        offsets.append(total)
        total += T.beta
    source = directed_sum([G for G, _ in parts])
    target = power_graph(bases, total, check_bases=False)
    mapping = {}
    for mu, (G, phi) in enumerate(parts):
        off = offsets[mu]
        for v in G.vertices:
            f, S = phi.mapping[v]
            mapping[(mu, v)] = (tuple(x + off for x in f[:-1]) + (0,), S)
    return Morphism(mapping, source, target)
