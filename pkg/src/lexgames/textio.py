"""Line-oriented text formats for graphs, games and machines.

Graph files::

    class 0 0            # optional: colour class and its symbols
    vertex a key=1       # key: comma-separated ordinals, compared lexicographically
    vertex b key=0
    edge a 0 b           # colour: index or index:symbol
    order a >= b         # alternative to keys: generating pairs of the order

Game files add ``owner <id> eve|adam`` lines and may use the colour ``eps``.
Machine files use ``letters``, ``state <id> out=<value>``, ``init <id>`` and
``trans <src> <colour> <dst>``.  Blank lines and ``#`` comments are ignored.
"""

from __future__ import annotations

from .graphs import ColouredGraph, OrderedGraph, vertex_id
from .ordinals import parse_ordinal
from .reductions import PrefixFunction
from .solver import ADAM, EVE, Game
from .words import EPSILON, Colour, ColourFamily, format_colour, parse_colour

__all__ = [
    "FormatError",
    "parse_graph",
    "format_graph",
    "parse_game",
    "format_game",
    "parse_machine",
    "format_machine",
]


class FormatError(ValueError):
    pass


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield no, line.split()


def _colour(tok: str, allow_eps: bool):
    if tok == EPSILON:
        if not allow_eps:
            raise FormatError("colour 'eps' is only allowed in games")
        return EPSILON
    return parse_colour(tok)


def _fmt_colour(c) -> str:
    return c if c == EPSILON else format_colour(c)


class _GraphData:
    def __init__(self):
        self.vertices: list = []
        self.keys: dict = {}
        self.edges: list = []
        self.order: list = []
        self.classes: dict = {}
        self.owner: dict = {}


def _read(text: str, allow_eps: bool, allow_owner: bool) -> _GraphData:
    d = _GraphData()
    seen = set()
    try:
        for no, tok in _lines(text):
            kw = tok[0]
            if kw == "vertex" and len(tok) in (2, 3):
                v = tok[1]
                if v in seen:
                    raise FormatError(f"duplicate vertex {v}")
                seen.add(v)
                d.vertices.append(v)
                if len(tok) == 3:
                    if not tok[2].startswith("key="):
                        raise FormatError(f"expected key=..., got {tok[2]}")
                    d.keys[v] = tuple(parse_ordinal(x).sort_key() for x in tok[2][4:].split(","))
            elif kw == "edge" and len(tok) == 4:
                d.edges.append((tok[1], _colour(tok[2], allow_eps), tok[3]))
            elif kw == "order" and len(tok) == 4 and tok[2] == ">=":
                d.order.append((tok[1], tok[3]))
            elif kw == "class" and len(tok) >= 2:
                syms = [int(s) for s in tok[2:]] or [0]
                d.classes[parse_ordinal(tok[1])] = syms
            elif kw == "owner" and allow_owner and len(tok) == 3:
                if tok[2] not in (EVE, ADAM):
                    raise FormatError(f"owner must be eve or adam, got {tok[2]}")
                d.owner[tok[1]] = tok[2]
            else:
                raise FormatError(f"cannot parse line {no}: {' '.join(tok)}")
    except FormatError as exc:
        raise exc
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    for s, _, t in d.edges:
        for v in (s, t):
            if v not in seen:
                raise FormatError(f"edge mentions undeclared vertex {v}")
    for a, b in d.order:
        for v in (a, b):
            if v not in seen:
                raise FormatError(f"order mentions undeclared vertex {v}")
    if d.keys and len(d.keys) != len(d.vertices):
        raise FormatError("either every vertex has a key or none does")
    if d.keys and d.order:
        raise FormatError("use keys or order lines, not both")
    return d


def _family(d: _GraphData) -> ColourFamily:
    fam = ColourFamily(d.classes) if d.classes else None
    used = [c for _, c, _ in d.edges if c != EPSILON]
    if fam is None:
        return ColourFamily.of_colours(used) if used else ColourFamily({})
    for c in used:
        if c not in fam:
            raise FormatError(f"edge colour {format_colour(c)} is not in the declared classes")
    return fam


def parse_graph(text: str) -> OrderedGraph:
    d = _read(text, allow_eps=False, allow_owner=False)
    fam = _family(d)
    if d.keys:
        keys = d.keys
        return OrderedGraph(d.vertices, fam, edges=d.edges, key=keys.__getitem__)
    if d.order:
        idx = {v: i for i, v in enumerate(d.vertices)}
        n = len(d.vertices)
        rel = [[i == j for j in range(n)] for i in range(n)]
        for a, b in d.order:
            rel[idx[a]][idx[b]] = True
        for k in range(n):  # reflexive-transitive closure
            for i in range(n):
                if rel[i][k]:
                    row_k = rel[k]
                    row_i = rel[i]
                    for j in range(n):
                        if row_k[j]:
                            row_i[j] = True
        return OrderedGraph(d.vertices, fam, edges=d.edges, geq=lambda u, v: rel[idx[u]][idx[v]])
    return OrderedGraph(d.vertices, fam, edges=d.edges)


def _class_lines(fam: ColourFamily) -> list[str]:
    return [f"class {idx} " + " ".join(str(s) for s in sorted(syms)) for idx, syms in fam.classes.items()]


def _order_lines(G: OrderedGraph, ids: dict) -> tuple[dict, list[str]]:
    """Vertex keys (rank in a total preorder) or covering pairs of a partial order."""
    vs = G.vertices
    if G.key is not None:
        ranks, rank, prev = {}, -1, object()
        for v in vs:
            k = G.key(v)
            if k != prev:
                rank += 1
                prev = k
            ranks[v] = rank
        return ranks, []
    lines = []
    strict = {v: [u for u in vs if u != v and G.geq(v, u)] for v in vs}
    for v in vs:
        for u in strict[v]:
            # covering pair: nothing strictly between
            if not any(w != u and w != v and G.geq(w, u) and G.geq(v, w) and not G.geq(u, w) for w in strict[v]):
                lines.append(f"order {ids[v]} >= {ids[u]}")
    return {}, lines


def format_graph(G, extra_vertex_lines: dict | None = None) -> str:
    if isinstance(G, ColouredGraph):
        G = OrderedGraph(G.vertices, G.family, edges=G.edges)
    ids = {v: vertex_id(v) for v in G.vertices}
    if len(set(ids.values())) != len(ids):
        raise FormatError("vertex ids are not distinct as text")
    out = _class_lines(G.family)
    ranks, order_lines = _order_lines(G, ids)
    for v in G.vertices:
        out.append(f"vertex {ids[v]}" + (f" key={ranks[v]}" if ranks else ""))
    for s, c, t in G.edges():
        out.append(f"edge {ids[s]} {_fmt_colour(c)} {ids[t]}")
    out.extend(order_lines)
    if extra_vertex_lines:
        out.extend(extra_vertex_lines)
    return "\n".join(out) + "\n"


def parse_game(text: str, objective) -> Game:
    d = _read(text, allow_eps=True, allow_owner=True)
    fam = _family(d)
    for v in d.vertices:
        if v not in d.owner:
            raise FormatError(f"vertex {v} has no owner line")
    return Game(ColouredGraph(d.vertices, d.edges, fam), dict(d.owner), objective)


def format_game(game: Game) -> str:
    G = game.graph
    ids = {v: vertex_id(v) for v in G.vertices}
    out = _class_lines(G.family)
    out += [f"vertex {ids[v]}" for v in G.vertices]
    out += [f"edge {ids[s]} {_fmt_colour(c)} {ids[t]}" for s, c, t in G.edges]
    out += [f"owner {ids[v]} {game.owner[v]}" for v in G.vertices]
    return "\n".join(out) + "\n"


def _out_value(tok: str):
    if tok in ("1", "2"):
        return int(tok)
    return parse_colour(tok)


def _fmt_out(v) -> str:
    return format_colour(v) if isinstance(v, Colour) else str(v)


def parse_machine(text: str) -> PrefixFunction:
    letters: list = []
    states: list = []
    out: dict = {}
    trans: dict = {}
    init = None
    try:
        for no, tok in _lines(text):
            kw = tok[0]
            if kw == "letters":
                letters.extend(parse_colour(t) for t in tok[1:])
            elif kw == "state" and len(tok) == 3 and tok[2].startswith("out="):
                if tok[1] in out:
                    raise FormatError(f"duplicate state {tok[1]}")
                states.append(tok[1])
                out[tok[1]] = _out_value(tok[2][4:])
            elif kw == "init" and len(tok) == 2:
                init = tok[1]
            elif kw == "trans" and len(tok) == 4:
                c = parse_colour(tok[2])
                if (tok[1], c) in trans:
                    raise FormatError(f"two transitions from {tok[1]} on {tok[2]}")
                trans[(tok[1], c)] = tok[3]
                if c not in letters:
                    letters.append(c)
            else:
                raise FormatError(f"cannot parse line {no}: {' '.join(tok)}")
        if init is None:
            raise FormatError("machine has no init line")
        return PrefixFunction(tuple(letters), tuple(states), init, trans, out)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_machine(f: PrefixFunction) -> str:
    out = ["letters " + " ".join(format_colour(a) for a in f.letters)]
    out += [f"state {vertex_id(s)} out={_fmt_out(f.out[s])}" for s in f.states]
    out.append(f"init {vertex_id(f.init)}")
    out += [
        f"trans {vertex_id(s)} {format_colour(a)} {vertex_id(f.trans[(s, a)])}" for s in f.states for a in f.letters
    ]
    return "\n".join(out) + "\n"
