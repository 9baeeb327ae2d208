"""Ordinal-indexed lexicographic objectives, universal graphs and positional games."""

__version__ = "0.1.0"

from .ordinals import OMEGA, ONE, ZERO, Ordinal, as_ordinal, ord_add, ord_classify, ord_compare, ord_parity, parse_ordinal
from .words import EPSILON, Colour, ColourFamily, LassoWord, parse_colour, parse_lasso, project
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
    expand,
    member,
    parse_objective,
)
from .graphs import (
    ColouredGraph,
    Morphism,
    OrderedGraph,
    chain_graph,
    check_monotone,
    check_partial_order,
    directed_sum,
    lex_product,
    loop_graph,
    morphism_check,
    morphism_search,
    reachable_restrict,
    tensor,
)
from .universal import add_top, lemma21_wrap, lemma47_embed, lemma49_sum_morphism, power_graph, signature_graph
from .verify import check_almost_universality, check_universality, satisfies_bounded, satisfies_exact
from .solver import Game, auto_universal, oracle_solve, solve, verify_strategy

__all__ = [
    "__version__",
    "OMEGA",
    "ONE",
    "ZERO",
    "Ordinal",
    "as_ordinal",
    "ord_add",
    "ord_classify",
    "ord_compare",
    "ord_parity",
    "parse_ordinal",
    "EPSILON",
    "Colour",
    "ColourFamily",
    "LassoWord",
    "parse_colour",
    "parse_lasso",
    "project",
    "TL",
    "TW",
    "CoBuchiAtom",
    "MaxLex",
    "MaxParity",
    "MinLex",
    "MinParity",
    "OmegaBuchi",
    "ParityD",
    "expand",
    "member",
    "parse_objective",
    "ColouredGraph",
    "Morphism",
    "OrderedGraph",
    "chain_graph",
    "check_monotone",
    "check_partial_order",
    "directed_sum",
    "lex_product",
    "loop_graph",
    "morphism_check",
    "morphism_search",
    "reachable_restrict",
    "tensor",
    "add_top",
    "lemma21_wrap",
    "lemma47_embed",
    "lemma49_sum_morphism",
    "power_graph",
    "signature_graph",
    "check_almost_universality",
    "check_universality",
    "satisfies_bounded",
    "satisfies_exact",
    "Game",
    "auto_universal",
    "oracle_solve",
    "solve",
    "verify_strategy",
]
