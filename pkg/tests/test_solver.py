import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexgames.graphs import BudgetError, ColouredGraph, OrderedGraph, chain_graph
from lexgames.objectives import TL, TW, CoBuchiAtom, MaxLex, MaxParity, MinLex, MinParity, OmegaBuchi, ParityD
from lexgames.solver import (
    ADAM,
    EVE,
    Game,
    SolverError,
    auto_universal,
    oracle_solve,
    random_game,
    solve,
    verify_strategy,
)
from lexgames.universal import lemma21_wrap, signature_graph
from lexgames.words import EPSILON, Colour, ColourFamily

C = [Colour.of(i) for i in range(4)]


def _game(owners, edges, W):
    vs = list(range(len(owners)))
    es = [(s, C[c] if isinstance(c, int) else c, t) for s, c, t in edges]
    return Game(ColouredGraph(vs, es), dict(zip(vs, owners)), W)


def test_single_eve_odd_loop():
    g = _game([EVE], [(0, 1, 0)], MaxParity(2))
    res = solve(g, lemma21_wrap(signature_graph(2, 2), 2))
    assert res.winning == {0}
    assert res.strategy == {0: (0, C[1], 0)}


def test_adam_exit_example_matches_oracle():
    g = _game([ADAM, EVE], [(0, 0, 0), (0, 1, 1), (1, 0, 1)], MinParity(2))
    assert solve(g, auto_universal(MinParity(2), 2)).winning == oracle_solve(g) == {0, 1}


def test_owner_matters():
    W = MinParity(2)
    eve = _game([EVE], [(0, 0, 0), (0, 1, 0)], W)
    adam = _game([ADAM], [(0, 0, 0), (0, 1, 0)], W)
    assert oracle_solve(eve) == {0} and oracle_solve(adam) == set()
    assert solve(eve, auto_universal(W, 1)).winning == {0}
    assert solve(adam, auto_universal(W, 1)).winning == set()


def test_epsilon_only_plays_are_wins():
    g = _game([ADAM, EVE], [(0, EPSILON, 1), (1, EPSILON, 0)], MaxParity(2))
    assert oracle_solve(g) == {0, 1}
    assert solve(g, auto_universal(MaxParity(2), 2)).winning == {0, 1}


def test_verify_strategy_rejects_losing_choice():
    g = _game([EVE, EVE], [(0, 0, 0), (0, 1, 1), (1, 0, 1)], MaxParity(2))
    assert not verify_strategy(g, {0: (0, C[0], 0), 1: (1, C[0], 1)}, 0)
    assert verify_strategy(g, {0: (0, C[1], 1), 1: (1, C[0], 1)}, 0) is False
    h = _game([EVE], [(0, 0, 0), (0, 1, 0)], MaxParity(2))
    assert verify_strategy(h, {0: (0, C[1], 0)}, 0)
    assert not verify_strategy(h, {}, 0)


def test_game_validation():
    with pytest.raises(SolverError):
        _game([EVE, ADAM], [(0, 0, 1)], MaxParity(2))
    with pytest.raises(SolverError):
        _game([EVE], [(0, 3, 0)], MaxParity(2))
    with pytest.raises(SolverError):
        Game(ColouredGraph([0], [(0, C[0], 0)]), {}, MaxParity(2))


def test_solver_rejects_bad_universal_graphs():
    g = _game([EVE], [(0, 0, 0)], MaxParity(2))
    broken = OrderedGraph([0, 1], ColourFamily.singletons([0, 1]), edges=[(0, C[0], 1)], key=lambda v: v)
    with pytest.raises(SolverError):
        solve(g, broken)
    with pytest.raises(SolverError):
        solve(g, chain_graph(1, 3))
    unordered = OrderedGraph([0, 1], ColourFamily.singletons([0, 1]), edges=[])
    with pytest.raises(SolverError):
        solve(g, unordered)


def test_oracle_budget():
    g = _game([EVE] * 4, [(v, c, t) for v in range(4) for c in (0, 1) for t in range(4)], MaxParity(2))
    with pytest.raises(BudgetError):
        oracle_solve(g, budget=100)


def test_solver_on_products_with_cobuchi_atoms():
    W = MaxLex({0: TW(0), 1: CoBuchiAtom(1), 2: TL(2)})
    fam = ColourFamily({0: [0], 1: [1, 2], 2: [0]})
    rng = random.Random(7)
    for _ in range(60):
        g = random_game(rng, W, fam, max_vertices=4, max_edges=7)
        res = solve(g, auto_universal(W, len(g.vertices)))
        assert res.winning == oracle_solve(g)


def test_solver_on_min_products_with_cobuchi_atoms():
    W = MinLex({0: CoBuchiAtom(0), 1: TL(1), 2: TW(2)})
    fam = ColourFamily({0: [1, 2], 1: [0], 2: [0]})
    rng = random.Random(11)
    for _ in range(60):
        g = random_game(rng, W, fam, max_vertices=4, max_edges=7)
        res = solve(g, auto_universal(W, len(g.vertices)))
        assert res.winning == oracle_solve(g)


OBJECTIVES = [MaxParity(3), MinParity(3), ParityD(2), OmegaBuchi(3)]


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(OBJECTIVES))
def test_solver_matches_oracle(seed, W):
    fam = ColourFamily.singletons(range(3))
    g = random_game(random.Random(seed), W, fam, max_vertices=4, max_edges=7, eps_rate=0.15)
    trace = []
    res = solve(g, auto_universal(W, len(g.vertices)), trace=trace)
    assert res.winning == oracle_solve(g)
    # one strategy wins from every winning vertex at once
    for v in res.winning:
        assert verify_strategy(g, res.strategy, v)
    # lifting only ever raises the measure, one vertex at a time
    assert len(trace) == res.lifts
    prev = {v: 0 for v in g.vertices}
    for snap in trace:
        assert all(snap[v] >= prev[v] for v in snap) and snap != prev
        prev = snap
    assert {v for v, r in res.rho.items() if r is not None} == res.winning


def test_random_game_is_deterministic():
    fam = ColourFamily.singletons(range(3))
    a = random_game(random.Random(5), MaxParity(3), fam)
    b = random_game(random.Random(5), MaxParity(3), fam)
    assert a.graph.edges == b.graph.edges and a.owner == b.owner


def test_auto_rejects_unsupported():
    with pytest.raises(SolverError):
        auto_universal(MaxParity("w"), 2)
