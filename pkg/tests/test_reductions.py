import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lexgames.objectives import MaxParity, MinParity, OmegaBuchi, member
from lexgames.ordinals import OMEGA
from lexgames.reductions import (
    PrefixFunction,
    ReductionError,
    all_lassos,
    chain_reduction,
    cobuchi_sem,
    const,
    difference_verdict,
    double_map,
    eval_prefix,
    lasso_image,
    least_accepting_index,
    limit_collapse,
    op_max,
    op_union,
    pointwise_leq,
    random_machine,
    successor_step,
)
from lexgames.words import LassoWord, lasso_of, limsup_index

AB = ("a", "b")
LASSOS = all_lassos(AB, 3, 3)


def _last_is_b():
    # state = last letter; output 2 right after reading b
    return PrefixFunction(AB, ("-", "a", "b"), "-", {(s, x): x for s in ("-", "a", "b") for x in AB}, {"-": 1, "a": 1, "b": 2})


def _even_length():
    return PrefixFunction(AB, (0, 1), 0, {(s, x): 1 - s for s in (0, 1) for x in AB}, {0: 2, 1: 1})


def _simulate(f, x):
    """Independent step-by-step simulator."""
    s = f.init
    for a in x:
        s = f.trans[(s, a)]
    return f.out[s]


def _union_by_definition(f, g, x):
    """Output of union(f, g) on prefix x, read off the prefix lengths."""
    if _simulate(f, x) == 1:
        return 1
    g_last = max((n for n in range(len(x) + 1) if _simulate(g, x[:n]) == 2), default=-1)
    f_last = max((n for n in range(len(x)) if _simulate(f, x[:n]) == 2), default=-1)
    return 1 if g_last <= f_last else 2


machines = st.integers(0, 2**32 - 1).map(lambda s: random_machine(random.Random(s), AB))


def test_eval_prefix_examples():
    assert eval_prefix(const(AB, 1), "abba") == 1
    assert eval_prefix(_even_length(), "ab") == 2
    with pytest.raises(ReductionError):
        eval_prefix(const(AB, 1), "c")


def test_machine_validation():
    with pytest.raises(ReductionError):
        PrefixFunction(AB, (0,), 1, {(0, "a"): 0, (0, "b"): 0}, {0: 1})
    with pytest.raises(ReductionError):
        PrefixFunction(AB, (0,), 0, {(0, "a"): 0}, {0: 1})
    with pytest.raises(ReductionError):
        op_max(const(AB, 1), const(("a",), 1))


def test_lasso_image_examples():
    assert lasso_image(const(AB, 2), LassoWord("ab", "b")) == LassoWord((), (2,))
    img = lasso_image(_even_length(), LassoWord((), "a"))
    assert img.cycle in ((1, 2), (2, 1)) and img == LassoWord((), (2, 1))


def test_cobuchi_examples():
    assert all(cobuchi_sem(const(AB, 1), w) for w in LASSOS)
    assert not any(cobuchi_sem(const(AB, 2), w) for w in LASSOS)
    assert cobuchi_sem(_last_is_b(), LassoWord((), "a"))
    assert not cobuchi_sem(_last_is_b(), LassoWord((), "ab"))


def test_union_hand_simulation():
    # f = const-2, g = const-1: g never fires, so every prefix answers 1
    u = op_union(const(AB, 2), const(AB, 1))
    word = "abbab"
    assert [eval_prefix(u, word[:n]) for n in range(6)] == [1] * 6
    assert all(cobuchi_sem(u, w) for w in LASSOS)


def test_max_and_union_with_constants():
    f = _last_is_b()
    assert all(eval_prefix(op_max(const(AB, 1), const(AB, 2)), w.unroll(3)) == 2 for w in LASSOS)
    for w in LASSOS:
        assert cobuchi_sem(op_max(f, f), w) == cobuchi_sem(f, w)
        assert cobuchi_sem(op_union(f, f), w) == cobuchi_sem(f, w)


def test_pointwise_leq_examples():
    f = _last_is_b()
    assert pointwise_leq(const(AB, 1), f)
    assert not pointwise_leq(f, const(AB, 1))
    assert pointwise_leq(const(AB, 1), const(AB, 1))
    assert pointwise_leq(op_union(f, _even_length()), f)


@settings(max_examples=150, deadline=None)
@given(machines, machines, st.lists(st.sampled_from(AB), max_size=8))
def test_union_matches_its_definition(f, g, x):
    assert eval_prefix(op_union(f, g), x) == _union_by_definition(f, g, x)


@settings(max_examples=100, deadline=None)
@given(machines, st.lists(st.sampled_from(AB), max_size=10))
def test_eval_matches_simulator(f, x):
    assert eval_prefix(f, x) == _simulate(f, x)


@settings(max_examples=100, deadline=None)
@given(machines, st.sampled_from(LASSOS))
def test_lasso_image_matches_direct_evaluation(f, w):
    img = lasso_image(f, w)
    n = 3 * len(f.states) * (len(w.spoke) + len(w.cycle))
    assert list(img.unroll(n)) == [eval_prefix(f, w.unroll(i)) for i in range(n)]


@settings(max_examples=60, deadline=None)
@given(machines, machines)
def test_operator_semantics(f, g):
    m, u = op_max(f, g), op_union(f, g)
    assert pointwise_leq(u, f)
    assert pointwise_leq(f, m) and pointwise_leq(g, m)
    for w in LASSOS:
        sf, sg = cobuchi_sem(f, w), cobuchi_sem(g, w)
        assert cobuchi_sem(m, w) == (sf and sg)
        assert cobuchi_sem(u, w) == (sf or sg)


def test_successor_step_with_trivial_bounds():
    for seed in range(20):
        f = random_machine(random.Random(seed), AB)
        r = successor_step(const(AB, 2), const(AB, 1), f)
        assert all(cobuchi_sem(r, w) == cobuchi_sem(f, w) for w in LASSOS)
    with pytest.raises(ReductionError):
        successor_step(const(AB, 1), const(AB, 2), const(AB, 1))


@settings(max_examples=60, deadline=None)
@given(machines, machines, machines)
def test_successor_step_sandwich(g_small, h, r):
    g_big = op_union(g_small, h)
    f_next = op_union(g_small, op_max(h, r))
    res = successor_step(g_small, g_big, f_next)
    assert pointwise_leq(g_big, res) and pointwise_leq(res, g_small)
    for w in LASSOS:
        assert cobuchi_sem(res, w) == cobuchi_sem(f_next, w)


def test_chain_reduction_examples():
    out = chain_reduction([const(AB, 1)])
    assert all(c.index == 0 for c in out.out.values())
    out = chain_reduction([const(AB, 2)])
    assert limsup_index(lasso_image(out, LassoWord((), "a"))) == 1
    chain = [_last_is_b(), const(AB, 1)]
    out = chain_reduction(chain)
    assert limsup_index(lasso_image(out, LassoWord((), "a"))) == 0
    assert limsup_index(lasso_image(out, LassoWord((), "b"))) == 1
    with pytest.raises(ReductionError):
        chain_reduction([_last_is_b(), const(AB, 2)])
    with pytest.raises(ReductionError):
        chain_reduction([])


def _random_chain(rng, k):
    """f_0 >= f_1 >= ...: each level is a union of the previous one with a fresh machine."""
    chain = [random_machine(rng, AB, 3)]
    while len(chain) < k:
        chain.append(op_union(chain[-1], random_machine(rng, AB, 3)))
    return chain


@pytest.mark.parametrize("k", [1, 2, 3])
def test_chain_reduction_limsup_is_least_accepting_index(k):
    rng = random.Random(k)
    for _ in range(15):
        chain = _random_chain(rng, k)
        out = chain_reduction(chain)
        for w in LASSOS:
            lim = int(limsup_index(lasso_image(out, w)))
            assert lim == least_accepting_index(chain, w)
            accepted = member(MaxParity(k + 1), lasso_image(out, w)).accepted
            # odd limsup is acceptance; the difference set flips with k
            assert accepted == (difference_verdict(chain, w) if k % 2 == 0 else not difference_verdict(chain, w))


def test_double_map_examples():
    assert double_map(lasso_of([], [1])) == lasso_of([], [2])
    assert double_map(lasso_of([3], [0, 5])) == lasso_of([6], [0, 10])
    with pytest.raises(ReductionError):
        double_map(lasso_of([], [OMEGA]))


def test_double_map_equivalence():
    for w in all_lassos([lasso_of([], [i]).cycle[0] for i in range(3)], 2, 3):
        assert member(OmegaBuchi(3), w).accepted == member(MinParity(OMEGA), double_map(w)).accepted


def test_limit_collapse_examples():
    w = lasso_of([OMEGA, OMEGA], [1])
    assert limit_collapse(w, OMEGA, lambda i: 2 * i) == lasso_of([0, 2], [1])
    v = lasso_of([0, 1], [1, 0])
    assert limit_collapse(v, OMEGA, [0, 2]) == v
    with pytest.raises(ReductionError):
        limit_collapse(lasso_of([], [OMEGA, 1]), OMEGA, lambda i: 2 * i)
    with pytest.raises(ReductionError):
        limit_collapse(lasso_of([OMEGA], [1]), OMEGA, ["w+1"])
