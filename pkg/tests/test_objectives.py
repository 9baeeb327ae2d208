import pytest
from hypothesis import given
from hypothesis import strategies as st

from lexgames.objectives import (
    TL,
    TW,
    CoBuchiAtom,
    MaxLex,
    MaxParity,
    MinLex,
    MinParity,
    ObjectiveError,
    OmegaBuchi,
    ParityD,
    expand,
    format_objective,
    member,
    parse_objective,
)
from lexgames.ordinals import OMEGA, as_ordinal
from lexgames.words import Colour, LassoWord, lasso_of, parse_lasso

from strategies import lassos


def _accepts(W, text):
    return member(W, parse_lasso(text)).accepted


def test_expand_named_families():
    assert expand(ParityD(2)) == MaxLex({0: TW(0), 1: TL(1), 2: TW(2)})
    assert expand(MaxParity(3)) == MaxLex({0: TL(0), 1: TW(1), 2: TL(2)})
    assert expand(OmegaBuchi(3)) == MinLex({0: TW(0), 1: TW(1), 2: TW(2)})
    assert expand(MinParity(2)) == MinLex({0: TW(0), 1: TL(1)})


def test_expand_infinite_alpha_needs_indices():
    with pytest.raises(ObjectiveError):
        expand(MaxParity(OMEGA))
    lazy = expand(MaxParity("w*2"), [1, "w+3"])
    assert lazy.component(1) == TW(1) and lazy.component("w+3") == TW(as_ordinal("w+3"))


def test_membership_examples():
    v = member(MaxParity(3), parse_lasso("| 1 2"))
    assert not v.accepted and v.witness_index == 2
    v = member(MinParity(OMEGA), parse_lasso("1 | 2"))
    assert v.accepted and v.witness_index == 2
    v = member(ParityD(2), parse_lasso("| 0 1"))
    assert not v.accepted and v.witness_index == 1
    assert _accepts(OmegaBuchi(5), "0 3 | 4 1 2")
    assert _accepts(MaxParity("w+2"), "| w+1")


def test_cobuchi_atom():
    W = MaxLex({0: TW(0), 1: CoBuchiAtom(1)})
    assert _accepts(W, "1:2 | 1:1")
    assert not _accepts(W, "| 1:1 1:2 0")
    assert _accepts(W, "1:2 | 0")


def test_colour_outside_family_rejected():
    with pytest.raises(ObjectiveError):
        member(MaxParity(2), lasso_of([], [2]))
    with pytest.raises(ObjectiveError):
        member(ParityD(2), LassoWord([], [Colour.of(1, 1)]))
    with pytest.raises(ObjectiveError):
        ParityD(3)


def test_product_validation():
    with pytest.raises(ObjectiveError):
        MaxLex([(0, TW(0)), (0, TL(0))])
    with pytest.raises(ObjectiveError):
        MaxLex({0: TW(1)})


@pytest.mark.parametrize(
    "text",
    ["TW@0", "TL@w+1", "coBuchi@3", "Parity(4)", "MaxParity(w*2)", "MinParity(3)", "omegaBuchi(w^2)",
     "maxlex{0:TW@0, 1:TL@1}", "minlex{0:minlex{0:TW@0, 1:TL@1}, 2:TW@2}"],
)
def test_dsl_round_trip(text):
    W = parse_objective(text)
    assert parse_objective(format_objective(W)) == W


@pytest.mark.parametrize("bad", ["", "TW@", "Parity(w)", "maxlex{0:TW@0", "MaxParity(3) x", "foo"])
def test_dsl_errors(bad):
    with pytest.raises(ObjectiveError):
        parse_objective(bad)


@given(lassos(range(4)))
def test_named_equals_expanded(w):
    for W in (MaxParity(4), MinParity(4), OmegaBuchi(4)):
        assert member(W, w) == member(expand(W), w)
    if all(c.index <= 2 for c in w.letters()):
        assert member(ParityD(2), w) == member(expand(ParityD(2)), w)


@given(lassos(range(4)), st.lists(st.sampled_from([Colour.of(i) for i in range(4)]), max_size=5))
def test_prefix_independence(w, prefix):
    longer = LassoWord(tuple(prefix) + w.spoke, w.cycle)
    for W in (MaxParity(4), MinParity(4), OmegaBuchi(4), expand(MaxParity(4)), expand(MinParity(4))):
        assert member(W, longer).accepted == member(W, w).accepted


@given(lassos(range(4)))
def test_successor_split_of_max_products(w):
    # products over < a+1 split as (product over < a) then component a
    for a in range(1, 4):
        if any(c.index > a for c in w.letters()):
            continue
        whole = expand(MaxParity(a + 1))
        lower = expand(MaxParity(a))
        split = MaxLex({0: lower, a: whole.component(a)})
        assert member(whole, w).accepted == member(split, w).accepted


@given(lassos([0, 1, 2, 3, 4, 5, 6]))
def test_limit_union_of_max_products(w):
    # below w, acceptance is acceptance below some finite bound
    top = max(int(c.index) for c in w.letters())
    direct = member(MaxParity(OMEGA), w).accepted
    assert direct == any(member(MaxParity(lam), w).accepted for lam in range(top + 1, top + 4))


@given(lassos(range(6)))
def test_min_products_regroup(w):
    for flat in (expand(MinParity(6)), expand(OmegaBuchi(6))):
        parts = {0: (0, 1), 2: (2, 3, 4), 5: (5,)}
        grouped = MinLex({k: MinLex({i: flat.component(i) for i in idx}) for k, idx in parts.items()})
        assert member(flat, w).accepted == member(grouped, w).accepted
