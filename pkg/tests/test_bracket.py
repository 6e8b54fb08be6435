import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from so3wrt.bracket import (DELTA, BudgetError, bracket_contract, bracket_enumeration, lclean, lmul,
                            max_frontier, sweep_order)
from so3wrt.links import braid_closure, cable_pd, chain_link, unknot


def normalized(d, copies=None):
    """Bracket divided by the loop value, as a Laurent dict, via exact division by -A^2-A^-2."""
    pd, free = cable_pd(d, copies or [1] * d.n_components)
    return bracket_contract(pd, free)


def times_delta(p):
    return lclean(lmul(p, DELTA))


def test_unknot_is_delta():
    assert normalized(unknot(0)) == {2: -1, -2: -1}


def test_hopf_frozen():
    # unknot-normalized: -A^4 - A^-4
    h = braid_closure([1, 1], 2)
    assert normalized(h) == times_delta({4: -1, -4: -1})


def test_right_trefoil_frozen():
    t = braid_closure([1, 1, 1], 2)
    assert normalized(t) == times_delta({5: -1, -3: -1, -7: 1})


def test_left_trefoil_is_mirror():
    t = braid_closure([-1, -1, -1], 2)
    assert normalized(t) == times_delta({-5: -1, 3: -1, 7: 1})


def test_figure_eight_frozen():
    # amphichiral: A^8 - A^4 + 1 - A^-4 + A^-8
    f8 = braid_closure([1, -2, 1, -2], 3)
    assert normalized(f8) == times_delta({8: 1, 4: -1, 0: 1, -4: -1, -8: 1})


def test_kink_gives_writhe_factor():
    # one positive kink on an unknot multiplies by -A^3
    k = braid_closure([1], 2)
    assert normalized(k) == lclean(lmul({3: -1}, DELTA))


braids = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=1, max_size=9)


@settings(max_examples=40, deadline=None)
@given(braids)
def test_contraction_matches_state_enumeration(word):
    d = braid_closure(word, 4)
    pd, free = cable_pd(d, [1] * d.n_components)
    assert bracket_contract(pd, free) == bracket_enumeration(pd, free)


def test_cable_contraction_matches_enumeration():
    d = chain_link([0, 0])
    pd, free = cable_pd(d, [2, 2])
    assert len(pd) == 8
    assert bracket_contract(pd, free) == bracket_enumeration(pd, free)


def test_sweep_order_is_a_permutation_with_small_frontier():
    d = chain_link([0, 0, 0, 0])
    pd, _ = cable_pd(d, [2, 2, 2, 2])
    order = sweep_order(pd)
    assert sorted(order) == list(range(len(pd)))
    assert max_frontier(pd, order) <= 8


def test_budgets():
    pd, free = cable_pd(braid_closure([1, 1, 1], 2), [1])
    with pytest.raises(BudgetError):
        bracket_contract(pd, free, budget=2)
    d = braid_closure([1, -2] * 3, 3)
    pd, free = cable_pd(d, [4, 4, 4])
    with pytest.raises(BudgetError):
        bracket_contract(pd, free, budget=10**6, max_states=100)
