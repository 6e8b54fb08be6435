import math

import pytest

from so3wrt.bracket import BudgetError
from so3wrt.cyclo import Level, LevelError, RootChoice
from so3wrt.links import borromean_link, braid_closure, chain_link, empty_link, unknot, unknot_unlink
from so3wrt.skein import InadmissibleError, get_skein
from so3wrt.surgery import (Budget, borromean_closed_form, borromean_invariant, chebyshev,
                            colored_bracket, kauffman_bracket, mu, rt_invariant, unknot_weights)


def lens_oracle(level, p, root=RootChoice.E):
    """I of p-surgery on the unknot, written out directly from the skein data."""
    sk = get_skein(level.r, root)
    m = mu(level, root)
    s = sum((sk.loop_value(c) ** 2 * sk.twist(c) ** p for c in sk.colors()), sk.zero())
    if p == 0:
        return m * m * s
    wp, wm = unknot_weights(level, root)
    return m * m * s / (wp if p > 0 else wm)


def test_chebyshev():
    assert chebyshev(0) == (1,)
    assert chebyshev(2) == (-1, 0, 1)
    assert chebyshev(4) == (1, 0, -3, 0, 1)


def test_normalization_anchors(level):
    m = mu(level)
    assert rt_invariant(empty_link(), level).exact == m
    assert rt_invariant(unknot(0), level).exact == 1
    assert rt_invariant(unknot_unlink(2), level).exact == 1 / m
    assert rt_invariant(unknot(1), level).exact == m
    assert rt_invariant(unknot(-1), level).exact == m


def test_s3_value_r5_frozen():
    assert abs(rt_invariant(empty_link(), 5).approx - 0.5257311121191336) < 1e-12


@pytest.mark.parametrize("p", [-4, -2, 2, 3, 5])
def test_lens_spaces_match_oracle(level, p):
    assert rt_invariant(unknot(p), level).exact == lens_oracle(level, p)


def test_lens_moduli_r7_frozen():
    # |I(L(p,1))|/mu at r=7 takes values in {1, 1.8019, 2.2470, 3.0489}, or 0
    mods = {p: abs(rt_invariant(unknot(p), 7).approx) / abs(complex(mu(7))) for p in range(-6, 7)}
    assert abs(mods[1] - 1) < 1e-12
    allowed = [0, 1, 1.8019377358, 2.2469796037, 3.0489173395]
    for p, v in mods.items():
        assert min(abs(v - a) for a in allowed) < 1e-9, (p, v)


def test_colored_hopf(level):
    sk = get_skein(level.r)
    h = chain_link([0, 0])
    for a in sk.colors():
        for b in sk.colors():
            assert colored_bracket(h, (a, b), level) == (-1) ** (a + b) * sk.quantum_int((a + 1) * (b + 1))


def test_colored_bracket_color_checks():
    with pytest.raises(InadmissibleError):
        colored_bracket(unknot(0), (1,), 5)
    with pytest.raises(InadmissibleError):
        colored_bracket(unknot(0), (4,), 5)
    with pytest.raises(InadmissibleError):
        colored_bracket(unknot(0), (0, 0), 5)


def test_kauffman_bracket_trefoil():
    sk = get_skein(7)
    t = braid_closure([1, 1, 1], 2)
    expect = (-sk.A(5) - sk.A(-3) + sk.A(-7)) * sk.delta
    assert kauffman_bracket(t, 7) == expect


@pytest.mark.parametrize("root", list(RootChoice), ids=lambda rc: rc.value)
def test_mu_identity_all_roots(level, root):
    sk = get_skein(level.r, root)
    assert mu(level, root) ** 2 == (sk.A(2) - sk.A(-2)) ** 2 / (-level.r)


def test_mirror_conjugates(level):
    d = braid_closure([1, 1, 1, 2, 2], 3, (1, -2))
    assert rt_invariant(d.mirror(), level).exact == rt_invariant(d, level).exact.conj()


def test_disjoint_union_factorizes(level):
    a = braid_closure([1, 1, 1], 2, (2,))
    b = chain_link([1, -2])
    lhs = rt_invariant(a.disjoint_union(b), level).exact
    assert lhs == rt_invariant(a, level).exact * rt_invariant(b, level).exact / mu(level)


def test_budget_limits():
    with pytest.raises(BudgetError):
        rt_invariant(braid_closure([1, 1, 1] * 3, 2), 5, budget=Budget(max_crossings=4))
    with pytest.raises(BudgetError):
        rt_invariant(unknot(1), 11, budget=Budget(max_cable_width=6))


# ---------------------------------------------------------------------------
# Borromean double sum


@pytest.mark.parametrize("r", [7, 11, 19, 23])
def test_double_sum_modulus(r):
    assert abs(abs(borromean_invariant(r).approx) - math.sqrt(r + 1) / 2) < 1e-12


@pytest.mark.parametrize("r", [7, 11, 19])
def test_double_sum_is_minus_a2_times_closed_form(r):
    sk = get_skein(r)
    assert borromean_invariant(r).exact == -sk.A(2) * borromean_closed_form(r).exact


def test_closed_form_domain():
    with pytest.raises(LevelError):
        borromean_closed_form(5)
    with pytest.raises(LevelError):
        borromean_closed_form(7, RootChoice.E_INV)
    with pytest.raises(LevelError):
        borromean_invariant(9)


@pytest.mark.slow
@pytest.mark.parametrize("r", [5, 7])
def test_borromean_diagram_relation(r):
    # the surgery value v on Borromean(0,0,1) satisfies double sum = conj(v) W-/W+
    v = rt_invariant(borromean_link((0, 0, 1)), r).exact
    wp, wm = unknot_weights(r)
    assert borromean_invariant(r).exact == v.conj() * wm / wp
    assert abs(abs(complex(v)) - abs(borromean_invariant(r).approx)) < 1e-12
