import itertools

import pytest

from so3wrt.cyclo import Level, RootChoice
from so3wrt.skein import (InadmissibleError, TLMorphism, get_skein, loop_value_oracle,
                          tet_closed_for_oracle_labels, tet_oracle, theta_oracle)
from so3wrt.surgery import mu


@pytest.mark.parametrize("r", [5, 7])
def test_jones_wenzl_idempotent_and_cap_killing(r):
    sk = get_skein(r)
    for n in range(1, r - 1):
        f = sk.jones_wenzl(n)
        assert f.compose(f) == f
        for i in range(n - 1):
            assert TLMorphism.e(sk, n, i).compose(f).is_zero()
            assert f.compose(TLMorphism.e(sk, n, i)).is_zero()


@pytest.mark.parametrize("r", [5, 7])
def test_loop_value(r):
    sk = get_skein(r)
    for n in range(r - 1):
        assert sk.loop_value(n) == (-1) ** n * sk.quantum_int(n + 1)
        assert loop_value_oracle(sk, n) == sk.loop_value(n)


@pytest.mark.parametrize("r", [5, 7])
@pytest.mark.parametrize("root", list(RootChoice), ids=lambda rc: rc.value)
def test_mu_squared_sum_of_squares(r, root):
    sk = get_skein(r, root)
    total = sum((sk.loop_value(c) ** 2 for c in sk.colors()), sk.zero())
    assert mu(Level(r), root) ** 2 * total == 1


def test_quantum_integers_vanish_at_r():
    sk = get_skein(7)
    assert sk.quantum_int(7).is_zero()
    assert not sk.quantum_int(6).is_zero()
    assert sk.quantum_int(1) == 1


def test_colors_and_twist():
    sk = get_skein(7)
    assert sk.colors() == [0, 2, 4]
    for c in sk.colors():
        assert sk.twist(c) == (-1) ** c * sk.A(c * c + 2 * c)


def test_admissibility():
    sk = get_skein(7)
    assert sk.admissible(2, 2, 2)
    assert not sk.admissible(2, 2, 4 + 2)
    assert not sk.admissible(4, 4, 4)  # a+b+c = 12 > 2(r-2)
    with pytest.raises(InadmissibleError):
        sk.theta(4, 4, 4)


def test_theta_matches_diagram_oracle_r5():
    sk = get_skein(5)
    n = 0
    for a, b, c in itertools.product(range(4), repeat=3):
        if sk.admissible(a, b, c, even=False):
            assert sk.theta(a, b, c, even=False) == theta_oracle(sk, a, b, c)
            n += 1
    assert n > 5


def test_tet_matches_diagram_oracle_r5():
    sk = get_skein(5)
    checked = 0
    for a, b, c, d, e, f in itertools.product((0, 2), repeat=6):
        if all(sk.admissible(*t) for t in ((f, a, b), (b, c, d), (a, c, e), (e, d, f))):
            assert tet_closed_for_oracle_labels(sk, a, b, c, d, e, f) == tet_oracle(sk, a, b, c, d, e, f)
            checked += 1
    assert checked >= 10


def test_six_j_orthogonality_r5():
    # sum_i {a b i; c d j}{a b i; c d k}-style unitarity is recoupling; check the
    # simplest consequence: the 6j matrix for (2,2,2,2) squares to the identity
    sk = get_skein(5)
    cols = [i for i in sk.colors() if sk.admissible(2, 2, i)]
    M = [[sk.six_j(2, 2, i, 2, 2, j) for j in cols] for i in cols]
    for i in range(len(cols)):
        for k in range(len(cols)):
            s = sum((M[i][j] * M[j][k] for j in range(len(cols))), sk.zero())
            assert s == (1 if i == k else 0)
