import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from so3wrt.cyclo import (CyclotomicNumber, Level, LevelError, RootChoice, gauss_sum, mu_exact,
                          sqrt_r)

L7 = Level(7)


def elements(level):
    coeffs = st.lists(st.integers(-20, 20), min_size=level.degree, max_size=level.degree)
    dens = st.integers(1, 12)
    return st.builds(lambda c, d: CyclotomicNumber(level, c, d), coeffs, dens)


def test_level_validation():
    for bad in (1, 2, 4, 10, -3):
        with pytest.raises(LevelError):
            Level(bad)
    assert Level(9).prime is False
    assert Level(7).order == 28
    assert Level(7).degree == 12


def test_zeta_has_order_4r():
    z = CyclotomicNumber.zeta(L7)
    assert z ** 28 == 1
    assert all(z ** k != 1 for k in range(1, 28))
    assert CyclotomicNumber.zeta(L7, 7) ** 2 == -1


@settings(max_examples=40, deadline=None)
@given(elements(L7), elements(L7), elements(L7))
def test_field_axioms(x, y, z):
    assert (x + y) * z == x * z + y * z
    assert x * y == y * x
    assert x - x == 0
    if not y.is_zero():
        assert (x / y) * y == x


@settings(max_examples=30, deadline=None)
@given(elements(L7), elements(L7))
def test_embedding_is_a_ring_map(x, y):
    assert abs(complex(x * y) - complex(x) * complex(y)) < 1e-6 * (1 + abs(complex(x)) * abs(complex(y)))
    assert abs(complex(x.conj()) - complex(x).conjugate()) < 1e-9 * (1 + abs(complex(x)))


@settings(max_examples=30, deadline=None)
@given(elements(L7), st.sampled_from([3, 5, 9, 11, 13]))
def test_galois_is_multiplicative(x, k):
    assert (x * x).galois(k) == x.galois(k) * x.galois(k)


def test_galois_rejects_noncoprime():
    with pytest.raises(ValueError):
        CyclotomicNumber.one(L7).galois(14)


def test_json_roundtrip():
    x = CyclotomicNumber(L7, range(12), 5)
    assert CyclotomicNumber.from_json(x.to_json()) == x


def test_eval_embed_precision():
    x = CyclotomicNumber.zeta(L7, 3)
    with mpmath.workprec(200):
        v = x.eval_embed(200)
        assert abs(v - mpmath.expjpi(mpmath.mpf(6) / 28)) < mpmath.mpf(2) ** -190


@pytest.mark.parametrize("r", [5, 7, 11, 13, 19])
def test_gauss_sum_and_sqrt(r):
    g = complex(gauss_sum(r))
    expected = math.sqrt(r) if r % 4 == 1 else 1j * math.sqrt(r)
    assert abs(g - expected) < 1e-12
    s = sqrt_r(r)
    assert s * s == r


@pytest.mark.parametrize("r", [5, 7, 11])
def test_mu_value(r):
    assert abs(complex(mu_exact(r)) - 2 * math.sin(math.pi / r) / math.sqrt(r)) < 1e-14


def test_mu_r5_frozen():
    assert abs(complex(mu_exact(5)).real - 0.5257311121191336) < 1e-15


def test_root_choices():
    for rc in RootChoice:
        a = rc.element(L7)
        assert a ** 28 == 1
        assert (a ** 4) ** 7 == 1 and a ** 4 != 1
        assert RootChoice.parse(rc.value) is rc
    with pytest.raises(ValueError):
        RootChoice.parse("zeta")
